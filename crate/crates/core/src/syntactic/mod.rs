//! Syntactic monoids of regular languages.
//!
//! A regex is compiled to a DFA, minimized, and the letter maps of the
//! minimal DFA generate its transition monoid, which is the syntactic
//! monoid. A language is star-free exactly when that monoid is aperiodic.
//! Maps compose in reading order, as in [`crate::monoid::transform`].

pub mod dfa;
pub mod regex;

use thiserror::Error;

use crate::classify::{is_aperiodic, ClassifyError};
use crate::monoid::{transformation_monoid_named, FiniteMonoid, MonoidError};

pub use dfa::{minimize_dfa, parse_dfa, regex_to_dfa, write_dfa, Dfa};
pub use regex::{parse_regex, Alphabet, Regex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntacticError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{symbol}` at {pos}")]
    UnknownSymbol { symbol: char, pos: usize },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid dfa: {0}")]
    InvalidDfa(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

pub type Result<T, E = SyntacticError> = std::result::Result<T, E>;

/// Regex for the language of words that are nonempty, end in `h` when
/// they have no `a`, and end in `g` when they have exactly one `a`.
pub const S_REGEX: &str = "(g|h)*h|(g|h)*a(g|h)*g|(a|g|h)*a(a|g|h)*a(a|g|h)*";

/// Monoid generated by the letter maps of `d`, elements named by shortest
/// words over the alphabet.
pub fn transition_monoid(d: &Dfa) -> Result<FiniteMonoid> {
    let gens: Vec<(String, Vec<usize>)> = d
        .alphabet()
        .symbols()
        .iter()
        .enumerate()
        .map(|(s, c)| (c.to_string(), d.letter_map(s)))
        .collect();
    Ok(transformation_monoid_named(d.state_count(), &gens)?.monoid)
}

pub fn syntactic_monoid(d: &Dfa) -> Result<FiniteMonoid> {
    transition_monoid(&minimize_dfa(d))
}

pub fn syntactic_monoid_of_regex(r: &Regex, alphabet: &Alphabet) -> Result<FiniteMonoid> {
    syntactic_monoid(&regex_to_dfa(r, alphabet))
}

pub fn is_star_free(d: &Dfa) -> Result<bool> {
    Ok(is_aperiodic(&syntactic_monoid(d)?, None)?)
}

pub fn is_star_free_regex(r: &Regex, alphabet: &Alphabet) -> Result<bool> {
    is_star_free(&regex_to_dfa(r, alphabet))
}

/// Membership straight from the defining clauses of [`S_REGEX`].
pub fn in_s_language(word: &[char]) -> bool {
    let a_count = word.iter().filter(|&&c| c == 'a').count();
    let last = word.last().copied();
    !word.is_empty()
        && (a_count != 0 || last == Some('h'))
        && (a_count != 1 || last == Some('g'))
}
