//! Bounded searches over pairs of variable words and the adversarial
//! coloring that defeats them for monoids with a non-trivial group.
//!
//! Absence of a witness up to a length bound says nothing about longer
//! words; reports say "not found up to L", never "impossible".

use rayon::prelude::*;
use thiserror::Error;

use crate::green::{green_classes, GreenError};
use crate::monoid::{Elem, FiniteMonoid};
use crate::words::{
    concat, evaluate, index_subsets, span_enumerate, tuples, Color, Coloring, Letters, Word, WordsError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Words(#[from] WordsError),
    #[error(transparent)]
    Green(#[from] GreenError),
}

pub type Result<T, E = OracleError> = std::result::Result<T, E>;

/// `(A, C)` with `A = {a^n : n <= |M|}` and `C = {m : a^n m ∈ A for some n}`.
pub fn adversarial_sets(m: &FiniteMonoid, a: Elem) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let n = m.len();
    if let Some(k) = (0..=n).find(|&k| m.power(a, k + 1) == m.power(a, k)) {
        return Err(OracleError::PreconditionViolated(format!(
            "{}^{} = {}^{}",
            m.name(a),
            k + 1,
            m.name(a),
            k
        )));
    }
    let powers: Vec<Elem> = (0..=n).map(|k| m.power(a, k)).collect();
    let mut set_a = powers.clone();
    set_a.sort_unstable();
    set_a.dedup();
    let set_c = m
        .elements()
        .filter(|&x| powers.iter().any(|&p| set_a.binary_search(&m.mul(p, x)).is_ok()))
        .collect();
    Ok((set_a, set_c))
}

/// Colors a word by its first letter in `C`, or ⊥ when there is none.
pub fn adversarial_coloring(m: &FiniteMonoid, a: Elem, max_len: usize) -> Result<Coloring> {
    let (_, c) = adversarial_sets(m, a)?;
    Ok(Coloring::first_in(m, &c, max_len))
}

/// Variable words of exactly `len` letters, lexicographic.
fn variable_words(m: &FiniteMonoid, len: usize) -> Vec<Word> {
    tuples(m.len(), len)
        .into_iter()
        .filter(|w| w.contains(&m.identity()))
        .map(|w| Word::new(w).expect("len >= 1"))
        .collect()
}

fn orbit_colors(m: &FiniteMonoid, c: &Coloring, y0: &Word, y1: &Word) -> Result<Vec<Color>, WordsError> {
    m.elements().map(|x| c.color_of(&concat(&y0.act(m, x), y1))).collect()
}

/// First pair `(y0, y1)` with `|y0| + |y1| <= max_len` for which the orbit
/// `{x·y0 ⌢ y1}` is monochromatic or `y0⌢y1` and `a·y0⌢y1` share a color.
pub fn adversarial_counterexample(
    m: &FiniteMonoid,
    a: Elem,
    c: &Coloring,
    max_len: usize,
) -> Result<Option<(Word, Word)>, WordsError> {
    if max_len > c.max_len() {
        return Err(WordsError::ColoringDomainExceeded { len: max_len, bound: c.max_len() });
    }
    let by_len: Vec<Vec<Word>> = (0..max_len).map(|l| variable_words(m, l)).collect();
    let pairs: Vec<(usize, usize)> = (1..max_len)
        .flat_map(|l0| (1..=max_len - l0).map(move |l1| (l0, l1)))
        .collect();
    for (l0, l1) in pairs {
        let found = by_len[l0].par_iter().find_map_first(|y0| {
            by_len[l1].iter().find_map(|y1| {
                let colors = orbit_colors(m, c, y0, y1).expect("length checked");
                let mono = colors.iter().all(|&x| x == colors[0]);
                (mono || colors[m.identity()] == colors[a]).then(|| (y0.clone(), y1.clone()))
            })
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Checks that `c` admits no monochromatic `M y0⌢y1` up to `max_len`, in
/// the strong form that `y0⌢y1` and `a·y0⌢y1` always differ.
pub fn verify_adversarial_with(
    m: &FiniteMonoid,
    a: Elem,
    c: &Coloring,
    max_len: usize,
) -> Result<bool, WordsError> {
    Ok(adversarial_counterexample(m, a, c, max_len)?.is_none())
}

pub fn verify_adversarial(m: &FiniteMonoid, a: Elem, max_len: usize) -> Result<bool> {
    let c = adversarial_coloring(m, a, max_len)?;
    Ok(verify_adversarial_with(m, a, &c, max_len)?)
}

/// Variable words `y0, y1` with `{x·y0 ⌢ y1 : x ∈ M}` monochromatic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoPair {
    pub y0: Word,
    pub y1: Word,
    pub color: Color,
}

/// Searches pairs by total length, then by the letters of `y0⌢y1`, then
/// by the split point. A witness is re-checked through the span
/// enumerator before it is returned.
pub fn search_mono_pair(m: &FiniteMonoid, c: &Coloring, max_len: usize) -> Result<Option<MonoPair>> {
    if max_len > c.max_len() {
        return Err(WordsError::ColoringDomainExceeded { len: max_len, bound: c.max_len() }.into());
    }
    let id = m.identity();
    for total in 2..=max_len {
        let found = tuples(m.len(), total).into_par_iter().find_map_first(|letters| {
            (1..total).find_map(|split| {
                let (l0, l1) = letters.split_at(split);
                if !l0.contains(&id) || !l1.contains(&id) {
                    return None;
                }
                let (y0, y1) = (Word::new(l0.to_vec()).ok()?, Word::new(l1.to_vec()).ok()?);
                let colors = orbit_colors(m, c, &y0, &y1).expect("length checked");
                colors.iter().all(|&x| x == colors[0]).then(|| MonoPair { y0, y1, color: colors[0] })
            })
        });
        if let Some(pair) = found {
            if !reverify_mono_pair(m, c, &pair)? {
                return Err(OracleError::PreconditionViolated(format!(
                    "witness {} / {} failed re-verification",
                    pair.y0.format(m),
                    pair.y1.format(m)
                )));
            }
            return Ok(Some(pair));
        }
    }
    Ok(None)
}

/// Recomputes the orbit as the span terms of `[y0, y1]` of the form
/// `x·y0 ⌢ 1·y1` and checks they all have the claimed color.
pub fn reverify_mono_pair(m: &FiniteMonoid, c: &Coloring, pair: &MonoPair) -> Result<bool> {
    if !pair.y0.is_variable(m) || !pair.y1.is_variable(m) {
        return Ok(false);
    }
    let span = span_enumerate(m, &[pair.y0.clone(), pair.y1.clone()], 2);
    let orbit: Vec<&Word> = span
        .terms
        .iter()
        .filter(|t| t.factors.len() == 2 && t.factors[1].0 == m.identity())
        .map(|t| &t.product)
        .collect();
    if orbit.len() != m.len() {
        return Ok(false);
    }
    for w in orbit {
        if c.color_of(w)? != pair.color {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionOutcome {
    Monochromatic(Color),
    Clash { first: Vec<(Elem, usize)>, first_color: Color, second: Vec<(Elem, usize)>, second_color: Color },
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionEntry {
    pub a: Elem,
    pub outcome: PartitionOutcome,
}

/// For each `a`, colors the products `m_0 s_{i_0} ... m_k s_{i_k}` with
/// every `m_j ∈ aM` and some `m_j` R-related to `a`.
pub fn check_span_partition(
    m: &FiniteMonoid,
    seq: &[Word],
    c: &Coloring,
    max_factors: usize,
) -> Result<Vec<PartitionEntry>> {
    let green = green_classes(m)?;
    let mut report = Vec::with_capacity(m.len());
    for a in m.elements() {
        let right: Vec<Elem> = green.right_ideals[a].ones().collect();
        let mut outcome = PartitionOutcome::Empty;
        let mut first: Option<(Vec<(Elem, usize)>, Color)> = None;
        'search: for k in 1..=max_factors.min(seq.len()) {
            for pick in tuples(right.len(), k) {
                let ms: Vec<Elem> = pick.iter().map(|&i| right[i]).collect();
                if !ms.iter().any(|&x| green.r.same(x, a)) {
                    continue;
                }
                for idx in index_subsets(seq.len(), k) {
                    let factors: Vec<(Elem, usize)> = ms.iter().copied().zip(idx).collect();
                    let product = evaluate(m, seq, &factors).expect("words always concatenate");
                    let color = c.color_of(&product)?;
                    match &first {
                        None => {
                            first = Some((factors, color));
                            outcome = PartitionOutcome::Monochromatic(color);
                        }
                        Some((f, fc)) if *fc != color => {
                            outcome = PartitionOutcome::Clash {
                                first: f.clone(),
                                first_color: *fc,
                                second: factors,
                                second_color: color,
                            };
                            break 'search;
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        report.push(PartitionEntry { a, outcome });
    }
    Ok(report)
}
