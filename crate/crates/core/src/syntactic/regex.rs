//! Regular expressions over a declared alphabet of single characters.
//!
//! Grammar, loosest binding first: alternation `|`, juxtaposition, postfix
//! `*`. Parentheses group; `()` is the empty word. Whitespace is ignored.

use std::fmt;

use super::{Result, SyntacticError};

/// Reserved by the grammar, or by element naming in the transition monoid.
const RESERVED: &[char] = &['(', ')', '|', '*', '1', ',', '#', ':'];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regex {
    /// The empty language.
    Empty,
    Epsilon,
    /// A symbol, by index into the alphabet.
    Literal(usize),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    /// Brute-force membership by splitting the word every possible way.
    pub fn matches(&self, word: &[usize]) -> bool {
        match self {
            Regex::Empty => false,
            Regex::Epsilon => word.is_empty(),
            Regex::Literal(s) => word == [*s],
            Regex::Union(a, b) => a.matches(word) || b.matches(word),
            Regex::Concat(a, b) => (0..=word.len()).any(|i| a.matches(&word[..i]) && b.matches(&word[i..])),
            Regex::Star(a) => {
                word.is_empty() || (1..=word.len()).any(|i| a.matches(&word[..i]) && self.matches(&word[i..]))
            }
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        Shown(self, alphabet)
    }
}

struct Shown<'a>(&'a Regex, &'a Alphabet);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |r: &'_ Regex| Shown(r, self.1).to_string();
        match self.0 {
            Regex::Empty => f.write_str("∅"),
            Regex::Epsilon => f.write_str("()"),
            Regex::Literal(s) => write!(f, "{}", self.1.symbols()[*s]),
            Regex::Union(a, b) => write!(f, "({}|{})", sub(a), sub(b)),
            Regex::Concat(a, b) => write!(f, "{}{}", sub(a), sub(b)),
            Regex::Star(a) => write!(f, "({})*", sub(a)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Alphabet> {
        let chars: Vec<char> = symbols.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(SyntacticError::InvalidAlphabet("alphabet is empty".into()));
        }
        for (i, c) in chars.iter().enumerate() {
            if RESERVED.contains(c) {
                return Err(SyntacticError::InvalidAlphabet(format!("`{c}` is reserved")));
            }
            if chars[..i].contains(c) {
                return Err(SyntacticError::InvalidAlphabet(format!("`{c}` repeated")));
            }
        }
        Ok(Alphabet(chars))
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }

    pub fn encode(&self, word: &str) -> Option<Vec<usize>> {
        word.chars().map(|c| self.index_of(c)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.iter().collect::<String>())
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    alphabet: &'a Alphabet,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.len, |&(p, _)| p)
    }

    fn union(&mut self) -> Result<Regex> {
        let mut r = self.concat()?;
        while self.peek() == Some('|') {
            self.at += 1;
            r = Regex::Union(Box::new(r), Box::new(self.concat()?));
        }
        Ok(r)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut r: Option<Regex> = None;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let next = self.starred()?;
            r = Some(match r {
                None => next,
                Some(prev) => Regex::Concat(Box::new(prev), Box::new(next)),
            });
        }
        r.ok_or_else(|| SyntacticError::Syntax { pos: self.pos(), msg: "expected an expression".into() })
    }

    fn starred(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some('*') {
            self.at += 1;
            r = Regex::Star(Box::new(r));
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        let pos = self.pos();
        match self.peek() {
            Some('(') => {
                self.at += 1;
                if self.peek() == Some(')') {
                    self.at += 1;
                    return Ok(Regex::Epsilon);
                }
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(SyntacticError::Syntax { pos: self.pos(), msg: "expected `)`".into() });
                }
                self.at += 1;
                Ok(inner)
            }
            Some('*') => Err(SyntacticError::Syntax { pos, msg: "`*` with nothing to repeat".into() }),
            Some(c) => {
                let s = self.alphabet.index_of(c).ok_or(SyntacticError::UnknownSymbol { symbol: c, pos })?;
                self.at += 1;
                Ok(Regex::Literal(s))
            }
            None => Err(SyntacticError::Syntax { pos, msg: "unexpected end".into() }),
        }
    }
}

/// Parses `text`; positions in errors are character offsets.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    let chars: Vec<(usize, char)> = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { chars, at: 0, alphabet, len: text.chars().count() };
    let r = p.union()?;
    if p.at < p.chars.len() {
        return Err(SyntacticError::Syntax { pos: p.pos(), msg: "unmatched `)`".into() });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn agh() -> Alphabet {
        Alphabet::new("agh").unwrap()
    }

    #[test]
    fn structure() {
        let r = parse_regex("(g|h)*h", &agh()).unwrap();
        let gh = Regex::Union(Box::new(Regex::Literal(1)), Box::new(Regex::Literal(2)));
        assert_eq!(r, Regex::Concat(Box::new(Regex::Star(Box::new(gh))), Box::new(Regex::Literal(2))));
        assert_eq!(parse_regex("()", &agh()).unwrap(), Regex::Epsilon);
        assert_eq!(parse_regex("a|gh*", &agh()).unwrap().display(&agh()).to_string(), "(a|g(h)*)");
        assert!(parse_regex("(a|g|h)*a(a|g|h)*a(a|g|h)*", &agh()).is_ok());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_regex("a(", &agh()), Err(SyntacticError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_regex("a)", &agh()), Err(SyntacticError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_regex("*a", &agh()), Err(SyntacticError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_regex("a|", &agh()), Err(SyntacticError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_regex("", &agh()), Err(SyntacticError::Syntax { pos: 0, .. })));
        assert_eq!(
            parse_regex("ab", &agh()),
            Err(SyntacticError::UnknownSymbol { symbol: 'b', pos: 1 })
        );
        assert!(Alphabet::new("a1").is_err());
        assert!(Alphabet::new("aa").is_err());
        assert!(Alphabet::new("").is_err());
    }

    #[test]
    fn brute_force_semantics() {
        let r = parse_regex("(aa)*", &Alphabet::new("a").unwrap()).unwrap();
        assert!(r.matches(&[]));
        assert!(!r.matches(&[0]));
        assert!(r.matches(&[0, 0, 0, 0]));
        assert!(!Regex::Empty.matches(&[]));
    }
}
