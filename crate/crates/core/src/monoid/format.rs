//! The `.mon` text format.
//!
//! ```text
//! # comment
//! elements: 1 a b
//! identity: 1
//! table:
//! 1 a b
//! a a b
//! b a b
//! ```
//!
//! The `identity:` line is optional for plain semigroups.

use super::{Elem, FiniteMonoid, FiniteSemigroup, MonoidError, Result};

/// A parsed `.mon` file: a semigroup with an optional declared identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonFile {
    pub semigroup: FiniteSemigroup,
    pub identity: Option<Elem>,
}

impl MonFile {
    pub fn into_monoid(self) -> Result<FiniteMonoid> {
        match self.identity {
            Some(id) => FiniteMonoid::new(self.semigroup, id),
            None => Err(MonoidError::Parse { line: 0, msg: "missing `identity:` line".into() }),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> MonoidError {
    MonoidError::Parse { line, msg: msg.into() }
}

/// Parses a semigroup or monoid. Validation errors from the table itself
/// (unknown tokens, associativity, identity) are passed through unchanged.
pub fn parse_structure(text: &str) -> Result<MonFile> {
    let mut names: Option<Vec<String>> = None;
    let mut identity: Option<(usize, String)> = None;
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut in_table = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if in_table {
            rows.push(line.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, format!("expected `key:` line, got `{line}`")))?;
        match key.trim() {
            "elements" => {
                if names.is_some() {
                    return Err(parse_err(lineno, "repeated `elements:` line"));
                }
                names = Some(rest.split_whitespace().map(str::to_string).collect());
            }
            "identity" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                match toks.as_slice() {
                    [t] => identity = Some((lineno, t.to_string())),
                    _ => return Err(parse_err(lineno, "`identity:` takes exactly one element")),
                }
            }
            "table" => {
                if !rest.trim().is_empty() {
                    return Err(parse_err(lineno, "rows start on the line after `table:`"));
                }
                in_table = true;
            }
            other => return Err(parse_err(lineno, format!("unknown key `{other}`"))),
        }
    }
    let names = names.ok_or_else(|| parse_err(0, "missing `elements:` line"))?;
    if !in_table {
        return Err(parse_err(0, "missing `table:` line"));
    }
    let semigroup = FiniteSemigroup::from_tokens(&names, &rows)?;
    let identity = match identity {
        None => None,
        Some((lineno, tok)) => Some(
            semigroup
                .index_of(&tok)
                .ok_or_else(|| parse_err(lineno, format!("identity `{tok}` is not an element")))?,
        ),
    };
    Ok(MonFile { semigroup, identity })
}

/// Parses a monoid; the `identity:` line is required and checked.
pub fn parse_monoid(text: &str) -> Result<FiniteMonoid> {
    parse_structure(text)?.into_monoid()
}

fn write_table(out: &mut String, sg: &FiniteSemigroup) {
    let width = sg.names().iter().map(|s| s.chars().count()).max().unwrap_or(1);
    for a in sg.elements() {
        let row: Vec<String> =
            sg.row(a).iter().map(|&b| format!("{:<width$}", sg.name(b))).collect();
        out.push_str(row.join(" ").trim_end());
        out.push('\n');
    }
}

pub fn write_semigroup(sg: &FiniteSemigroup) -> String {
    let mut out = format!("elements: {}\ntable:\n", sg.names().join(" "));
    write_table(&mut out, sg);
    out
}

pub fn write_monoid(m: &FiniteMonoid) -> String {
    let mut out = format!(
        "elements: {}\nidentity: {}\ntable:\n",
        m.names().join(" "),
        m.name(m.identity())
    );
    write_table(&mut out, m.semigroup());
    out
}
