//! Finite semigroups and monoids given by Cayley tables.
//!
//! Elements are identified by their index in the table; names are only used
//! for parsing and printing. Every constructor validates totality,
//! associativity, and (for monoids) the identity laws exhaustively, so a
//! value of these types is always a genuine finite semigroup or monoid.

mod construct;
mod families;
mod format;
mod iso;
mod transform;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use construct::{adjoin_identity, direct_product, ordered_union, semigroup_product};
pub use families::{
    carlson, carlson1, cyclic, family, family_semigroup, gowers, i_monoid, table1, table2,
    trivial, FAMILY_NAMES,
};
pub use format::{parse_monoid, parse_structure, write_monoid, write_semigroup, MonFile};
pub use iso::{find_isomorphism, Isomorphism};
pub use transform::{transformation_monoid, transformation_monoid_named, TransformationMonoid};

/// Index of an element in a Cayley table.
pub type Elem = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("element list is empty")]
    Empty,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("invalid element name `{0:?}`")]
    BadName(String),
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("table shape mismatch: {0}")]
    Shape(String),
    #[error("table entry {value} at ({row}, {col}) is not an element index")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("not associative: ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")]
    NotAssociative {
        a: String,
        b: String,
        c: String,
        left: String,
        right: String,
    },
    #[error("`{identity}` is not an identity: {identity}*{witness} or {witness}*{identity} differs from {witness}")]
    NotIdentity { identity: String, witness: String },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters for `{family}`: {reason}")]
    BadParams { family: String, reason: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = MonoidError> = std::result::Result<T, E>;

/// A finite semigroup stored as a row-major Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    names: Vec<String>,
    table: Vec<Elem>,
}

impl FiniteSemigroup {
    /// Builds a semigroup from element names and an index table, checking
    /// totality and associativity.
    pub fn from_table(names: Vec<String>, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = names.len();
        check_names(&names)?;
        if rows.len() != n {
            return Err(MonoidError::Shape(format!("{} rows for {} elements", rows.len(), n)));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(MonoidError::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(MonoidError::EntryOutOfRange { row: i, col: j, value: v });
                }
            }
            table.extend(row);
        }
        let sg = FiniteSemigroup { names, table };
        sg.check_associative()?;
        Ok(sg)
    }

    /// Builds a semigroup from a table of element tokens.
    pub fn from_tokens<S: AsRef<str>>(names: &[S], rows: &[Vec<S>]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        check_names(&names)?;
        let lookup: HashMap<&str, Elem> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut idx_rows = Vec::with_capacity(rows.len());
        for row in rows {
            let mut r = Vec::with_capacity(row.len());
            for tok in row {
                let tok = tok.as_ref();
                match lookup.get(tok) {
                    Some(&i) => r.push(i),
                    None => return Err(MonoidError::UnknownToken(tok.to_string())),
                }
            }
            idx_rows.push(r);
        }
        Self::from_table(names, idx_rows)
    }

    /// Internal constructor for tables that are associative by construction.
    pub(crate) fn from_trusted(names: Vec<String>, table: Vec<Elem>) -> Self {
        debug_assert_eq!(table.len(), names.len() * names.len());
        FiniteSemigroup { names, table }
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let left = self.mul(ab, c);
                    let right = self.mul(a, self.mul(b, c));
                    if left != right {
                        return Err(MonoidError::NotAssociative {
                            a: self.name(a).to_string(),
                            b: self.name(b).to_string(),
                            c: self.name(c).to_string(),
                            left: self.name(left).to_string(),
                            right: self.name(right).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.len() + b]
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        let n = self.len();
        &self.table[a * n..(a + 1) * n]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == name)
    }

    /// `a^n` for `n >= 1`.
    pub fn power(&self, a: Elem, n: usize) -> Elem {
        assert!(n >= 1, "semigroup powers start at 1");
        let mut p = a;
        for _ in 1..n {
            p = self.mul(p, a);
        }
        p
    }

    pub fn is_idempotent(&self, a: Elem) -> bool {
        self.mul(a, a) == a
    }

    /// The unique idempotent power of `a`.
    pub fn omega_power(&self, a: Elem) -> Elem {
        let mut p = a;
        loop {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, a);
        }
    }

    /// An identity element, if the semigroup has one.
    pub fn find_identity(&self) -> Option<Elem> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Product of a nonempty sequence of elements, left to right.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, items: I) -> Option<Elem> {
        items.into_iter().reduce(|acc, x| self.mul(acc, x))
    }
}

/// A finite monoid: a semigroup together with its identity element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    semigroup: FiniteSemigroup,
    identity: Elem,
}

impl FiniteMonoid {
    pub fn new(semigroup: FiniteSemigroup, identity: Elem) -> Result<Self> {
        if identity >= semigroup.len() {
            return Err(MonoidError::Shape(format!("identity index {identity} out of range")));
        }
        if let Some(w) = semigroup
            .elements()
            .find(|&x| semigroup.mul(identity, x) != x || semigroup.mul(x, identity) != x)
        {
            return Err(MonoidError::NotIdentity {
                identity: semigroup.name(identity).to_string(),
                witness: semigroup.name(w).to_string(),
            });
        }
        Ok(FiniteMonoid { semigroup, identity })
    }

    /// Validates names, table and identity from tokens.
    pub fn build<S: AsRef<str>>(names: &[S], identity: &str, rows: &[Vec<S>]) -> Result<Self> {
        let sg = FiniteSemigroup::from_tokens(names, rows)?;
        let id = sg
            .index_of(identity)
            .ok_or_else(|| MonoidError::UnknownToken(identity.to_string()))?;
        FiniteMonoid::new(sg, id)
    }

    pub(crate) fn from_trusted(semigroup: FiniteSemigroup, identity: Elem) -> Self {
        FiniteMonoid { semigroup, identity }
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn into_semigroup(self) -> FiniteSemigroup {
        self.semigroup
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.semigroup.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.semigroup.mul(a, b)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.semigroup.elements()
    }

    pub fn name(&self, a: Elem) -> &str {
        self.semigroup.name(a)
    }

    pub fn names(&self) -> &[String] {
        self.semigroup.names()
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.semigroup.index_of(name)
    }

    /// `a^n` with `a^0 = 1`.
    pub fn power(&self, a: Elem, n: usize) -> Elem {
        if n == 0 {
            self.identity
        } else {
            self.semigroup.power(a, n)
        }
    }

    pub fn is_idempotent(&self, a: Elem) -> bool {
        self.semigroup.is_idempotent(a)
    }

    /// Resolves a comma separated list of element names.
    pub fn parse_elements(&self, text: &str) -> Result<Vec<Elem>> {
        text.split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| self.index_of(t).ok_or_else(|| MonoidError::UnknownToken(t.to_string())))
            .collect()
    }
}

impl fmt::Display for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_semigroup(self))
    }
}

impl fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_monoid(self))
    }
}

fn check_names(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(MonoidError::Empty);
    }
    let mut seen = std::collections::HashSet::new();
    for name in names {
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#' || c == ',') {
            return Err(MonoidError::BadName(name.clone()));
        }
        if !seen.insert(name.as_str()) {
            return Err(MonoidError::DuplicateElement(name.clone()));
        }
    }
    Ok(())
}
