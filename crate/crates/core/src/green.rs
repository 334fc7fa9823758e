//! Green's relations, principal ideals, and the right-ideal families
//! `X(M) = {aM}` and `X_R(M)` (the `aM` whose R-class is non-trivial).

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::monoid::{Elem, FiniteMonoid};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GreenError {
    /// The join of R and L differs from J. Impossible for a finite monoid,
    /// so this always indicates a bug.
    #[error("D and J partitions differ at element {0}")]
    DJMismatch(Elem),
}

/// A partition of the elements into classes, ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<Elem>>,
}

impl Partition {
    /// Groups elements by key; classes appear in order of first element.
    pub fn by_key<K: PartialEq>(n: usize, key: impl Fn(Elem) -> K) -> Partition {
        let keys: Vec<K> = (0..n).map(&key).collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<Elem> = (a..n).filter(|&b| keys[b] == keys[a]).collect();
            for &b in &members {
                class_of[b] = id;
            }
            classes.push(members);
        }
        Partition { class_of, classes }
    }

    fn from_labels(labels: &[usize]) -> Partition {
        Partition::by_key(labels.len(), |a| labels[a])
    }

    pub fn same(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn class(&self, a: Elem) -> &[Elem] {
        &self.classes[self.class_of[a]]
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// First class with two or more members.
    pub fn first_nontrivial(&self) -> Option<&[Elem]> {
        self.classes.iter().find(|c| c.len() > 1).map(Vec::as_slice)
    }
}

/// Principal ideals and Green's partitions of one monoid.
#[derive(Clone, Debug)]
pub struct GreenData {
    pub right_ideals: Vec<FixedBitSet>,
    pub left_ideals: Vec<FixedBitSet>,
    pub two_sided: Vec<FixedBitSet>,
    pub r: Partition,
    pub l: Partition,
    pub j: Partition,
    pub h: Partition,
    pub d: Partition,
}

impl GreenData {
    pub fn r_leq(&self, a: Elem, b: Elem) -> bool {
        self.right_ideals[a].is_subset(&self.right_ideals[b])
    }

    pub fn l_leq(&self, a: Elem, b: Elem) -> bool {
        self.left_ideals[a].is_subset(&self.left_ideals[b])
    }

    pub fn j_leq(&self, a: Elem, b: Elem) -> bool {
        self.two_sided[a].is_subset(&self.two_sided[b])
    }

    pub fn h_leq(&self, a: Elem, b: Elem) -> bool {
        self.r_leq(a, b) && self.l_leq(a, b)
    }
}

/// `(aM, Ma, MaM)` by full enumeration.
pub fn principal_ideals(m: &FiniteMonoid, a: Elem) -> (FixedBitSet, FixedBitSet, FixedBitSet) {
    let right: FixedBitSet = m.elements().map(|x| m.mul(a, x)).collect();
    let left: FixedBitSet = m.elements().map(|x| m.mul(x, a)).collect();
    let mut both = FixedBitSet::with_capacity(m.len());
    for x in m.elements() {
        for y in right.ones() {
            both.insert(m.mul(x, y));
        }
    }
    (grow(right, m.len()), grow(left, m.len()), both)
}

fn grow(mut s: FixedBitSet, n: usize) -> FixedBitSet {
    s.grow(n);
    s
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn green_classes(m: &FiniteMonoid) -> Result<GreenData, GreenError> {
    let n = m.len();
    let mut right_ideals = Vec::with_capacity(n);
    let mut left_ideals = Vec::with_capacity(n);
    let mut two_sided = Vec::with_capacity(n);
    for a in m.elements() {
        let (r, l, j) = principal_ideals(m, a);
        right_ideals.push(r);
        left_ideals.push(l);
        two_sided.push(j);
    }
    let r = Partition::by_key(n, |a| right_ideals[a].clone());
    let l = Partition::by_key(n, |a| left_ideals[a].clone());
    let j = Partition::by_key(n, |a| two_sided[a].clone());
    let h = Partition::by_key(n, |a| (r.class_of[a], l.class_of[a]));

    let mut parent: Vec<usize> = (0..n).collect();
    for part in [&r, &l] {
        for class in &part.classes {
            for w in class.windows(2) {
                let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|a| find(&mut parent, a)).collect();
    let d = Partition::from_labels(&labels);
    if let Some(a) = (0..n).find(|&a| d.class(a) != j.class(a)) {
        return Err(GreenError::DJMismatch(a));
    }
    Ok(GreenData { right_ideals, left_ideals, two_sided, r, l, j, h, d })
}

/// True iff every pair of sets is comparable under inclusion.
pub fn is_chain(family: &[FixedBitSet]) -> bool {
    family.iter().enumerate().all(|(i, x)| {
        family[i + 1..].iter().all(|y| x.is_subset(y) || y.is_subset(x))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    X,
    XR,
}

/// A deduplicated family of principal right ideals, sorted by size and then
/// by members. `reps[i]` is the least element generating `members[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFamily {
    pub kind: FamilyKind,
    pub members: Vec<FixedBitSet>,
    pub reps: Vec<Elem>,
    pub linear: bool,
}

impl IdealFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, ideal: &FixedBitSet) -> Option<usize> {
        self.members.iter().position(|x| x == ideal)
    }

    /// First incomparable pair, if any.
    pub fn incomparable_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let (x, y) = (&self.members[i], &self.members[j]);
                if !x.is_subset(y) && !y.is_subset(x) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

fn family_from(kind: FamilyKind, green: &GreenData, include: impl Fn(Elem) -> bool) -> IdealFamily {
    let mut pairs: Vec<(FixedBitSet, Elem)> = Vec::new();
    for a in 0..green.right_ideals.len() {
        if include(a) && !pairs.iter().any(|(x, _)| *x == green.right_ideals[a]) {
            pairs.push((green.right_ideals[a].clone(), a));
        }
    }
    pairs.sort_by(|(x, _), (y, _)| {
        x.count_ones(..)
            .cmp(&y.count_ones(..))
            .then_with(|| x.ones().cmp(y.ones()))
    });
    let (members, reps): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let linear = is_chain(&members);
    IdealFamily { kind, members, reps, linear }
}

pub fn x_family_of(green: &GreenData) -> IdealFamily {
    family_from(FamilyKind::X, green, |_| true)
}

pub fn x_r_family_of(green: &GreenData) -> IdealFamily {
    family_from(FamilyKind::XR, green, |a| green.r.class(a).len() > 1)
}

pub fn x_family(m: &FiniteMonoid) -> IdealFamily {
    x_family_of(&green_classes(m).expect("D = J in a finite monoid"))
}

pub fn x_r_family(m: &FiniteMonoid) -> IdealFamily {
    x_r_family_of(&green_classes(m).expect("D = J in a finite monoid"))
}

/// Renders a set of elements as `{a,b,c}` in element order.
pub fn format_set(m: &FiniteMonoid, set: &FixedBitSet) -> String {
    let names: Vec<&str> = set.ones().map(|x| m.name(x)).collect();
    format!("{{{}}}", names.join(","))
}

pub fn format_class(m: &FiniteMonoid, class: &[Elem]) -> String {
    let names: Vec<&str> = class.iter().map(|&x| m.name(x)).collect();
    format!("{{{}}}", names.join(","))
}

/// Text report used by the CLI: classes, quasi-order sizes, and families.
pub struct GreenReport<'a> {
    pub monoid: &'a FiniteMonoid,
    pub green: &'a GreenData,
}

impl fmt::Display for GreenReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, g) = (self.monoid, self.green);
        for (label, part) in [("R", &g.r), ("L", &g.l), ("J", &g.j), ("H", &g.h), ("D", &g.d)] {
            let classes: Vec<String> = part.classes.iter().map(|c| format_class(m, c)).collect();
            writeln!(f, "{label}-classes: {}", classes.join(" "))?;
        }
        type Leq = fn(&GreenData, Elem, Elem) -> bool;
        let orders: [(&str, Leq); 4] = [
            ("R", GreenData::r_leq),
            ("L", GreenData::l_leq),
            ("J", GreenData::j_leq),
            ("H", GreenData::h_leq),
        ];
        for (label, leq) in orders {
            let pairs: Vec<String> = m
                .elements()
                .flat_map(|a| m.elements().map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && leq(g, a, b))
                .map(|(a, b)| format!("{}<={}", m.name(a), m.name(b)))
                .collect();
            writeln!(f, "{label}-order: {}", pairs.join(" "))?;
        }
        for fam in [x_family_of(g), x_r_family_of(g)] {
            let label = match fam.kind {
                FamilyKind::X => "X",
                FamilyKind::XR => "X_R",
            };
            let sets: Vec<String> = fam.members.iter().map(|s| format_set(m, s)).collect();
            writeln!(f, "{label}: {}", sets.join(" "))?;
        }
        Ok(())
    }
}
