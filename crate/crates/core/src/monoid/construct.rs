use std::collections::HashSet;

use super::{Elem, FiniteMonoid, FiniteSemigroup, MonoidError, Result};

/// Coordinatewise product of two semigroups. Element `(x, y)` has index
/// `x * |T| + y` and is named `(x;y)`.
pub fn semigroup_product(s: &FiniteSemigroup, t: &FiniteSemigroup) -> FiniteSemigroup {
    let (n, m) = (s.len(), t.len());
    let mut names = Vec::with_capacity(n * m);
    for x in s.elements() {
        for y in t.elements() {
            names.push(format!("({};{})", s.name(x), t.name(y)));
        }
    }
    let size = n * m;
    let mut table = Vec::with_capacity(size * size);
    for a in 0..size {
        let (a1, a2) = (a / m, a % m);
        for b in 0..size {
            let (b1, b2) = (b / m, b % m);
            table.push(s.mul(a1, b1) * m + t.mul(a2, b2));
        }
    }
    FiniteSemigroup::from_trusted(names, table)
}

/// Direct product of monoids with identity `(1, 1)`.
pub fn direct_product(m1: &FiniteMonoid, m2: &FiniteMonoid) -> FiniteMonoid {
    let sg = semigroup_product(m1.semigroup(), m2.semigroup());
    let id = m1.identity() * m2.len() + m2.identity();
    FiniteMonoid::from_trusted(sg, id)
}

/// Ordered disjoint union: inside a part the part's own product is used,
/// and across parts the element of the earlier part absorbs the other one.
///
/// Names are kept when they are distinct across parts, otherwise every name
/// gets an `@i` suffix with its part index.
pub fn ordered_union(parts: &[FiniteSemigroup]) -> Result<FiniteSemigroup> {
    if parts.is_empty() {
        return Err(MonoidError::Empty);
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0;
    for p in parts {
        offsets.push(total);
        total += p.len();
    }
    let mut seen = HashSet::new();
    let clash = parts
        .iter()
        .flat_map(|p| p.names().iter())
        .any(|name| !seen.insert(name.as_str()));
    let names: Vec<String> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.names().iter().map(move |s| if clash { format!("{s}@{i}") } else { s.clone() })
        })
        .collect();
    let part_of: Vec<(usize, Elem)> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.elements().map(move |x| (i, x)))
        .collect();
    let mut table = Vec::with_capacity(total * total);
    for (a, &(pa, xa)) in part_of.iter().enumerate() {
        for (b, &(pb, xb)) in part_of.iter().enumerate() {
            let v = match pa.cmp(&pb) {
                std::cmp::Ordering::Equal => offsets[pa] + parts[pa].mul(xa, xb),
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
            };
            table.push(v);
        }
    }
    Ok(FiniteSemigroup::from_trusted(names, table))
}

/// Adjoins a fresh identity at index 0; old element `x` moves to `x + 1`.
///
/// The new identity is called `1`, or `1'`, `1''`, ... if that name is taken.
pub fn adjoin_identity(s: &FiniteSemigroup) -> FiniteMonoid {
    let mut id_name = String::from("1");
    while s.index_of(&id_name).is_some() {
        id_name.push('\'');
    }
    let n = s.len() + 1;
    let mut names = Vec::with_capacity(n);
    names.push(id_name);
    names.extend(s.names().iter().cloned());
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(match (a, b) {
                (0, b) => b,
                (a, 0) => a,
                (a, b) => s.mul(a - 1, b - 1) + 1,
            });
        }
    }
    FiniteMonoid::from_trusted(FiniteSemigroup::from_trusted(names, table), 0)
}
