//! Isomorphism search between small monoids.

use fixedbitset::FixedBitSet;

use super::{Elem, FiniteMonoid};

/// A bijection `map[x]` from source to target elements preserving products
/// and the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<Elem>,
}

impl Isomorphism {
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Isomorphism { map: inv }
    }

    /// Exhaustive check that `map` is an isomorphism `source -> target`.
    pub fn is_valid(&self, source: &FiniteMonoid, target: &FiniteMonoid) -> bool {
        if source.len() != target.len() || self.map.len() != source.len() {
            return false;
        }
        let mut seen = vec![false; target.len()];
        for &y in &self.map {
            if y >= target.len() || std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        self.map[source.identity()] == target.identity()
            && source.elements().all(|x| {
                source
                    .elements()
                    .all(|y| self.map[source.mul(x, y)] == target.mul(self.map[x], self.map[y]))
            })
    }
}

/// Per-element invariants preserved by every isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    identity: bool,
    idempotent: bool,
    index: usize,
    period: usize,
    right_ideal: usize,
    left_ideal: usize,
    two_sided: usize,
    r_class: usize,
    l_class: usize,
    left_stabiliser: usize,
    right_stabiliser: usize,
    square_roots: usize,
}

fn signatures(m: &FiniteMonoid) -> Vec<Signature> {
    let n = m.len();
    let right: Vec<FixedBitSet> =
        m.elements().map(|a| m.elements().map(|x| m.mul(a, x)).collect()).collect();
    let left: Vec<FixedBitSet> =
        m.elements().map(|a| m.elements().map(|x| m.mul(x, a)).collect()).collect();
    let two_sided: Vec<usize> = m
        .elements()
        .map(|a| {
            let mut s = FixedBitSet::with_capacity(n);
            for x in m.elements() {
                for y in right[a].ones() {
                    s.insert(m.mul(x, y));
                }
            }
            s.count_ones(..)
        })
        .collect();
    m.elements()
        .map(|a| {
            let (index, period) = index_period(m, a);
            Signature {
                identity: a == m.identity(),
                idempotent: m.is_idempotent(a),
                index,
                period,
                right_ideal: right[a].count_ones(..),
                left_ideal: left[a].count_ones(..),
                two_sided: two_sided[a],
                r_class: right.iter().filter(|r| **r == right[a]).count(),
                l_class: left.iter().filter(|l| **l == left[a]).count(),
                left_stabiliser: m.elements().filter(|&x| m.mul(x, a) == a).count(),
                right_stabiliser: m.elements().filter(|&x| m.mul(a, x) == a).count(),
                square_roots: m.elements().filter(|&x| m.mul(x, x) == a).count(),
            }
        })
        .collect()
}

/// Smallest `i` and `p` with `a^(i+p) = a^i`.
fn index_period(m: &FiniteMonoid, a: Elem) -> (usize, usize) {
    let mut powers = vec![a];
    loop {
        let next = m.mul(*powers.last().unwrap(), a);
        if let Some(pos) = powers.iter().position(|&p| p == next) {
            return (pos + 1, powers.len() - pos);
        }
        powers.push(next);
    }
}

/// Finds the lexicographically first identity-preserving isomorphism, if
/// any. Candidates are pruned by element signatures before backtracking.
pub fn find_isomorphism(m1: &FiniteMonoid, m2: &FiniteMonoid) -> Option<Isomorphism> {
    if m1.len() != m2.len() {
        return None;
    }
    let s1 = signatures(m1);
    let s2 = signatures(m2);
    let (mut a, mut b) = (s1.clone(), s2.clone());
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let candidates: Vec<Vec<Elem>> = s1
        .iter()
        .map(|sig| m2.elements().filter(|&y| s2[y] == *sig).collect())
        .collect();
    let mut map = vec![usize::MAX; m1.len()];
    let mut used = vec![false; m2.len()];
    map[m1.identity()] = m2.identity();
    used[m2.identity()] = true;
    if search(m1, m2, &candidates, 0, &mut map, &mut used) {
        Some(Isomorphism { map })
    } else {
        None
    }
}

fn consistent(m1: &FiniteMonoid, m2: &FiniteMonoid, map: &[Elem], a: Elem) -> bool {
    let assigned = |x: Elem| map[x] != usize::MAX;
    for x in m1.elements().filter(|&x| assigned(x)) {
        for (p, q) in [(a, x), (x, a)] {
            let pq = m1.mul(p, q);
            if assigned(pq) && map[pq] != m2.mul(map[p], map[q]) {
                return false;
            }
        }
        for y in m1.elements().filter(|&y| assigned(y)) {
            if m1.mul(x, y) == a && map[a] != m2.mul(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

fn search(
    m1: &FiniteMonoid,
    m2: &FiniteMonoid,
    candidates: &[Vec<Elem>],
    next: Elem,
    map: &mut Vec<Elem>,
    used: &mut Vec<bool>,
) -> bool {
    if next == m1.len() {
        return true;
    }
    if map[next] != usize::MAX {
        return consistent(m1, m2, map, next) && search(m1, m2, candidates, next + 1, map, used);
    }
    for &y in &candidates[next] {
        if used[y] {
            continue;
        }
        map[next] = y;
        used[y] = true;
        if consistent(m1, m2, map, next) && search(m1, m2, candidates, next + 1, map, used) {
            return true;
        }
        used[y] = false;
    }
    map[next] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{cyclic, direct_product, gowers, i_monoid, table1, table2};

    #[test]
    fn self_isomorphism_is_identity() {
        for m in [table1(), table2(), gowers(4).unwrap(), i_monoid(4).unwrap()] {
            let iso = find_isomorphism(&m, &m).unwrap();
            assert_eq!(iso.map, (0..m.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn gowers2_vs_z2() {
        assert!(find_isomorphism(&gowers(2).unwrap(), &cyclic(2).unwrap()).is_none());
        // oracle: the only identity-fixing bijection on two elements
        let (g, z) = (gowers(2).unwrap(), cyclic(2).unwrap());
        let only = Isomorphism { map: vec![0, 1] };
        assert!(!only.is_valid(&g, &z));
    }

    #[test]
    fn product_commutes_up_to_iso() {
        let a = gowers(2).unwrap();
        let b = cyclic(3).unwrap();
        let ab = direct_product(&a, &b);
        let ba = direct_product(&b, &a);
        let iso = find_isomorphism(&ab, &ba).unwrap();
        assert!(iso.is_valid(&ab, &ba));
        let back = find_isomorphism(&ba, &ab).unwrap();
        assert!(back.is_valid(&ba, &ab));
    }

    #[test]
    fn index_period_of_cycle() {
        let z4 = cyclic(4).unwrap();
        assert_eq!(index_period(&z4, 1), (1, 4));
        let g3 = gowers(3).unwrap();
        assert_eq!(index_period(&g3, 1), (2, 1));
    }
}
