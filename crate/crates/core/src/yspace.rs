//! Chains of principal right ideals and the deletion rewriting system on
//! words over them.
//!
//! `Y(M)` is the set of nonempty chains in `(X(M), ⊆)`. A chain `x` is
//! below `y` when `x ⊆ y` and every ideal of `y ∖ x` strictly contains every
//! ideal of `x`. Words over `Y(M)` are taken modulo `pq = q = qp` for
//! `p <= q`, which is decided by deleting the smaller of two adjacent
//! comparable letters.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::green::{format_set, green_classes, x_family_of, IdealFamily};
use crate::monoid::{Elem, FiniteMonoid};

pub const DEFAULT_CHAIN_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum YError {
    #[error("Y(M) has more than {cap} chains")]
    TooLarge { cap: usize },
    /// The action produced a non-chain. The action preserves chains, so
    /// this is a bug.
    #[error("action of {m} on chain {chain} is not a chain")]
    NotAChain { m: String, chain: String },
    #[error("equality undecided: confluence is not certified and the words share no descendant")]
    ConfluenceUnverified,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown chain: {0}")]
    UnknownChain(String),
}

/// Indices into the sorted `X(M)`, increasing, hence increasing under ⊆.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSet(pub Vec<usize>);

/// A word over `Y(M)`; letters are chain indices of the owning [`YSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YWord(pub Vec<usize>);

/// Result of the local confluence check over all windows of length 2 and 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub windows_checked: usize,
    /// A window and two one-step reducts without a common descendant.
    pub unjoinable: Option<(YWord, YWord, YWord)>,
}

impl ConfluenceReport {
    pub fn confluent(&self) -> bool {
        self.unjoinable.is_none()
    }
}

pub struct YSpace {
    monoid: FiniteMonoid,
    x: IdealFamily,
    /// `x_act[m * |X| + i]` is the index of `m · X_i`.
    x_act: Vec<usize>,
    chains: Vec<ChainSet>,
    index: HashMap<ChainSet, usize>,
    confluence: OnceLock<ConfluenceReport>,
}

impl fmt::Debug for YSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("YSpace")
            .field("x", &self.x.len())
            .field("chains", &self.chains.len())
            .finish()
    }
}

impl YSpace {
    pub fn new(m: &FiniteMonoid) -> Result<YSpace, YError> {
        YSpace::with_cap(m, DEFAULT_CHAIN_CAP)
    }

    pub fn with_cap(m: &FiniteMonoid, cap: usize) -> Result<YSpace, YError> {
        let green = green_classes(m).expect("D = J in a finite monoid");
        let x = x_family_of(&green);
        let k = x.len();
        let mut x_act = Vec::with_capacity(m.len() * k);
        for a in m.elements() {
            for &rep in &x.reps {
                let ideal = &green.right_ideals[m.mul(a, rep)];
                x_act.push(x.position(ideal).expect("maM is a principal right ideal"));
            }
        }
        let chains = enumerate_chains(&x, cap)?;
        let index = chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(YSpace {
            monoid: m.clone(),
            x,
            x_act,
            chains,
            index,
            confluence: OnceLock::new(),
        })
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn x(&self) -> &IdealFamily {
        &self.x
    }

    pub fn chains(&self) -> &[ChainSet] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chain(&self, i: usize) -> &ChainSet {
        &self.chains[i]
    }

    pub fn index_of(&self, c: &ChainSet) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Index of the chain whose members are the given ideal indices.
    pub fn chain_from_members(&self, members: &[usize]) -> Result<usize, YError> {
        let mut v = members.to_vec();
        v.sort_unstable();
        v.dedup();
        let c = ChainSet(v);
        self.index_of(&c).ok_or_else(|| YError::UnknownChain(format!("{:?}", c.0)))
    }

    fn ideal_subset(&self, i: usize, j: usize) -> bool {
        self.x.members[i].is_subset(&self.x.members[j])
    }

    fn ideal_strict(&self, i: usize, j: usize) -> bool {
        i != j && self.ideal_subset(i, j)
    }

    /// `x <= y`: `x ⊆ y` and each ideal of `y ∖ x` strictly contains each
    /// ideal of `x`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        let (cx, cy) = (&self.chains[x].0, &self.chains[y].0);
        cx.iter().all(|i| cy.contains(i))
            && cy
                .iter()
                .filter(|j| !cx.contains(j))
                .all(|&j| cx.iter().all(|&i| self.ideal_strict(i, j)))
    }

    /// `m · x = {maM : aM ∈ x}`.
    pub fn act(&self, m: Elem, x: usize) -> Result<usize, YError> {
        let k = self.x.len();
        let mut image: Vec<usize> = self.chains[x].0.iter().map(|&i| self.x_act[m * k + i]).collect();
        image.sort_unstable();
        image.dedup();
        self.index_of(&ChainSet(image)).ok_or_else(|| YError::NotAChain {
            m: self.monoid.name(m).to_string(),
            chain: self.format_chain(x),
        })
    }

    fn act_unchecked(&self, m: Elem, x: usize) -> usize {
        self.act(m, x).expect("the action maps chains to chains")
    }

    /// Repeatedly applies the leftmost deletion until none applies.
    pub fn normalize(&self, w: &YWord) -> YWord {
        let mut letters = w.0.clone();
        'scan: loop {
            for i in 0..letters.len().saturating_sub(1) {
                let (u, v) = (letters[i], letters[i + 1]);
                if self.leq(u, v) {
                    letters.remove(i);
                    continue 'scan;
                }
                if self.leq(v, u) {
                    letters.remove(i + 1);
                    continue 'scan;
                }
            }
            return YWord(letters);
        }
    }

    /// All words obtained from `w` by one deletion.
    pub fn one_step(&self, w: &YWord) -> Vec<YWord> {
        let mut out = Vec::new();
        for i in 0..w.0.len().saturating_sub(1) {
            let (u, v) = (w.0[i], w.0[i + 1]);
            for (cond, del) in [(self.leq(u, v), i), (self.leq(v, u), i + 1)] {
                if cond {
                    let mut r = w.0.clone();
                    r.remove(del);
                    let r = YWord(r);
                    if !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    /// Every word reachable from `w` by deletions, including `w`.
    pub fn descendants(&self, w: &YWord) -> HashSet<YWord> {
        let mut seen = HashSet::from([w.clone()]);
        let mut stack = vec![w.clone()];
        while let Some(v) = stack.pop() {
            for r in self.one_step(&v) {
                if seen.insert(r.clone()) {
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// Checks that every window of two or three letters has joinable
    /// one-step reducts. Deletion terminates, so this certifies confluence.
    pub fn check_confluence(&self) -> &ConfluenceReport {
        self.confluence.get_or_init(|| {
            let n = self.len();
            let pairs = (0..n).flat_map(|a| (0..n).map(move |b| YWord(vec![a, b])));
            let unjoinable = pairs
                .into_iter()
                .find_map(|w| self.unjoinable_in(&w))
                .or_else(|| {
                    (0..n * n).into_par_iter().find_map_first(|ab| {
                        let (a, b) = (ab / n, ab % n);
                        (0..n).find_map(|c| self.unjoinable_in(&YWord(vec![a, b, c])))
                    })
                });
            ConfluenceReport { windows_checked: n * n + n * n * n, unjoinable }
        })
    }

    fn unjoinable_in(&self, w: &YWord) -> Option<(YWord, YWord, YWord)> {
        let reducts = self.one_step(w);
        let desc: Vec<HashSet<YWord>> = reducts.iter().map(|r| self.descendants(r)).collect();
        for i in 0..reducts.len() {
            for j in i + 1..reducts.len() {
                if desc[i].is_disjoint(&desc[j]) {
                    return Some((w.clone(), reducts[i].clone(), reducts[j].clone()));
                }
            }
        }
        None
    }

    /// Equality in the quotient. With certified confluence this compares
    /// normal forms; otherwise it looks for a common descendant and gives
    /// up if there is none.
    pub fn words_equal(&self, w1: &YWord, w2: &YWord) -> Result<bool, YError> {
        if self.check_confluence().confluent() {
            return Ok(self.normalize(w1) == self.normalize(w2));
        }
        let d1 = self.descendants(w1);
        if self.descendants(w2).iter().any(|w| d1.contains(w)) {
            Ok(true)
        } else {
            Err(YError::ConfluenceUnverified)
        }
    }

    /// `normalize([m_0 y, ..., m_n y])`.
    pub fn wedge(&self, ms: &[Elem], y: usize) -> YWord {
        assert!(!ms.is_empty(), "wedge needs at least one element");
        self.normalize(&YWord(ms.iter().map(|&m| self.act_unchecked(m, y)).collect()))
    }

    /// Chains that no other chain lies strictly above: exactly those whose
    /// largest member is `M` itself.
    pub fn maximal_chains(&self) -> Vec<usize> {
        let top = self.x.len() - 1;
        (0..self.len()).filter(|&x| self.chains[x].0.last() == Some(&top)).collect()
    }

    /// Proper initial segments of `y`, i.e. the chains strictly below it.
    pub fn strictly_below(&self, y: usize) -> Vec<usize> {
        let c = &self.chains[y].0;
        (1..c.len())
            .map(|k| self.index_of(&ChainSet(c[..k].to_vec())).expect("prefix of a chain"))
            .collect()
    }

    /// The chain `X(M)` itself, when `X(M)` is linear.
    pub fn full_chain(&self) -> Option<usize> {
        if !self.x.linear {
            return None;
        }
        self.index_of(&ChainSet((0..self.x.len()).collect()))
    }

    /// First `a` with `a · X(M) != {xM : xM ⊆ aM}`, when `X(M)` is linear.
    pub fn ideal_translation_failure(&self) -> Result<Option<Elem>, YError> {
        let full = self.full_chain().ok_or_else(|| {
            YError::PreconditionViolated("X(M) is not linear".into())
        })?;
        let m = &self.monoid;
        let green = green_classes(m).expect("D = J in a finite monoid");
        for a in m.elements() {
            let lhs = &self.chains[self.act_unchecked(a, full)].0;
            let am = &green.right_ideals[a];
            let rhs: Vec<usize> =
                (0..self.x.len()).filter(|&i| self.x.members[i].is_subset(am)).collect();
            if *lhs != rhs {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    /// `a · X(M) = {xM : xM ⊆ aM}` for every `a`.
    pub fn verify_ideal_translation(&self) -> Result<bool, YError> {
        Ok(self.ideal_translation_failure()?.is_none())
    }

    pub fn format_chain(&self, x: usize) -> String {
        let sets: Vec<String> = self.chains[x]
            .0
            .iter()
            .map(|&i| format_set(&self.monoid, &self.x.members[i]))
            .collect();
        format!("[{}]", sets.join(","))
    }

    pub fn format_word(&self, w: &YWord) -> String {
        let letters: Vec<String> = w.0.iter().map(|&x| self.format_chain(x)).collect();
        letters.join(" v ")
    }

    /// Number of pairs `(x, y)` with `x <= y`, `x != y`.
    pub fn strict_order_pairs(&self) -> usize {
        (0..self.len())
            .into_par_iter()
            .map(|x| (0..self.len()).filter(|&y| x != y && self.leq(x, y)).count())
            .sum()
    }
}

fn enumerate_chains(x: &IdealFamily, cap: usize) -> Result<Vec<ChainSet>, YError> {
    let k = x.len();
    let above: Vec<Vec<usize>> = (0..k)
        .map(|i| (i + 1..k).filter(|&j| x.members[i].is_subset(&x.members[j])).collect())
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..k).rev().map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        if out.len() == cap {
            return Err(YError::TooLarge { cap });
        }
        let top = *chain.last().unwrap();
        for &j in above[top].iter().rev() {
            let mut c = chain.clone();
            c.push(j);
            stack.push(c);
        }
        out.push(ChainSet(chain));
    }
    Ok(out)
}

/// Convenience wrapper over [`YSpace::verify_ideal_translation`].
pub fn verify_ideal_translation(m: &FiniteMonoid) -> Result<bool, YError> {
    YSpace::new(m)?.verify_ideal_translation()
}
