//! Thompson NFAs, subset construction, minimization and the `.dfa` format.
//!
//! ```text
//! states: q0 q1
//! alphabet: a
//! initial: q0
//! accepting: q0
//! q0 a -> q1
//! q1 a -> q0
//! ```

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::regex::{Alphabet, Regex};
use super::{Result, SyntacticError};

/// A complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    /// `trans[q][s]`.
    trans: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(alphabet: Alphabet, trans: Vec<Vec<usize>>, initial: usize, accepting: Vec<bool>) -> Result<Dfa> {
        let n = trans.len();
        if n == 0 {
            return Err(SyntacticError::InvalidDfa("no states".into()));
        }
        if initial >= n {
            return Err(SyntacticError::InvalidDfa(format!("initial state {initial} out of range")));
        }
        if accepting.len() != n {
            return Err(SyntacticError::InvalidDfa("accepting flags do not match state count".into()));
        }
        for (q, row) in trans.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(SyntacticError::InvalidDfa(format!("state {q} has {} transitions", row.len())));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(SyntacticError::InvalidDfa(format!("transition from {q} to missing state {t}")));
            }
        }
        Ok(Dfa { alphabet, trans, initial, accepting })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: usize, s: usize) -> usize {
        self.trans[q][s]
    }

    /// The map `q ↦ δ(q, s)` for one symbol.
    pub fn letter_map(&self, s: usize) -> Vec<usize> {
        self.trans.iter().map(|row| row[s]).collect()
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[word.iter().fold(self.initial, |q, &s| self.trans[q][s])]
    }
}

struct Nfa {
    eps: Vec<Vec<usize>>,
    sym: Vec<Vec<(usize, usize)>>,
}

impl Nfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.sym.push(Vec::new());
        self.eps.len() - 1
    }

    /// Thompson fragment: returns (start, end).
    fn build(&mut self, r: &Regex) -> (usize, usize) {
        let (s, e) = (self.state(), self.state());
        match r {
            Regex::Empty => {}
            Regex::Epsilon => self.eps[s].push(e),
            Regex::Literal(a) => self.sym[s].push((*a, e)),
            Regex::Union(a, b) => {
                for part in [a, b] {
                    let (ps, pe) = self.build(part);
                    self.eps[s].push(ps);
                    self.eps[pe].push(e);
                }
            }
            Regex::Concat(a, b) => {
                let (as_, ae) = self.build(a);
                let (bs, be) = self.build(b);
                self.eps[s].push(as_);
                self.eps[ae].push(bs);
                self.eps[be].push(e);
            }
            Regex::Star(a) => {
                let (as_, ae) = self.build(a);
                self.eps[s].extend([as_, e]);
                self.eps[ae].extend([as_, e]);
            }
        }
        (s, e)
    }

    fn closure(&self, set: &mut FixedBitSet) {
        let mut stack: Vec<usize> = set.ones().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if !set.put(t) {
                    stack.push(t);
                }
            }
        }
    }
}

/// Thompson construction followed by the subset construction. The empty
/// subset, when reachable, is the sink.
pub fn regex_to_dfa(r: &Regex, alphabet: &Alphabet) -> Dfa {
    let mut nfa = Nfa { eps: Vec::new(), sym: Vec::new() };
    let (start, end) = nfa.build(r);
    let n = nfa.eps.len();
    let mut first = FixedBitSet::with_capacity(n);
    first.insert(start);
    nfa.closure(&mut first);
    let mut index: HashMap<FixedBitSet, usize> = HashMap::from([(first.clone(), 0)]);
    let mut subsets = vec![first];
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut row = Vec::with_capacity(alphabet.len());
        for a in 0..alphabet.len() {
            let mut next = FixedBitSet::with_capacity(n);
            for q in subsets[i].ones() {
                for &(s, t) in &nfa.sym[q] {
                    if s == a {
                        next.insert(t);
                    }
                }
            }
            nfa.closure(&mut next);
            let id = *index.entry(next.clone()).or_insert_with(|| {
                subsets.push(next);
                subsets.len() - 1
            });
            row.push(id);
        }
        trans.push(row);
        i += 1;
    }
    let accepting = subsets.iter().map(|s| s.contains(end)).collect();
    Dfa { alphabet: alphabet.clone(), trans, initial: 0, accepting }
}

/// Drops unreachable states, merges equivalent ones by partition
/// refinement and renames states in breadth-first order from the initial
/// state, so equal languages give equal automata.
pub fn minimize_dfa(d: &Dfa) -> Dfa {
    let k = d.alphabet.len();
    let reach = bfs_order(d);
    let mut class: Vec<usize> = vec![0; d.state_count()];
    for &q in &reach {
        class[q] = d.accepting[q] as usize;
    }
    let mut count = 0;
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next = vec![0; d.state_count()];
        for &q in &reach {
            let key = (class[q], (0..k).map(|s| class[d.trans[q][s]]).collect());
            let len = ids.len();
            next[q] = *ids.entry(key).or_insert(len);
        }
        class = next;
        if ids.len() == count {
            break;
        }
        count = ids.len();
    }
    let mut reps: Vec<Option<usize>> = vec![None; count];
    for &q in &reach {
        reps[class[q]].get_or_insert(q);
    }
    let reps: Vec<usize> = reps.into_iter().map(|r| r.expect("each class is inhabited")).collect();
    let quotient = Dfa {
        alphabet: d.alphabet.clone(),
        trans: reps.iter().map(|&q| (0..k).map(|s| class[d.trans[q][s]]).collect()).collect(),
        initial: class[d.initial],
        accepting: reps.iter().map(|&q| d.accepting[q]).collect(),
    };
    renumber(&quotient)
}

fn bfs_order(d: &Dfa) -> Vec<usize> {
    let mut seen = vec![false; d.state_count()];
    let mut order = vec![d.initial];
    seen[d.initial] = true;
    let mut queue = VecDeque::from([d.initial]);
    while let Some(q) = queue.pop_front() {
        for &t in &d.trans[q] {
            if !seen[t] {
                seen[t] = true;
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    order
}

fn renumber(d: &Dfa) -> Dfa {
    let order = bfs_order(d);
    let mut new_id = vec![usize::MAX; d.state_count()];
    for (i, &q) in order.iter().enumerate() {
        new_id[q] = i;
    }
    Dfa {
        alphabet: d.alphabet.clone(),
        trans: order.iter().map(|&q| d.trans[q].iter().map(|&t| new_id[t]).collect()).collect(),
        initial: 0,
        accepting: order.iter().map(|&q| d.accepting[q]).collect(),
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> SyntacticError {
    SyntacticError::Parse { line, msg: msg.into() }
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let mut states: Option<Vec<String>> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut initial: Option<(usize, String)> = None;
    let mut accepting: Option<(usize, Vec<String>)> = None;
    let mut edges: Vec<(usize, String, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((lhs, to)) = line.split_once("->") {
            let parts: Vec<&str> = lhs.split_whitespace().collect();
            let [from, sym] = parts.as_slice() else {
                return Err(parse_err(lineno, "expected `state symbol -> state`"));
            };
            edges.push((lineno, from.to_string(), sym.to_string(), to.trim().to_string()));
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, format!("unexpected `{line}`")))?;
        let toks: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        match key.trim() {
            "states" => states = Some(toks),
            "alphabet" => {
                alphabet = Some(Alphabet::new(&toks.concat()).map_err(|e| parse_err(lineno, e.to_string()))?)
            }
            "initial" => match toks.as_slice() {
                [q] => initial = Some((lineno, q.clone())),
                _ => return Err(parse_err(lineno, "`initial:` takes one state")),
            },
            "accepting" => accepting = Some((lineno, toks)),
            other => return Err(parse_err(lineno, format!("unknown key `{other}`"))),
        }
    }
    let states = states.ok_or_else(|| parse_err(0, "missing `states:` line"))?;
    let alphabet = alphabet.ok_or_else(|| parse_err(0, "missing `alphabet:` line"))?;
    let state_index = |line: usize, q: &str| {
        states.iter().position(|s| s == q).ok_or_else(|| parse_err(line, format!("unknown state `{q}`")))
    };
    let (iline, iname) = initial.ok_or_else(|| parse_err(0, "missing `initial:` line"))?;
    let initial = state_index(iline, &iname)?;
    let mut acc = vec![false; states.len()];
    if let Some((aline, names)) = accepting {
        for q in names {
            acc[state_index(aline, &q)?] = true;
        }
    }
    let mut trans: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; states.len()];
    for (line, from, sym, to) in edges {
        let mut chars = sym.chars();
        let s = match (chars.next(), chars.next()) {
            (Some(c), None) => alphabet.index_of(c),
            _ => None,
        }
        .ok_or_else(|| parse_err(line, format!("`{sym}` is not in the alphabet")))?;
        let (f, t) = (state_index(line, &from)?, state_index(line, &to)?);
        if trans[f][s].replace(t).is_some() {
            return Err(parse_err(line, format!("second transition for `{from} {sym}`")));
        }
    }
    let mut full = Vec::with_capacity(states.len());
    for (q, row) in trans.into_iter().enumerate() {
        let row: Option<Vec<usize>> = row.into_iter().collect();
        full.push(row.ok_or_else(|| {
            SyntacticError::InvalidDfa(format!("state `{}` is missing a transition", states[q]))
        })?);
    }
    Dfa::new(alphabet, full, initial, acc)
}

pub fn write_dfa(d: &Dfa) -> String {
    let name = |q: usize| format!("q{q}");
    let syms = d.alphabet.symbols();
    let mut out = format!(
        "states: {}\nalphabet: {}\ninitial: {}\naccepting: {}\n",
        (0..d.state_count()).map(name).collect::<Vec<_>>().join(" "),
        syms.iter().map(char::to_string).collect::<Vec<_>>().join(" "),
        name(d.initial),
        (0..d.state_count()).filter(|&q| d.accepting[q]).map(name).collect::<Vec<_>>().join(" "),
    );
    for q in 0..d.state_count() {
        for (s, c) in syms.iter().enumerate() {
            out.push_str(&format!("{} {c} -> {}\n", name(q), name(d.trans[q][s])));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntactic::regex::parse_regex;
    use proptest::prelude::*;

    fn words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..k).map(move |s| {
                        let mut v = w.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn epsilon_automaton() {
        let a = Alphabet::new("a").unwrap();
        let d = minimize_dfa(&regex_to_dfa(&Regex::Epsilon, &a));
        assert_eq!(d.state_count(), 2);
        assert!(d.is_accepting(d.initial()));
        assert!(!d.accepts(&[0]));
        let empty = minimize_dfa(&regex_to_dfa(&Regex::Empty, &a));
        assert_eq!(empty.state_count(), 1);
    }

    #[test]
    fn parity_automaton() {
        let a = Alphabet::new("g").unwrap();
        let d = minimize_dfa(&regex_to_dfa(&parse_regex("(gg)*", &a).unwrap(), &a));
        assert_eq!(d.state_count(), 2);
        assert_eq!(d.letter_map(0), vec![1, 0]);
    }

    #[test]
    fn dfa_file_round_trip() {
        let a = Alphabet::new("agh").unwrap();
        let d = minimize_dfa(&regex_to_dfa(&parse_regex("(g|h)*h|a*", &a).unwrap(), &a));
        assert_eq!(parse_dfa(&write_dfa(&d)).unwrap(), d);
        let text = "states: p q\nalphabet: a\ninitial: p\naccepting: q\np a -> q\n";
        assert!(matches!(parse_dfa(text), Err(SyntacticError::InvalidDfa(_))));
        let text = "states: p\nalphabet: a\ninitial: r\np a -> p\n";
        assert!(matches!(parse_dfa(text), Err(SyntacticError::Parse { line: 3, .. })));
        let text = "states: p\nalphabet: a\ninitial: p\np b -> p\n";
        assert!(matches!(parse_dfa(text), Err(SyntacticError::Parse { line: 4, .. })));
    }

    fn arb_regex(k: usize) -> impl Strategy<Value = Regex> {
        let leaf = prop_oneof![
            1 => Just(Regex::Empty),
            1 => Just(Regex::Epsilon),
            6 => (0..k).prop_map(Regex::Literal),
        ];
        leaf.prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Regex::Union(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Regex::Concat(Box::new(a), Box::new(b))),
                inner.prop_map(|a| Regex::Star(Box::new(a))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn minimal_dfa_matches_brute_force((k, r) in (1usize..=3).prop_flat_map(|k| (Just(k), arb_regex(k)))) {
            let alphabet = Alphabet::new(&"abc"[..k]).unwrap();
            let raw = regex_to_dfa(&r, &alphabet);
            let d = minimize_dfa(&raw);
            prop_assert!(d.state_count() <= raw.state_count());
            for w in words(k, 6) {
                prop_assert_eq!(d.accepts(&w), r.matches(&w), "{:?}", w);
                prop_assert_eq!(raw.accepts(&w), d.accepts(&w));
            }
            prop_assert_eq!(minimize_dfa(&d), d);
        }
    }
}
