//! Words and located words over a monoid, bounded spans, extraction and the
//! bounded controllability predicate.
//!
//! A word is a nonempty sequence of elements; `M` acts on it letterwise. A
//! located word is a finite map from positions to elements, and two located
//! words concatenate only when every position of the first is below every
//! position of the second.
//!
//! Text syntax: words are comma separated names (`1,g,h`), located words are
//! `pos:name` pairs (`0:a,2:b`).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::monoid::{Elem, FiniteMonoid, MonoidError};
use crate::yspace::{YError, YSpace, YWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordsError {
    #[error("words are nonempty")]
    EmptyWord,
    #[error("undefined product: {left} then {right}")]
    UndefinedProduct { left: String, right: String },
    #[error("word of length {len} exceeds the coloring bound {bound}")]
    ColoringDomainExceeded { len: usize, bound: usize },
    #[error("coloring is not total: no color for `{0}`")]
    NotTotal(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Y(#[from] YError),
}

pub type Result<T, E = WordsError> = std::result::Result<T, E>;

/// Something `M` acts on letterwise and that has a (possibly partial)
/// concatenation.
pub trait Letters: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync {
    fn act(&self, m: &FiniteMonoid, a: Elem) -> Self;
    /// `None` when the product is undefined.
    fn try_concat(&self, other: &Self) -> Option<Self>;
    /// The letters in order, which is what colorings see.
    fn values(&self) -> Vec<Elem>;
    fn format(&self, m: &FiniteMonoid) -> String;

    fn is_variable(&self, m: &FiniteMonoid) -> bool {
        self.values().contains(&m.identity())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Elem>);

impl Word {
    pub fn new(letters: Vec<Elem>) -> Result<Word> {
        if letters.is_empty() {
            return Err(WordsError::EmptyWord);
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Elem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parse(m: &FiniteMonoid, text: &str) -> Result<Word> {
        Word::new(m.parse_elements(text)?)
    }
}

impl Letters for Word {
    fn act(&self, m: &FiniteMonoid, a: Elem) -> Word {
        Word(self.0.iter().map(|&x| m.mul(a, x)).collect())
    }

    fn try_concat(&self, other: &Word) -> Option<Word> {
        Some(concat(self, other))
    }

    fn values(&self) -> Vec<Elem> {
        self.0.clone()
    }

    fn format(&self, m: &FiniteMonoid) -> String {
        self.0.iter().map(|&x| m.name(x)).collect::<Vec<_>>().join(",")
    }
}

/// A finite position-indexed word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocatedWord(BTreeMap<usize, Elem>);

impl LocatedWord {
    pub fn new(entries: BTreeMap<usize, Elem>) -> Result<LocatedWord> {
        if entries.is_empty() {
            return Err(WordsError::EmptyWord);
        }
        Ok(LocatedWord(entries))
    }

    pub fn entries(&self) -> &BTreeMap<usize, Elem> {
        &self.0
    }

    pub fn min_pos(&self) -> usize {
        *self.0.keys().next().expect("nonempty")
    }

    pub fn max_pos(&self) -> usize {
        *self.0.keys().next_back().expect("nonempty")
    }

    pub fn parse(m: &FiniteMonoid, text: &str) -> Result<LocatedWord> {
        let mut entries = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (pos, name) = part
                .split_once(':')
                .ok_or_else(|| WordsError::Parse(format!("expected `pos:elem`, got `{part}`")))?;
            let pos: usize = pos
                .trim()
                .parse()
                .map_err(|_| WordsError::Parse(format!("bad position `{pos}`")))?;
            let e = m
                .index_of(name.trim())
                .ok_or_else(|| MonoidError::UnknownToken(name.trim().to_string()))?;
            if entries.insert(pos, e).is_some() {
                return Err(WordsError::Parse(format!("position {pos} repeated")));
            }
        }
        LocatedWord::new(entries)
    }
}

impl Letters for LocatedWord {
    fn act(&self, m: &FiniteMonoid, a: Elem) -> LocatedWord {
        LocatedWord(self.0.iter().map(|(&p, &x)| (p, m.mul(a, x))).collect())
    }

    fn try_concat(&self, other: &LocatedWord) -> Option<LocatedWord> {
        if self.max_pos() < other.min_pos() {
            let mut entries = self.0.clone();
            entries.extend(other.0.iter().map(|(&p, &x)| (p, x)));
            Some(LocatedWord(entries))
        } else {
            None
        }
    }

    fn values(&self) -> Vec<Elem> {
        self.0.values().copied().collect()
    }

    fn format(&self, m: &FiniteMonoid) -> String {
        self.0.iter().map(|(p, &x)| format!("{p}:{}", m.name(x))).collect::<Vec<_>>().join(",")
    }
}

pub fn concat(w1: &Word, w2: &Word) -> Word {
    Word(w1.0.iter().chain(&w2.0).copied().collect())
}

pub fn located_concat(x: &LocatedWord, y: &LocatedWord) -> Result<LocatedWord> {
    x.try_concat(y).ok_or_else(|| WordsError::UndefinedProduct {
        left: format!("{:?}", x.0),
        right: format!("{:?}", y.0),
    })
}

pub fn act_word<W: Letters>(m: &FiniteMonoid, a: Elem, w: &W) -> W {
    w.act(m, a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(pub u32);

impl Color {
    pub const BOTTOM: Color = Color(u32::MAX);
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Color::BOTTOM {
            f.write_str("bot")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringKind {
    /// A table of colors; `default` covers words missing from the table.
    Explicit { map: HashMap<Vec<Elem>, Color>, default: Option<Color> },
    /// The first letter lying in the set, else [`Color::BOTTOM`].
    FirstIn { set: Vec<bool> },
    /// A hash of the letters into `colors` classes.
    Seeded { seed: u64, colors: u32 },
}

/// A coloring of all words of length at most `max_len`. Located words are
/// colored by their sequence of letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    kind: ColoringKind,
    max_len: usize,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn words_of_len(n: usize, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = n.checked_pow(len as u32).unwrap_or(0);
    (0..total).map(move |mut code| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        w
    })
}

fn all_words(n: usize, max_len: usize) -> impl Iterator<Item = Vec<Elem>> {
    (1..=max_len).flat_map(move |len| words_of_len(n, len))
}

impl Coloring {
    /// An explicit table. Without a default every word of length at most
    /// `max_len` over `m` must be listed.
    pub fn explicit(
        m: &FiniteMonoid,
        max_len: usize,
        map: HashMap<Vec<Elem>, Color>,
        default: Option<Color>,
    ) -> Result<Coloring> {
        if default.is_none() {
            if let Some(w) = all_words(m.len(), max_len).find(|w| !map.contains_key(w)) {
                return Err(WordsError::NotTotal(Word(w).format(m)));
            }
        }
        Ok(Coloring { kind: ColoringKind::Explicit { map, default }, max_len })
    }

    /// Tabulates `f` on every word of length at most `max_len`.
    pub fn tabulate(m: &FiniteMonoid, max_len: usize, f: impl Fn(&[Elem]) -> Color) -> Coloring {
        let map = all_words(m.len(), max_len).map(|w| {
            let c = f(&w);
            (w, c)
        });
        let map = map.collect();
        Coloring { kind: ColoringKind::Explicit { map, default: None }, max_len }
    }

    pub fn first_in(m: &FiniteMonoid, set: &[Elem], max_len: usize) -> Coloring {
        let mut mask = vec![false; m.len()];
        for &e in set {
            mask[e] = true;
        }
        Coloring { kind: ColoringKind::FirstIn { set: mask }, max_len }
    }

    pub fn seeded(seed: u64, colors: u32, max_len: usize) -> Coloring {
        assert!(colors > 0, "at least one color");
        Coloring { kind: ColoringKind::Seeded { seed, colors }, max_len }
    }

    pub fn constant(max_len: usize) -> Coloring {
        Coloring::seeded(0, 1, max_len)
    }

    pub fn kind(&self) -> &ColoringKind {
        &self.kind
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn color(&self, letters: &[Elem]) -> Result<Color> {
        if letters.len() > self.max_len {
            return Err(WordsError::ColoringDomainExceeded { len: letters.len(), bound: self.max_len });
        }
        Ok(match &self.kind {
            ColoringKind::Explicit { map, default } => match map.get(letters) {
                Some(&c) => c,
                None => default.ok_or_else(|| WordsError::NotTotal(format!("{letters:?}")))?,
            },
            ColoringKind::FirstIn { set } => {
                letters.iter().find(|&&x| set[x]).map_or(Color::BOTTOM, |&x| Color(x as u32))
            }
            ColoringKind::Seeded { seed, colors } => {
                let mut h = splitmix(*seed);
                for &x in letters {
                    h = splitmix(h ^ (x as u64 + 1));
                }
                Color((splitmix(h ^ letters.len() as u64) % *colors as u64) as u32)
            }
        })
    }

    pub fn color_of<W: Letters>(&self, w: &W) -> Result<Color> {
        self.color(&w.values())
    }

    /// Reads a coloring file:
    ///
    /// ```text
    /// maxlen: 3
    /// default: 0
    /// 1,g -> 1
    /// ```
    pub fn parse(m: &FiniteMonoid, text: &str) -> Result<Coloring> {
        let mut max_len = None;
        let mut default = None;
        let mut map = HashMap::new();
        let color = |s: &str| -> Result<Color> {
            match s.trim() {
                "bot" => Ok(Color::BOTTOM),
                t => t.parse().map(Color).map_err(|_| WordsError::Parse(format!("bad color `{t}`"))),
            }
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((w, c)) = line.split_once("->") {
                let w = Word::parse(m, w)?;
                if map.insert(w.0, color(c)?).is_some() {
                    return Err(WordsError::Parse(format!("line {}: word listed twice", i + 1)));
                }
            } else if let Some(rest) = line.strip_prefix("maxlen:") {
                let n = rest.trim().parse().map_err(|_| WordsError::Parse(format!("bad maxlen `{rest}`")))?;
                max_len = Some(n);
            } else if let Some(rest) = line.strip_prefix("default:") {
                default = Some(color(rest)?);
            } else {
                return Err(WordsError::Parse(format!("line {}: unexpected `{line}`", i + 1)));
            }
        }
        let max_len = max_len.ok_or_else(|| WordsError::Parse("missing `maxlen:` line".into()))?;
        Coloring::explicit(m, max_len, map, default)
    }
}

/// One product of a span with the `(m_j, i_j)` it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanTerm<W> {
    pub product: W,
    pub factors: Vec<(Elem, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span<W> {
    pub terms: Vec<SpanTerm<W>>,
    /// Factor choices whose concatenation is undefined.
    pub undefined: Vec<Vec<(Elem, usize)>>,
}

impl<W: Letters> Span<W> {
    pub fn products(&self) -> BTreeSet<W> {
        self.terms.iter().map(|t| t.product.clone()).collect()
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All tuples in `0..n` of length `k`, lexicographic.
pub(crate) fn tuples(n: usize, k: usize) -> Vec<Vec<Elem>> {
    words_of_len(n, k).collect()
}

/// Evaluates `m_0 s_{i_0} ⌢ ... ⌢ m_k s_{i_k}`; `None` when undefined.
pub fn evaluate<W: Letters>(m: &FiniteMonoid, seq: &[W], factors: &[(Elem, usize)]) -> Option<W> {
    let mut it = factors.iter().map(|&(a, i)| seq[i].act(m, a));
    let first = it.next()?;
    it.try_fold(first, |acc, w| acc.try_concat(&w))
}

/// Every product of at most `max_factors` factors with increasing indices
/// and at least one factor acted on by the identity.
pub fn span_enumerate<W: Letters>(m: &FiniteMonoid, seq: &[W], max_factors: usize) -> Span<W> {
    let id = m.identity();
    let mut span = Span { terms: Vec::new(), undefined: Vec::new() };
    for k in 1..=max_factors.min(seq.len()) {
        let ms = tuples(m.len(), k);
        for idx in index_subsets(seq.len(), k) {
            for tuple in ms.iter().filter(|t| t.contains(&id)) {
                let factors: Vec<(Elem, usize)> = tuple.iter().copied().zip(idx.iter().copied()).collect();
                match evaluate(m, seq, &factors) {
                    Some(product) => span.terms.push(SpanTerm { product, factors }),
                    None => span.undefined.push(factors),
                }
            }
        }
    }
    span
}

/// Whether `w` is in the span of `block` with any number of factors.
pub fn in_span(m: &FiniteMonoid, w: &Word, block: &[Word]) -> bool {
    fn go(
        m: &FiniteMonoid,
        w: &[Elem],
        block: &[Word],
        pos: usize,
        next: usize,
        used_id: bool,
        memo: &mut HashMap<(usize, usize, bool), bool>,
    ) -> bool {
        if pos == w.len() {
            return used_id;
        }
        if let Some(&r) = memo.get(&(pos, next, used_id)) {
            return r;
        }
        let mut found = false;
        'outer: for k in next..block.len() {
            let t = block[k].letters();
            if pos + t.len() > w.len() {
                continue;
            }
            for a in m.elements() {
                if t.iter().zip(&w[pos..]).all(|(&x, &y)| m.mul(a, x) == y)
                    && go(m, w, block, pos + t.len(), k + 1, used_id || a == m.identity(), memo)
                {
                    found = true;
                    break 'outer;
                }
            }
        }
        memo.insert((pos, next, used_id), found);
        found
    }
    go(m, w.letters(), block, 0, 0, false, &mut HashMap::new())
}

/// Whether `s` is extracted from `t`: there are cut points
/// `i_0 < i_1 < ... < i_{|s|}` with `s_n` in the span of `t[i_n..i_{n+1}]`.
pub fn is_extracted(m: &FiniteMonoid, s: &[Word], t: &[Word]) -> bool {
    // reach[i]: the first n words of s fit with the next cut at i.
    let mut reach = vec![true; t.len() + 1];
    for sn in s {
        let mut next = vec![false; t.len() + 1];
        for i in (0..t.len()).filter(|&i| reach[i]) {
            for j in i + 1..=t.len() {
                if !next[j] && in_span(m, sn, &t[i..j]) {
                    next[j] = true;
                }
            }
        }
        reach = next;
    }
    reach.iter().any(|&r| r)
}

/// Two span products whose wedges agree (and lie in `F`) but whose colors
/// differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FycViolation {
    pub wedge: YWord,
    pub first: Vec<(Elem, usize)>,
    pub first_color: Color,
    pub second: Vec<(Elem, usize)>,
    pub second_color: Color,
}

type Factors = Vec<(Elem, usize)>;

/// Checks the bounded `(F, y, c)`-controllability of `seq`: whenever
/// `a_0 y ∨ ... ∨ a_n y = b_0 y ∨ ... ∨ b_m y` lies in `F`, the products
/// `a_0 s_{i_0} ... a_n s_{i_n}` and `b_0 s_{j_0} ... b_m s_{j_m}` get the
/// same color. Returns the first violation found, in the order tuples are
/// enumerated (factor count, then element tuple, then indices).
pub fn check_fyc_controllable(
    ys: &YSpace,
    seq: &[Word],
    f: &[YWord],
    y: usize,
    c: &Coloring,
    max_factors: usize,
) -> Result<Option<FycViolation>> {
    if y >= ys.len() || !ys.maximal_chains().contains(&y) {
        return Err(WordsError::PreconditionViolated(format!("chain {y} is not maximal in Y(M)")));
    }
    let m = ys.monoid();
    let f: Vec<YWord> = f.iter().map(|w| ys.normalize(w)).collect();
    // One representative word per class met so far, with the first product seen.
    let mut classes: Vec<(YWord, Factors, Color)> = Vec::new();
    for k in 1..=max_factors.min(seq.len()) {
        let subsets = index_subsets(seq.len(), k);
        for tuple in tuples(m.len(), k) {
            let w = ys.wedge(&tuple, y);
            let mut in_f = false;
            for g in &f {
                if ys.words_equal(&w, g)? {
                    in_f = true;
                    break;
                }
            }
            if !in_f {
                continue;
            }
            let mut slot = None;
            for (i, (rep, _, _)) in classes.iter().enumerate() {
                if ys.words_equal(&w, rep)? {
                    slot = Some(i);
                    break;
                }
            }
            for idx in &subsets {
                let factors: Vec<(Elem, usize)> = tuple.iter().copied().zip(idx.iter().copied()).collect();
                let product = evaluate(m, seq, &factors).expect("words always concatenate");
                let color = c.color_of(&product)?;
                match slot {
                    None => {
                        classes.push((w.clone(), factors, color));
                        slot = Some(classes.len() - 1);
                    }
                    Some(i) if classes[i].2 != color => {
                        let (rep, first, first_color) = classes[i].clone();
                        return Ok(Some(FycViolation {
                            wedge: rep,
                            first,
                            first_color,
                            second: factors,
                            second_color: color,
                        }));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(None)
}

pub fn format_factors(m: &FiniteMonoid, factors: &[(Elem, usize)]) -> String {
    factors.iter().map(|&(a, i)| format!("{}*s{i}", m.name(a))).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::monoid::{family, gowers, i_monoid, table1, transformation_monoid, trivial};
    use proptest::prelude::*;

    fn w(m: &FiniteMonoid, s: &str) -> Word {
        Word::parse(m, s).unwrap()
    }

    #[test]
    fn concat_and_act() {
        let m = table1();
        assert_eq!(concat(&w(&m, "a"), &w(&m, "b")), w(&m, "a,b"));
        let a = m.index_of("a").unwrap();
        assert_eq!(act_word(&m, a, &w(&m, "1,g")), w(&m, "a,b"));
        assert_eq!(act_word(&m, m.identity(), &w(&m, "g,h,0")), w(&m, "g,h,0"));
        assert!(w(&m, "g,1").is_variable(&m));
        assert!(!w(&m, "g,h").is_variable(&m));
        assert_eq!(Word::parse(&m, ""), Err(WordsError::EmptyWord));
    }

    #[test]
    fn located_products() {
        let m = table1();
        let x = LocatedWord::parse(&m, "0:a").unwrap();
        let y = LocatedWord::parse(&m, "2:b").unwrap();
        assert_eq!(located_concat(&x, &y).unwrap(), LocatedWord::parse(&m, "0:a,2:b").unwrap());
        assert!(matches!(located_concat(&y, &x), Err(WordsError::UndefinedProduct { .. })));
        assert!(located_concat(&x, &x).is_err());
        assert_eq!(located_concat(&x, &y).unwrap().format(&m), "0:a,2:b");
        assert!(LocatedWord::parse(&m, "0:a,0:b").is_err());
    }

    #[test]
    fn span_examples() {
        let t = trivial();
        let s = span_enumerate(&t, &[w(&t, "1")], 1);
        assert_eq!(s.products(), BTreeSet::from([w(&t, "1")]));

        let g = gowers(2).unwrap();
        let s = span_enumerate(&g, &[w(&g, "0"), w(&g, "0")], 2);
        let want: BTreeSet<Word> = ["0", "0,0", "0,1", "1,0"].iter().map(|x| w(&g, x)).collect();
        assert_eq!(s.products(), want);
        assert!(s.undefined.is_empty());
    }

    #[test]
    fn located_span_reports_undefined() {
        let g = gowers(2).unwrap();
        let seq = [LocatedWord::parse(&g, "3:0").unwrap(), LocatedWord::parse(&g, "1:0").unwrap()];
        let s = span_enumerate(&g, &seq, 2);
        assert_eq!(s.terms.len(), 2);
        assert_eq!(s.undefined.len(), 3);
    }

    /// Recursive enumerator that builds products factor by factor.
    fn recursive_span(m: &FiniteMonoid, seq: &[Word], max_factors: usize) -> BTreeSet<Word> {
        fn go(
            m: &FiniteMonoid,
            seq: &[Word],
            from: usize,
            left: usize,
            acc: Vec<Elem>,
            used: bool,
            out: &mut BTreeSet<Word>,
        ) {
            if used && !acc.is_empty() {
                out.insert(Word(acc.clone()));
            }
            if left == 0 {
                return;
            }
            for i in from..seq.len() {
                for a in m.elements() {
                    let mut next = acc.clone();
                    next.extend(seq[i].0.iter().map(|&x| m.mul(a, x)));
                    go(m, seq, i + 1, left - 1, next, used || a == m.identity(), out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(m, seq, 0, max_factors, Vec::new(), false, &mut out);
        out
    }

    #[test]
    fn extraction_examples() {
        let m = table1();
        let t = vec![w(&m, "g,1"), w(&m, "1"), w(&m, "h")];
        assert!(is_extracted(&m, &t, &t));
        let a = m.index_of("a").unwrap();
        let s0 = concat(&t[0], &act_word(&m, a, &t[1]));
        assert!(is_extracted(&m, &[s0, t[2].clone()], &t));
        assert!(!is_extracted(&m, &[w(&m, "1,1,1,1,1")], &t));
        assert!(!is_extracted(&m, &[w(&m, "h")], &[w(&m, "g")]));
        assert!(is_extracted(&m, &[], &t));
    }

    #[test]
    fn coloring_kinds() {
        let m = gowers(2).unwrap();
        let c = Coloring::first_in(&m, &[1], 3);
        assert_eq!(c.color(&[0, 1, 0]).unwrap(), Color(1));
        assert_eq!(c.color(&[0, 0]).unwrap(), Color::BOTTOM);
        assert_eq!(
            c.color(&[0, 0, 0, 0]),
            Err(WordsError::ColoringDomainExceeded { len: 4, bound: 3 })
        );
        let s = Coloring::seeded(7, 3, 4);
        assert_eq!(s.color(&[1, 0]).unwrap(), s.color(&[1, 0]).unwrap());
        assert!(s.color(&[1, 0, 1]).unwrap().0 < 3);
        assert!(Coloring::explicit(&m, 1, HashMap::from([(vec![0], Color(0))]), None).is_err());
        let e = Coloring::parse(&m, "maxlen: 2\ndefault: 0\n1,1 -> 5\n").unwrap();
        assert_eq!(e.color(&[1, 1]).unwrap(), Color(5));
        assert_eq!(e.color(&[0]).unwrap(), Color(0));
        assert!(Coloring::parse(&m, "maxlen: 1\n0 -> 1\n").is_err());
        let lw = LocatedWord::parse(&m, "2:1,5:0").unwrap();
        assert_eq!(c.color_of(&lw).unwrap(), Color(1));
    }

    fn pairs_oracle(
        ys: &YSpace,
        seq: &[Word],
        f: &[YWord],
        y: usize,
        c: &Coloring,
        max_factors: usize,
    ) -> bool {
        let m = ys.monoid();
        let mut all = Vec::new();
        for k in 1..=max_factors.min(seq.len()) {
            for t in tuples(m.len(), k) {
                let wn = ys.normalize(&ys.wedge(&t, y));
                if !f.iter().any(|g| ys.normalize(g) == wn) {
                    continue;
                }
                for idx in index_subsets(seq.len(), k) {
                    let mut letters = Vec::new();
                    for (&a, &i) in t.iter().zip(&idx) {
                        letters.extend(seq[i].0.iter().map(|&x| m.mul(a, x)));
                    }
                    all.push((wn.clone(), c.color(&letters).unwrap()));
                }
            }
        }
        all.iter().all(|(w1, c1)| all.iter().all(|(w2, c2)| w1 != w2 || c1 == c2))
    }

    #[test]
    fn fyc_examples() {
        let g = gowers(2).unwrap();
        let ys = YSpace::new(&g).unwrap();
        let r = ys.full_chain().unwrap();
        let seq = vec![w(&g, "0,1"), w(&g, "1,0")];
        let f = vec![YWord(vec![r])];
        assert_eq!(check_fyc_controllable(&ys, &seq, &f, r, &Coloring::constant(4), 2).unwrap(), None);
        assert_eq!(
            check_fyc_controllable(&ys, &seq[..1], &f, r, &Coloring::first_in(&g, &[0], 2), 1).unwrap(),
            None
        );
        // Coloring by the number of letters equal to 0: s0⌢s1 has two,
        // 1·s0⌢s1 has one, and both have wedge [r].
        let c = Coloring::tabulate(&g, 4, |l| Color(l.iter().filter(|&&x| x == 0).count() as u32));
        let v = check_fyc_controllable(&ys, &seq, &f, r, &c, 2).unwrap().unwrap();
        assert_ne!(v.first_color, v.second_color);
        assert!(!pairs_oracle(&ys, &seq, &f, r, &c, 2));
        let below = ys.strictly_below(r);
        assert!(below.iter().all(|&b| check_fyc_controllable(&ys, &seq, &f, b, &c, 2).is_err()));
        assert!(matches!(
            check_fyc_controllable(&ys, &seq, &f, r, &Coloring::constant(3), 2),
            Err(WordsError::ColoringDomainExceeded { .. })
        ));
    }

    #[test]
    fn fyc_matches_monochromatic_span_when_x_linear() {
        for m in [gowers(3).unwrap(), i_monoid(3).unwrap(), table1()] {
            let report = classify(&m).unwrap();
            assert!(report.x_linear && report.aperiodic);
            let ys = YSpace::new(&m).unwrap();
            let y = ys.full_chain().unwrap();
            let f = vec![YWord(vec![y])];
            let id = m.identity();
            let seqs = [vec![Word(vec![id]), Word(vec![id])], vec![Word(vec![id, 1]), Word(vec![id])]];
            for seq in &seqs {
                for seed in 0..6 {
                    let c = Coloring::seeded(seed, 2, 4);
                    let fyc = check_fyc_controllable(&ys, seq, &f, y, &c, 2).unwrap().is_none();
                    let span = span_enumerate(&m, seq, 2);
                    let colors: BTreeSet<Color> =
                        span.terms.iter().map(|t| c.color_of(&t.product).unwrap()).collect();
                    assert_eq!(fyc, colors.len() == 1, "{seq:?} seed {seed}");
                }
            }
        }
    }

    fn arb_instance() -> impl Strategy<Value = (FiniteMonoid, Vec<Word>)> {
        let m = prop_oneof![
            Just(gowers(2).unwrap()),
            Just(table1()),
            Just(family("cyclic", &["2"]).unwrap()),
            Just(transformation_monoid(2, &[vec![1, 1]]).unwrap().monoid),
        ];
        (m, prop::collection::vec(prop::collection::vec(0usize..6, 1..=2), 1..=3)).prop_map(|(m, ws)| {
            let n = m.len();
            let seq = ws.into_iter().map(|l| Word(l.into_iter().map(|x| x % n).collect())).collect();
            (m, seq)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn span_matches_recursive_enumeration((m, seq) in arb_instance(), k in 1usize..=3) {
            prop_assert_eq!(span_enumerate(&m, &seq, k).products(), recursive_span(&m, &seq, k));
        }

        #[test]
        fn span_of_extracted_lies_in_span((m, t) in arb_instance(), picks in prop::collection::vec(0usize..1000, 3)) {
            // Build s by picking one span element per singleton-or-pair block.
            let mut s = Vec::new();
            let mut i = 0;
            let mut p = picks.into_iter();
            while i < t.len() {
                let end = (i + 1 + p.next().unwrap_or(0) % 2).min(t.len());
                let span = span_enumerate(&m, &t[i..end], 2);
                let terms = span.terms;
                s.push(terms[p.next().unwrap_or(0) % terms.len()].product.clone());
                i = end;
            }
            prop_assert!(is_extracted(&m, &s, &t));
            for x in span_enumerate(&m, &s, 2).products() {
                prop_assert!(in_span(&m, &x, &t));
            }
        }

        #[test]
        fn located_concat_associative_and_equivariant(
            ps in prop::collection::vec(prop::collection::btree_map(0usize..8, 0usize..6, 1..=2), 3),
            a in 0usize..6,
        ) {
            let m = table1();
            let ws: Vec<LocatedWord> = ps
                .into_iter()
                .map(|e| LocatedWord(e.into_iter().map(|(p, x)| (p, x % m.len())).collect()))
                .collect();
            let a = a % m.len();
            let left = located_concat(&ws[0], &ws[1]).and_then(|xy| located_concat(&xy, &ws[2]));
            let right = located_concat(&ws[1], &ws[2]).and_then(|yz| located_concat(&ws[0], &yz));
            prop_assert_eq!(left.is_ok(), right.is_ok());
            if let (Ok(l), Ok(r)) = (&left, &right) {
                prop_assert_eq!(l, r);
            }
            if let Ok(xy) = located_concat(&ws[0], &ws[1]) {
                let acted = located_concat(&act_word(&m, a, &ws[0]), &act_word(&m, a, &ws[1])).unwrap();
                prop_assert_eq!(act_word(&m, a, &xy), acted);
            }
        }
    }
}
