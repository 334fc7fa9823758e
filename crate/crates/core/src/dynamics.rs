//! Monoid actions on finite semigroups by endomorphisms: idempotents, the
//! kernel, controlled idempotents, and equivariant maps out of `Y(M)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::classify::is_aperiodic_power;
use crate::green::{green_classes, x_r_family_of, GreenData};
use crate::monoid::{carlson, Elem, FiniteMonoid, FiniteSemigroup, MonoidError};
use crate::yspace::YSpace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("element {0} is not idempotent")]
    NotIdempotent(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// The construction returned something the theory rules out. A bug.
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
    #[error("witness invariant `{which}` failed at {at}")]
    WitnessInvariantFailed { which: &'static str, at: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

pub type Result<T, E = DynamicsError> = std::result::Result<T, E>;

/// A finite semigroup, possibly represented lazily.
pub trait Space: Sync {
    fn size(&self) -> usize;
    fn mul(&self, u: usize, v: usize) -> usize;
    fn label(&self, u: usize) -> String;
}

impl Space for FiniteSemigroup {
    fn size(&self) -> usize {
        self.len()
    }

    fn mul(&self, u: usize, v: usize) -> usize {
        FiniteSemigroup::mul(self, u, v)
    }

    fn label(&self, u: usize) -> String {
        self.name(u).to_string()
    }
}

/// A left action of a monoid on the points `0..points()`.
pub trait LeftAction: Sync {
    fn monoid(&self) -> &FiniteMonoid;
    fn points(&self) -> usize;
    fn act(&self, m: Elem, u: usize) -> usize;

    /// `a(U)`, the image of `a`, as a bitset.
    fn image(&self, a: Elem) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.points());
        for u in 0..self.points() {
            s.insert(self.act(a, u));
        }
        s
    }
}

/// A left action by endomorphisms of a semigroup.
pub trait ActionSystem: LeftAction {
    type U: Space;
    fn space(&self) -> &Self::U;
}

/// Checks the left action laws exhaustively.
pub fn check_action_laws<A: LeftAction + ?Sized>(a: &A) -> Result<()> {
    let m = a.monoid();
    for u in 0..a.points() {
        if a.act(m.identity(), u) != u {
            return Err(DynamicsError::InvalidAction(format!("1 does not fix point {u}")));
        }
        for x in m.elements() {
            let xu = a.act(x, u);
            for y in m.elements() {
                if a.act(m.mul(y, x), u) != a.act(y, xu) {
                    return Err(DynamicsError::InvalidAction(format!(
                        "({}{})({u}) differs from {}({}({u}))",
                        m.name(y),
                        m.name(x),
                        m.name(y),
                        m.name(x)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Checks that every `m` acts as an endomorphism of the space.
pub fn check_endomorphisms<A: ActionSystem + ?Sized>(a: &A) -> Result<()> {
    let (m, s) = (a.monoid(), a.space());
    for x in m.elements() {
        for u in 0..s.size() {
            let xu = a.act(x, u);
            for v in 0..s.size() {
                if a.act(x, s.mul(u, v)) != s.mul(xu, a.act(x, v)) {
                    return Err(DynamicsError::InvalidAction(format!(
                        "{} is not an endomorphism at ({}, {})",
                        m.name(x),
                        s.label(u),
                        s.label(v)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// An explicit action table over an explicit semigroup.
#[derive(Clone, Debug)]
pub struct FiniteActionSystem {
    monoid: FiniteMonoid,
    space: FiniteSemigroup,
    /// `table[m * |U| + u]`.
    table: Vec<usize>,
}

impl FiniteActionSystem {
    /// Validates the action laws and the endomorphism law.
    pub fn new(monoid: FiniteMonoid, space: FiniteSemigroup, table: Vec<usize>) -> Result<Self> {
        if table.len() != monoid.len() * space.len() || table.iter().any(|&v| v >= space.len()) {
            return Err(DynamicsError::InvalidAction("table has the wrong shape".into()));
        }
        let sys = FiniteActionSystem { monoid, space, table };
        check_action_laws(&sys)?;
        check_endomorphisms(&sys)?;
        Ok(sys)
    }

    /// `M` acting by left multiplication on its own elements, viewed as a
    /// right-zero semigroup. Every map is an endomorphism of a right-zero
    /// semigroup, so no validation is needed.
    pub fn right_zero_self_action(m: &FiniteMonoid) -> FiniteActionSystem {
        let space = carlson(m.names()).expect("monoid names are valid point names");
        let table = m.elements().flat_map(|a| m.elements().map(move |u| (a, u)))
            .map(|(a, u)| m.mul(a, u))
            .collect();
        FiniteActionSystem { monoid: m.clone(), space, table }
    }

    pub fn space_semigroup(&self) -> &FiniteSemigroup {
        &self.space
    }
}

impl LeftAction for FiniteActionSystem {
    fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    fn points(&self) -> usize {
        self.space.len()
    }

    fn act(&self, m: Elem, u: usize) -> usize {
        self.table[m * self.space.len() + u]
    }
}

impl ActionSystem for FiniteActionSystem {
    type U = FiniteSemigroup;

    fn space(&self) -> &FiniteSemigroup {
        &self.space
    }
}

/// Words of length `1..=max_len` over an alphabet of `letters` symbols,
/// plus an absorbing element `⊥` for concatenations that would be longer.
///
/// Element `0` is `⊥`; words follow, ordered by length and then
/// lexicographically. Products are computed arithmetically, not tabulated.
#[derive(Clone, Debug)]
pub struct TruncatedWords {
    letters: usize,
    max_len: usize,
    names: Vec<String>,
    /// `offsets[l]` is the code of the first word of length `l`.
    offsets: Vec<usize>,
    powers: Vec<usize>,
}

impl TruncatedWords {
    pub fn new(names: &[String], max_len: usize) -> TruncatedWords {
        let k = names.len();
        let mut powers = vec![1usize];
        for _ in 0..max_len {
            powers.push(powers.last().unwrap() * k);
        }
        let mut offsets = vec![0, 1];
        for l in 1..=max_len {
            offsets.push(offsets[l] + powers[l]);
        }
        TruncatedWords { letters: k, max_len, names: names.to_vec(), offsets, powers }
    }

    pub const BOTTOM: usize = 0;

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Length of the word with this code; `⊥` has length 0.
    pub fn word_len(&self, u: usize) -> usize {
        if u == Self::BOTTOM {
            return 0;
        }
        (1..=self.max_len).rfind(|&l| self.offsets[l] <= u).expect("valid code")
    }

    pub fn decode(&self, u: usize) -> Vec<usize> {
        let l = self.word_len(u);
        if l == 0 {
            return Vec::new();
        }
        let mut c = u - self.offsets[l];
        let mut out = vec![0; l];
        for slot in out.iter_mut().rev() {
            *slot = c % self.letters;
            c /= self.letters;
        }
        out
    }

    pub fn encode(&self, word: &[usize]) -> usize {
        if word.is_empty() || word.len() > self.max_len {
            return Self::BOTTOM;
        }
        self.offsets[word.len()] + word.iter().fold(0, |acc, &x| acc * self.letters + x)
    }
}

impl Space for TruncatedWords {
    fn size(&self) -> usize {
        self.offsets[self.max_len + 1]
    }

    fn mul(&self, u: usize, v: usize) -> usize {
        let (lu, lv) = (self.word_len(u), self.word_len(v));
        if lu == 0 || lv == 0 || lu + lv > self.max_len {
            return Self::BOTTOM;
        }
        let cu = u - self.offsets[lu];
        let cv = v - self.offsets[lv];
        self.offsets[lu + lv] + cu * self.powers[lv] + cv
    }

    fn label(&self, u: usize) -> String {
        if u == Self::BOTTOM {
            return "bot".into();
        }
        let letters: Vec<&str> = self.decode(u).iter().map(|&x| self.names[x].as_str()).collect();
        format!("[{}]", letters.join(","))
    }
}

/// `M` acting letterwise on truncated words over `M`.
#[derive(Clone, Debug)]
pub struct WordActionSystem {
    monoid: FiniteMonoid,
    words: TruncatedWords,
}

impl WordActionSystem {
    pub fn new(m: &FiniteMonoid, max_len: usize) -> WordActionSystem {
        WordActionSystem { monoid: m.clone(), words: TruncatedWords::new(m.names(), max_len) }
    }
}

impl LeftAction for WordActionSystem {
    fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    fn points(&self) -> usize {
        self.words.size()
    }

    fn act(&self, m: Elem, u: usize) -> usize {
        if u == TruncatedWords::BOTTOM {
            return u;
        }
        let w: Vec<usize> = self.words.decode(u).iter().map(|&x| self.monoid.mul(m, x)).collect();
        self.words.encode(&w)
    }
}

impl ActionSystem for WordActionSystem {
    type U = TruncatedWords;

    fn space(&self) -> &TruncatedWords {
        &self.words
    }
}

/// A left action on a plain set, with no semigroup structure.
#[derive(Clone, Debug)]
pub struct SetAction {
    monoid: FiniteMonoid,
    points: usize,
    table: Vec<usize>,
}

impl SetAction {
    pub fn new(monoid: FiniteMonoid, points: usize, table: Vec<usize>) -> Result<SetAction> {
        if table.len() != monoid.len() * points || table.iter().any(|&v| v >= points) {
            return Err(DynamicsError::InvalidAction("table has the wrong shape".into()));
        }
        let a = SetAction { monoid, points, table };
        check_action_laws(&a)?;
        Ok(a)
    }

    /// `M` acting on its own elements by left multiplication.
    pub fn by_multiplication(m: &FiniteMonoid) -> SetAction {
        let table = m.elements().flat_map(|a| m.elements().map(move |u| m.mul(a, u))).collect();
        SetAction { monoid: m.clone(), points: m.len(), table }
    }
}

impl LeftAction for SetAction {
    fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    fn points(&self) -> usize {
        self.points
    }

    fn act(&self, m: Elem, u: usize) -> usize {
        self.table[m * self.points + u]
    }
}

pub fn is_idempotent<S: Space + ?Sized>(s: &S, u: usize) -> bool {
    s.mul(u, u) == u
}

/// `E(U)` in element order.
pub fn idempotents<S: Space + ?Sized>(s: &S) -> Vec<usize> {
    (0..s.size()).filter(|&u| is_idempotent(s, u)).collect()
}

/// `u <= v` iff `uv = u = vu`.
pub fn idem_leq<S: Space + ?Sized>(s: &S, u: usize, v: usize) -> bool {
    s.mul(u, v) == u && s.mul(v, u) == u
}

/// The idempotent power `u^ω`.
pub fn omega<S: Space + ?Sized>(s: &S, u: usize) -> usize {
    let mut p = u;
    while !is_idempotent(s, p) {
        p = s.mul(p, u);
    }
    p
}

/// First idempotent in `within` that is below `v` and minimal among the
/// idempotents of `within`. `within` must list the idempotents of a
/// subsemigroup in element order.
pub fn minimal_below_in<S: Space + ?Sized>(s: &S, within: &[usize], v: usize) -> Result<usize> {
    if !is_idempotent(s, v) {
        return Err(DynamicsError::NotIdempotent(s.label(v)));
    }
    let below: Vec<usize> = within.iter().copied().filter(|&e| idem_leq(s, e, v)).collect();
    below
        .iter()
        .copied()
        .find(|&e| below.iter().all(|&f| f == e || !idem_leq(s, f, e)))
        .ok_or_else(|| {
            DynamicsError::PreconditionViolated(format!("no idempotent below {}", s.label(v)))
        })
}

/// A `<=`-minimal idempotent below `v`, first in element order.
pub fn minimal_below<S: Space + ?Sized>(s: &S, v: usize) -> Result<usize> {
    minimal_below_in(s, &idempotents(s), v)
}

/// The minimal two-sided ideal `U¹zU¹`, where `z` is the product of all
/// elements (which lies in every ideal).
pub fn kernel<S: Space + ?Sized>(s: &S) -> FixedBitSet {
    let n = s.size();
    let z = (1..n).fold(0, |acc, u| s.mul(acc, u));
    let mut left = FixedBitSet::with_capacity(n);
    left.insert(z);
    for u in 0..n {
        left.insert(s.mul(u, z));
    }
    let mut k = left.clone();
    for l in left.ones() {
        for v in 0..n {
            k.insert(s.mul(l, v));
        }
    }
    k
}

fn r_pairs(green: &GreenData) -> impl Iterator<Item = (Elem, Elem)> + '_ {
    green.r.classes.iter().flat_map(|c| {
        c.iter().flat_map(move |&a| c.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
    })
}

/// Hypotheses shared by the controlled-idempotent results: `M` aperiodic
/// and `X_R(M)` linear.
fn require_controlled(m: &FiniteMonoid, green: &GreenData) -> Result<()> {
    if let (false, Some(a)) = is_aperiodic_power(m) {
        return Err(DynamicsError::PreconditionViolated(format!(
            "not aperiodic: powers of {} never stabilise",
            m.name(a)
        )));
    }
    if !x_r_family_of(green).linear {
        return Err(DynamicsError::PreconditionViolated("X_R(M) is not linear".into()));
    }
    Ok(())
}

/// `g` with `ag = b` and `gM` inclusion-minimal among such, first in
/// element order.
fn minimal_solution(m: &FiniteMonoid, green: &GreenData, a: Elem, b: Elem) -> Option<Elem> {
    let sols: Vec<Elem> = m.elements().filter(|&x| m.mul(a, x) == b).collect();
    sols.iter().copied().find(|&x| {
        sols.iter().all(|&y| {
            !(green.right_ideals[y].is_subset(&green.right_ideals[x])
                && green.right_ideals[y] != green.right_ideals[x])
        })
    })
}

/// `(g, h)` with `ag = b`, `bh = a`, `gh = h`, `hg = g` for distinct
/// R-equivalent `a, b`: each is a solution with minimal right ideal.
///
/// The choice is guaranteed to work when `M` is aperiodic with linear
/// `X_R(M)`. Without linearity it is still tried and the result checked.
pub fn lemma_witnesses(m: &FiniteMonoid, a: Elem, b: Elem) -> Result<(Elem, Elem)> {
    let green = green_classes(m).expect("D = J in a finite monoid");
    lemma_witnesses_with(m, &green, a, b)
}

pub fn lemma_witnesses_with(
    m: &FiniteMonoid,
    green: &GreenData,
    a: Elem,
    b: Elem,
) -> Result<(Elem, Elem)> {
    if let (false, Some(x)) = is_aperiodic_power(m) {
        return Err(DynamicsError::PreconditionViolated(format!(
            "not aperiodic: powers of {} never stabilise",
            m.name(x)
        )));
    }
    if a == b || !green.r.same(a, b) {
        return Err(DynamicsError::PreconditionViolated(format!(
            "{} and {} are not distinct R-equivalent elements",
            m.name(a),
            m.name(b)
        )));
    }
    let g = minimal_solution(m, green, a, b).expect("a R b gives a solution");
    let h = minimal_solution(m, green, b, a).expect("a R b gives a solution");
    let ok = m.mul(a, g) == b
        && m.mul(b, h) == a
        && m.mul(g, h) == h
        && m.mul(h, g) == g
        && green.right_ideals[g] == green.right_ideals[h];
    if ok {
        return Ok((g, h));
    }
    let detail = format!(
        "g = {}, h = {} for ({}, {})",
        m.name(g),
        m.name(h),
        m.name(a),
        m.name(b)
    );
    if x_r_family_of(green).linear {
        Err(DynamicsError::PostconditionFailed(detail))
    } else {
        Err(DynamicsError::PreconditionViolated(format!("X_R(M) is not linear and {detail} fails")))
    }
}

/// The idempotent returned by [`find_controlled_idempotent`] and the chain
/// that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlledIdempotent {
    pub u: usize,
    /// `(a_i, u_i)`: the ideal chain of `X_R(M)` followed by `1`, with the
    /// idempotent chosen at each step.
    pub steps: Vec<(Elem, usize)>,
}

/// Idempotents of `a(U)` in element order.
fn image_idempotents<A: ActionSystem>(sys: &A, a: Elem) -> Vec<usize> {
    sys.image(a).ones().filter(|&u| is_idempotent(sys.space(), u)).collect()
}

/// Walks `X_R(M)` upwards, picking at each step an idempotent of `a_i(U)`
/// that is minimal there and below the previous one, and finishes inside
/// `U` itself. The result is checked before it is returned.
pub fn find_controlled_idempotent<A: ActionSystem>(sys: &A) -> Result<ControlledIdempotent> {
    let m = sys.monoid();
    let green = green_classes(m).expect("D = J in a finite monoid");
    require_controlled(m, &green)?;
    let mut reps = x_r_family_of(&green).reps;
    reps.push(m.identity());
    let s = sys.space();
    let mut steps = Vec::with_capacity(reps.len());
    let mut prev: Option<usize> = None;
    for &a in &reps {
        let within = image_idempotents(sys, a);
        let start = match prev {
            Some(p) => p,
            None => *within.first().ok_or_else(|| {
                DynamicsError::PostconditionFailed(format!("no idempotent in {}(U)", m.name(a)))
            })?,
        };
        let u = minimal_below_in(s, &within, start)
            .map_err(|e| DynamicsError::PostconditionFailed(e.to_string()))?;
        steps.push((a, u));
        prev = Some(u);
    }
    let u = prev.expect("at least one step");
    if let Some(problem) = controlled_postcondition(sys, &green, u) {
        return Err(DynamicsError::PostconditionFailed(problem));
    }
    Ok(ControlledIdempotent { u, steps })
}

/// Why `u` is not controlled, if it is not: it must be an idempotent in the
/// kernel with `a(u) = b(u)` whenever `a R b`.
pub fn controlled_postcondition<A: ActionSystem>(
    sys: &A,
    green: &GreenData,
    u: usize,
) -> Option<String> {
    let (m, s) = (sys.monoid(), sys.space());
    if !is_idempotent(s, u) {
        return Some(format!("{} is not idempotent", s.label(u)));
    }
    if !kernel(s).contains(u) {
        return Some(format!("{} is not in the kernel", s.label(u)));
    }
    r_pairs(green).find(|&(a, b)| sys.act(a, u) != sys.act(b, u)).map(|(a, b)| {
        format!("{}({}) differs from {}({})", m.name(a), s.label(u), m.name(b), s.label(u))
    })
}

/// For any left action: `a(u) = b(u)` for every `a R b` and `u ∈ a(U)`.
///
/// Guaranteed when `M` is aperiodic with linear `X_R(M)`; only aperiodicity
/// is required here, since the check itself is exhaustive.
pub fn verify_image_agreement<A: LeftAction + ?Sized>(action: &A) -> Result<bool> {
    let m = action.monoid();
    let green = green_classes(m).expect("D = J in a finite monoid");
    if let (false, Some(x)) = is_aperiodic_power(m) {
        return Err(DynamicsError::PreconditionViolated(format!(
            "not aperiodic: powers of {} never stabilise",
            m.name(x)
        )));
    }
    let agree = r_pairs(&green).all(|(a, b)| {
        action.image(a).ones().all(|u| action.act(a, u) == action.act(b, u))
    });
    Ok(agree)
}

/// Values of an equivariant map `Y(M) -> E(U)`, indexed by chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodWitness {
    pub values: Vec<usize>,
}

/// Outcome of the three invariant checks on a map `Y(M) -> E(U)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessChecks {
    pub idempotent: Option<String>,
    pub equivariant: Option<String>,
    pub order_reversing: Option<String>,
    pub maximal_in_kernel: Option<String>,
}

impl WitnessChecks {
    pub fn all_pass(&self) -> bool {
        self.idempotent.is_none()
            && self.equivariant.is_none()
            && self.order_reversing.is_none()
            && self.maximal_in_kernel.is_none()
    }

    fn first_failure(&self) -> Option<(&'static str, String)> {
        [
            ("idempotent", &self.idempotent),
            ("equivariant", &self.equivariant),
            ("order-reversing", &self.order_reversing),
            ("maximal-in-kernel", &self.maximal_in_kernel),
        ]
        .into_iter()
        .find_map(|(k, v)| v.clone().map(|at| (k, at)))
    }
}

/// `f(aM) = a(u)` for each member of `X(M)`.
fn ideal_values<A: ActionSystem>(sys: &A, y: &YSpace, u: usize) -> Vec<usize> {
    y.x().reps.iter().map(|&a| sys.act(a, u)).collect()
}

/// The map sending a chain to `f` of its largest member.
pub fn projection_witness<A: ActionSystem>(sys: &A, y: &YSpace, u: usize) -> GoodWitness {
    let f = ideal_values(sys, y, u);
    GoodWitness { values: y.chains().iter().map(|c| f[*c.0.last().unwrap()]).collect() }
}

/// The map sending a chain `x_0 ⊊ ... ⊊ x_k` to `P_k`, where `P_0 = f(x_0)`
/// and `P_j = (P_{j-1} f(x_j) P_{j-1})^ω`.
pub fn nested_witness<A: ActionSystem>(sys: &A, y: &YSpace, u: usize) -> GoodWitness {
    let s = sys.space();
    let f = ideal_values(sys, y, u);
    let values = y
        .chains()
        .iter()
        .map(|c| {
            let mut p = f[c.0[0]];
            for &i in &c.0[1..] {
                p = omega(s, s.mul(s.mul(p, f[i]), p));
            }
            p
        })
        .collect();
    GoodWitness { values }
}

/// Checks idempotence of values, equivariance, order reversal, and that
/// maximal chains land in the kernel, exhaustively over `Y(M)`.
pub fn check_witness<A: ActionSystem>(sys: &A, y: &YSpace, w: &GoodWitness) -> WitnessChecks {
    let (m, s) = (sys.monoid(), sys.space());
    let mut out = WitnessChecks {
        idempotent: (0..y.len()).find(|&c| !is_idempotent(s, w.values[c])).map(|c| y.format_chain(c)),
        ..Default::default()
    };
    'eq: for c in 0..y.len() {
        for a in m.elements() {
            let lhs = w.values[y.act(a, c).expect("action maps chains to chains")];
            if lhs != sys.act(a, w.values[c]) {
                out.equivariant = Some(format!("{} acting on {}", m.name(a), y.format_chain(c)));
                break 'eq;
            }
        }
    }
    'ord: for c in 0..y.len() {
        for b in y.strictly_below(c) {
            if !idem_leq(s, w.values[c], w.values[b]) {
                out.order_reversing =
                    Some(format!("{} below {}", y.format_chain(b), y.format_chain(c)));
                break 'ord;
            }
        }
    }
    let k = kernel(s);
    out.maximal_in_kernel = y
        .maximal_chains()
        .into_iter()
        .find(|&c| !k.contains(w.values[c]))
        .map(|c| y.format_chain(c));
    out
}

/// Builds the nested witness from a controlled idempotent and checks it.
pub fn build_good_witness<A: ActionSystem>(sys: &A, y: &YSpace) -> Result<GoodWitness> {
    let u = find_controlled_idempotent(sys)?.u;
    let w = nested_witness(sys, y, u);
    match check_witness(sys, y, &w).first_failure() {
        None => Ok(w),
        Some((which, at)) => Err(DynamicsError::WitnessInvariantFailed { which, at }),
    }
}

/// Parses a `.act` file against a monoid and a space. Lines are
/// `m u -> u'`; `monoid:` and `space:` header lines are accepted and
/// returned for the caller to resolve.
pub fn parse_action(
    text: &str,
    monoid: &FiniteMonoid,
    space: &FiniteSemigroup,
) -> Result<FiniteActionSystem> {
    let err = |line: usize, msg: String| DynamicsError::Parse { line, msg };
    let mut table = vec![usize::MAX; monoid.len() * space.len()];
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("monoid:") || line.starts_with("space:") {
            continue;
        }
        let (lhs, rhs) =
            line.split_once("->").ok_or_else(|| err(lineno, format!("expected `m u -> v`: {line}")))?;
        let toks: Vec<&str> = lhs.split_whitespace().collect();
        let [mt, ut] = toks.as_slice() else {
            return Err(err(lineno, "left side must be `m u`".into()));
        };
        let vt = rhs.trim();
        let m = monoid.index_of(mt).ok_or_else(|| err(lineno, format!("unknown element `{mt}`")))?;
        let u = space.index_of(ut).ok_or_else(|| err(lineno, format!("unknown point `{ut}`")))?;
        let v = space.index_of(vt).ok_or_else(|| err(lineno, format!("unknown point `{vt}`")))?;
        let slot = &mut table[m * space.len() + u];
        if *slot != usize::MAX && *slot != v {
            return Err(err(lineno, format!("conflicting entry for {mt} {ut}")));
        }
        *slot = v;
    }
    if let Some(pos) = table.iter().position(|&v| v == usize::MAX) {
        let (m, u) = (pos / space.len(), pos % space.len());
        return Err(err(0, format!("missing entry for {} {}", monoid.name(m), space.name(u))));
    }
    FiniteActionSystem::new(monoid.clone(), space.clone(), table)
}

/// Header values of a `.act` file: `(monoid path, space path)`.
pub fn action_headers(text: &str) -> (Option<String>, Option<String>) {
    let mut found: HashMap<&str, String> = HashMap::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        for key in ["monoid", "space"] {
            if let Some(rest) = line.strip_prefix(key).and_then(|r| r.strip_prefix(':')) {
                found.insert(key, rest.trim().to_string());
            }
        }
    }
    (found.remove("monoid"), found.remove("space"))
}

pub fn write_action(sys: &FiniteActionSystem) -> String {
    let mut out = String::new();
    let (m, s) = (&sys.monoid, &sys.space);
    for a in m.elements() {
        for u in s.elements() {
            writeln!(out, "{} {} -> {}", m.name(a), s.name(u), s.name(sys.act(a, u))).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{
        carlson1, cyclic, direct_product, gowers, table1, table2, transformation_monoid, trivial,
    };
    use proptest::prelude::*;

    fn names(s: &FiniteSemigroup, v: impl IntoIterator<Item = usize>) -> Vec<String> {
        v.into_iter().map(|x| s.name(x).to_string()).collect()
    }

    #[test]
    fn idempotents_of_table1() {
        let t = table1();
        let s = t.semigroup();
        // oracle: diagonal scan
        let diag: Vec<usize> = s.elements().filter(|&x| s.mul(x, x) == x).collect();
        assert_eq!(idempotents(s), diag);
        assert_eq!(names(s, idempotents(s)), ["1", "0", "g", "h"]);
        assert_eq!(s.name(minimal_below(s, t.identity()).unwrap()), "0");
        assert_eq!(kernel(s).ones().collect::<Vec<_>>(), vec![t.index_of("0").unwrap()]);
        let a = t.index_of("a").unwrap();
        assert!(matches!(minimal_below(s, a), Err(DynamicsError::NotIdempotent(_))));
    }

    #[test]
    fn right_zero_space() {
        let c = carlson(&["p", "q", "r"]).unwrap();
        assert_eq!(idempotents(&c), vec![0, 1, 2]);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(idem_leq(&c, u, v), u == v);
            }
            assert_eq!(minimal_below(&c, u).unwrap(), u);
        }
        assert_eq!(kernel(&c).count_ones(..), 3);
    }

    #[test]
    fn kernel_contains_minimal_idempotents() {
        for m in [table1(), table2(), gowers(4).unwrap(), cyclic(3).unwrap()] {
            let s = m.semigroup();
            let k = kernel(s);
            let e = idempotents(s);
            assert!(!e.is_empty());
            for &u in &e {
                if e.iter().all(|&v| v == u || !idem_leq(s, v, u)) {
                    assert!(k.contains(u));
                }
            }
            // the kernel is a two-sided ideal contained in every principal ideal
            for x in s.elements() {
                for u in k.ones() {
                    assert!(k.contains(s.mul(x, u)) && k.contains(s.mul(u, x)));
                }
            }
        }
    }

    #[test]
    fn witnesses_on_tables() {
        let t = table1();
        let (a, b) = (t.index_of("a").unwrap(), t.index_of("b").unwrap());
        let (g, h) = lemma_witnesses(&t, a, b).unwrap();
        assert_eq!((t.name(g), t.name(h)), ("g", "h"));

        let t2 = table2();
        let (a, b) = (t2.index_of("a").unwrap(), t2.index_of("b").unwrap());
        // oracle: brute force over all 5x5 candidates
        let ok: Vec<(usize, usize)> = t2
            .elements()
            .flat_map(|g| t2.elements().map(move |h| (g, h)))
            .filter(|&(g, h)| {
                t2.mul(a, g) == b && t2.mul(b, h) == a && t2.mul(g, h) == h && t2.mul(h, g) == g
            })
            .collect();
        let gh = lemma_witnesses(&t2, a, b).unwrap();
        assert!(ok.contains(&gh));

        let z2 = cyclic(2).unwrap();
        assert!(matches!(lemma_witnesses(&z2, 0, 1), Err(DynamicsError::PreconditionViolated(_))));
    }

    #[test]
    fn controlled_idempotent_right_zero() {
        let t = table1();
        let sys = FiniteActionSystem::right_zero_self_action(&t);
        let c = find_controlled_idempotent(&sys).unwrap();
        assert_eq!(t.name(c.u), "0");
        let g2 = gowers(2).unwrap();
        let sys = FiniteActionSystem::right_zero_self_action(&g2);
        let c = find_controlled_idempotent(&sys).unwrap();
        let green = green_classes(&g2).unwrap();
        assert_eq!(controlled_postcondition(&sys, &green, c.u), None);
        let triv = FiniteActionSystem::right_zero_self_action(&trivial());
        assert_eq!(find_controlled_idempotent(&triv).unwrap().u, 0);
    }

    #[test]
    fn controlled_idempotent_on_words() {
        let t = table1();
        let sys = WordActionSystem::new(&t, 2);
        check_action_laws(&sys).unwrap();
        check_endomorphisms(&sys).unwrap();
        let c = find_controlled_idempotent(&sys).unwrap();
        assert_eq!(c.u, TruncatedWords::BOTTOM);
    }

    #[test]
    fn truncated_word_codes() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let w = TruncatedWords::new(&names, 3);
        assert_eq!(w.size(), 1 + 3 + 9 + 27);
        for u in 1..w.size() {
            assert_eq!(w.encode(&w.decode(u)), u);
        }
        let xy = w.encode(&[0, 1]);
        let z = w.encode(&[2]);
        assert_eq!(w.label(w.mul(xy, z)), "[x,y,z]");
        assert_eq!(w.mul(xy, xy), TruncatedWords::BOTTOM);
        assert_eq!(idempotents(&w), vec![TruncatedWords::BOTTOM]);
        // associativity, exhaustively
        for a in 0..w.size() {
            for b in 0..w.size() {
                let ab = w.mul(a, b);
                for c in 0..w.size() {
                    assert_eq!(w.mul(ab, c), w.mul(a, w.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn image_agreement() {
        for m in [table1(), table2()] {
            assert!(verify_image_agreement(&SetAction::by_multiplication(&m)).unwrap());
        }
        assert!(verify_image_agreement(&SetAction::by_multiplication(&gowers(3).unwrap())).unwrap());
    }

    #[test]
    fn good_witness_systems() {
        for m in [table1(), gowers(2).unwrap(), trivial()] {
            let y = YSpace::new(&m).unwrap();
            let sys = FiniteActionSystem::right_zero_self_action(&m);
            let w = build_good_witness(&sys, &y).unwrap();
            assert!(check_witness(&sys, &y, &w).all_pass());
            let words = WordActionSystem::new(&m, 2);
            build_good_witness(&words, &y).unwrap();
        }
    }

    #[test]
    fn projection_map_is_not_order_reversing() {
        let g2 = gowers(2).unwrap();
        let y = YSpace::new(&g2).unwrap();
        let sys = FiniteActionSystem::right_zero_self_action(&g2);
        let u = find_controlled_idempotent(&sys).unwrap().u;
        let checks = check_witness(&sys, &y, &projection_witness(&sys, &y, u));
        assert!(checks.equivariant.is_none());
        assert!(checks.maximal_in_kernel.is_none());
        assert!(checks.order_reversing.is_some());
    }

    #[test]
    fn action_file_round_trip() {
        let m = gowers(2).unwrap();
        let sys = FiniteActionSystem::right_zero_self_action(&m);
        let text = format!("monoid: g2.mon\nspace: rz.mon\n{}", write_action(&sys));
        assert_eq!(
            action_headers(&text),
            (Some("g2.mon".to_string()), Some("rz.mon".to_string()))
        );
        let back = parse_action(&text, &m, sys.space_semigroup()).unwrap();
        assert_eq!(back.table, sys.table);
        let broken = text.replace("1 0 -> 1", "");
        assert!(matches!(
            parse_action(&broken, &m, sys.space_semigroup()),
            Err(DynamicsError::Parse { .. })
        ));
    }

    #[test]
    fn invalid_tables_rejected() {
        let m = cyclic(2).unwrap();
        // the identity must fix every point
        let bad = SetAction::new(m.clone(), 2, vec![1, 0, 1, 0]);
        assert!(matches!(bad, Err(DynamicsError::InvalidAction(_))));
        // swap on a two-element left-zero semigroup is an endomorphism
        let lz = FiniteSemigroup::from_tokens(&["s", "t"], &[vec!["s", "s"], vec!["t", "t"]]).unwrap();
        assert!(FiniteActionSystem::new(m.clone(), lz.clone(), vec![0, 1, 1, 0]).is_ok());
        // g*g = 1 forces g to be injective
        assert!(FiniteActionSystem::new(m, lz, vec![0, 1, 0, 0]).is_err());
    }

    fn arb_monoid() -> impl Strategy<Value = FiniteMonoid> {
        (2usize..=4, prop::collection::vec(prop::collection::vec(0usize..4, 4), 1..=3)).prop_map(
            |(n, gens)| {
                let gens: Vec<Vec<usize>> =
                    gens.into_iter().map(|g| g[..n].iter().map(|x| x % n).collect()).collect();
                transformation_monoid(n, &gens).unwrap().monoid
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ideal_inclusion_gives_image_inclusion(m in arb_monoid()) {
            prop_assume!(m.len() <= 40);
            let green = green_classes(&m).unwrap();
            let mult = SetAction::by_multiplication(&m);
            let words = WordActionSystem::new(&m, 2);
            let images: [Vec<FixedBitSet>; 2] = [
                m.elements().map(|a| mult.image(a)).collect(),
                m.elements().map(|a| words.image(a)).collect(),
            ];
            for image in &images {
                for a in m.elements() {
                    for b in m.elements() {
                        if green.r_leq(a, b) {
                            prop_assert!(image[a].is_subset(&image[b]));
                        }
                    }
                }
            }
        }

        #[test]
        fn class_products(m in arb_monoid()) {
            let green = green_classes(&m).unwrap();
            prop_assume!(is_aperiodic_power(&m).0 && x_r_family_of(&green).linear);
            for class in &green.r.classes {
                let some = class.iter().any(|&b| class.iter().any(|&c| m.mul(b, c) == c));
                let all = class.iter().all(|&b| class.iter().all(|&c| m.mul(b, c) == c));
                prop_assert_eq!(some, all);
            }
        }

        #[test]
        fn idempotent_order_is_partial(m in arb_monoid()) {
            let s = m.semigroup();
            let e = idempotents(s);
            for &u in &e {
                prop_assert!(idem_leq(s, u, u));
                for &v in &e {
                    if idem_leq(s, u, v) && idem_leq(s, v, u) {
                        prop_assert_eq!(u, v);
                    }
                    for &w in &e {
                        if idem_leq(s, u, v) && idem_leq(s, v, w) {
                            prop_assert!(idem_leq(s, u, w));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_example_systems() {
        let m = direct_product(&gowers(3).unwrap(), &carlson1(&["p", "q"]).unwrap());
        let y = YSpace::new(&m).unwrap();
        let sys = FiniteActionSystem::right_zero_self_action(&m);
        build_good_witness(&sys, &y).unwrap();
        assert!(verify_image_agreement(&sys).unwrap());
    }
}
