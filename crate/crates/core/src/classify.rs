//! Aperiodicity, triviality of Green's relations, and the Ramsey and
//! Y-controllability verdicts.

use std::fmt;

use thiserror::Error;

use crate::green::{green_classes, x_family_of, x_r_family_of, GreenData, IdealFamily, Partition};
use crate::monoid::{Elem, FiniteMonoid};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    /// The five aperiodicity tests gave different answers. This is a bug.
    #[error("aperiodicity tests disagree: {0:?}")]
    CharacterizationDisagreement(Vec<(Method, bool)>),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// The five equivalent aperiodicity tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// `a^n = a^(n+1)` for some `n <= |M|`.
    Power,
    /// `gag' = a` implies `ga = a = ag'`.
    Cancel,
    /// `ab R b` implies `ab = b`.
    RRigid,
    /// Every H-class is a singleton.
    HTrivial,
    /// No H-class holding an idempotent has two or more elements.
    NoSubgroup,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Power, Method::Cancel, Method::RRigid, Method::HTrivial, Method::NoSubgroup];

    pub fn name(self) -> &'static str {
        match self {
            Method::Power => "power",
            Method::Cancel => "cancel",
            Method::RRigid => "r_rigid",
            Method::HTrivial => "h_trivial",
            Method::NoSubgroup => "no_subgroup",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Counterexample to one aperiodicity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AperiodicityWitness {
    /// `a^n != a^(n+1)` for every `n <= |M|`.
    Power { a: Elem },
    /// `g a g' = a` but `ga != a` or `ag' != a`.
    Cancel { g: Elem, a: Elem, g2: Elem },
    /// `ab R b` but `ab != b`.
    RRigid { a: Elem, b: Elem },
    /// Two distinct H-equivalent elements.
    HClass { a: Elem, b: Elem },
    /// An idempotent whose H-class is a group of order at least two.
    Subgroup { idempotent: Elem, other: Elem },
}

impl AperiodicityWitness {
    pub fn describe(&self, m: &FiniteMonoid) -> String {
        let n = |x: &Elem| m.name(*x).to_string();
        match self {
            Self::Power { a } => format!("powers of {} never stabilise", n(a)),
            Self::Cancel { g, a, g2 } => format!("{}*{}*{} = {}", n(g), n(a), n(g2), n(a)),
            Self::RRigid { a, b } => format!("{}{} R {} but differs", n(a), n(b), n(b)),
            Self::HClass { a, b } => format!("{} H {}", n(a), n(b)),
            Self::Subgroup { idempotent, other } => {
                format!("group H-class of {} contains {}", n(idempotent), n(other))
            }
        }
    }
}

/// Result of one aperiodicity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperiodicityCheck {
    pub method: Method,
    pub witness: Option<AperiodicityWitness>,
}

impl AperiodicityCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn power_witness(m: &FiniteMonoid) -> Option<Elem> {
    m.elements()
        .find(|&a| (1..=m.len()).all(|n| m.power(a, n) != m.power(a, n + 1)))
}

/// Power test with its witness: `(aperiodic, first non-stabilising a)`.
pub fn is_aperiodic_power(m: &FiniteMonoid) -> (bool, Option<Elem>) {
    let w = power_witness(m);
    (w.is_none(), w)
}

pub fn check_aperiodic(m: &FiniteMonoid, green: &GreenData, method: Method) -> AperiodicityCheck {
    use AperiodicityWitness as W;
    let witness = match method {
        Method::Power => power_witness(m).map(|a| W::Power { a }),
        Method::Cancel => cancel_witness(m),
        Method::RRigid => m
            .elements()
            .flat_map(|a| m.elements().map(move |b| (a, b)))
            .find(|&(a, b)| {
                let ab = m.mul(a, b);
                ab != b && green.r.same(ab, b)
            })
            .map(|(a, b)| W::RRigid { a, b }),
        Method::HTrivial => {
            green.h.first_nontrivial().map(|c| W::HClass { a: c[0], b: c[1] })
        }
        Method::NoSubgroup => green.h.classes.iter().find_map(|c| {
            let e = c.iter().copied().find(|&x| m.is_idempotent(x))?;
            let other = c.iter().copied().find(|&x| x != e)?;
            Some(W::Subgroup { idempotent: e, other })
        }),
    };
    AperiodicityCheck { method, witness }
}

fn cancel_witness(m: &FiniteMonoid) -> Option<AperiodicityWitness> {
    for g in m.elements() {
        for a in m.elements() {
            let ga = m.mul(g, a);
            for g2 in m.elements() {
                if m.mul(ga, g2) == a && (ga != a || m.mul(a, g2) != a) {
                    return Some(AperiodicityWitness::Cancel { g, a, g2 });
                }
            }
        }
    }
    None
}

/// Runs all five tests and insists that they agree.
pub fn aperiodicity_checks(
    m: &FiniteMonoid,
    green: &GreenData,
) -> Result<Vec<AperiodicityCheck>, ClassifyError> {
    let checks: Vec<AperiodicityCheck> =
        Method::ALL.iter().map(|&method| check_aperiodic(m, green, method)).collect();
    if checks.iter().any(|c| c.holds() != checks[0].holds()) {
        return Err(ClassifyError::CharacterizationDisagreement(
            checks.iter().map(|c| (c.method, c.holds())).collect(),
        ));
    }
    Ok(checks)
}

/// `method = None` runs all five tests and checks agreement.
pub fn is_aperiodic(m: &FiniteMonoid, method: Option<Method>) -> Result<bool, ClassifyError> {
    let green = green_classes(m).expect("D = J in a finite monoid");
    match method {
        Some(method) => Ok(check_aperiodic(m, &green, method).holds()),
        None => Ok(aperiodicity_checks(m, &green)?[0].holds()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    R,
    L,
    J,
    H,
}

fn partition(green: &GreenData, relation: Relation) -> &Partition {
    match relation {
        Relation::R => &green.r,
        Relation::L => &green.l,
        Relation::J => &green.j,
        Relation::H => &green.h,
    }
}

pub fn is_k_trivial(m: &FiniteMonoid, relation: Relation) -> bool {
    let green = green_classes(m).expect("D = J in a finite monoid");
    partition(&green, relation).is_trivial()
}

/// First `(a, x)` with `[a]_R` non-trivial and `xa != a`.
fn almost_r_trivial_witness(m: &FiniteMonoid, green: &GreenData) -> Option<(Elem, Elem)> {
    m.elements()
        .filter(|&a| green.r.class(a).len() > 1)
        .find_map(|a| m.elements().find(|&x| m.mul(x, a) != a).map(|x| (a, x)))
}

/// Every non-trivial R-class `[a]` has `Ma = {a}`.
pub fn is_almost_r_trivial(m: &FiniteMonoid) -> bool {
    let green = green_classes(m).expect("D = J in a finite monoid");
    almost_r_trivial_witness(m, &green).is_none()
}

/// First `(a, b, x)` breaking the idempotent-rows condition: distinct
/// `a R b` with `a` not idempotent (`x = a`) or `ax != bx` for `x != 1`.
fn idempotent_rows_witness(m: &FiniteMonoid, green: &GreenData) -> Option<(Elem, Elem, Elem)> {
    for class in &green.r.classes {
        for &a in class {
            for &b in class {
                if a == b {
                    continue;
                }
                if !m.is_idempotent(a) {
                    return Some((a, b, a));
                }
                if let Some(x) = m
                    .elements()
                    .find(|&x| x != m.identity() && m.mul(a, x) != m.mul(b, x))
                {
                    return Some((a, b, x));
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YesReason {
    /// Aperiodic with linear `X_R(M)`.
    XrLinear,
    /// Aperiodic, and distinct R-equivalent `a, b` are idempotent with
    /// `ax = bx` for every `x != 1`.
    IdempotentRows,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YVerdict {
    Yes(YesReason),
    /// Not aperiodic.
    No,
    /// Neither sufficient condition applies.
    Unknown,
}

impl fmt::Display for YVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YVerdict::Yes(YesReason::XrLinear) => f.write_str("Yes(XR-linear)"),
            YVerdict::Yes(YesReason::IdempotentRows) => f.write_str("Yes(idempotent-rows)"),
            YVerdict::No => f.write_str("No(not-aperiodic)"),
            YVerdict::Unknown => f.write_str("Unknown"),
        }
    }
}

/// Counterexamples for each false flag of a [`ClassificationReport`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witnesses {
    pub aperiodic: Option<AperiodicityWitness>,
    /// Representatives of two incomparable ideals.
    pub x_linear: Option<(Elem, Elem)>,
    pub xr_linear: Option<(Elem, Elem)>,
    /// `(a, x)` with `[a]_R` non-trivial and `xa != a`.
    pub almost_r_trivial: Option<(Elem, Elem)>,
    pub r_trivial: Option<(Elem, Elem)>,
    pub l_trivial: Option<(Elem, Elem)>,
    pub h_trivial: Option<(Elem, Elem)>,
    pub j_trivial: Option<(Elem, Elem)>,
    pub idempotent_rows: Option<(Elem, Elem, Elem)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub size: usize,
    pub aperiodic: bool,
    pub methods: Vec<(Method, bool)>,
    pub x_linear: bool,
    pub xr_linear: bool,
    pub x_size: usize,
    pub xr_size: usize,
    pub almost_r_trivial: bool,
    pub r_trivial: bool,
    pub l_trivial: bool,
    pub h_trivial: bool,
    pub j_trivial: bool,
    pub idempotent_rows: bool,
    pub ramsey: bool,
    pub y_controllable: YVerdict,
    pub witnesses: Witnesses,
}

fn incomparable_reps(f: &IdealFamily) -> Option<(Elem, Elem)> {
    f.incomparable_pair().map(|(i, j)| (f.reps[i], f.reps[j]))
}

fn pair_of(p: &Partition) -> Option<(Elem, Elem)> {
    p.first_nontrivial().map(|c| (c[0], c[1]))
}

pub fn classify(m: &FiniteMonoid) -> Result<ClassificationReport, ClassifyError> {
    let green = green_classes(m).expect("D = J in a finite monoid");
    classify_with(m, &green)
}

pub fn classify_with(
    m: &FiniteMonoid,
    green: &GreenData,
) -> Result<ClassificationReport, ClassifyError> {
    let checks = aperiodicity_checks(m, green)?;
    let aperiodic = checks[0].holds();
    let x = x_family_of(green);
    let xr = x_r_family_of(green);
    let witnesses = Witnesses {
        aperiodic: checks[0].witness.clone(),
        x_linear: incomparable_reps(&x),
        xr_linear: incomparable_reps(&xr),
        almost_r_trivial: almost_r_trivial_witness(m, green),
        r_trivial: pair_of(&green.r),
        l_trivial: pair_of(&green.l),
        h_trivial: pair_of(&green.h),
        j_trivial: pair_of(&green.j),
        idempotent_rows: idempotent_rows_witness(m, green),
    };
    let idempotent_rows = witnesses.idempotent_rows.is_none();
    let y_controllable = if !aperiodic {
        YVerdict::No
    } else if xr.linear {
        YVerdict::Yes(YesReason::XrLinear)
    } else if idempotent_rows {
        YVerdict::Yes(YesReason::IdempotentRows)
    } else {
        YVerdict::Unknown
    };
    Ok(ClassificationReport {
        size: m.len(),
        aperiodic,
        methods: checks.iter().map(|c| (c.method, c.holds())).collect(),
        x_linear: x.linear,
        xr_linear: xr.linear,
        x_size: x.len(),
        xr_size: xr.len(),
        almost_r_trivial: witnesses.almost_r_trivial.is_none(),
        r_trivial: green.r.is_trivial(),
        l_trivial: green.l.is_trivial(),
        h_trivial: green.h.is_trivial(),
        j_trivial: green.j.is_trivial(),
        idempotent_rows,
        ramsey: aperiodic && x.linear,
        y_controllable,
        witnesses,
    })
}

impl ClassificationReport {
    /// Machine-readable `key=value` pairs in a fixed order.
    pub fn key_values(&self) -> Vec<(&'static str, String)> {
        let mut kv = vec![
            ("size", self.size.to_string()),
            ("aperiodic", self.aperiodic.to_string()),
        ];
        for (method, holds) in &self.methods {
            let key = match method {
                Method::Power => "aperiodic.power",
                Method::Cancel => "aperiodic.cancel",
                Method::RRigid => "aperiodic.r_rigid",
                Method::HTrivial => "aperiodic.h_trivial",
                Method::NoSubgroup => "aperiodic.no_subgroup",
            };
            kv.push((key, holds.to_string()));
        }
        kv.extend([
            ("x_size", self.x_size.to_string()),
            ("x_linear", self.x_linear.to_string()),
            ("xr_size", self.xr_size.to_string()),
            ("xr_linear", self.xr_linear.to_string()),
            ("almost_r_trivial", self.almost_r_trivial.to_string()),
            ("r_trivial", self.r_trivial.to_string()),
            ("l_trivial", self.l_trivial.to_string()),
            ("h_trivial", self.h_trivial.to_string()),
            ("j_trivial", self.j_trivial.to_string()),
            ("idempotent_rows", self.idempotent_rows.to_string()),
            ("ramsey", self.ramsey.to_string()),
            ("y_controllable", self.y_controllable.to_string()),
        ]);
        kv
    }

    /// Human-readable witness lines for every false flag.
    pub fn witness_lines(&self, m: &FiniteMonoid) -> Vec<String> {
        let w = &self.witnesses;
        let n = |x: Elem| m.name(x).to_string();
        let mut out = Vec::new();
        if let Some(a) = &w.aperiodic {
            out.push(format!("not aperiodic: {}", a.describe(m)));
        }
        if let Some((a, b)) = w.x_linear {
            out.push(format!("X not linear: {}M and {}M are incomparable", n(a), n(b)));
        }
        if let Some((a, b)) = w.xr_linear {
            out.push(format!("X_R not linear: {}M and {}M are incomparable", n(a), n(b)));
        }
        if let Some((a, x)) = w.almost_r_trivial {
            out.push(format!("not almost R-trivial: {}{} != {}", n(x), n(a), n(a)));
        }
        for (label, pair) in [
            ("R", w.r_trivial),
            ("L", w.l_trivial),
            ("H", w.h_trivial),
            ("J", w.j_trivial),
        ] {
            if let Some((a, b)) = pair {
                out.push(format!("not {label}-trivial: {} {label} {}", n(a), n(b)));
            }
        }
        if let Some((a, b, x)) = w.idempotent_rows {
            if a == x {
                out.push(format!("idempotent rows fail: {} R {} and {} is not idempotent", n(a), n(b), n(a)));
            } else {
                out.push(format!("idempotent rows fail: {}{} != {}{}", n(a), n(x), n(b), n(x)));
            }
        }
        out
    }
}

/// One exhaustive consequence of linear `X(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearStructureReport {
    pub checks: Vec<LinearCheck>,
}

impl LinearStructureReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &'static str, witness: Option<String>) -> LinearCheck {
    LinearCheck { name, passed: witness.is_none(), witness }
}

/// Verifies, exhaustively, the structure forced by linear `X(M)`:
/// - `two-sided-ideals`: every `aM` is a two-sided ideal;
/// - `green-collapse`: `R = J = D`, `L = H`, `<=_R = <=_J`, `<=_L = <=_H`;
/// - `r-congruence`: `a R b` implies `ca R cb` and `ac R bc`;
/// - `r-order-translation`: `a <=_R b` implies `ca <=_R cb` and `ac <=_R bc`.
pub fn check_linear_structure(m: &FiniteMonoid) -> Result<LinearStructureReport, ClassifyError> {
    let g = green_classes(m).expect("D = J in a finite monoid");
    let x = x_family_of(&g);
    if let Some((a, b)) = incomparable_reps(&x) {
        return Err(ClassifyError::PreconditionViolated(format!(
            "X(M) is not linear: {}M and {}M are incomparable",
            m.name(a),
            m.name(b)
        )));
    }
    let n = |e: Elem| m.name(e).to_string();
    let pairs = || m.elements().flat_map(|a| m.elements().map(move |b| (a, b)));

    let two_sided = pairs()
        .find(|&(a, c)| !g.right_ideals[a].contains(m.mul(c, a)))
        .map(|(a, c)| format!("{}{} not in {}M", n(c), n(a), n(a)));

    let collapse = m
        .elements()
        .find(|&a| g.r.class(a) != g.j.class(a) || g.d.class(a) != g.j.class(a))
        .map(|a| format!("R, J or D class of {} differ", n(a)))
        .or_else(|| {
            m.elements()
                .find(|&a| g.l.class(a) != g.h.class(a))
                .map(|a| format!("L and H classes of {} differ", n(a)))
        })
        .or_else(|| {
            pairs()
                .find(|&(a, b)| g.r_leq(a, b) != g.j_leq(a, b) || g.l_leq(a, b) != g.h_leq(a, b))
                .map(|(a, b)| format!("orders disagree on ({}, {})", n(a), n(b)))
        });

    let mut congruence = None;
    let mut translation = None;
    'outer: for (a, b) in pairs() {
        for c in m.elements() {
            let (ca, cb, ac, bc) = (m.mul(c, a), m.mul(c, b), m.mul(a, c), m.mul(b, c));
            if congruence.is_none() && g.r.same(a, b) && !(g.r.same(ca, cb) && g.r.same(ac, bc)) {
                congruence = Some(format!("{} R {} but not after multiplying by {}", n(a), n(b), n(c)));
            }
            if translation.is_none() && g.r_leq(a, b) && !(g.r_leq(ca, cb) && g.r_leq(ac, bc)) {
                translation =
                    Some(format!("{} <=_R {} but not after multiplying by {}", n(a), n(b), n(c)));
            }
            if congruence.is_some() && translation.is_some() {
                break 'outer;
            }
        }
    }
    Ok(LinearStructureReport {
        checks: vec![
            check("two-sided-ideals", two_sided),
            check("green-collapse", collapse),
            check("r-congruence", congruence),
            check("r-order-translation", translation),
        ],
    })
}
