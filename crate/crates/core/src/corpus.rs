//! The test corpus and the batch invariant suite.
//!
//! The corpus is every named family with parameters up to 5, a few
//! products and unions, and a run of seeded random transformation monoids
//! on at most four points. Half of the random generators are retractions
//! (idempotent maps), which keeps aperiodic monoids well represented.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::{check_linear_structure, classify_with, ClassificationReport, YVerdict, YesReason};
use crate::dynamics::{
    build_good_witness, find_controlled_idempotent, lemma_witnesses_with, verify_image_agreement,
    ActionSystem, FiniteActionSystem, WordActionSystem,
};
use crate::green::{green_classes, GreenData};
use crate::monoid::{
    adjoin_identity, carlson, carlson1, cyclic, direct_product, gowers, i_monoid, ordered_union, table1,
    table2, transformation_monoid, trivial, FiniteMonoid,
};
use crate::oracle::{adversarial_sets, verify_adversarial};
use crate::yspace::{verify_ideal_translation, YSpace, YWord};

pub const RANDOM_COUNT: usize = 200;
pub const MAX_POINTS: usize = 4;
/// Length bound of the truncated-word action system.
pub const WORD_ACTION_LEN: usize = 3;
/// Confluence is checked when `|X(M)|` is at most this.
pub const CONFLUENCE_X_BOUND: usize = 5;
/// Work bound for exhaustive word enumerations: lengths are capped so that
/// `|M|^L` stays below it.
pub const WORD_BUDGET: usize = 20_000;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub monoid: FiniteMonoid,
}

fn entry(name: impl Into<String>, monoid: FiniteMonoid) -> CorpusEntry {
    CorpusEntry { name: name.into(), monoid }
}

pub fn named_corpus() -> Vec<CorpusEntry> {
    let points = |n: usize| -> Vec<String> { "pqrst".chars().take(n).map(String::from).collect() };
    let mut out = vec![entry("trivial", trivial()), entry("table1", table1()), entry("table2", table2())];
    for k in 1..=5 {
        out.push(entry(format!("gowers({k})"), gowers(k).expect("k >= 1")));
        out.push(entry(format!("cyclic({k})"), cyclic(k).expect("k >= 1")));
        out.push(entry(format!("i_monoid({k})"), i_monoid(k).expect("k >= 1")));
        out.push(entry(format!("carlson1({k})"), carlson1(&points(k)).expect("k >= 1")));
    }
    let g3 = gowers(3).expect("valid");
    let c2 = carlson1(&points(2)).expect("valid");
    let z2 = cyclic(2).expect("valid");
    out.push(entry("gowers(3)*carlson1(2)", direct_product(&g3, &c2)));
    out.push(entry("cyclic(2)*cyclic(2)", direct_product(&z2, &z2)));
    out.push(entry("gowers(2)*i_monoid(3)", direct_product(&gowers(2).expect("valid"), &i_monoid(3).expect("valid"))));
    out.push(entry("cyclic(3)*gowers(2)", direct_product(&cyclic(3).expect("valid"), &gowers(2).expect("valid"))));
    let rz = |n: usize| carlson(&points(n)).expect("valid");
    let union = ordered_union(&[rz(2), rz(3)]).expect("distinct names");
    out.push(entry("adjoin(carlson(2)+carlson(3))", adjoin_identity(&union)));
    let union = ordered_union(&[g3.semigroup().clone(), rz(2)]).expect("valid");
    out.push(entry("adjoin(gowers(3)+carlson(2))", adjoin_identity(&union)));
    out.push(entry("adjoin(table2)", adjoin_identity(table2().semigroup())));
    out
}

fn random_map(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    if rng.random_bool(0.5) {
        let mut image: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if image.is_empty() {
            image.push(rng.random_range(0..n));
        }
        (0..n)
            .map(|x| if image.contains(&x) { x } else { image[rng.random_range(0..image.len())] })
            .collect()
    } else {
        (0..n).map(|_| rng.random_range(0..n)).collect()
    }
}

/// `count` transformation monoids on 2 to 4 points with 1 to 3 generators.
pub fn random_corpus(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.random_range(2..=MAX_POINTS);
            let k = rng.random_range(1..=3);
            let gens: Vec<Vec<usize>> = (0..k).map(|_| random_map(&mut rng, n)).collect();
            let shown: Vec<String> =
                gens.iter().map(|g| g.iter().map(|x| x.to_string()).collect::<String>()).collect();
            let m = transformation_monoid(n, &gens).expect("total maps").monoid;
            entry(format!("random{i:03}[{}]", shown.join(",")), m)
        })
        .collect()
}

pub fn corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut out = named_corpus();
    out.extend(random_corpus(seed, RANDOM_COUNT));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    /// The five aperiodicity tests agree.
    AperiodicityAgreement,
    /// Almost R-trivial implies aperiodic with linear `X_R(M)`.
    AlmostRTrivial,
    /// With linear `X(M)`: aperiodic iff L-trivial.
    XLinearLTrivial,
    /// With linear `X(M)`: all four structure checks pass.
    LinearStructure,
    /// Ramsey iff Y-controllable through linear `X_R(M)` and `X(M)` linear.
    RamseyEquivalence,
    /// Aperiodic with linear `X_R(M)`: a controlled idempotent exists in
    /// both built-in action systems.
    ControlledIdempotent,
    /// Aperiodic with linear `X_R(M)`: witnesses for every R-pair.
    LemmaWitnesses,
    /// Aperiodic with linear `X_R(M)`: the good witness passes its checks
    /// in both built-in action systems.
    GoodWitness,
    /// Aperiodic with linear `X_R(M)`: R-equivalent elements agree on
    /// images in both built-in action systems.
    ImageAgreement,
    /// `|X(M)| <= 5`: the rewriting on `Y(M)` is confluent.
    Confluence,
    /// With linear `X(M)`: each `aM` is `{ab : b}` translated inside `X(M)`.
    IdealTranslation,
    /// With linear `X(M)`: any tuple containing 1 wedges to `[X(M)]`.
    WedgeIdentity,
    /// Not aperiodic: the adversarial coloring admits no monochromatic
    /// pair, for every element with non-stabilising powers.
    Adversarial,
}

impl Invariant {
    pub const ALL: [Invariant; 13] = [
        Invariant::AperiodicityAgreement,
        Invariant::AlmostRTrivial,
        Invariant::XLinearLTrivial,
        Invariant::LinearStructure,
        Invariant::RamseyEquivalence,
        Invariant::ControlledIdempotent,
        Invariant::LemmaWitnesses,
        Invariant::GoodWitness,
        Invariant::ImageAgreement,
        Invariant::Confluence,
        Invariant::IdealTranslation,
        Invariant::WedgeIdentity,
        Invariant::Adversarial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::AperiodicityAgreement => "aperiodicity-agreement",
            Invariant::AlmostRTrivial => "almost-r-trivial",
            Invariant::XLinearLTrivial => "x-linear-l-trivial",
            Invariant::LinearStructure => "linear-structure",
            Invariant::RamseyEquivalence => "ramsey-equivalence",
            Invariant::ControlledIdempotent => "controlled-idempotent",
            Invariant::LemmaWitnesses => "lemma-witnesses",
            Invariant::GoodWitness => "good-witness",
            Invariant::ImageAgreement => "image-agreement",
            Invariant::Confluence => "confluence",
            Invariant::IdealTranslation => "ideal-translation",
            Invariant::WedgeIdentity => "wedge-identity",
            Invariant::Adversarial => "adversarial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    NotApplicable,
    Fail(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => f.write_str("pass"),
            Outcome::NotApplicable => f.write_str("n/a"),
            Outcome::Fail(why) => write!(f, "FAIL({why})"),
        }
    }
}

fn verdict(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(why())
    }
}

/// Largest `L <= cap` with `n^L <= WORD_BUDGET`, at least 1.
pub fn length_bound(n: usize, cap: usize) -> usize {
    (1..=cap).take_while(|&l| n.checked_pow(l as u32).is_some_and(|p| p <= WORD_BUDGET)).last().unwrap_or(1)
}

struct Context<'a> {
    m: &'a FiniteMonoid,
    green: GreenData,
    report: Result<ClassificationReport, String>,
}

impl Context<'_> {
    fn controlled(&self) -> bool {
        matches!(&self.report, Ok(r) if r.aperiodic && r.xr_linear)
    }
}

/// Object-safe view of the action-system checks.
trait SystemCheck {
    fn controlled(&self) -> Result<(), String>;
    fn good_witness(&self, y: &YSpace) -> Result<(), String>;
    fn image_agreement(&self) -> Result<(), String>;
}

impl<A: ActionSystem> SystemCheck for (A, &'static str) {
    fn controlled(&self) -> Result<(), String> {
        find_controlled_idempotent(&self.0).map(|_| ()).map_err(|e| format!("{}: {e}", self.1))
    }

    fn good_witness(&self, y: &YSpace) -> Result<(), String> {
        build_good_witness(&self.0, y).map(|_| ()).map_err(|e| format!("{}: {e}", self.1))
    }

    fn image_agreement(&self) -> Result<(), String> {
        match verify_image_agreement(&self.0) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("{}: images disagree", self.1)),
            Err(e) => Err(format!("{}: {e}", self.1)),
        }
    }
}

fn systems(m: &FiniteMonoid) -> (Box<dyn SystemCheck>, Box<dyn SystemCheck>) {
    (
        Box::new((FiniteActionSystem::right_zero_self_action(m), "right-zero")),
        Box::new((WordActionSystem::new(m, WORD_ACTION_LEN), "words")),
    )
}

fn for_systems(m: &FiniteMonoid, f: impl Fn(&dyn SystemCheck) -> Result<(), String>) -> Outcome {
    let (a, b) = systems(m);
    match f(a.as_ref()).and_then(|_| f(b.as_ref())) {
        Ok(()) => Outcome::Pass,
        Err(why) => Outcome::Fail(why),
    }
}

fn check(ctx: &Context<'_>, inv: Invariant) -> Outcome {
    let m = ctx.m;
    let report = match (&ctx.report, inv) {
        (Err(e), Invariant::AperiodicityAgreement) => return Outcome::Fail(e.clone()),
        (Err(_), _) => return Outcome::NotApplicable,
        (Ok(r), _) => r,
    };
    match inv {
        Invariant::AperiodicityAgreement => Outcome::Pass,
        Invariant::AlmostRTrivial => {
            if !report.almost_r_trivial {
                return Outcome::NotApplicable;
            }
            verdict(report.aperiodic && report.xr_linear, || "almost R-trivial but not controlled".into())
        }
        Invariant::XLinearLTrivial => {
            if !report.x_linear {
                return Outcome::NotApplicable;
            }
            verdict(report.aperiodic == report.l_trivial, || {
                format!("aperiodic={} l_trivial={}", report.aperiodic, report.l_trivial)
            })
        }
        Invariant::LinearStructure => {
            if !report.x_linear {
                return Outcome::NotApplicable;
            }
            match check_linear_structure(m) {
                Ok(r) => verdict(r.all_pass(), || {
                    r.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect::<Vec<_>>().join(",")
                }),
                Err(e) => Outcome::Fail(e.to_string()),
            }
        }
        Invariant::RamseyEquivalence => {
            let via = report.y_controllable == YVerdict::Yes(YesReason::XrLinear) && report.x_linear;
            verdict(report.ramsey == via, || format!("ramsey={} via-xr-linear={via}", report.ramsey))
        }
        Invariant::ControlledIdempotent if ctx.controlled() => for_systems(m, |s| s.controlled()),
        Invariant::ImageAgreement if ctx.controlled() => for_systems(m, |s| s.image_agreement()),
        Invariant::GoodWitness if ctx.controlled() => match YSpace::new(m) {
            Ok(y) => for_systems(m, |s| s.good_witness(&y)),
            Err(e) => Outcome::Fail(e.to_string()),
        },
        Invariant::LemmaWitnesses if ctx.controlled() => {
            for class in &ctx.green.r.classes {
                for &a in class {
                    for &b in class.iter().filter(|&&b| b != a) {
                        match lemma_witnesses_with(m, &ctx.green, a, b) {
                            Ok((g, h)) => {
                                let ok = m.mul(a, g) == b
                                    && m.mul(b, h) == a
                                    && m.mul(g, h) == h
                                    && m.mul(h, g) == g;
                                if !ok {
                                    return Outcome::Fail(format!("({}, {})", m.name(a), m.name(b)));
                                }
                            }
                            Err(e) => return Outcome::Fail(e.to_string()),
                        }
                    }
                }
            }
            Outcome::Pass
        }
        Invariant::ControlledIdempotent
        | Invariant::ImageAgreement
        | Invariant::GoodWitness
        | Invariant::LemmaWitnesses => Outcome::NotApplicable,
        Invariant::Confluence => {
            if report.x_size > CONFLUENCE_X_BOUND {
                return Outcome::NotApplicable;
            }
            match YSpace::new(m) {
                Ok(y) => {
                    let c = y.check_confluence();
                    verdict(c.confluent(), || {
                        let (w, _, _) = c.unjoinable.as_ref().expect("not confluent");
                        format!("window {}", y.format_word(w))
                    })
                }
                Err(e) => Outcome::Fail(e.to_string()),
            }
        }
        Invariant::IdealTranslation => {
            if !report.x_linear {
                return Outcome::NotApplicable;
            }
            match verify_ideal_translation(m) {
                Ok(ok) => verdict(ok, || "translation fails".into()),
                Err(e) => Outcome::Fail(e.to_string()),
            }
        }
        Invariant::WedgeIdentity => {
            if !report.x_linear {
                return Outcome::NotApplicable;
            }
            let y = match YSpace::new(m) {
                Ok(y) => y,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            let top = y.full_chain().expect("X(M) is linear");
            let want = YWord(vec![top]);
            for len in 1..=length_bound(m.len(), 3) {
                for t in crate::words::tuples(m.len(), len) {
                    if t.contains(&m.identity()) && y.wedge(&t, top) != want {
                        let shown: Vec<&str> = t.iter().map(|&x| m.name(x)).collect();
                        return Outcome::Fail(format!("tuple ({})", shown.join(",")));
                    }
                }
            }
            Outcome::Pass
        }
        Invariant::Adversarial => {
            if report.aperiodic {
                return Outcome::NotApplicable;
            }
            let max_len = length_bound(m.len(), 6);
            for a in m.elements().filter(|&a| adversarial_sets(m, a).is_ok()) {
                match verify_adversarial(m, a, max_len) {
                    Ok(true) => {}
                    Ok(false) => return Outcome::Fail(format!("{} at L={max_len}", m.name(a))),
                    Err(e) => return Outcome::Fail(e.to_string()),
                }
            }
            Outcome::Pass
        }
    }
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub name: String,
    pub size: usize,
    pub results: Vec<(Invariant, Outcome)>,
}

impl EntryReport {
    pub fn failures(&self) -> impl Iterator<Item = &(Invariant, Outcome)> {
        self.results.iter().filter(|(_, o)| matches!(o, Outcome::Fail(_)))
    }
}

pub fn check_entry(e: &CorpusEntry, invariants: &[Invariant]) -> EntryReport {
    let green = green_classes(&e.monoid).expect("D = J in a finite monoid");
    let report = classify_with(&e.monoid, &green).map_err(|err| err.to_string());
    let ctx = Context { m: &e.monoid, green, report };
    EntryReport {
        name: e.name.clone(),
        size: e.monoid.len(),
        results: invariants.iter().map(|&inv| (inv, check(&ctx, inv))).collect(),
    }
}

/// Per-invariant tallies over a corpus run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub not_applicable: usize,
    pub fail: usize,
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
}

impl CorpusReport {
    pub fn tally(&self, inv: Invariant) -> Tally {
        let mut t = Tally::default();
        for (_, o) in self.entries.iter().flat_map(|e| &e.results).filter(|(i, _)| *i == inv) {
            match o {
                Outcome::Pass => t.pass += 1,
                Outcome::NotApplicable => t.not_applicable += 1,
                Outcome::Fail(_) => t.fail += 1,
            }
        }
        t
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.failures().next().is_none())
    }

    /// `(entry, invariant, reason)` for every failure, in corpus order.
    pub fn failures(&self) -> Vec<(&str, Invariant, &str)> {
        let mut out = Vec::new();
        for e in &self.entries {
            for (inv, o) in e.failures() {
                if let Outcome::Fail(why) = o {
                    out.push((e.name.as_str(), *inv, why.as_str()));
                }
            }
        }
        out
    }
}

/// Runs the invariants over the corpus in parallel; entries keep corpus
/// order.
pub fn run_suite(corpus: &[CorpusEntry], invariants: &[Invariant]) -> CorpusReport {
    CorpusReport { entries: corpus.par_iter().map(|e| check_entry(e, invariants)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic() {
        let a = random_corpus(7, 20);
        let b = random_corpus(7, 20);
        assert!(a.iter().zip(&b).all(|(x, y)| x.name == y.name && x.monoid == y.monoid));
        let c = random_corpus(8, 20);
        assert!(a.iter().zip(&c).any(|(x, y)| x.name != y.name));
    }

    #[test]
    fn corpus_shape() {
        let c = corpus(0);
        assert_eq!(c.len(), named_corpus().len() + RANDOM_COUNT);
        assert!(c.iter().all(|e| e.monoid.len() <= 256));
        let named: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        assert!(named.contains(&"i_monoid(5)") && named.contains(&"carlson1(5)"));
    }

    #[test]
    fn length_bounds() {
        assert_eq!(length_bound(2, 6), 6);
        assert_eq!(length_bound(5, 6), 6);
        assert_eq!(length_bound(6, 6), 5);
        assert_eq!(length_bound(200, 6), 1);
    }

    #[test]
    fn named_corpus_passes() {
        let report = run_suite(&named_corpus(), &Invariant::ALL);
        assert!(report.all_pass(), "{:?}", report.failures());
        assert!(report.tally(Invariant::GoodWitness).pass > 5);
        assert!(report.tally(Invariant::Adversarial).pass >= 5);
    }
}
