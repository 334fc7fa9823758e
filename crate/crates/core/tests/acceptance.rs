//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line reaches stdout; exits
//! nonzero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use monoid_workbench::classify::{aperiodicity_checks, check_linear_structure, classify, YVerdict};
use monoid_workbench::corpus::{corpus, CorpusEntry, CONFLUENCE_X_BOUND, WORD_ACTION_LEN};
use monoid_workbench::dynamics::{
    build_good_witness, check_witness, controlled_postcondition, find_controlled_idempotent, lemma_witnesses_with,
    verify_image_agreement, ActionSystem, FiniteActionSystem, Space, WordActionSystem,
};
use monoid_workbench::green::green_classes;
use monoid_workbench::monoid::{carlson1, cyclic, direct_product, find_isomorphism, gowers, i_monoid, table1, table2};
use monoid_workbench::oracle::{adversarial_coloring, search_mono_pair, verify_adversarial};
use monoid_workbench::syntactic::{
    in_s_language, is_star_free, is_star_free_regex, minimize_dfa, parse_regex, regex_to_dfa, syntactic_monoid,
    Alphabet, S_REGEX,
};
use monoid_workbench::words::{Color, Coloring};
use monoid_workbench::yspace::{verify_ideal_translation, YSpace, YWord};
use monoid_workbench::{Elem, FiniteMonoid};

type Check = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// All tuples over `0..n` of length `k`, lexicographic.
fn tuples(n: usize, k: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    f()?;
    ensure(start.elapsed() < limit, || format!("took {:.2?}", start.elapsed()))
}

fn tables() -> Check {
    timed(Duration::from_secs(1), || {
        let r = classify(&table1()).map_err(err)?;
        ensure(r.aperiodic && r.x_linear && r.ramsey, || format!("table1: {:?}", r))
    })?;
    timed(Duration::from_secs(1), || {
        let r = classify(&table2()).map_err(err)?;
        ensure(
            r.aperiodic && !r.xr_linear && !r.ramsey && r.y_controllable.to_string() == "Yes(idempotent-rows)",
            || format!("table2: {:?}", r),
        )
    })
}

fn i_monoids() -> Check {
    for k in 1..=5 {
        let m = i_monoid(k).map_err(err)?;
        ensure(m.len() == 1 << (k - 1), || format!("|I_{k}| = {}", m.len()))?;
        let r = classify(&m).map_err(err)?;
        ensure(r.ramsey == (k <= 3), || format!("I_{k}: ramsey={}", r.ramsey))?;
    }
    Ok(())
}

fn cyclic_groups() -> Check {
    for n in 2..=6 {
        let r = classify(&cyclic(n).map_err(err)?).map_err(err)?;
        ensure(!r.ramsey && r.y_controllable == YVerdict::No, || {
            format!("Z{n}: ramsey={} y={}", r.ramsey, r.y_controllable)
        })?;
    }
    Ok(())
}

/// `x^n = x^{n+1}` for every `x`, with `n = |M|`.
fn aperiodic_by_powers(m: &FiniteMonoid) -> bool {
    m.elements().all(|x| m.power(x, m.len()) == m.power(x, m.len() + 1))
}

fn aperiodicity_agreement(entries: &[CorpusEntry]) -> Check {
    for e in entries {
        let green = green_classes(&e.monoid).map_err(err)?;
        let checks = aperiodicity_checks(&e.monoid, &green).map_err(|x| format!("{}: {x}", e.name))?;
        ensure(checks.len() == 5 && checks[0].holds() == aperiodic_by_powers(&e.monoid), || {
            format!("{}: characterizations disagree with the power oracle", e.name)
        })?;
    }
    Ok(())
}

fn structural_implications(entries: &[CorpusEntry]) -> Check {
    for e in entries {
        let r = classify(&e.monoid).map_err(err)?;
        if r.almost_r_trivial {
            ensure(r.aperiodic && r.xr_linear, || format!("{}: almost R-trivial but not controlled", e.name))?;
        }
        if r.x_linear {
            ensure(r.aperiodic == r.l_trivial, || format!("{}: aperiodic != L-trivial", e.name))?;
            let s = check_linear_structure(&e.monoid).map_err(err)?;
            ensure(s.checks.len() == 4 && s.all_pass(), || format!("{}: linear structure fails", e.name))?;
        }
    }
    Ok(())
}

fn product_example() -> Check {
    let m = direct_product(&gowers(3).map_err(err)?, &carlson1(&["p", "q"]).map_err(err)?);
    let r = classify(&m).map_err(err)?;
    ensure(m.len() == 9 && r.aperiodic && r.xr_linear && !r.almost_r_trivial, || format!("{r:?}"))
}

/// An idempotent `u` lies in the kernel iff `uUu` is a group with identity `u`.
fn in_kernel<S: Space>(s: &S, u: usize) -> bool {
    (0..s.size()).all(|w| {
        let x = s.mul(s.mul(u, w), u);
        let mut p = x;
        for _ in 0..=s.size() {
            if p == u {
                return true;
            }
            p = s.mul(p, x);
        }
        false
    })
}

fn dynamics_on<A: ActionSystem>(sys: &A, name: &str) -> Check {
    let m = sys.monoid();
    let green = green_classes(m).map_err(err)?;
    let c = find_controlled_idempotent(sys).map_err(|e| format!("{name}: {e}"))?;
    let s = sys.space();
    ensure(s.mul(c.u, c.u) == c.u && in_kernel(s, c.u), || format!("{name}: u not an idempotent of the kernel"))?;
    if let Some(why) = controlled_postcondition(sys, &green, c.u) {
        return Err(format!("{name}: {why}"));
    }
    for class in &green.r.classes {
        for &a in class {
            ensure(class.iter().all(|&b| sys.act(a, c.u) == sys.act(b, c.u)), || format!("{name}: a(u) != b(u)"))?;
            for &b in class.iter().filter(|&&b| b != a) {
                let (g, h) = lemma_witnesses_with(m, &green, a, b).map_err(|e| format!("{name}: {e}"))?;
                let ok = m.mul(a, g) == b && m.mul(b, h) == a && m.mul(g, h) == h && m.mul(h, g) == g;
                ensure(ok, || format!("{name}: witnesses for ({}, {})", m.name(a), m.name(b)))?;
            }
        }
    }
    let y = YSpace::new(m).map_err(err)?;
    let w = build_good_witness(sys, &y).map_err(|e| format!("{name}: {e}"))?;
    ensure(check_witness(sys, &y, &w).all_pass(), || format!("{name}: good witness"))?;
    ensure(verify_image_agreement(sys).map_err(err)?, || format!("{name}: image agreement"))
}

fn controlled_dynamics(entries: &[CorpusEntry]) -> Check {
    let mut checked = 0;
    for e in entries {
        let r = classify(&e.monoid).map_err(err)?;
        if !(r.aperiodic && r.xr_linear) {
            continue;
        }
        let rz = FiniteActionSystem::right_zero_self_action(&e.monoid);
        dynamics_on(&rz, &format!("{} right-zero", e.name))?;
        let words = WordActionSystem::new(&e.monoid, WORD_ACTION_LEN);
        dynamics_on(&words, &format!("{} words", e.name))?;
        checked += 1;
    }
    ensure(checked > 0, || "no controlled monoids in the corpus".into())
}

/// Colors of the orbit `{x·y0 ⌢ y1 : x ∈ M}`, computed letter by letter.
fn orbit(m: &FiniteMonoid, c: &Coloring, y0: &[Elem], y1: &[Elem]) -> Vec<Color> {
    m.elements()
        .map(|x| {
            let w: Vec<Elem> = y0.iter().map(|&l| m.mul(x, l)).chain(y1.iter().copied()).collect();
            c.color(&w).expect("within the coloring's domain")
        })
        .collect()
}

fn mono_pairs_brute(m: &FiniteMonoid, c: &Coloring, max_len: usize) -> usize {
    let id = m.identity();
    let mut count = 0;
    for total in 2..=max_len {
        for t in tuples(m.len(), total) {
            for split in 1..total {
                let (y0, y1) = t.split_at(split);
                if y0.contains(&id) && y1.contains(&id) {
                    let cols = orbit(m, c, y0, y1);
                    count += cols.iter().all(|&x| x == cols[0]) as usize;
                }
            }
        }
    }
    count
}

fn adversarial() -> Check {
    for n in [2, 3] {
        let m = cyclic(n).map_err(err)?;
        let g = m.index_of("g").ok_or("no generator g")?;
        for l in 2..=5 {
            ensure(verify_adversarial(&m, g, l).map_err(err)?, || format!("Z{n} at L={l}"))?;
            let c = adversarial_coloring(&m, g, l).map_err(err)?;
            ensure(mono_pairs_brute(&m, &c, l) == 0, || format!("Z{n} at L={l}: brute force finds a pair"))?;
        }
    }
    Ok(())
}

fn mono_pair_witnesses() -> Check {
    let g2 = gowers(2).map_err(err)?;
    let parity = Coloring::tabulate(&g2, 3, |l| Color((l.iter().filter(|&&x| x == 1).count() % 2) as u32));
    let g3 = gowers(3).map_err(err)?;
    let max_letter = Coloring::tabulate(&g3, 3, |l| Color(*l.iter().max().unwrap() as u32));
    let t1 = table1();
    let first_letter = Coloring::tabulate(&t1, 3, |l| Color(l[0] as u32));
    let cases = [(&g2, &parity, Some((vec![0, 0], vec![0]))), (&g3, &max_letter, None), (&t1, &first_letter, None)];
    for (i, (m, c, expected)) in cases.into_iter().enumerate() {
        let p = search_mono_pair(m, c, 3).map_err(err)?.ok_or_else(|| format!("coloring {i}: no witness"))?;
        if let Some((y0, y1)) = expected {
            ensure(p.y0.letters() == y0 && p.y1.letters() == y1, || format!("coloring {i}: {:?}", p))?;
        }
        let id = m.identity();
        let cols = orbit(m, c, p.y0.letters(), p.y1.letters());
        let ok = p.y0.letters().contains(&id)
            && p.y1.letters().contains(&id)
            && cols.iter().all(|&x| x == p.color);
        ensure(ok, || format!("coloring {i}: witness fails the independent orbit check"))?;
    }
    Ok(())
}

fn syntactic() -> Check {
    let a = Alphabet::new("agh").map_err(err)?;
    let r = parse_regex(S_REGEX, &a).map_err(err)?;
    let d = minimize_dfa(&regex_to_dfa(&r, &a));
    let m = syntactic_monoid(&d).map_err(err)?;
    ensure(m.len() == 6, || format!("|M| = {}", m.len()))?;
    ensure(find_isomorphism(&m, &table1()).is_some(), || "not isomorphic to table1".into())?;
    ensure(is_star_free(&d).map_err(err)?, || "S not star-free".into())?;
    let one = Alphabet::new("a").map_err(err)?;
    let even = parse_regex("(aa)*", &one).map_err(err)?;
    ensure(!is_star_free_regex(&even, &one).map_err(err)?, || "(aa)* star-free".into())?;
    for len in 0..=6 {
        for w in tuples(3, len) {
            let chars: Vec<char> = w.iter().map(|&s| a.symbols()[s]).collect();
            let want = in_s_language(&chars);
            ensure(d.accepts(&w) == want && r.matches(&w) == want, || format!("disagree on {chars:?}"))?;
        }
    }
    Ok(())
}

/// Irreducible words reachable from `w` by deleting the smaller of two
/// adjacent comparable letters, explored exhaustively.
fn irreducible_descendants(y: &YSpace, w: &[usize]) -> HashSet<Vec<usize>> {
    let mut seen = HashSet::from([w.to_vec()]);
    let mut stack = vec![w.to_vec()];
    let mut out = HashSet::new();
    while let Some(v) = stack.pop() {
        let mut reducible = false;
        for i in 0..v.len().saturating_sub(1) {
            for (cond, del) in [(y.leq(v[i], v[i + 1]), i), (y.leq(v[i + 1], v[i]), i + 1)] {
                if cond {
                    reducible = true;
                    let mut r = v.clone();
                    r.remove(del);
                    if seen.insert(r.clone()) {
                        stack.push(r);
                    }
                }
            }
        }
        if !reducible {
            out.insert(v);
        }
    }
    out
}

fn confluence(entries: &[CorpusEntry]) -> Check {
    let mut spaces = Vec::new();
    for e in entries {
        let y = YSpace::new(&e.monoid).map_err(err)?;
        if y.x().len() <= CONFLUENCE_X_BOUND {
            let c = y.check_confluence();
            ensure(c.confluent(), || format!("{}: not confluent", e.name))?;
            spaces.push(y);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut equal = 0;
    for _ in 0..500 {
        let y = &spaces[rng.random_range(0..spaces.len())];
        let word = |rng: &mut ChaCha8Rng| -> Vec<usize> {
            let len = rng.random_range(1..=4);
            (0..len).map(|_| rng.random_range(0..y.len())).collect()
        };
        let w1 = word(&mut rng);
        // Half the pairs share a normal form by construction of the second word.
        let w2 = if rng.random_bool(0.5) {
            let mut w = y.normalize(&YWord(w1.clone())).0;
            while w.len() < 4 && rng.random_bool(0.7) {
                let i = rng.random_range(0..w.len());
                let below: Vec<usize> = (0..y.len()).filter(|&v| y.leq(v, w[i])).collect();
                w.insert(i + rng.random_range(0..2), below[rng.random_range(0..below.len())]);
            }
            w
        } else {
            word(&mut rng)
        };
        let fast = y.words_equal(&YWord(w1.clone()), &YWord(w2.clone())).map_err(err)?;
        let (d1, d2) = (irreducible_descendants(y, &w1), irreducible_descendants(y, &w2));
        ensure(d1.len() == 1 && d2.len() == 1, || format!("{w1:?} or {w2:?} has two normal forms"))?;
        ensure(fast == (d1 == d2), || format!("words_equal({w1:?}, {w2:?}) = {fast}"))?;
        equal += fast as usize;
    }
    ensure(equal >= 100, || format!("only {equal} equal pairs sampled"))
}

fn ideal_translation(entries: &[CorpusEntry]) -> Check {
    for e in entries {
        let m = &e.monoid;
        let y = YSpace::new(m).map_err(err)?;
        if !y.x().linear {
            continue;
        }
        ensure(verify_ideal_translation(m).map_err(err)?, || format!("{}: translation", e.name))?;
        let top = y.full_chain().ok_or_else(|| format!("{}: no full chain", e.name))?;
        let max_len = if m.len() <= 6 { 3 } else { 2 };
        for len in 1..=max_len {
            for t in tuples(m.len(), len).into_iter().filter(|t| t.contains(&m.identity())) {
                ensure(y.wedge(&t, top) == YWord(vec![top]), || format!("{}: wedge of {t:?}", e.name))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let entries = corpus(0);
    let criteria: Vec<Criterion> = vec![
        ("the two six-element tables classify as expected", Box::new(tables)),
        ("I_k is Ramsey exactly for k <= 3 and has 2^(k-1) elements", Box::new(i_monoids)),
        ("cyclic groups are neither Ramsey nor Y-controllable", Box::new(cyclic_groups)),
        ("the five aperiodicity tests agree on the corpus", Box::new(|| aperiodicity_agreement(&entries))),
        ("structural implications hold on the corpus", Box::new(|| structural_implications(&entries))),
        ("gowers(3) x carlson1(p,q) is controlled but not almost R-trivial", Box::new(product_example)),
        ("controlled idempotents and witnesses on both action systems", Box::new(|| controlled_dynamics(&entries))),
        ("the adversarial coloring defeats Z2 and Z3 up to length 5", Box::new(adversarial)),
        ("mono-pair search finds re-verified witnesses", Box::new(mono_pair_witnesses)),
        ("syntactic monoid of S and star-freeness", Box::new(syntactic)),
        ("Y-word rewriting is confluent and normal forms decide equality", Box::new(|| confluence(&entries))),
        ("ideal translation and the wedge identity", Box::new(|| ideal_translation(&entries))),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(()) => println!("PASS criterion {:>2}: {name} ({:.2?})", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.2?}", criteria.len() - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
