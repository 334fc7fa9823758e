//! Command line front end. Every subcommand prints `key=value` lines.
//!
//! Exit codes: 0 when the run succeeds (or meets `--expect`), 1 on a
//! property violation or expectation mismatch, 2 on bad input or usage.
//!
//! Wherever a monoid is expected, either a `.mon` path or a family
//! expression such as `gowers(3)`, `carlson1(p,q)` or `table1` is accepted.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::classify::{classify, ClassificationReport};
use crate::corpus::{corpus, named_corpus, random_corpus, run_suite, Invariant};
use crate::dynamics::{
    action_headers, build_good_witness, controlled_postcondition, find_controlled_idempotent,
    lemma_witnesses_with, parse_action, verify_image_agreement, ActionSystem, DynamicsError,
    FiniteActionSystem, Space, WordActionSystem,
};
use crate::green::{green_classes, GreenReport};
use crate::monoid::{
    family, find_isomorphism, parse_monoid, parse_structure, write_monoid, FiniteMonoid, FiniteSemigroup,
    FAMILY_NAMES,
};
use crate::oracle::{adversarial_sets, search_mono_pair, verify_adversarial, OracleError};
use crate::syntactic::{
    minimize_dfa, parse_dfa, parse_regex, regex_to_dfa, syntactic_monoid, write_dfa, Alphabet, Dfa,
};
use crate::words::{Coloring, Letters};
use crate::yspace::{verify_ideal_translation, YSpace, DEFAULT_CHAIN_CAP};

#[derive(Parser, Debug)]
#[command(name = "monoid-workbench", version, about = "Finite monoid workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Aperiodicity, Green triviality, linearity and the Ramsey verdict.
    Classify {
        monoid: String,
        /// `key` (meaning key=true) or `key=value`, compared with the output.
        #[arg(long)]
        expect: Vec<String>,
    },
    /// Green's classes, the R order and the families X, X_R.
    Green { monoid: String },
    /// Size, order and confluence of the chain space Y(M).
    Yspace {
        monoid: String,
        #[arg(long, default_value_t = DEFAULT_CHAIN_CAP)]
        cap: usize,
        /// Print every chain.
        #[arg(long)]
        list: bool,
    },
    /// Controlled idempotent, witnesses and image agreement for an action.
    Dynamics {
        monoid: String,
        /// `rightzero`, `words:L`, or a `.act` file.
        #[arg(long, default_value = "rightzero")]
        system: String,
        /// Space for a `.act` file, overriding its `space:` header.
        #[arg(long)]
        space: Option<String>,
    },
    /// Checks the adversarial coloring for an element with non-stabilising powers.
    Adversarial {
        monoid: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        maxlen: usize,
    },
    /// Looks for variable words y0, y1 with M y0⌢y1 monochromatic.
    Search {
        monoid: String,
        /// `first-in:a,b`, `seed:N:K` (seed N, K colors) or `file:PATH`.
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        maxlen: usize,
        /// `found` or `absent`.
        #[arg(long, default_value = "found")]
        expect: String,
    },
    /// Minimal DFA and syntactic monoid of a regex or a `.dfa` file.
    Syntactic {
        #[arg(long, conflicts_with = "dfa", required_unless_present = "dfa")]
        regex: Option<String>,
        #[arg(long, requires = "regex")]
        alphabet: Option<String>,
        /// Read the automaton from a `.dfa` file instead.
        #[arg(long)]
        dfa: Option<PathBuf>,
        /// Write the syntactic monoid as `.mon`.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Write the minimal DFA as `.dfa`.
        #[arg(long)]
        emit_dfa: Option<PathBuf>,
        /// `star-free` or `not-star-free`.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Prints or writes a named monoid; lists the families without a name.
    Families {
        name: Option<String>,
        params: Vec<String>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Finds an isomorphism between two monoids.
    Iso { first: String, second: String },
    /// Runs the invariant suite over the named and seeded random corpus.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = crate::corpus::RANDOM_COUNT)]
        random: usize,
        /// Print one line per monoid.
        #[arg(long)]
        verbose: bool,
    },
}

enum Failure {
    Usage(String),
    Violation(String),
}

type Outcome = Result<bool, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let mut buf = String::new();
    let result = dispatch(cli.command, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(err, "violation: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

macro_rules! line {
    ($buf:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        let _ = writeln!($buf, $($arg)*);
    }};
}

fn dispatch(cmd: Command, o: &mut String) -> Outcome {
    match cmd {
        Command::Classify { monoid, expect } => cmd_classify(&monoid, &expect, o),
        Command::Green { monoid } => {
            let m = load_monoid(&monoid)?;
            let green = green_classes(&m).map_err(|e| Failure::Violation(e.to_string()))?;
            o.push_str(&GreenReport { monoid: &m, green: &green }.to_string());
            Ok(true)
        }
        Command::Yspace { monoid, cap, list } => cmd_yspace(&monoid, cap, list, o),
        Command::Dynamics { monoid, system, space } => cmd_dynamics(&monoid, &system, space.as_deref(), o),
        Command::Adversarial { monoid, element, maxlen } => cmd_adversarial(&monoid, &element, maxlen, o),
        Command::Search { monoid, coloring, maxlen, expect } => cmd_search(&monoid, &coloring, maxlen, &expect, o),
        Command::Syntactic { regex, alphabet, dfa, emit, emit_dfa, expect } => {
            cmd_syntactic(regex.as_deref(), alphabet.as_deref(), dfa.as_deref(), emit, emit_dfa, expect, o)
        }
        Command::Families { name, params, output } => cmd_families(name.as_deref(), &params, output, o),
        Command::Iso { first, second } => {
            let (m1, m2) = (load_monoid(&first)?, load_monoid(&second)?);
            match find_isomorphism(&m1, &m2) {
                Some(iso) => {
                    line!(o, "iso=found");
                    for a in m1.elements() {
                        line!(o, "map {} -> {}", m1.name(a), m2.name(iso.apply(a)));
                    }
                    Ok(true)
                }
                None => {
                    line!(o, "iso=absent");
                    Ok(false)
                }
            }
        }
        Command::Corpus { seed, random, verbose } => cmd_corpus(seed, random, verbose, o),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// A `.mon` path, or a family expression `name` / `name(p1,p2)`.
fn load_monoid(spec: &str) -> Result<FiniteMonoid, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        return parse_monoid(&read(path)?).map_err(|e| usage(format!("{spec}: {e}")));
    }
    let (name, args) = match spec.split_once('(') {
        Some((name, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| usage(format!("`{spec}`: missing `)`")))?;
            (name, inner)
        }
        None => (spec, ""),
    };
    if !FAMILY_NAMES.contains(&name) {
        return Err(usage(format!("`{spec}` is neither a file nor a family")));
    }
    let params: Vec<&str> = if args.trim().is_empty() { vec![] } else { vec![args] };
    family(name, &params).map_err(usage)
}

fn cmd_classify(spec: &str, expect: &[String], o: &mut String) -> Outcome {
    let m = load_monoid(spec)?;
    let report = classify(&m).map_err(|e| Failure::Violation(e.to_string()))?;
    line!(o, "monoid={spec}");
    for (k, v) in report.key_values() {
        line!(o, "{k}={v}");
    }
    for w in report.witness_lines(&m) {
        line!(o, "# {w}");
    }
    let mut ok = true;
    for e in expect {
        let (key, want) = match e.split_once('=') {
            Some((k, v)) => (k.replace('-', "_"), v.to_string()),
            None => (e.replace('-', "_"), "true".to_string()),
        };
        let got = lookup(&report, &key).ok_or_else(|| usage(format!("--expect: unknown key `{key}`")))?;
        let met = got == want;
        line!(o, "expect {key}={want} {}", if met { "met" } else { "MISMATCH" });
        ok &= met;
    }
    Ok(ok)
}

fn lookup(report: &ClassificationReport, key: &str) -> Option<String> {
    report.key_values().into_iter().find(|(k, _)| *k == key).map(|(_, v)| v)
}

fn cmd_yspace(spec: &str, cap: usize, list: bool, o: &mut String) -> Outcome {
    let m = load_monoid(spec)?;
    let y = YSpace::with_cap(&m, cap).map_err(|e| Failure::Violation(e.to_string()))?;
    line!(o, "x_size={}", y.x().len());
    line!(o, "x_linear={}", y.x().linear);
    line!(o, "y_size={}", y.len());
    line!(o, "maximal_chains={}", y.maximal_chains().len());
    line!(o, "strict_order_pairs={}", y.strict_order_pairs());
    let c = y.check_confluence();
    line!(o, "confluent={}", c.confluent());
    line!(o, "windows_checked={}", c.windows_checked);
    if let Some((w, r1, r2)) = &c.unjoinable {
        line!(o, "# unjoinable window {} -> {} | {}", y.format_word(w), y.format_word(r1), y.format_word(r2));
    }
    let translation = if y.x().linear {
        let ok = verify_ideal_translation(&m).map_err(|e| Failure::Violation(e.to_string()))?;
        ok.to_string()
    } else {
        "n/a".to_string()
    };
    line!(o, "ideal_translation={translation}");
    if list {
        for i in 0..y.len() {
            line!(o, "chain {i} {}", y.format_chain(i));
        }
    }
    Ok(c.confluent() && translation != "false")
}

fn report_system<A: ActionSystem>(sys: &A, label: &str, m: &FiniteMonoid, o: &mut String) -> Outcome {
    let green = green_classes(m).map_err(|e| Failure::Violation(e.to_string()))?;
    line!(o, "system={label}");
    line!(o, "space_size={}", sys.space().size());
    let mut ok = true;
    match find_controlled_idempotent(sys) {
        Ok(c) => {
            let steps: Vec<String> =
                c.steps.iter().map(|&(a, u)| format!("{}:{}", m.name(a), sys.space().label(u))).collect();
            line!(o, "controlled_idempotent={}", sys.space().label(c.u));
            line!(o, "steps={}", steps.join(" "));
            let post = controlled_postcondition(sys, &green, c.u);
            line!(o, "postcondition={}", if post.is_none() { "pass" } else { "FAIL" });
            ok &= post.is_none();
        }
        Err(DynamicsError::PreconditionViolated(why)) => {
            line!(o, "controlled_idempotent=n/a");
            line!(o, "# precondition: {why}");
            return Ok(false);
        }
        Err(e) => {
            line!(o, "controlled_idempotent=FAIL");
            line!(o, "# {e}");
            ok = false;
        }
    }
    let mut pairs = 0;
    let mut lemma_ok = true;
    for class in &green.r.classes {
        for &a in class {
            for &b in class.iter().filter(|&&b| b != a) {
                pairs += 1;
                if let Err(e) = lemma_witnesses_with(m, &green, a, b) {
                    line!(o, "# lemma witnesses for ({}, {}): {e}", m.name(a), m.name(b));
                    lemma_ok = false;
                }
            }
        }
    }
    line!(o, "lemma_witnesses={} pairs={pairs}", if lemma_ok { "pass" } else { "FAIL" });
    let agree = verify_image_agreement(sys).map_err(|e| Failure::Violation(e.to_string()))?;
    line!(o, "image_agreement={agree}");
    let good = YSpace::new(m).map_err(|e| e.to_string()).and_then(|y| {
        build_good_witness(sys, &y).map_err(|e| e.to_string())
    });
    match &good {
        Ok(_) => line!(o, "good_witness=pass"),
        Err(e) => {
            line!(o, "good_witness=FAIL");
            line!(o, "# {e}");
        }
    }
    Ok(ok && lemma_ok && agree && good.is_ok())
}

fn cmd_dynamics(spec: &str, system: &str, space: Option<&str>, o: &mut String) -> Outcome {
    let m = load_monoid(spec)?;
    if system == "rightzero" || system == "right-zero" {
        return report_system(&FiniteActionSystem::right_zero_self_action(&m), "right-zero", &m, o);
    }
    if let Some(l) = system.strip_prefix("words:") {
        let l: usize = l.parse().map_err(|_| usage(format!("--system: bad length `{l}`")))?;
        if l == 0 {
            return Err(usage("--system: word length must be positive"));
        }
        return report_system(&WordActionSystem::new(&m, l), &format!("words:{l}"), &m, o);
    }
    let path = Path::new(system);
    let text = read(path)?;
    let space_path = match (space, action_headers(&text).1) {
        (Some(s), _) => PathBuf::from(s),
        (None, Some(s)) => path.parent().unwrap_or(Path::new(".")).join(s),
        (None, None) => return Err(usage("--system: .act file needs `space:` or --space")),
    };
    let space: FiniteSemigroup = parse_structure(&read(&space_path)?)
        .map_err(|e| usage(format!("{}: {e}", space_path.display())))?
        .semigroup;
    let sys = parse_action(&text, &m, &space).map_err(|e| match e {
        DynamicsError::InvalidAction(_) => Failure::Violation(e.to_string()),
        other => usage(format!("{system}: {other}")),
    })?;
    report_system(&sys, system, &m, o)
}

fn cmd_adversarial(spec: &str, element: &str, maxlen: usize, o: &mut String) -> Outcome {
    let m = load_monoid(spec)?;
    let a = m.index_of(element).ok_or_else(|| usage(format!("--element: unknown `{element}`")))?;
    match adversarial_sets(&m, a) {
        Ok((set_a, set_c)) => {
            let names = |v: &[usize]| v.iter().map(|&x| m.name(x)).collect::<Vec<_>>().join(",");
            line!(o, "powers={{{}}}", names(&set_a));
            line!(o, "colors={{{}}}", names(&set_c));
        }
        Err(OracleError::PreconditionViolated(why)) => {
            line!(o, "precondition=violated");
            line!(o, "# {why}");
            return Ok(false);
        }
        Err(e) => return Err(Failure::Violation(e.to_string())),
    }
    let ok = verify_adversarial(&m, a, maxlen).map_err(|e| Failure::Violation(e.to_string()))?;
    line!(o, "maxlen={maxlen}");
    line!(o, "defeats_all_pairs={ok}");
    Ok(ok)
}

fn parse_coloring(m: &FiniteMonoid, spec: &str, maxlen: usize) -> Result<Coloring, Failure> {
    if let Some(set) = spec.strip_prefix("first-in:") {
        let elems = m.parse_elements(set).map_err(|e| usage(format!("--coloring: {e}")))?;
        return Ok(Coloring::first_in(m, &elems, maxlen));
    }
    if let Some(rest) = spec.strip_prefix("seed:") {
        let (n, k) = rest.split_once(':').ok_or_else(|| usage("--coloring: expected seed:N:K"))?;
        let n: u64 = n.parse().map_err(|_| usage(format!("--coloring: bad seed `{n}`")))?;
        let k: u32 = k.parse().map_err(|_| usage(format!("--coloring: bad color count `{k}`")))?;
        if k == 0 {
            return Err(usage("--coloring: need at least one color"));
        }
        return Ok(Coloring::seeded(n, k, maxlen));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return Coloring::parse(m, &read(Path::new(path))?).map_err(|e| usage(format!("{path}: {e}")));
    }
    Err(usage(format!("--coloring: unknown form `{spec}`")))
}

fn cmd_search(spec: &str, coloring: &str, maxlen: usize, expect: &str, o: &mut String) -> Outcome {
    let m = load_monoid(spec)?;
    let want_found = match expect {
        "found" => true,
        "absent" => false,
        other => return Err(usage(format!("--expect: `{other}` is not found/absent"))),
    };
    let c = parse_coloring(&m, coloring, maxlen)?;
    let found = search_mono_pair(&m, &c, maxlen).map_err(|e| match e {
        OracleError::Words(w) => usage(w),
        other => Failure::Violation(other.to_string()),
    })?;
    match &found {
        Some(p) => {
            line!(o, "result=found");
            line!(o, "y0={}", p.y0.format(&m));
            line!(o, "y1={}", p.y1.format(&m));
            line!(o, "color={}", p.color);
            line!(o, "reverified=true");
        }
        None => line!(o, "result=not-found-up-to-{maxlen}"),
    }
    Ok(found.is_some() == want_found)
}

fn cmd_syntactic(
    regex: Option<&str>,
    alphabet: Option<&str>,
    dfa: Option<&Path>,
    emit: Option<PathBuf>,
    emit_dfa: Option<PathBuf>,
    expect: Option<String>,
    o: &mut String,
) -> Outcome {
    let automaton: Dfa = match (regex, dfa) {
        (Some(re), _) => {
            let alphabet = Alphabet::new(alphabet.ok_or_else(|| usage("--regex needs --alphabet"))?)
                .map_err(|e| usage(format!("--alphabet: {e}")))?;
            let ast = parse_regex(re, &alphabet).map_err(|e| usage(format!("--regex: {e}")))?;
            regex_to_dfa(&ast, &alphabet)
        }
        (None, Some(path)) => parse_dfa(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        (None, None) => return Err(usage("give --regex or --dfa")),
    };
    let minimal = minimize_dfa(&automaton);
    let m = syntactic_monoid(&minimal).map_err(|e| Failure::Violation(e.to_string()))?;
    let aperiodic = crate::classify::is_aperiodic(&m, None).map_err(|e| Failure::Violation(e.to_string()))?;
    line!(o, "dfa_states={}", automaton.state_count());
    line!(o, "minimal_dfa_states={}", minimal.state_count());
    line!(o, "monoid_size={}", m.len());
    line!(o, "aperiodic={aperiodic}");
    line!(o, "star_free={aperiodic}");
    if let Some(path) = emit {
        fs::write(&path, write_monoid(&m)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        line!(o, "wrote={}", path.display());
    }
    if let Some(path) = emit_dfa {
        fs::write(&path, write_dfa(&minimal)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        line!(o, "wrote={}", path.display());
    }
    match expect.as_deref() {
        None => Ok(true),
        Some("star-free") => Ok(aperiodic),
        Some("not-star-free") => Ok(!aperiodic),
        Some(other) => Err(usage(format!("--expect: `{other}` is not star-free/not-star-free"))),
    }
}

fn cmd_families(name: Option<&str>, params: &[String], output: Option<PathBuf>, o: &mut String) -> Outcome {
    let Some(name) = name else {
        for f in FAMILY_NAMES {
            line!(o, "{f}");
        }
        return Ok(true);
    };
    let params: Vec<&str> = params.iter().map(String::as_str).collect();
    let m = family(name, &params).map_err(usage)?;
    let text = write_monoid(&m);
    match output {
        Some(path) => {
            fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            line!(o, "wrote={}", path.display());
            line!(o, "size={}", m.len());
        }
        None => o.push_str(&text),
    }
    Ok(true)
}

fn cmd_corpus(seed: u64, random: usize, verbose: bool, o: &mut String) -> Outcome {
    let entries = if random == crate::corpus::RANDOM_COUNT {
        corpus(seed)
    } else {
        let mut e = named_corpus();
        e.extend(random_corpus(seed, random));
        e
    };
    let report = run_suite(&entries, &Invariant::ALL);
    line!(o, "seed={seed}");
    line!(o, "monoids={}", entries.len());
    for inv in Invariant::ALL {
        let t = report.tally(inv);
        line!(o, "{} pass={} n/a={} fail={}", inv.name(), t.pass, t.not_applicable, t.fail);
    }
    if verbose {
        for e in &report.entries {
            let res: Vec<String> = e.results.iter().map(|(i, r)| format!("{}={r}", i.name())).collect();
            line!(o, "entry {} size={} {}", e.name, e.size, res.join(" "));
        }
    }
    for (name, inv, why) in report.failures() {
        line!(o, "failure {name} {} {why}", inv.name());
    }
    line!(o, "all_pass={}", report.all_pass());
    Ok(report.all_pass())
}
