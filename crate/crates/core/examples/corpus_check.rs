//! Runs the full invariant suite over the seeded corpus and prints a tally
//! per invariant.
//!
//!     cargo run --example corpus_check -- [seed]

use std::time::Instant;

use monoid_workbench::corpus::{corpus, run_suite, Invariant};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let entries = corpus(seed);
    let start = Instant::now();
    let report = run_suite(&entries, &Invariant::ALL);
    println!("corpus seed={seed} monoids={}", entries.len());
    for inv in Invariant::ALL {
        let t = report.tally(inv);
        println!("{:<24} pass={:<4} n/a={:<4} fail={}", inv.name(), t.pass, t.not_applicable, t.fail);
    }
    for (name, inv, why) in report.failures() {
        println!("failure: {name} {} {why}", inv.name());
    }
    println!("elapsed={:.2?}", start.elapsed());
}
