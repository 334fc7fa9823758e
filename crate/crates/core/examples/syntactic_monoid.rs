//! Regex to minimal DFA to syntactic monoid, with the star-free verdict.
//!
//!     cargo run --example syntactic_monoid -- [regex alphabet]

use monoid_workbench::classify::is_aperiodic;
use monoid_workbench::monoid::{find_isomorphism, table1};
use monoid_workbench::syntactic::{minimize_dfa, parse_regex, regex_to_dfa, syntactic_monoid, write_dfa, Alphabet, S_REGEX};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (re, alpha) = match args.as_slice() {
        [re, alpha] => (re.as_str(), alpha.as_str()),
        _ => (S_REGEX, "agh"),
    };
    let alphabet = Alphabet::new(alpha).unwrap();
    let r = parse_regex(re, &alphabet).unwrap_or_else(|e| panic!("{e}"));
    let dfa = regex_to_dfa(&r, &alphabet);
    let min = minimize_dfa(&dfa);
    println!("{} states, {} after minimization", dfa.state_count(), min.state_count());
    print!("{}", write_dfa(&min));
    let m = syntactic_monoid(&min).unwrap();
    println!("syntactic monoid: {} elements [{}]", m.len(), m.names().join(" "));
    println!("star-free: {}", is_aperiodic(&m, None).unwrap());
    println!("isomorphic to table1: {}", find_isomorphism(&m, &table1()).is_some());
}
