//! The coloring that defeats every non-aperiodic monoid, checked
//! exhaustively on small cyclic groups.
//!
//!     cargo run --example adversarial_coloring -- [maxlen]

use monoid_workbench::monoid::cyclic;
use monoid_workbench::oracle::{adversarial_sets, verify_adversarial};

fn main() {
    let max_len = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for n in 2..=4 {
        let m = cyclic(n).unwrap();
        let g = m.index_of("g").unwrap();
        let (a, c) = adversarial_sets(&m, g).unwrap();
        let names = |v: &[usize]| v.iter().map(|&x| m.name(x)).collect::<Vec<_>>().join(",");
        let ok = verify_adversarial(&m, g, max_len).unwrap();
        println!("Z{n}: A={{{}}} C={{{}}} no monochromatic pair up to length {max_len}: {ok}", names(&a), names(&c));
    }
}
