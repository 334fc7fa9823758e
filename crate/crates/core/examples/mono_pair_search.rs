//! Searches for variable words y0, y1 whose orbit M·y0 ⌢ y1 is
//! monochromatic, under a few colorings.
//!
//!     cargo run --example mono_pair_search

use monoid_workbench::monoid::{gowers, table1};
use monoid_workbench::oracle::search_mono_pair;
use monoid_workbench::words::{Color, Coloring, Letters};

fn main() {
    let g2 = gowers(2).unwrap();
    let parity = Coloring::tabulate(&g2, 4, |l| Color((l.iter().filter(|&&x| x == 1).count() % 2) as u32));
    let t1 = table1();
    let cases = [
        ("gowers(2) parity", &g2, parity),
        ("table1 seed 7, 2 colors", &t1, Coloring::seeded(7, 2, 4)),
        ("table1 seed 9, 3 colors", &t1, Coloring::seeded(9, 3, 4)),
    ];
    for (label, m, c) in cases {
        match search_mono_pair(m, &c, 4).unwrap() {
            Some(p) => println!("{label}: y0={} y1={} color={}", p.y0.format(m), p.y1.format(m), p.color),
            None => println!("{label}: nothing up to length 4"),
        }
    }
}
