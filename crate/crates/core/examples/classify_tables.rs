//! Classifies a few reference monoids and prints the verdicts side by side.
//!
//!     cargo run --example classify_tables

use monoid_workbench::classify;
use monoid_workbench::monoid::{cyclic, gowers, i_monoid, table1, table2};

fn main() {
    let monoids = [
        ("table1", table1()),
        ("table2", table2()),
        ("gowers(3)", gowers(3).unwrap()),
        ("i_monoid(3)", i_monoid(3).unwrap()),
        ("i_monoid(4)", i_monoid(4).unwrap()),
        ("cyclic(3)", cyclic(3).unwrap()),
    ];
    println!("{:<12} {:>4} {:>9} {:>8} {:>9} {:>6}  y-controllable", "monoid", "size", "aperiodic", "x_linear", "xr_linear", "ramsey");
    for (name, m) in &monoids {
        let r = classify(m).expect("characterizations agree");
        println!(
            "{name:<12} {:>4} {:>9} {:>8} {:>9} {:>6}  {}",
            r.size, r.aperiodic, r.x_linear, r.xr_linear, r.ramsey, r.y_controllable
        );
    }
    let t2 = table2();
    let r = classify(&t2).unwrap();
    println!("\nwhy table2 is not Ramsey:");
    for line in r.witness_lines(&t2) {
        println!("  {line}");
    }
}
