//! Finds a controlled idempotent for both built-in action systems and
//! builds the matching good witness.
//!
//!     cargo run --example controlled_idempotent

use monoid_workbench::dynamics::{
    build_good_witness, find_controlled_idempotent, ActionSystem, FiniteActionSystem, Space, WordActionSystem,
};
use monoid_workbench::monoid::table2;
use monoid_workbench::yspace::YSpace;
use monoid_workbench::FiniteMonoid;

fn report<A: ActionSystem>(label: &str, sys: &A, y: &YSpace) {
    let m: &FiniteMonoid = sys.monoid();
    let s = sys.space();
    match find_controlled_idempotent(sys) {
        Ok(c) => {
            let path: Vec<String> = c.steps.iter().map(|&(a, u)| format!("{}:{}", m.name(a), s.label(u))).collect();
            println!("{label}: |U|={} u={} via {}", s.size(), s.label(c.u), path.join(" "));
        }
        Err(e) => println!("{label}: {e}"),
    }
    match build_good_witness(sys, y) {
        Ok(w) => println!("  good witness over {} chains", w.values.len()),
        Err(e) => println!("  no good witness: {e}"),
    }
}

fn main() {
    // table1 has non-trivial R-classes, so a(u) = b(u) is a real constraint.
    let m = monoid_workbench::monoid::table1();
    let y = YSpace::new(&m).unwrap();
    report("right-zero", &FiniteActionSystem::right_zero_self_action(&m), &y);
    report("words:3", &WordActionSystem::new(&m, 3), &y);

    // X_R(table2) is not linear, so the search reports the failed precondition.
    let t2 = table2();
    report("table2 right-zero", &FiniteActionSystem::right_zero_self_action(&t2), &YSpace::new(&t2).unwrap());
}
