//! The chain space of a monoid: its order, rewriting normal forms and the
//! wedge of a tuple against the top chain.
//!
//!     cargo run --example y_space

use monoid_workbench::monoid::table1;
use monoid_workbench::yspace::{YSpace, YWord};

fn main() {
    let m = table1();
    let y = YSpace::new(&m).unwrap();
    println!("|X| = {}, |Y| = {}, maximal chains = {}", y.x().len(), y.len(), y.maximal_chains().len());
    let c = y.check_confluence();
    println!("confluent over {} windows: {}", c.windows_checked, c.confluent());

    let w = YWord(vec![0, 3, 1, 14]);
    println!("{}  ~>  {}", y.format_word(&w), y.format_word(&y.normalize(&w)));

    let top = y.full_chain().expect("X(table1) is linear");
    for names in [["1", "a"], ["g", "1"], ["a", "b"]] {
        let t: Vec<usize> = names.iter().map(|n| m.index_of(n).unwrap()).collect();
        println!("wedge({}) = {}", names.join(","), y.format_word(&y.wedge(&t, top)));
    }
}
