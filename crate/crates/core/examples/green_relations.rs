//! Green's classes and the ideal families of a monoid.
//!
//!     cargo run --example green_relations -- [family-name params...]

use monoid_workbench::green::{format_set, green_classes, x_family, x_r_family, GreenReport};
use monoid_workbench::monoid::family;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (name, params) = match args.split_first() {
        Some((name, rest)) => (name.as_str(), rest.iter().map(String::as_str).collect()),
        None => ("table1", vec![]),
    };
    let m = family(name, &params).unwrap_or_else(|e| panic!("{e}"));
    let green = green_classes(&m).unwrap();
    print!("{}", GreenReport { monoid: &m, green: &green });
    for (label, f) in [("X", x_family(&m)), ("X_R", x_r_family(&m))] {
        let members: Vec<String> = f.members.iter().map(|s| format_set(&m, s)).collect();
        println!("{label}: linear={} [{}]", f.linear, members.join(" < "));
    }
}
