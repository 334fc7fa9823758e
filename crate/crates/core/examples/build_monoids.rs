//! Builds monoids from generators, products and adjoined identities, and
//! compares them up to isomorphism.
//!
//!     cargo run --example build_monoids

use monoid_workbench::monoid::{
    adjoin_identity, carlson, cyclic, direct_product, find_isomorphism, gowers, transformation_monoid, write_monoid,
};

fn main() {
    // x -> x+1 mod 3 generates Z3.
    let rot = transformation_monoid(3, &[vec![1, 2, 0]]).unwrap();
    println!("<(0 1 2)> has {} elements, Z3: {}", rot.monoid.len(), find_isomorphism(&rot.monoid, &cyclic(3).unwrap()).is_some());

    // Two constant maps generate a right-zero semigroup with an identity.
    let consts = transformation_monoid(2, &[vec![0, 0], vec![1, 1]]).unwrap();
    let rz = adjoin_identity(&carlson(&["p", "q"]).unwrap());
    println!("constants on 2 points ~ carlson(p,q)+1: {}", find_isomorphism(&consts.monoid, &rz).is_some());

    let p = direct_product(&gowers(2).unwrap(), &cyclic(2).unwrap());
    println!("gowers(2) x cyclic(2):\n{}", write_monoid(&p));
}
