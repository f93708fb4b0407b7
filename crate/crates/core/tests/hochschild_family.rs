mod common;

use common::*;

#[test]
fn monomial_family_first_hochschild_group() {
    let s = family_suite();
    println!("{}", s.summary());
    assert!(s.holds(), "{}", s.summary());
}

#[test]
fn family_enumerates_every_antichain() {
    // Over a*b, b*c, c*d, a*b*c, b*c*d, a*b*c*d: the empty set, 6 singletons,
    // 6 pairs and {a*b, b*c, c*d}.
    assert_eq!(monomial_ideals("family_tree1.bq").len(), 14);
    // a*b, b*c, a*b*c on the shortcut quiver.
    assert_eq!(monomial_ideals("family_cycle2.bq").len(), 5);
}
