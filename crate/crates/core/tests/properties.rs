mod common;

use common::*;

fn assert_suite(s: Suite) {
    println!("{}", s.summary());
    assert!(s.holds(), "{}", s.summary());
}

#[test]
fn complexes_square_to_zero() {
    assert_suite(complexes_suite(&random_cases(SEED, CASES)));
}

#[test]
fn comparison_maps() {
    assert_suite(comparison_suite(&random_cases(SEED, CASES)));
}

#[test]
fn monomial_quivers_retract_to_their_graph() {
    assert_suite(monomial_suite(&monomial_cases(SEED + 1, 200)));
}

#[test]
fn first_homology_is_abelianized_pi1() {
    assert_suite(corpus_suite());
}

#[test]
fn generator_is_deterministic() {
    let (a, b) = (random_cases(3, 20), random_cases(3, 20));
    assert!(a.iter().zip(&b).all(|(x, y)| x.text == y.text));
}
