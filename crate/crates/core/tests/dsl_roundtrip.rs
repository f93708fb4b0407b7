mod common;

use bqtop_core::dsl::{parse_group, parse_morphism, parse_quiver, write_morphism};
use bqtop_core::Field;
use common::*;

#[test]
fn corpus_quivers_round_trip() {
    for file in corpus_quivers() {
        let q = parse_quiver(&corpus(&file)).unwrap();
        assert_eq!(parse_quiver(&q.to_string()).unwrap(), q, "{file}");
    }
}

#[test]
fn generated_quivers_round_trip() {
    for case in random_cases(SEED + 4, 200) {
        let q = parse_quiver(&case.text).unwrap();
        assert_eq!(parse_quiver(&q.to_string()).unwrap(), q, "{}", case.name);
        let f = q.with_field(Field::prime(5).unwrap()).unwrap();
        assert_eq!(parse_quiver(&f.to_string()).unwrap(), f, "{}", case.name);
    }
}

#[test]
fn morphism_files_round_trip() {
    let m = parse_morphism(&corpus("rp2_cover.map")).unwrap();
    assert_eq!(parse_morphism(&write_morphism(&m)).unwrap(), m);
    let g = parse_group(&corpus("rp2_cover.group")).unwrap();
    assert_eq!(g.elements.len(), 2);
}
