mod common;

use bqtop_core::coverings::{check_covering, check_galois, deck_group, lift_complex_map, voltage_cover, QuiverMorphism};
use bqtop_core::dsl::parse_morphism;
use bqtop_core::report::{self, Analysis, Config, CoverInputs};
use bqtop_core::Error;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn double_cover_from_corpus_files() {
    let (b, c) = (analyze("rp2.bq"), analyze("rp2_cover.bq"));
    let p = QuiverMorphism::from_spec(c.quiver(), b.quiver(), &parse_morphism(&corpus("rp2_cover.map")).unwrap()).unwrap();
    let cr = check_covering(&b.paths, &c.paths, &p);
    assert!(cr.covering);
    assert_eq!(cr.vertex_fibers.iter().map(|(_, n)| *n).collect::<Vec<_>>(), vec![2, 2, 2]);
}

#[test]
fn nonfunctorial_identity_is_not_a_covering() {
    let (b, c) = (analyze("nonfunctorial.bq"), analyze("nonfunctorial_prime.bq"));
    let (v, ok) = report::cover_report(&CoverInputs {
        base: &b,
        cover: &c,
        morphism: &corpus("nonfunctorial_identity.map"),
        group: None,
        base_point: None,
    })
    .unwrap();
    assert!(!ok);
    let r = &v["result"]["covering"];
    assert_eq!(r["covering"], false);
    assert_eq!(r["bound_morphism"]["holds"], false);
    assert!(r["bound_morphism"]["witness"].as_str().unwrap().contains("al1*al2"));
    assert_eq!(r["relation_lifting"]["holds"], true);
    assert!(v["result"].get("cell_map").is_none());
}

#[test]
fn galois_check_needs_the_whole_group() {
    let (b, c) = (analyze("rp2.bq"), analyze("rp2_cover.bq"));
    let p = QuiverMorphism::from_spec(c.quiver(), b.quiver(), &parse_morphism(&corpus("rp2_cover.map")).unwrap()).unwrap();
    let g = bqtop_core::coverings::GroupAction::trivial(c.quiver());
    let gr = check_galois(&b.paths, &c.paths, &p, &g);
    assert!(!gr.galois && !gr.transitive.holds);
}

/// Random voltages in `ℤ/n` on monomial quivers: every cell of the base has
/// exactly `n` preimages, and connected covers have a regular deck group.
#[test]
fn random_voltage_covers_multiply_cell_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let (mut connected, mut total) = (0, 0);
    for case in monomial_cases(SEED + 3, 60) {
        let base = Analysis::from_text(&case.name, &case.text, Config::default()).unwrap();
        let n = rng.gen_range(2..=3);
        let voltages: Vec<usize> = (0..case.edges.len()).map(|_| rng.gen_range(0..n)).collect();
        let v = voltage_cover(base.quiver(), &voltages, n).unwrap();
        let cover = Analysis::new("cover", &v.cover, Config::default()).unwrap();
        let cr = check_covering(&base.paths, &cover.paths, &v.projection);
        assert!(cr.covering, "{}", case.name);
        let (bx, cx) = (base.complex(false, None), cover.complex(false, None));
        let cm = lift_complex_map(base.data(false, &bx), cover.data(false, &cx), &v.projection, &cr).unwrap();
        assert!(cm.report.covering_space, "{}", case.name);
        for d in 0..bx.counts().len() {
            assert_eq!(cx.count(d), n * bx.count(d), "{} dim {d}", case.name);
            assert!(cm.report.cell_fiber_sizes[d].iter().all(|s| *s == n), "{}", case.name);
        }
        assert_eq!(cx.euler_characteristic(), n as i64 * bx.euler_characteristic());
        let gr = check_galois(&base.paths, &cover.paths, &v.projection, &v.group);
        total += 1;
        match deck_group(base.data(false, &bx), cover.data(false, &cx), &v.projection, &cm, &v.group, &gr, 0) {
            Ok(deck) => {
                connected += 1;
                assert!(deck.report.regular, "{}", case.name);
                assert_eq!(deck.report.group_order, n);
            }
            Err(Error::NotGalois(_)) => assert!(!v.cover.is_connected(), "{}", case.name),
            Err(e) => panic!("{}: {e}", case.name),
        }
    }
    assert!(connected > 0 && connected < total, "{connected} of {total} connected");
}
