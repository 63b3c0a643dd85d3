use hnntree_core::graph::rooted_isomorphic;
use hnntree_core::group::{bass_serre_ball, HnnPresentation, Sign};
use hnntree_core::hnn_model::*;
use hnntree_core::rational::rat;

fn bs23() -> DescentData {
    DescentData::single(2, 3).unwrap()
}

#[test]
fn descent_validation() {
    let d = bs23();
    assert!(validate_descent(&d).passed());
    let mut bad = d.clone();
    bad.sigma_plus.pop();
    bad.zeta_plus.pop();
    bad.t_backward.pop();
    let r = validate_descent(&bad);
    let f = r.failures();
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].tag, "descent-fiber-sizes");
    assert!(f[0].detail.contains("z0"));
    assert!(DescentData::uniform(2, 3, 2, 1).unwrap().check().is_ok());
}

#[test]
fn arrows_compose_and_carry_the_cocycle() {
    let d = bs23();
    let plus = Step { sign: Sign::Plus, label: 1 };
    let a = TreedArrow { base: 0, range: vec![], source: vec![plus] };
    assert!(a.compose(&a.inverse()).unwrap().is_unit());
    assert_eq!(rn_cocycle(&d, &a), rat(3, 2));
    assert_eq!(rn_cocycle(&d, &TreedArrow::unit(0, vec![])), rat(1, 1));
    // (+, +, -): exponent 1.
    let mut w = vec![];
    for s in [plus, plus, Step { sign: Sign::Minus, label: 1 }] {
        d.walk(&mut w, s).unwrap();
    }
    assert_eq!(w.len(), 3);
    let b = TreedArrow { base: 0, range: vec![], source: w };
    assert_eq!(rn_cocycle(&d, &b), rat(3, 2));
    assert_eq!(b.word(&d).len(), 3);
    // Weight ratio of the endpoints is the cocycle.
    assert_eq!(d.vertex_weight(0, &b.range) / d.vertex_weight(0, &b.source), rn_cocycle(&d, &b));
    // A backtrack cancels.
    let mut v = vec![plus];
    d.walk(&mut v, Step { sign: Sign::Minus, label: 0 }).unwrap();
    assert!(v.is_empty());
}

#[test]
fn fiber_balls_match_bass_serre() {
    let d = bs23();
    let p = HnnPresentation::baumslag_solitar(2, 3).unwrap();
    let mut sizes = vec![];
    for r in 0..=3 {
        let a = fiber_ball(&d, 0, r, 10_000).unwrap();
        let b = bass_serre_ball(&p, r, 10_000).unwrap();
        assert!(rooted_isomorphic(&a, &b), "radius {r}");
        assert!(degree_violations(&d, &a, r).is_empty());
        sizes.push(a.n_vertices());
    }
    assert_eq!(sizes, vec![1, 6, 26, 106]);
    let two = DescentData::uniform(2, 3, 2, 1).unwrap();
    for z in 0..2 {
        let a = fiber_ball(&two, z, 3, 10_000).unwrap();
        assert!(a.is_tree() && degree_violations(&two, &a, 3).is_empty());
    }
}

#[test]
fn unit_words_against_britton() {
    let d = bs23();
    let p = HnnPresentation::baumslag_solitar(2, 3).unwrap();
    let r = unit_word_check(&d, 6, Some(&p)).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn maharam_truncation() {
    let d = bs23();
    assert_eq!(level_weight(&d, 1), rat(2, 3));
    assert_eq!(level_weight(&d, -1), rat(3, 2));
    let (r, theta) = maharam_report(&d, 4, 3).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert!(theta.edges.len() > 0);
    let (r, _) = maharam_report(&DescentData::uniform(2, 3, 2, 1).unwrap(), 5, 2).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let a = MaharamArrow {
        inner: TreedArrow { base: 0, range: vec![], source: vec![Step { sign: Sign::Plus, label: 0 }] },
        level: 0,
    };
    assert_eq!(level_distance(&a), 1);
}

#[test]
fn cost_series_values() {
    let d = bs23();
    let one = cost_series_truncated(&d, 1).unwrap();
    assert_eq!(one.closed_form, rat(17, 6));
    assert_eq!(one.enumerated, rat(17, 6));
    let three = cost_series_truncated(&d, 3).unwrap();
    assert_eq!(three.closed_form, rat(2147, 216));
    assert_eq!(three.enumerated, three.closed_form);
    for (n, c) in &three.germs_per_level {
        assert_eq!(*c, if *n > 0 { 2 } else { 1 });
    }
    assert!(three.diverges);
    let values: Vec<_> = (1..=6).map(|r| cost_series_closed_form(&d, r)).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(cost_of_phi(&d).unwrap(), rat(5, 2));
    let flat = DescentData::single(2, 2).unwrap();
    assert_eq!(cost_of_phi(&flat).unwrap(), rat(2, 1));
    assert_eq!(cost_series_truncated(&flat, 1), Err(HnnModelError::Degenerate(2)));
}

#[test]
fn shadow_is_not_pmp() {
    let r = shadow_report(&bs23()).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}
