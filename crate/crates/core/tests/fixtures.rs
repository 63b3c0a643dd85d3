use hnntree_core::fixtures::*;
use hnntree_core::quotient::{
    build_quotient, find_isomorphism, is_normal, normality_witness_hnn, quotient_is_pmp, NormalityVerdict,
    Subgroupoid,
};

#[test]
fn catalogue_has_twenty_small_normal_instances() {
    let cat = quotient_catalogue();
    assert_eq!(cat.len(), 20);
    for c in &cat {
        assert!(c.action.n_points() <= 8 && c.action.group.order() <= 24, "{}", c.name);
        assert!(c.action.group.is_normal(&c.h), "{}", c.name);
    }
}

#[test]
fn catalogue_quotients_match_the_group_side_model() {
    for c in quotient_catalogue() {
        let g = c.groupoid();
        let s = Subgroupoid::new(&g, &c.kernel_arrows()).unwrap();
        let NormalityVerdict::Normal { family, .. } = is_normal(&g, &s) else { panic!("{}", c.name) };
        let qr = build_quotient(&g, &s, &family).unwrap();
        assert!(qr.checks(&g, &s).all(), "{}", c.name);
        let iso = find_isomorphism(&qr.q, &c.model(), true, 1_000_000).unwrap();
        assert!(iso.is_some(), "{}", c.name);
        let v = quotient_is_pmp(&g, &s, &qr).unwrap();
        assert!(v.direct && v.consistent(), "{}", c.name);
    }
}

#[test]
fn shipped_groupoids_are_valid() {
    for (name, g) in fixture_groupoids() {
        assert!(g.validate().is_empty(), "{name}");
    }
}

#[test]
fn z6_witness_has_six_certified_pieces() {
    let w = normality_witness_hnn(&hnn_witness_z6()).unwrap();
    assert_eq!(w.group_order, 12);
    assert_eq!(w.pieces.len(), 6);
    assert!(w.all_certified() && w.normal);
}
