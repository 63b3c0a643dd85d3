use hnntree_core::group::{translation_groupoid, FiniteGroup, FiniteGroupAction};
use hnntree_core::groupoid::{pair_groupoid, uniform_weights};
use hnntree_core::quotient::{
    build_quotient, find_isomorphism, is_normal, normality_property_suite, quotient_is_pmp,
    universal_factor, NormalityVerdict, Subgroupoid, SuiteInput,
};
use hnntree_core::{ArrowId, FiniteGroupoid, MeasureMode};
use std::collections::BTreeSet;

fn regular(group: FiniteGroup) -> FiniteGroupoid {
    let n = group.order();
    let action = (0..n).map(|g| (0..n).map(|x| group.mul(g, x)).collect()).collect();
    translation_groupoid(&FiniteGroupAction::new(group, action, n).unwrap(), None)
}

/// Arrows `(x, h)` of `X ⋊ G` with `h` in `h_set`.
fn semidirect_sub(order: usize, n_points: usize, h_set: &BTreeSet<usize>) -> BTreeSet<ArrowId> {
    (0..n_points)
        .flat_map(|x| h_set.iter().map(move |&h| ArrowId((x * order + h) as u32)))
        .collect()
}

#[test]
fn z4_mod_even_has_index_two_and_two_point_quotient() {
    let g = regular(FiniteGroup::cyclic(4));
    let s = Subgroupoid::new(&g, &semidirect_sub(4, 4, &BTreeSet::from([0, 2]))).unwrap();
    assert!(s.index_function().iter().all(|&i| i == 2));
    let NormalityVerdict::Normal { family, .. } = is_normal(&g, &s) else { panic!("normal") };
    assert_eq!(family.len(), 2);
    let qr = build_quotient(&g, &s, &family).unwrap();
    assert_eq!(qr.q.n_units(), 2);
    assert_eq!(qr.q.n_arrows(), 4);
    assert!(qr.checks(&g, &s).all());
    // (X/2Z) ⋊ (Z/2) is the pair groupoid on two points.
    let pair = pair_groupoid(uniform_weights(2), MeasureMode::Probability);
    assert!(find_isomorphism(&qr.q, &pair, true, 10_000).unwrap().is_some());
    let v = quotient_is_pmp(&g, &s, &qr).unwrap();
    assert!(v.direct && v.consistent());
}

#[test]
fn non_normal_subgroup_is_rejected() {
    // S3 acting regularly, S = X ⋊ <(0 1)>.
    let grp = FiniteGroup::symmetric(3);
    let order = grp.order();
    let h = grp
        .small_subgroups()
        .into_iter()
        .find(|h| h.len() == 2)
        .unwrap();
    let g = regular(grp);
    let s = Subgroupoid::new(&g, &semidirect_sub(order, order, &h)).unwrap();
    // Free action: isotropy of S is trivial, so X ⋊ H is normal in the groupoid sense.
    assert!(is_normal(&g, &s).is_normal());
    // Non-free action on one point: the isotropy is the group itself.
    let grp = FiniteGroup::symmetric(3);
    let point = FiniteGroupAction::new(grp.clone(), vec![vec![0]; order], 1).unwrap();
    let g1 = translation_groupoid(&point, None);
    let s1 = Subgroupoid::new(&g1, &semidirect_sub(order, 1, &h)).unwrap();
    assert!(!is_normal(&g1, &s1).is_normal());
    let report = normality_property_suite(&g1, &s1, &SuiteInput::default());
    assert!(report.passed(), "{}", report.to_text());
}

#[test]
fn universal_property_through_the_model_map() {
    let g = regular(FiniteGroup::cyclic(6));
    let h: BTreeSet<usize> = BTreeSet::from([0, 3]);
    let s = Subgroupoid::new(&g, &semidirect_sub(6, 6, &h)).unwrap();
    let NormalityVerdict::Normal { family, .. } = is_normal(&g, &s) else { panic!() };
    let qr = build_quotient(&g, &s, &family).unwrap();
    // theta2 = theta itself factors through the identity.
    let tau = universal_factor(&qr, &g, &s, &qr.q, &qr.theta).unwrap();
    assert!(tau.iter().enumerate().all(|(i, t)| t.idx() == i));
    // A map that does not kill S is refused.
    let id: Vec<ArrowId> = g.arrows().collect();
    assert!(universal_factor(&qr, &g, &s, &g, &id).is_err());
}

#[test]
fn trivial_and_full_subgroupoids() {
    let g = regular(FiniteGroup::dihedral(4));
    let trivial = Subgroupoid::trivial(&g);
    let NormalityVerdict::Normal { family, .. } = is_normal(&g, &trivial) else { panic!() };
    let qr = build_quotient(&g, &trivial, &family).unwrap();
    assert!(find_isomorphism(&qr.q, &g, true, 100_000).unwrap().is_some());
    let full = Subgroupoid::new(&g, &g.arrows().collect()).unwrap();
    let NormalityVerdict::Normal { family, .. } = is_normal(&g, &full) else { panic!() };
    let qr = build_quotient(&g, &full, &family).unwrap();
    assert_eq!((qr.q.n_units(), qr.q.n_arrows()), (1, 1));
    let report = normality_property_suite(&g, &full, &SuiteInput::default());
    assert!(report.passed(), "{}", report.to_text());
}
