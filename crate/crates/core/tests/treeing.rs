use hnntree_core::groupoid::{pair_groupoid, uniform_weights};
use hnntree_core::treeing::{induce_treeing, is_treeing, verify_induction, OrientedGraphing, TreeingError};
use hnntree_core::{ArrowId, FiniteGroupoid, MeasureMode, UnitId};
use std::collections::BTreeSet;

fn arrow(g: &FiniteGroupoid, x: u32, y: u32) -> ArrowId {
    g.arrow_between(UnitId(x), UnitId(y)).unwrap()
}

fn star() -> (FiniteGroupoid, OrientedGraphing) {
    let g = pair_groupoid(uniform_weights(3), MeasureMode::Probability);
    let psi = OrientedGraphing::new(&g, BTreeSet::from([arrow(&g, 0, 1), arrow(&g, 0, 2)])).unwrap();
    (g, psi)
}

#[test]
fn three_point_star_onto_two_leaves() {
    let (g, psi) = star();
    let y = BTreeSet::from([UnitId(1), UnitId(2)]);
    let ind = induce_treeing(&g, &psi, &y).unwrap();
    assert_eq!(ind.psi0, BTreeSet::from([arrow(&g, 0, 1), arrow(&g, 1, 0)]));
    assert_eq!(ind.psi1, BTreeSet::from([arrow(&g, 0, 2), arrow(&g, 2, 0)]));
    assert_eq!(ind.theta, BTreeSet::from([arrow(&g, 1, 2), arrow(&g, 2, 1)]));
    let report = verify_induction(&g, &psi, &ind);
    assert!(report.passed(), "{}", report.to_text());
    assert_eq!(report.values["cost-theta"], "1/3");
    assert_eq!(report.values["cost-psi1"], "1/3");
}

#[test]
fn full_target_keeps_the_treeing() {
    let (g, psi) = star();
    let ind = induce_treeing(&g, &psi, &g.unit_set()).unwrap();
    assert!(ind.psi0.is_empty());
    assert_eq!(ind.theta, psi.psi(&g));
    assert!(ind.j.iter().all(|(a, b)| a == b));
    let report = verify_induction(&g, &psi, &ind);
    assert!(report.passed(), "{}", report.to_text());
    assert_eq!(report.values["cost-theta"], "2/3");
}

#[test]
fn triangle_is_refused() {
    let g = pair_groupoid(uniform_weights(3), MeasureMode::Probability);
    let tri = OrientedGraphing::new(&g, BTreeSet::from([arrow(&g, 0, 1), arrow(&g, 1, 2), arrow(&g, 2, 0)])).unwrap();
    assert!(!is_treeing(&g, &tri.psi(&g)));
    assert!(matches!(
        induce_treeing(&g, &tri, &BTreeSet::from([UnitId(0)])),
        Err(TreeingError::NotTreeing(_))
    ));
    assert_eq!(induce_treeing(&g, &tri, &BTreeSet::new()).unwrap_err(), TreeingError::EmptyTarget);
}
