use hnntree_core::groupoid::radon_nikodym;
use hnntree_core::random::{random_groupoid, random_treed_instance, rng};
use hnntree_core::treeing::{induce_treeing, verify_induction};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_groupoids_satisfy_the_axioms(seed in any::<u64>()) {
        let g = random_groupoid(&mut rng(seed), 200);
        prop_assert!(g.n_arrows() <= 200);
        prop_assert!(g.validate().is_empty());
        for a in g.arrows() {
            for &b in g.with_range(g.source(a)) {
                let ab = g.mul(a, b);
                prop_assert_eq!(radon_nikodym(&g, ab), radon_nikodym(&g, a) * radon_nikodym(&g, b));
            }
        }
    }

    #[test]
    fn induction_on_random_treed_instances(seed in any::<u64>()) {
        let (g, psi, y) = random_treed_instance(&mut rng(seed), 200);
        prop_assert!(g.is_pmp());
        let ind = induce_treeing(&g, &psi, &y).unwrap();
        let report = verify_induction(&g, &psi, &ind);
        prop_assert!(report.passed(), "{}", report.to_text());
    }
}
