use hnntree_core::fixtures::*;
use hnntree_core::groupoid::ArrowId;
use hnntree_core::splitting::*;

/// Every assignment of a q-preimage to each arrow of R that is multiplicative.
fn homomorphic_lifts(sec: &SplitSection) -> Vec<Vec<ArrowId>> {
    let fibers: Vec<Vec<ArrowId>> = sec
        .r
        .arrows()
        .map(|g| sec.hx.arrows().filter(|&h| sec.q(h) == g).collect())
        .collect();
    let mut out = Vec::new();
    let total: usize = fibers.iter().map(|f| f.len()).product();
    for mut code in 0..total {
        let choice: Vec<ArrowId> = fibers
            .iter()
            .map(|f| {
                let c = f[code % f.len()];
                code /= f.len();
                c
            })
            .collect();
        let ok = sec.r.arrows().all(|g| {
            sec.r.with_range(sec.r.source(g)).iter().all(|&h| {
                sec.hx.compose(choice[g.idx()], choice[h.idx()]) == Some(choice[sec.r.mul(g, h).idx()])
            })
        });
        if ok {
            out.push(choice);
        }
    }
    out
}

#[test]
fn z4_section_is_one_of_the_homomorphic_lifts() {
    let inst = z4_central_extension();
    let sec = build_section(&inst).unwrap();
    assert_eq!(sec.r.n_arrows(), 4);
    let lifts = homomorphic_lifts(&sec);
    // A homomorphic lift is fixed by its value on the one non-unit arrow (x0 -> x1), two choices.
    assert_eq!(lifts.len(), 2);
    assert!(lifts.contains(&sec.sigma));
    let rep = section_report(&sec);
    assert!(rep.passed(), "{}", rep.to_text());
    assert_eq!(rep.values["r-composable-pairs"], 8);
}

#[test]
fn trivial_e_section_is_the_unique_lift() {
    let sec = build_section(&trivial_e_extension()).unwrap();
    let lifts = homomorphic_lifts(&sec);
    assert_eq!(lifts, vec![sec.sigma.clone()]);
}

#[test]
fn single_point_section_is_trivial() {
    let sec = build_section(&pure_central_extension(3)).unwrap();
    assert_eq!(sec.r.n_arrows(), 1);
    assert!(sec.hx.is_unit(sec.sigma(ArrowId(0))));
}

#[test]
fn z4_decomposition_is_an_isomorphism() {
    for inst in [z4_central_extension(), z4_central_extension_wide_cover()] {
        let d = product_decomposition(&inst).unwrap();
        let rep = d.report();
        assert!(rep.passed(), "{}", rep.to_text());
        let n = inst.cover.as_ref().unwrap().group.order();
        // |(X x E) ⋊ N| = |X||E||N| and the kernel has |X||E||E| arrows, index |N|/|E| at each unit.
        assert_eq!(d.big.n_arrows(), 2 * 2 * n);
        assert_eq!(d.quotient.q.n_units(), 2);
        assert_eq!(d.quotient.q.n_arrows(), 2 * n / 2);
        assert_eq!(d.target.n_arrows(), d.big.n_arrows());
    }
}

#[test]
fn pure_central_case_collapses_onto_y_rtimes_e() {
    let d = product_decomposition(&pure_central_extension(2)).unwrap();
    assert!(d.report().passed());
    assert_eq!(d.quotient.q.n_arrows(), 1);
    assert_eq!(d.pi.len(), 4);
    assert_eq!(d.f, d.pi);
}

#[test]
fn trivial_e_gives_theta_alone() {
    let d = product_decomposition(&trivial_e_extension()).unwrap();
    assert!(d.report().passed());
    assert_eq!(d.y_e.n_arrows(), 1);
    assert_eq!(d.f, d.quotient.theta);
}

#[test]
fn non_central_negative_control() {
    let inst = non_central_extension();
    let sec = build_section(&inst).unwrap();
    assert!(section_report(&sec).passed());
    let rep = product_map_report(&inst, &sec);
    let failed: Vec<&str> = rep.failures().iter().map(|a| a.tag.as_str()).collect();
    assert_eq!(failed, ["product-map-homomorphism", "e-central"]);
    assert!(matches!(product_decomposition(&inst), Err(SplittingError::NotCentral { .. })));
    assert!(!split_report(&inst).unwrap().passed());
}

#[test]
fn violated_hypotheses_are_named() {
    let mut inst = z4_central_extension();
    inst.e = [0, 1, 2, 3].into();
    assert!(matches!(build_section(&inst), Err(SplittingError::NotTrivialOnX { element: 1, .. })));
    let mut inst = z4_central_extension();
    inst.e = [0].into();
    assert!(matches!(build_section(&inst), Err(SplittingError::NotFree { element: 2, .. })));
    let mut inst = z4_central_extension();
    inst.e = [0, 1].into();
    assert!(matches!(build_section(&inst), Err(SplittingError::NotSubgroup(_))));
    let mut inst = z4_central_extension();
    inst.cover.as_mut().unwrap().phi = vec![0, 0, 0, 0];
    assert!(matches!(product_decomposition(&inst), Err(SplittingError::PhiNotSurjective(1))));
}
