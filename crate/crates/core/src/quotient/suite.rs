use super::normality::{is_normal, NormalityVerdict, Section};
use super::subgroupoid::{conjugation_certifies, in_end, Subgroupoid};
use crate::groupoid::{sub_groupoid, ArrowId, FiniteGroupoid};
use crate::report::Report;
use std::collections::BTreeSet;

/// Extra data for the property suite: intermediate subgroupoids `S < H < G` (arrow sets of `G`)
/// and homomorphisms `G -> Q'` given by arrow images.
#[derive(Debug, Clone, Default)]
pub struct SuiteInput {
    pub intermediates: Vec<BTreeSet<ArrowId>>,
    pub homomorphisms: Vec<(FiniteGroupoid, Vec<ArrowId>)>,
}

fn product_section(g: &FiniteGroupoid, phi: &Section, psi: &Section) -> Section {
    g.units()
        .map(|x| {
            let a = phi[x.idx()]?;
            let b = psi[g.source(a).idx()]?;
            Some(g.mul(a, b))
        })
        .collect()
}

/// Runs the finite-scale normality properties on `(G, S)` and reports each one.
pub fn normality_property_suite(g: &FiniteGroupoid, s: &Subgroupoid, input: &SuiteInput) -> Report {
    let mut r = Report::new("normality-suite");
    let verdict = is_normal(g, s);
    let normal = verdict.is_normal();
    r.value("normal", normal);
    match &verdict {
        NormalityVerdict::Normal { family, searched } => {
            r.value("searched-pieces", *searched as u64);
            r.value("family-size", family.len() as u64);
            r.check("choice-family", "greedy family is a valid choice family", family.validate(g, s).is_ok(), "");
            let samples: Vec<&Section> = family.sections.iter().collect();
            let mut closed = true;
            let mut invariant = true;
            for (i, phi) in samples.iter().enumerate() {
                for psi in &samples {
                    let prod = product_section(g, phi, psi);
                    let dom_ok = g.units().all(|x| prod[x.idx()].is_some() == phi[x.idx()].is_some()
                        || phi[x.idx()].is_some_and(|a| psi[g.source(a).idx()].is_none()));
                    if !dom_ok || in_end(g, s, &prod, i).is_err() {
                        closed = false;
                    }
                    // {x : x phi ~ x psi} is S-invariant.
                    let agree = |x: crate::UnitId| match (phi[x.idx()], psi[x.idx()]) {
                        (Some(a), Some(b)) => s.equivalent(g, a, b),
                        _ => false,
                    };
                    for sigma in s.members() {
                        if agree(g.range(sigma)) != agree(g.source(sigma)) {
                            invariant = false;
                        }
                    }
                }
            }
            r.check("end-closed-under-products", "products of End(S) sections stay in End(S)", closed, "");
            r.check("agreement-set-invariant", "{x : x phi ~ x psi} is S-invariant", invariant, "");
            let covered = g.arrows().all(|a| conjugation_certifies(g, s, &BTreeSet::from([a])));
            r.check("covered-by-normaliser", "every singleton bisection lies in [[G]]_S", covered, "");
            let index_invariant = g.arrows().all(|a| s.index_at(g.range(a)) == s.index_at(g.source(a)));
            r.check("index-invariant", "index function is constant on G-orbits", index_invariant, "");
        }
        NormalityVerdict::NotNormal { g: a, sigma, searched } => {
            r.value("searched-pieces", *searched as u64);
            let covered = g.arrows().all(|b| conjugation_certifies(g, s, &BTreeSet::from([b])));
            r.check(
                "not-normal-witness",
                "a singleton bisection fails conjugation, so no normaliser cover exists",
                !covered,
                format!("{a} conjugates {sigma} out of S"),
            );
        }
    }
    for (i, h) in input.intermediates.iter().enumerate() {
        let ok = match sub_groupoid(g, h) {
            Ok((hg, map)) => {
                let s_in_h: BTreeSet<ArrowId> = s.members().iter().filter_map(|a| map.arrow_of.get(a).copied()).collect();
                let contains = s.members().iter().all(|a| map.arrow_of.contains_key(a));
                contains
                    && Subgroupoid::new(&hg, &s_in_h).map(|sh| is_normal(&hg, &sh).is_normal()).unwrap_or(false)
            }
            Err(_) => false,
        };
        r.check(
            "normal-in-intermediate",
            &format!("S is normal in intermediate subgroupoid {i}"),
            !normal || ok,
            "",
        );
    }
    for (i, (q2, theta)) in input.homomorphisms.iter().enumerate() {
        let kernel: BTreeSet<ArrowId> = g.arrows().filter(|&a| q2.is_unit(theta[a.idx()])).collect();
        let ok = Subgroupoid::new(g, &kernel).map(|k| is_normal(g, &k).is_normal()).unwrap_or(false);
        r.check("kernel-normal", &format!("kernel of homomorphism {i} is normal"), ok, "");
    }
    r
}
