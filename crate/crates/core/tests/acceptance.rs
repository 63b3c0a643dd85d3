//! One line per acceptance criterion. All quantities are exact; each criterion also has a time budget.

use hnntree_core::commands::{run_command, Command, RunConfig};
use hnntree_core::fixtures::*;
use hnntree_core::graph::rooted_isomorphic;
use hnntree_core::group::{bass_serre_ball, HnnPresentation};
use hnntree_core::groupoid::{radon_nikodym, restrict};
use hnntree_core::hnn_model::*;
use hnntree_core::instance::{shipped_instances, Instance};
use hnntree_core::quotient::*;
use hnntree_core::random::{random_groupoid, random_treed_instance, rng};
use hnntree_core::rational::{rat, Rational};
use hnntree_core::splitting::*;
use hnntree_core::treeing::{cost, induce_treeing, verify_induction};
use hnntree_core::{ArrowId, FiniteGroupoid, UnitId};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cocycle_exact(g: &FiniteGroupoid) -> bool {
    g.arrows().all(|a| {
        g.with_range(g.source(a)).iter().all(|&b| {
            let w = |x: UnitId| g.weight(x).clone();
            let d = |h: ArrowId| w(g.range(h)) / w(g.source(h));
            d(g.mul(a, b)) == d(a) * d(b) && radon_nikodym(g, a) == d(a)
        })
    })
}

fn groupoid_axioms() -> Outcome {
    let mut n = 0;
    for (name, g) in fixture_groupoids() {
        ensure(g.validate().is_empty() && cocycle_exact(&g), || format!("fixture {name}"))?;
        n += 1;
    }
    for seed in 0..100 {
        let g = random_groupoid(&mut rng(seed), 200);
        ensure(g.n_arrows() <= 200, || format!("seed {seed} exceeds 200 arrows"))?;
        ensure(g.validate().is_empty() && cocycle_exact(&g), || format!("random seed {seed}"))?;
    }
    Ok(format!("{n} fixtures and 100 random groupoids"))
}

/// `theta2(x, g) = ([x], gH)` into the group-side model, computed from the action directly.
fn model_map(c: &QuotientCase) -> Vec<ArrowId> {
    let grp = &c.action.group;
    let cosets = grp.left_cosets(&c.h);
    let coset_of = |g: usize| cosets.iter().position(|s| s.contains(&g)).unwrap();
    let orbits = c.action.orbits_of(&c.h);
    let orbit_of = |x: usize| orbits.iter().position(|o| o.contains(&x)).unwrap();
    let order = grp.order();
    (0..c.action.n_points() * order)
        .map(|i| ArrowId((orbit_of(i / order) * cosets.len() + coset_of(i % order)) as u32))
        .collect()
}

fn quotient_construction() -> Outcome {
    let cat = quotient_catalogue();
    for c in &cat {
        ensure(c.action.n_points() <= 8 && c.action.group.order() <= 24, || c.name.clone())?;
        let g = c.groupoid();
        let s = Subgroupoid::new(&g, &c.kernel_arrows()).map_err(|e| e.to_string())?;
        let NormalityVerdict::Normal { family, .. } = is_normal(&g, &s) else {
            return Err(format!("{} reported not normal", c.name));
        };
        let qr = build_quotient(&g, &s, &family).map_err(|e| e.to_string())?;
        let checks = qr.checks(&g, &s);
        ensure(checks.all(), || format!("{}: {:?}", c.name, checks.failures))?;
        ensure(
            g.arrows().all(|a| qr.q.is_unit(qr.theta(a)) == c.h.contains(&(a.idx() % c.action.group.order()))),
            || format!("{}: kernel differs from X ⋊ H", c.name),
        )?;
        let model = c.model();
        let tau = universal_factor(&qr, &g, &s, &model, &model_map(c)).map_err(|e| format!("{}: {e}", c.name))?;
        let distinct: BTreeSet<ArrowId> = tau.iter().copied().collect();
        ensure(distinct.len() == model.n_arrows() && tau.len() == model.n_arrows(), || {
            format!("{}: factor map is not a bijection", c.name)
        })?;
        let iso = find_isomorphism(&qr.q, &model, true, 1_000_000).map_err(|e| e.to_string())?;
        ensure(iso.is_some(), || format!("{}: no isomorphism with the model", c.name))?;
    }
    Ok(format!("{} instances", cat.len()))
}

fn pmp_biconditional() -> Outcome {
    let mut pmp = 0;
    for c in quotient_catalogue() {
        let g = c.groupoid();
        let s = Subgroupoid::new(&g, &c.kernel_arrows()).map_err(|e| e.to_string())?;
        let NormalityVerdict::Normal { family, .. } = is_normal(&g, &s) else { unreachable!() };
        let qr = build_quotient(&g, &s, &family).map_err(|e| e.to_string())?;
        let v = quotient_is_pmp(&g, &s, &qr).map_err(|e| e.to_string())?;
        ensure(v.consistent(), || format!("{}: direct {} vs witness", c.name, v.direct))?;
        pmp += usize::from(v.direct);
    }
    let d = DescentData::single(2, 3).unwrap();
    let (g, s) = descent_shadow(&d).map_err(|e| e.to_string())?;
    let NormalityVerdict::Normal { family, .. } = is_normal(&g, &s) else {
        return Err("shadow not normal".into());
    };
    let qr = build_quotient(&g, &s, &family).map_err(|e| e.to_string())?;
    let v = quotient_is_pmp(&g, &s, &qr).map_err(|e| e.to_string())?;
    ensure(!v.direct && v.witness.is_none(), || "BS(2,3) shadow reported measure preserving".into())?;
    Ok(format!("20 agree ({pmp} measure preserving); BS(2,3) shadow not measure preserving"))
}

/// Oracle: on a principal groupoid, `theta` is a treeing of `G|_Y` iff its undirected edges form
/// a spanning tree of every orbit.
fn spanning_forest(g: &FiniteGroupoid, y: &BTreeSet<UnitId>, theta: &BTreeSet<ArrowId>) -> bool {
    let (gy, res) = restrict(g, y).unwrap();
    let mut parent: Vec<usize> = (0..gy.n_units()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut edges = 0;
    for &a in theta {
        let (Some(&r), Some(&s)) = (res.unit_of.get(&g.range(a)), res.unit_of.get(&g.source(a))) else {
            return false;
        };
        if r.idx() < s.idx() {
            let (ra, sa) = (find(&mut parent, r.idx()), find(&mut parent, s.idx()));
            if ra == sa {
                return false;
            }
            parent[ra] = sa;
            edges += 1;
        }
    }
    let orbits = gy.orbits().len();
    edges + orbits == gy.n_units()
        && gy.units().all(|x| gy.with_range(x).iter().all(|&a| find(&mut parent, x.idx()) == find(&mut parent, gy.source(a).idx())))
}

fn half_weight(g: &FiniteGroupoid, set: &BTreeSet<ArrowId>) -> Rational {
    set.iter().map(|&a| g.weight(g.range(a)).clone()).sum::<Rational>() / rat(2, 1)
}

fn treeing_induction() -> Outcome {
    let (g, psi, y) = three_point_star();
    let ind = induce_treeing(&g, &psi, &y).map_err(|e| e.to_string())?;
    let pairs: BTreeSet<(u32, u32)> = ind.theta.iter().map(|&a| (g.range(a).0, g.source(a).0)).collect();
    ensure(pairs == BTreeSet::from([(1, 2), (2, 1)]), || format!("theta = {pairs:?}"))?;
    let (ct, cp) = (cost(&g, &ind.theta).unwrap(), cost(&g, &ind.psi1).unwrap());
    ensure(ct == rat(1, 3) && cp == rat(1, 3) && half_weight(&g, &ind.theta) == ct, || format!("costs {ct}, {cp}"))?;
    for seed in 0..50 {
        let (g, psi, y) = random_treed_instance(&mut rng(seed), 200);
        let ind = induce_treeing(&g, &psi, &y).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(spanning_forest(&g, &y, &ind.theta), || format!("seed {seed}: theta is not a treeing of G|Y"))?;
        ensure(half_weight(&g, &ind.theta) == half_weight(&g, &ind.psi1), || format!("seed {seed}: cost differs"))?;
        ensure(verify_induction(&g, &psi, &ind).passed(), || format!("seed {seed}: report fails"))?;
    }
    Ok("worked example exact, 50 random instances".into())
}

fn bass_serre_consistency() -> Outcome {
    let d = DescentData::single(2, 3).unwrap();
    let p = HnnPresentation::baumslag_solitar(2, 3).unwrap();
    let mut sizes = Vec::new();
    for r in 0..=3 {
        let a = fiber_ball(&d, 0, r, 10_000).map_err(|e| e.to_string())?;
        let b = bass_serre_ball(&p, r, 10_000).map_err(|e| e.to_string())?;
        ensure(rooted_isomorphic(&a, &b) && a.n_vertices() == b.n_vertices(), || format!("radius {r}"))?;
        sizes.push(a.n_vertices());
    }
    ensure(sizes == [1, 6, 26, 106], || format!("sizes {sizes:?}"))?;
    Ok(format!("sizes {sizes:?}"))
}

fn degree_law() -> Outcome {
    let mut vertices = 0;
    for (name, d) in descent_instances() {
        for z in 0..d.n_types() {
            for r in 0..=3 {
                let ball = fiber_ball(&d, z, r, 10_000).map_err(|e| e.to_string())?;
                let bad: Vec<usize> = (0..ball.n_vertices())
                    .filter(|&v| ball.depth[v] < r && (ball.out_degree(v) != d.q || ball.in_degree(v) != d.p))
                    .collect();
                ensure(bad.is_empty(), || format!("{name}, z{z}, radius {r}: vertices {bad:?}"))?;
                vertices += ball.n_vertices();
            }
        }
    }
    Ok(format!("{vertices} ball vertices over {} instances", descent_instances().len()))
}

fn maharam_level_distance() -> Outcome {
    let d = DescentData::single(2, 3).unwrap();
    let (r, _) = maharam_report(&d, 4, 3).map_err(|e| e.to_string())?;
    for tag in ["level-distance", "phi0-plus-unique"] {
        let a = r.assertions.iter().find(|a| a.tag == tag).ok_or(format!("{tag} missing"))?;
        ensure(a.passed, || format!("{tag}: {}", a.detail))?;
    }
    ensure(r.passed(), || r.to_text())?;
    Ok(format!("{} arrows checked", r.values["level-distance-arrows"]))
}

fn cost_series() -> Outcome {
    let d = DescentData::single(2, 3).unwrap();
    let one = cost_series_truncated(&d, 1).map_err(|e| e.to_string())?;
    let three = cost_series_truncated(&d, 3).map_err(|e| e.to_string())?;
    ensure(one.closed_form == rat(17, 6) && one.enumerated == rat(17, 6), || format!("R_L=1: {}", one.enumerated))?;
    ensure(three.closed_form == rat(2147, 216) && three.enumerated == rat(2147, 216), || {
        format!("R_L=3: {}", three.enumerated)
    })?;
    // Independent sum: (q-1)(p/q)^n + (p-1)(q/p)^n over 1 <= n <= R.
    let direct = |r: i64| -> Rational {
        (1..=r)
            .map(|n| {
                rat(2, 1) * rat(2i64.pow(n as u32), 3i64.pow(n as u32)) + rat(3i64.pow(n as u32), 2i64.pow(n as u32))
            })
            .sum()
    };
    let values: Vec<Rational> = (1..=6).map(|r| cost_series_truncated(&d, r).unwrap().enumerated).collect();
    ensure(values.iter().zip(1..).all(|(v, r)| *v == direct(r)), || "series differs from the direct sum".into())?;
    ensure(values.windows(2).all(|w| w[0] < w[1]), || "not strictly increasing".into())?;
    ensure(cost_of_phi(&d).unwrap() == rat(5, 2), || "cost of phi".into())?;
    let flat = DescentData::single(2, 2).unwrap();
    ensure(cost_of_phi(&flat).unwrap() == rat(2, 1), || "flat cost of phi".into())?;
    ensure(cost_series_truncated(&flat, 1) == Err(HnnModelError::Degenerate(2)), || "flat not degenerate".into())?;
    Ok(format!("17/6, 2147/216, increasing to {}", values[5]))
}

fn splitting() -> Outcome {
    for inst in [z4_central_extension(), z4_central_extension_wide_cover()] {
        let sec = build_section(&inst).map_err(|e| e.to_string())?;
        ensure(sec.r.arrows().all(|g| sec.q(sec.sigma(g)) == g), || "q o sigma != id".into())?;
        for g in sec.r.arrows() {
            for &h in sec.r.with_range(sec.r.source(g)) {
                ensure(sec.hx.compose(sec.sigma(g), sec.sigma(h)) == Some(sec.sigma(sec.r.mul(g, h))), || {
                    format!("sigma not multiplicative at {g}, {h}")
                })?;
            }
        }
        let d = product_decomposition(&inst).map_err(|e| e.to_string())?;
        let image: BTreeSet<ArrowId> = d.f.iter().copied().collect();
        ensure(image.len() == d.big.n_arrows() && image.len() == d.target.n_arrows(), || "F not bijective".into())?;
        for g in d.big.arrows() {
            ensure(d.target.is_unit(d.f(g)) == d.big.is_unit(g), || format!("unit preimage at {g}"))?;
            for &h in d.big.with_range(d.big.source(g)) {
                ensure(d.target.compose(d.f(g), d.f(h)) == Some(d.f(d.big.mul(g, h))), || {
                    format!("F not multiplicative at {g}, {h}")
                })?;
            }
        }
        ensure(d.report().passed(), || d.report().to_text())?;
    }
    let bad = non_central_extension();
    let sec = build_section(&bad).map_err(|e| e.to_string())?;
    let rep = product_map_report(&bad, &sec);
    let failed = rep.failures().iter().any(|a| a.tag == "product-map-homomorphism");
    ensure(failed && product_decomposition(&bad).is_err(), || "non-central control did not fail".into())?;
    Ok(format!("Z/4 fixtures exact; non-central control fails ({} bad pairs)", rep.values["product-map-failures"]))
}

fn commands_for(inst: &Instance) -> Vec<Command> {
    match inst {
        Instance::Quotient { .. } => vec![Command::Check, Command::Quotient],
        Instance::Treeing { .. } => vec![Command::Check, Command::Induce],
        Instance::Descent { .. } | Instance::DescentData { .. } => vec![Command::Check, Command::Hnn],
        Instance::Split { .. } => vec![Command::Check, Command::Split],
        Instance::Groupoid { .. } => vec![Command::Check],
    }
}

fn determinism() -> Outcome {
    let cfg = RunConfig { seed: 11, ..RunConfig::default() };
    let render = |o: &hnntree_core::commands::Output| {
        (o.report.to_text(), o.report.to_json(), o.dot.clone(), o.artifacts.clone())
    };
    let mut runs = 0;
    for (name, inst) in shipped_instances() {
        for cmd in commands_for(&inst) {
            let a = run_command(cmd, Some(&inst), &cfg).map_err(|e| format!("{name}: {e}"))?;
            let b = run_command(cmd, Some(&inst), &cfg).map_err(|e| format!("{name}: {e}"))?;
            ensure(render(&a) == render(&b), || format!("{} on {name} differs", cmd.name()))?;
            runs += 1;
        }
    }
    let cfg = RunConfig { p: Some(2), q: Some(3), ..cfg };
    let a = run_command(Command::Hnn, None, &cfg).map_err(|e| e.to_string())?;
    let b = run_command(Command::Hnn, None, &cfg).map_err(|e| e.to_string())?;
    ensure(render(&a) == render(&b), || "hnn --p 2 --q 3 differs".into())?;
    Ok(format!("{} command runs repeated", runs + 1))
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, fn() -> Outcome, u64); 10] = [
        (1, "groupoid axioms and cocycle identity", groupoid_axioms, 10),
        (2, "quotient construction", quotient_construction, 60),
        (3, "measure-preservation criterion", pmp_biconditional, 60),
        (4, "treeing induction", treeing_induction, 30),
        (5, "Bass-Serre consistency", bass_serre_consistency, 10),
        (6, "degree law", degree_law, 10),
        (7, "Maharam level distance", maharam_level_distance, 30),
        (8, "cost series", cost_series, 10),
        (9, "splitting", splitting, 5),
        (10, "determinism", determinism, 120),
    ];
    let mut failed = Vec::new();
    for (n, name, f, budget) in criteria {
        let t = Instant::now();
        let res = f();
        let dt = t.elapsed();
        let within = dt <= Duration::from_secs(budget);
        let line = match (&res, within) {
            (Ok(detail), true) => format!("PASS criterion {n} {name}: {detail} [{:.2?} <= {budget}s]", dt),
            (Ok(detail), false) => format!("FAIL criterion {n} {name}: {detail} [{:.2?} > {budget}s]", dt),
            (Err(e), _) => format!("FAIL criterion {n} {name}: {e} [{:.2?}]", dt),
        };
        println!("{line}");
        if res.is_err() || !within {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
