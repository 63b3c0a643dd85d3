//! Seeded random instances for property suites.

use crate::group::FiniteGroup;
use crate::groupoid::{disjoint_union, pair_groupoid, product, single_group, GroupoidTables};
use crate::rational::{int, Rational};
use crate::treeing::OrientedGraphing;
use crate::{FiniteGroupoid, MeasureMode, UnitId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_group<R: Rng>(rng: &mut R) -> FiniteGroup {
    match rng.gen_range(0..7) {
        0 => FiniteGroup::cyclic(1),
        1 => FiniteGroup::cyclic(2),
        2 => FiniteGroup::cyclic(rng.gen_range(3..=6)),
        3 => FiniteGroup::dihedral(rng.gen_range(3..=4)),
        4 => FiniteGroup::symmetric(3),
        5 => FiniteGroup::quaternion(),
        _ => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
    }
}

/// Renumbers arrows and units by the given permutations (`new = perm[old]`).
pub fn relabel(g: &FiniteGroupoid, arrow_perm: &[usize], unit_perm: &[usize]) -> FiniteGroupoid {
    let t = g.tables();
    let n = g.n_arrows();
    let mut out = GroupoidTables {
        range: vec![0; n],
        source: vec![0; n],
        inverse: vec![0; n],
        unit_arrow: vec![0; g.n_units()],
        products: Vec::with_capacity(t.products.len()),
        labels: vec![String::new(); n],
    };
    let a = |i: u32| arrow_perm[i as usize] as u32;
    let u = |i: u32| unit_perm[i as usize] as u32;
    for i in 0..n {
        let j = arrow_perm[i];
        out.range[j] = u(t.range[i]);
        out.source[j] = u(t.source[i]);
        out.inverse[j] = a(t.inverse[i]);
        out.labels[j] = t.labels[i].clone();
    }
    for (x, &ua) in t.unit_arrow.iter().enumerate() {
        out.unit_arrow[unit_perm[x]] = a(ua);
    }
    out.products.extend(t.products.iter().map(|&(p, q, r)| (a(p), a(q), a(r))));
    let mut weights = vec![int(0); g.n_units()];
    for (x, w) in g.weights().iter().enumerate() {
        weights[unit_perm[x]] = w.clone();
    }
    FiniteGroupoid::from_tables(weights, g.mode(), out).expect("relabelled tables keep their shape")
}

/// A random groupoid with at most `max_arrows` arrows: a disjoint union of products of pair
/// groupoids with small groups, shuffled, with random positive probability weights.
pub fn random_groupoid<R: Rng>(rng: &mut R, max_arrows: usize) -> FiniteGroupoid {
    let mut acc: Option<FiniteGroupoid> = None;
    let mut budget = max_arrows;
    loop {
        let grp = small_group(rng);
        let n = rng.gen_range(1..=4);
        let size = n * n * grp.order();
        if size > budget {
            if acc.is_some() {
                break;
            }
            continue;
        }
        budget -= size;
        let comp = product(
            &pair_groupoid(crate::groupoid::uniform_weights(n), MeasureMode::Probability),
            &single_group(&grp.table, &grp.inverse),
        );
        let one = int(1);
        acc = Some(match acc {
            None => comp,
            Some(prev) => disjoint_union(&prev, &one, &comp, &one, MeasureMode::SigmaFinite).unwrap(),
        });
        if rng.gen_bool(0.4) {
            break;
        }
    }
    let g = acc.unwrap();
    let raw: Vec<u64> = (0..g.n_units()).map(|_| rng.gen_range(1..=9)).collect();
    let total: u64 = raw.iter().sum();
    let weights = raw.iter().map(|&w| Rational::new(w.into(), total.into())).collect();
    let g = g.with_weights(weights, MeasureMode::Probability).unwrap();
    let mut ap: Vec<usize> = (0..g.n_arrows()).collect();
    let mut up: Vec<usize> = (0..g.n_units()).collect();
    ap.shuffle(rng);
    up.shuffle(rng);
    relabel(&g, &ap, &up)
}

/// A principal measure-preserving groupoid (disjoint union of pair groupoids) with a random
/// oriented spanning treeing and a target set meeting every orbit. At most `max_arrows` arrows.
pub fn random_treed_instance<R: Rng>(
    rng: &mut R,
    max_arrows: usize,
) -> (FiniteGroupoid, OrientedGraphing, BTreeSet<UnitId>) {
    let mut sizes = Vec::new();
    let mut budget = max_arrows;
    loop {
        let n = rng.gen_range(1..=8usize);
        if n * n > budget {
            if !sizes.is_empty() {
                break;
            }
            continue;
        }
        budget -= n * n;
        sizes.push(n);
        if rng.gen_bool(0.35) {
            break;
        }
    }
    // Weight of a point is its orbit's share divided by the orbit size, so weights are
    // constant on orbits and the groupoid is measure preserving.
    let total_units: usize = sizes.iter().sum();
    let mut g: Option<FiniteGroupoid> = None;
    for &n in &sizes {
        let comp = pair_groupoid(crate::groupoid::uniform_weights(n), MeasureMode::Probability);
        let share = Rational::new((n as i64).into(), (total_units as i64).into());
        let one = int(1);
        g = Some(match g {
            None => comp.with_weights(vec![share.clone() / int(n as i64); n], MeasureMode::SigmaFinite).unwrap(),
            Some(prev) => disjoint_union(&prev, &one, &comp, &share, MeasureMode::SigmaFinite).unwrap(),
        });
    }
    let g = g.unwrap();
    let g = g.with_weights(g.weights().to_vec(), MeasureMode::Probability).unwrap();
    let mut psi_plus = BTreeSet::new();
    let mut target = BTreeSet::new();
    let mut offset = 0u32;
    for &n in &sizes {
        let mut order: Vec<u32> = (offset..offset + n as u32).collect();
        order.shuffle(rng);
        for i in 1..order.len() {
            let parent = order[rng.gen_range(0..i)];
            let (a, b) = if rng.gen_bool(0.5) { (parent, order[i]) } else { (order[i], parent) };
            psi_plus.insert(g.arrow_between(UnitId(a), UnitId(b)).unwrap());
        }
        let mut y: Vec<u32> = order.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
        if y.is_empty() {
            y.push(order[0]);
        }
        target.extend(y.into_iter().map(UnitId));
        offset += n as u32;
    }
    let graphing = OrientedGraphing::new(&g, psi_plus).expect("tree edges are oriented");
    (g, graphing, target)
}
