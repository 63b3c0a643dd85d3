use super::QuotientError;
use crate::groupoid::{ArrowId, FiniteGroupoid, UnitId};
use std::collections::{BTreeMap, VecDeque};

/// A groupoid isomorphism as unit and arrow tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidIso {
    pub units: Vec<UnitId>,
    pub arrows: Vec<ArrowId>,
}

struct Orbit {
    units: Vec<UnitId>,
    base: UnitId,
    isotropy: Vec<ArrowId>,
}

fn orbits(g: &FiniteGroupoid) -> Vec<Orbit> {
    g.orbits()
        .into_iter()
        .map(|units| {
            let base = units[0];
            Orbit { isotropy: g.isotropy(base), units, base }
        })
        .collect()
}

fn order(g: &FiniteGroupoid, a: ArrowId) -> usize {
    let e = g.unit(g.range(a));
    let (mut x, mut k) = (a, 1);
    while x != e {
        x = g.mul(x, a);
        k += 1;
    }
    k
}

/// Isomorphism between isotropy groups, by backtracking over images of a greedy generating set.
fn group_iso(
    a: &FiniteGroupoid,
    ga: &[ArrowId],
    b: &FiniteGroupoid,
    gb: &[ArrowId],
    budget: &mut usize,
) -> Result<Option<BTreeMap<ArrowId, ArrowId>>, QuotientError> {
    if ga.len() != gb.len() {
        return Ok(None);
    }
    let mut gens: Vec<ArrowId> = Vec::new();
    let closure = |gens: &[ArrowId]| -> Vec<ArrowId> {
        let e = a.unit(a.range(ga[0]));
        let mut seen = vec![e];
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = a.mul(x, s);
                if !seen.contains(&y) {
                    seen.push(y);
                    queue.push_back(y);
                }
            }
        }
        seen
    };
    for &x in ga {
        if !closure(&gens).contains(&x) {
            gens.push(x);
        }
    }
    let orders_b: BTreeMap<ArrowId, usize> = gb.iter().map(|&y| (y, order(b, y))).collect();
    let mut images = Vec::new();
    fn extend(
        a: &FiniteGroupoid,
        b: &FiniteGroupoid,
        ga: &[ArrowId],
        gens: &[ArrowId],
        gb: &[ArrowId],
        orders_b: &BTreeMap<ArrowId, usize>,
        images: &mut Vec<ArrowId>,
        budget: &mut usize,
    ) -> Result<Option<BTreeMap<ArrowId, ArrowId>>, QuotientError> {
        if *budget == 0 {
            return Err(QuotientError::SearchBound(0));
        }
        *budget -= 1;
        if images.len() == gens.len() {
            // Extend along words in the generators and check it is a bijective homomorphism.
            let ea = a.unit(a.range(ga[0]));
            let eb = b.unit(b.range(gb[0]));
            let mut map = BTreeMap::from([(ea, eb)]);
            let mut queue = VecDeque::from([ea]);
            while let Some(x) = queue.pop_front() {
                for (s, &t) in gens.iter().zip(images.iter()) {
                    let y = a.mul(x, *s);
                    let img = b.mul(map[&x], t);
                    match map.get(&y) {
                        Some(&old) if old != img => return Ok(None),
                        Some(_) => {}
                        None => {
                            map.insert(y, img);
                            queue.push_back(y);
                        }
                    }
                }
            }
            let mut imgs: Vec<ArrowId> = map.values().copied().collect();
            imgs.sort();
            imgs.dedup();
            if imgs.len() != ga.len() {
                return Ok(None);
            }
            for &x in ga {
                for &y in ga {
                    if map[&a.mul(x, y)] != b.mul(map[&x], map[&y]) {
                        return Ok(None);
                    }
                }
            }
            return Ok(Some(map));
        }
        let want = order(a, gens[images.len()]);
        for &y in gb {
            if orders_b[&y] != want {
                continue;
            }
            images.push(y);
            if let Some(m) = extend(a, b, ga, gens, gb, orders_b, images, budget)? {
                return Ok(Some(m));
            }
            images.pop();
        }
        Ok(None)
    }
    extend(a, b, ga, &gens, gb, &orders_b, &mut images, budget)
}

fn weight_key(g: &FiniteGroupoid, units: &[UnitId]) -> Vec<String> {
    let mut w: Vec<String> = units.iter().map(|&x| crate::rational::format_rational(g.weight(x))).collect();
    w.sort();
    w
}

/// Searches for a groupoid isomorphism `a -> b`, optionally preserving unit weights. The search
/// visits at most `max_nodes` nodes.
pub fn find_isomorphism(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
    respect_weights: bool,
    max_nodes: usize,
) -> Result<Option<GroupoidIso>, QuotientError> {
    if a.n_units() != b.n_units() || a.n_arrows() != b.n_arrows() {
        return Ok(None);
    }
    let oa = orbits(a);
    let ob = orbits(b);
    if oa.len() != ob.len() {
        return Ok(None);
    }
    let mut budget = max_nodes;
    let compatible = |i: usize, j: usize| {
        oa[i].units.len() == ob[j].units.len()
            && oa[i].isotropy.len() == ob[j].isotropy.len()
            && (!respect_weights || weight_key(a, &oa[i].units) == weight_key(b, &ob[j].units))
    };
    let mut assignment: Vec<(usize, BTreeMap<ArrowId, ArrowId>)> = Vec::new();
    let mut used = vec![false; ob.len()];
    fn search(
        i: usize,
        a: &FiniteGroupoid,
        b: &FiniteGroupoid,
        oa: &[Orbit],
        ob: &[Orbit],
        compatible: &dyn Fn(usize, usize) -> bool,
        used: &mut Vec<bool>,
        assignment: &mut Vec<(usize, BTreeMap<ArrowId, ArrowId>)>,
        budget: &mut usize,
    ) -> Result<bool, QuotientError> {
        if i == oa.len() {
            return Ok(true);
        }
        for j in 0..ob.len() {
            if used[j] || !compatible(i, j) {
                continue;
            }
            let before = *budget;
            let iso = group_iso(a, &oa[i].isotropy, b, &ob[j].isotropy, budget)
                .map_err(|_| QuotientError::SearchBound(before))?;
            if let Some(m) = iso {
                used[j] = true;
                assignment.push((j, m));
                if search(i + 1, a, b, oa, ob, compatible, used, assignment, budget)? {
                    return Ok(true);
                }
                assignment.pop();
                used[j] = false;
            }
        }
        Ok(false)
    }
    let found = search(0, a, b, &oa, &ob, &compatible, &mut used, &mut assignment, &mut budget)
        .map_err(|_| QuotientError::SearchBound(max_nodes))?;
    if !found {
        return Ok(None);
    }
    let mut units = vec![UnitId(0); a.n_units()];
    let mut arrows = vec![ArrowId(0); a.n_arrows()];
    for (i, (j, iso)) in assignment.iter().enumerate() {
        let (p, q) = (&oa[i], &ob[*j]);
        let mut ua = p.units.clone();
        let mut ub = q.units.clone();
        if respect_weights {
            ua.sort_by(|x, y| a.weight(*x).cmp(a.weight(*y)).then(x.cmp(y)));
            ub.sort_by(|x, y| b.weight(*x).cmp(b.weight(*y)).then(x.cmp(y)));
        }
        for (&x, &y) in ua.iter().zip(ub.iter()) {
            units[x.idx()] = y;
        }
        // The isotropy iso lands at q.base; transport it to the image of p.base.
        let b_base = units[p.base.idx()];
        let c = b.arrow_between(q.base, b_base).unwrap();
        let moved = |x: ArrowId| b.mul(b.mul(b.inverse(c), iso[&x]), c);
        let conn_a = |y: UnitId| a.arrow_between(p.base, y).unwrap();
        let conn_b = |y: UnitId| b.arrow_between(b_base, y).unwrap();
        for &y in &p.units {
            for &arr in a.with_range(y) {
                let y2 = a.source(arr);
                let core = a.mul(a.mul(conn_a(y), arr), a.inverse(conn_a(y2)));
                let img = b.mul(
                    b.mul(b.inverse(conn_b(units[y.idx()])), moved(core)),
                    conn_b(units[y2.idx()]),
                );
                arrows[arr.idx()] = img;
            }
        }
    }
    let iso = GroupoidIso { units, arrows };
    Ok(verify_iso(a, b, &iso, respect_weights).then_some(iso))
}

/// Checks that the tables define a bijective homomorphism (weight preserving if asked).
pub fn verify_iso(a: &FiniteGroupoid, b: &FiniteGroupoid, iso: &GroupoidIso, respect_weights: bool) -> bool {
    let mut seen = vec![false; b.n_arrows()];
    for g in a.arrows() {
        let h = iso.arrows[g.idx()];
        if seen[h.idx()] {
            return false;
        }
        seen[h.idx()] = true;
        if b.range(h) != iso.units[a.range(g).idx()] || b.source(h) != iso.units[a.source(g).idx()] {
            return false;
        }
        for &k in a.with_range(a.source(g)) {
            if b.compose(h, iso.arrows[k.idx()]) != Some(iso.arrows[a.mul(g, k).idx()]) {
                return false;
            }
        }
    }
    !respect_weights || a.units().all(|x| a.weight(x) == b.weight(iso.units[x.idx()]))
}
