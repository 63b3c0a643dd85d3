//! The Maharam extension of the lazy quotient, truncated in word length and level. A unit is a
//! vertex of a development tree together with its level; the level drops by one along a plus
//! letter. Each orbit is one tree, labelled by the level of its root.

use super::tree::{address_string, fiber_ball, t_exponent, Address, Step, TreedArrow};
use super::{DescentData, HnnModelError};
use crate::graph::OrientedGraph;
use crate::rational::{format_rational, pow, rat, Rational};
use crate::report::Report;
use crate::treeing::{InductionEngine, TreedSpace};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MaharamUnit {
    pub base: usize,
    pub root_level: i64,
    pub addr: Address,
}

impl MaharamUnit {
    pub fn root(base: usize, level: i64) -> Self {
        MaharamUnit { base, root_level: level, addr: Vec::new() }
    }

    pub fn level(&self) -> i64 {
        self.root_level - t_exponent(&self.addr)
    }

    fn child(&self, a: Address) -> Self {
        MaharamUnit { base: self.base, root_level: self.root_level, addr: a }
    }
}

/// An arrow `(g, l)` of the extension: `g` with range level `level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaharamArrow {
    pub inner: TreedArrow,
    pub level: i64,
}

impl MaharamArrow {
    pub fn source_level(&self) -> i64 {
        self.level - self.inner.t_exponent()
    }
}

/// `|n|` for the source level `(q/p)^n` of the arrow.
pub fn level_distance(a: &MaharamArrow) -> u64 {
    a.source_level().unsigned_abs()
}

/// `zeta~(W_n) = zeta(Z) (q/p)^(-n)`.
pub fn level_weight(d: &DescentData, n: i64) -> Rational {
    let total: Rational = d.zeta.iter().sum();
    total * pow(&d.ratio(), -n)
}

/// The truncated extension with target `W_0`. Germs are known at vertices of word length at
/// most `r_word`.
pub struct MaharamTruncation<'a> {
    pub descent: &'a DescentData,
    pub r_word: usize,
}

impl TreedSpace for MaharamTruncation<'_> {
    type Unit = MaharamUnit;

    fn germs(&self, x: &MaharamUnit) -> Option<Vec<(MaharamUnit, usize)>> {
        if x.addr.len() > self.r_word {
            return None;
        }
        Some(self.descent.neighbours(&x.addr).into_iter().map(|(b, k, _)| (x.child(b), k)).collect())
    }

    fn in_target(&self, x: &MaharamUnit) -> bool {
        x.level() == 0
    }
}

/// Addresses of word length at most `r`, in BFS order.
pub fn addresses(d: &DescentData, r: usize) -> Vec<Address> {
    let mut out = vec![Vec::new()];
    let mut i = 0;
    while i < out.len() {
        if out[i].len() < r {
            for s in d.forward_steps(&out[i]) {
                let mut b: Vec<Step> = out[i].clone();
                b.push(s);
                out.push(b);
            }
        }
        i += 1;
    }
    out
}

fn degenerate(d: &DescentData) -> Result<(), HnnModelError> {
    if d.p == d.q {
        Err(HnnModelError::Degenerate(d.p))
    } else {
        Ok(())
    }
}

/// Level distance against BFS in the truncation, uniqueness of `Phi0+` germs, and the induced
/// treeing on `W_0` over the certified region. Also returns the certified part of `Theta` as
/// an oriented graph on `W_0` units of the level-0 orbits.
pub fn maharam_report(d: &DescentData, r_word: usize, r_level: usize) -> Result<(Report, OrientedGraph), HnnModelError> {
    degenerate(d)?;
    let mut r = Report::new("maharam");
    let rl = r_level as i64;
    r.value("level-weight-0", format_rational(&level_weight(d, 0)));
    r.value("level-weight-1", format_rational(&level_weight(d, 1)));
    r.value("level-weight-minus-1", format_rational(&level_weight(d, -1)));
    let space = MaharamTruncation { descent: d, r_word };
    let mut engine = InductionEngine::new(&space, r_word + r_level + 1);
    let ball = addresses(d, r_word);
    // Level distance on every certifiable arrow: root at level n0 to vertex w.
    let (mut checked, mut mismatched) = (0u64, Vec::new());
    for z in 0..d.n_types() {
        for n0 in -rl..=rl {
            for w in &ball {
                let u = MaharamUnit { base: z, root_level: n0, addr: w.clone() };
                let lv = u.level();
                if lv.unsigned_abs() as usize > r_level || w.len() + lv.unsigned_abs() as usize > r_word {
                    continue;
                }
                let arrow = MaharamArrow { inner: TreedArrow { base: z, range: Vec::new(), source: w.clone() }, level: n0 };
                checked += 1;
                if engine.distance(&u).map(|x| x as u64) != Some(level_distance(&arrow)) {
                    mismatched.push(format!("z{z} n{n0} {}", address_string(w)));
                }
            }
        }
    }
    r.value("level-distance-arrows", checked);
    r.check(
        "level-distance",
        "level distance equals BFS distance to W_0 on every certifiable arrow",
        mismatched.is_empty() && checked > 0,
        mismatched.first().cloned().unwrap_or_default(),
    );
    // Phi0+ germs: one per unit off W_0, chosen among the germs that lower the level.
    let mut unique = true;
    let mut units = 0u64;
    for z in 0..d.n_types() {
        for n in -rl..=rl {
            let x = MaharamUnit::root(z, n);
            let Some(step) = engine.step(&x) else { continue };
            units += 1;
            let inward: Vec<MaharamUnit> = space
                .germs(&x)
                .unwrap_or_default()
                .into_iter()
                .map(|g| g.0)
                .filter(|y| y.level().abs() < n.abs())
                .collect();
            let expected = if n > 0 { d.q } else if n < 0 { d.p } else { 0 };
            let ok = match step {
                None => n == 0,
                Some((y, _)) => n != 0 && inward.contains(&y),
            };
            unique &= ok && inward.len() == expected;
        }
    }
    r.value("phi0-checked-units", units);
    r.check(
        "phi0-plus-unique",
        "exactly one Phi0+ germ per unit off W_0, taken among its q (or p) inward germs; none on W_0",
        unique && units == (d.n_types() * (2 * r_level + 1)) as u64,
        "",
    );
    // Induced treeing on W_0 inside the certified region of the level-0 orbits.
    let r_in = r_level.min(r_word.saturating_sub(1) / 2);
    let mut scope = Vec::new();
    for z in 0..d.n_types() {
        for w in &ball {
            let u = MaharamUnit { base: z, root_level: 0, addr: w.clone() };
            let lv = u.level().unsigned_abs() as usize;
            if w.len() + lv < r_word && lv <= r_level {
                scope.push(u);
            }
        }
    }
    let ind = engine.run(&scope);
    let mut edges: BTreeSet<(MaharamUnit, MaharamUnit)> = BTreeSet::new();
    let mut oriented = Vec::new();
    for ((x, y), (ex, ey)) in &ind.theta {
        if ex == ey || ex.level() != 0 || ey.level() != 0 {
            unique = false;
        }
        let key = if ex < ey { (ex.clone(), ey.clone()) } else { (ey.clone(), ex.clone()) };
        if edges.insert(key) {
            // Orient as the plus germ it comes from.
            let plus_away = d.neighbours(&x.addr).iter().any(|(b, _, away)| *b == y.addr && *away);
            oriented.push(if plus_away { (ex.clone(), ey.clone()) } else { (ey.clone(), ex.clone()) });
        }
    }
    let mut ids: BTreeMap<MaharamUnit, usize> = BTreeMap::new();
    let mut parent: Vec<usize> = Vec::new();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    let mut id = |u: &MaharamUnit, parent: &mut Vec<usize>| {
        let n = ids.len();
        *ids.entry(u.clone()).or_insert_with(|| {
            parent.push(n);
            n
        })
    };
    for z in 0..d.n_types() {
        id(&MaharamUnit::root(z, 0), &mut parent);
    }
    let mut acyclic = true;
    for (a, b) in &edges {
        let (ia, ib) = (id(a, &mut parent), id(b, &mut parent));
        let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
        if ra == rb {
            acyclic = false;
        } else {
            parent[ra] = rb;
        }
    }
    let mut connected = true;
    for z in 0..d.n_types() {
        let root = ids[&MaharamUnit::root(z, 0)];
        for w in ball.iter().filter(|w| w.len() <= r_in) {
            let u = MaharamUnit { base: z, root_level: 0, addr: w.clone() };
            if u.level() != 0 {
                continue;
            }
            match ids.get(&u) {
                Some(&i) => connected &= find(&mut parent, i) == find(&mut parent, root),
                None => connected &= w.is_empty(),
            }
        }
    }
    r.value("theta-certified-edges", edges.len() as u64);
    r.value("theta-inner-radius", r_in as u64);
    r.value("boundary-units", ind.uncertified.len() as u64);
    r.check("theta-acyclic", "certified Theta edges on W_0 contain no cycle", acyclic, "");
    r.check(
        "theta-connected",
        &format!("W_0 units within word distance {r_in} are joined by certified Theta edges"),
        connected,
        "",
    );
    r.check("theta-on-kernel-level", "J maps Phi1 germs to non-unit arrows of the W_0 restriction", unique, "");
    let mut labels: Vec<String> = vec![String::new(); ids.len()];
    let mut order: Vec<(&MaharamUnit, &usize)> = ids.iter().collect();
    order.sort_by_key(|(_, &i)| i);
    for (u, &i) in order {
        labels[i] = format!("z{}:{}", u.base, address_string(&u.addr));
    }
    let graph = OrientedGraph {
        depth: vec![0; labels.len()],
        labels,
        edges: oriented.iter().map(|(a, b)| (ids[a], ids[b])).collect(),
    };
    Ok((r, graph))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostSeries {
    pub r_level: usize,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub closed_form: Rational,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub enumerated: Rational,
    /// `(level, inward Phi1 germs summed over Z)` per nonzero level.
    pub germs_per_level: Vec<(i64, u64)>,
    pub diverges: bool,
}

/// `(q-1) sum_{n=1}^R (q/p)^-n + (p-1) sum_{n=1}^R (q/p)^n`, times `zeta(Z)`.
pub fn cost_series_closed_form(d: &DescentData, r_level: usize) -> Rational {
    let (p, q) = (d.p as i64, d.q as i64);
    let mut s = rat(0, 1);
    for n in 1..=r_level as i64 {
        s += level_weight(d, n) * rat(q - 1, 1) + level_weight(d, -n) * rat(p - 1, 1);
    }
    s
}

/// Truncated cost of `Phi1~`: the closed form and an independent count of inward `Phi1~`
/// germs at each unit `(z, n)`, `0 < |n| <= r_level`, weighted by `zeta(z) (q/p)^-n`.
pub fn cost_series_truncated(d: &DescentData, r_level: usize) -> Result<CostSeries, HnnModelError> {
    degenerate(d)?;
    let space = MaharamTruncation { descent: d, r_word: r_level + 3 };
    let mut engine = InductionEngine::new(&space, 2 * r_level + 4);
    let mut enumerated = rat(0, 1);
    let mut germs_per_level = Vec::new();
    let rl = r_level as i64;
    for n in (-rl..=rl).filter(|&n| n != 0) {
        let mut count = 0u64;
        for z in 0..d.n_types() {
            let x = MaharamUnit::root(z, n);
            let mut here = 0u64;
            for (y, _) in space.germs(&x).expect("root germs are known") {
                if y.level().abs() < n.abs() {
                    let in0 = engine
                        .in_psi0(&x, &y)
                        .ok_or_else(|| HnnModelError::Uncertified(format!("germ at z{z}, level {n}")))?;
                    here += u64::from(!in0);
                }
            }
            enumerated += &d.zeta[z] * pow(&d.ratio(), -n) * rat(here as i64, 1);
            count += here;
        }
        germs_per_level.push((n, count));
    }
    Ok(CostSeries {
        r_level,
        closed_form: cost_series_closed_form(d, r_level),
        enumerated,
        germs_per_level,
        diverges: d.p != 1 && d.q != 1,
    })
}

/// `C(Phi) = mu_r(Phi)/2` from the degrees at the roots: `(p + q)/2` times `zeta(Z)`.
pub fn cost_of_phi(d: &DescentData) -> Result<Rational, HnnModelError> {
    let mut total = rat(0, 1);
    for z in 0..d.n_types() {
        let ball = fiber_ball(d, z, 1, 1 + d.p + d.q)?;
        let deg = ball.out_degree(0) + ball.in_degree(0);
        total += &d.zeta[z] * rat(deg as i64, 2);
    }
    Ok(total)
}
