use super::engine::{uncertified, InductionEngine, TreedSpace};
use super::{by_range, cost, decompose_pieces, fiber_bfs, treeing_failure, OrientedGraphing, TreeingError};
use crate::groupoid::{restrict, saturate, ArrowId, FiniteGroupoid, UnitId};
use crate::report::Report;
use crate::rational::format_rational;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

/// Result of inducing a treeing of `G` onto `G|_Y`. Arrow sets are arrows of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedTreeing {
    pub target: BTreeSet<UnitId>,
    /// The fixed piece enumeration `psi_0, psi_1, ...` (even positions inside `Psi+`).
    pub pieces: Vec<BTreeSet<ArrowId>>,
    pub psi: BTreeSet<ArrowId>,
    /// `d` per unit; `None` off the saturation of `Y`.
    pub distance: Vec<Option<usize>>,
    /// `f(x)`: the arrow from `x` to `Y` along `Psi0+` germs.
    pub f: Vec<Option<ArrowId>>,
    pub psi0_plus: BTreeSet<ArrowId>,
    pub psi0: BTreeSet<ArrowId>,
    pub psi1: BTreeSet<ArrowId>,
    pub j: BTreeMap<ArrowId, ArrowId>,
    pub theta: BTreeSet<ArrowId>,
    /// `J(Psi1 ∩ Psi+)`, the oriented half of `Theta`.
    pub theta_plus: BTreeSet<ArrowId>,
    /// Units whose orbit misses `Y`; they contribute nothing.
    pub skipped: Vec<UnitId>,
}

struct FiniteSpace<'a> {
    g: &'a FiniteGroupoid,
    psi_at: Vec<Vec<(ArrowId, usize)>>,
    target: &'a BTreeSet<UnitId>,
}

impl TreedSpace for FiniteSpace<'_> {
    type Unit = UnitId;

    fn germs(&self, x: &UnitId) -> Option<Vec<(UnitId, usize)>> {
        Some(self.psi_at[x.idx()].iter().map(|&(a, k)| (self.g.source(a), k)).collect())
    }

    fn in_target(&self, x: &UnitId) -> bool {
        self.target.contains(x)
    }
}

/// Runs the induction with the greedy piece enumeration. `Psi` must be an oriented treeing of a
/// groupoid with trivial isotropy (which an oriented treeing of a finite groupoid forces).
pub fn induce_treeing(
    g: &FiniteGroupoid,
    graphing: &OrientedGraphing,
    y: &BTreeSet<UnitId>,
) -> Result<InducedTreeing, TreeingError> {
    if y.is_empty() {
        return Err(TreeingError::EmptyTarget);
    }
    let psi = graphing.psi(g);
    if let Some(x) = treeing_failure(g, &psi) {
        return Err(TreeingError::NotTreeing(x));
    }
    if let Some(x) = g.units().find(|&x| g.isotropy(x).len() != 1) {
        return Err(TreeingError::NotPrincipal(x));
    }
    let pieces = decompose_pieces(g, graphing);
    let mut psi_at = vec![Vec::new(); g.n_units()];
    for (k, piece) in pieces.iter().enumerate() {
        for &a in piece {
            psi_at[g.range(a).idx()].push((a, k));
        }
    }
    let space = FiniteSpace { g, psi_at, target: y };
    let scope: Vec<UnitId> = saturate(g, y).into_iter().collect();
    let skipped: Vec<UnitId> = g.units().filter(|x| !scope.contains(x)).collect();
    let mut engine = InductionEngine::new(&space, g.n_units());
    let ind = engine.run(&scope);
    if let Some(x) = ind.uncertified.first() {
        return Err(uncertified("finite induction", x));
    }
    let arrow = |a: UnitId, b: UnitId| g.arrow_between(a, b).expect("principal orbit");
    let mut distance = vec![None; g.n_units()];
    let mut f = vec![None; g.n_units()];
    for x in &scope {
        distance[x.idx()] = Some(ind.distance[x]);
        f[x.idx()] = Some(arrow(*x, ind.endpoint[x].clone()));
    }
    let psi0_plus: BTreeSet<ArrowId> = ind.step.iter().map(|(x, (s, _))| arrow(*x, *s)).collect();
    let mut psi0 = psi0_plus.clone();
    psi0.extend(psi0_plus.iter().map(|&a| g.inverse(a)));
    let mut j = BTreeMap::new();
    for ((x, s), (ex, es)) in &ind.theta {
        j.insert(arrow(*x, *s), arrow(*ex, *es));
    }
    let psi1: BTreeSet<ArrowId> = j.keys().copied().collect();
    let theta: BTreeSet<ArrowId> = j.values().copied().collect();
    let theta_plus = j.iter().filter(|(a, _)| graphing.psi_plus.contains(a)).map(|(_, &b)| b).collect();
    Ok(InducedTreeing {
        target: y.clone(),
        pieces,
        psi,
        distance,
        f,
        psi0_plus,
        psi0,
        psi1,
        j,
        theta,
        theta_plus,
        skipped,
    })
}

/// Re-derives `d` and `f` arrow by arrow from fiber-graph BFS and checks the induction's
/// properties: left invariance, equivariance, one `Psi0+` germ per unit off `Y`, `J` injective
/// and inverse-compatible, `Theta` a treeing of `G|_Y`, cost preservation, and the single
/// `Psi1` edge on each lifted `Theta` path.
pub fn verify_induction(g: &FiniteGroupoid, graphing: &OrientedGraphing, ind: &InducedTreeing) -> Report {
    let mut r = Report::new("induce");
    let psi_at = by_range(g, &ind.psi);
    let piece_of: BTreeMap<ArrowId, usize> = ind
        .pieces
        .iter()
        .enumerate()
        .flat_map(|(k, p)| p.iter().map(move |&a| (a, k)))
        .collect();
    let in_scope = |x: UnitId| ind.distance[x.idx()].is_some();
    // Arrow-level d: distance in Psi(r(h)) from h to r(h)G_Y.
    let mut d_arrow: BTreeMap<ArrowId, usize> = BTreeMap::new();
    let mut fibers = BTreeMap::new();
    for x in g.units().filter(|&x| in_scope(x)) {
        let bfs = fiber_bfs(g, &psi_at, x);
        for &h in g.with_range(x) {
            let mut best = usize::MAX;
            for &k in bfs.keys() {
                if ind.target.contains(&g.source(k)) {
                    best = best.min(path_len(&bfs, h, k));
                }
            }
            d_arrow.insert(h, best);
        }
        fibers.insert(x, bfs);
    }
    let scoped: Vec<ArrowId> = g.arrows().filter(|&a| in_scope(g.range(a))).collect();
    let left_invariant = scoped.iter().all(|&h| {
        g.with_range(g.range(h)).iter().all(|&gamma| {
            // gamma^-1 h has the same d as h.
            let moved = g.mul(g.inverse(gamma), h);
            d_arrow[&moved] == d_arrow[&h]
        })
    });
    r.check("distance-left-invariant", "d(gamma g) = d(g) for all composable pairs", left_invariant, "");
    let matches_engine = scoped.iter().all(|&h| Some(d_arrow[&h]) == ind.distance[g.source(h).idx()]);
    r.check("distance-matches-fiber-bfs", "unit-level d agrees with arrow-level fiber BFS", matches_engine, "");
    let zero_set = scoped.iter().all(|&h| (d_arrow[&h] == 0) == ind.target.contains(&g.source(h)));
    r.check("distance-zero-on-target", "{d = 0} = G Y", zero_set, "");
    // Arrow-level f by the minimal-piece rule.
    let f_arrow = |h: ArrowId| -> ArrowId {
        let mut cur = h;
        while d_arrow[&cur] > 0 {
            let next = psi_at[g.source(cur).idx()]
                .iter()
                .filter(|&&p| d_arrow[&g.mul(cur, p)] + 1 == d_arrow[&cur])
                .min_by_key(|p| piece_of[p])
                .expect("a step towards Y exists");
            cur = g.mul(cur, *next);
        }
        cur
    };
    let mut equivariant = true;
    let mut agrees = true;
    for &h in &scoped {
        let fh = f_arrow(h);
        if ind.f[g.source(h).idx()].map(|fs| g.mul(h, fs)) != Some(fh) {
            agrees = false;
        }
        for &gamma in g.with_range(g.range(h)) {
            let gi = g.inverse(gamma);
            if f_arrow(g.mul(gi, h)) != g.mul(gi, fh) {
                equivariant = false;
            }
        }
    }
    r.check("step-map-equivariant", "f(gamma g) = gamma f(g)", equivariant, "");
    r.check("step-map-matches-engine", "arrow-level f agrees with the induction", agrees, "");
    let mut per_range: BTreeMap<UnitId, usize> = BTreeMap::new();
    for &a in &ind.psi0_plus {
        *per_range.entry(g.range(a)).or_default() += 1;
    }
    let unique = g.units().filter(|&x| in_scope(x)).all(|x| {
        let c = per_range.get(&x).copied().unwrap_or(0);
        if ind.target.contains(&x) { c == 0 } else { c == 1 }
    });
    r.check("psi0-plus-unique", "exactly one Psi0+ germ with range x for x off Y, none on Y", unique, "");
    let injective = ind.theta.len() == ind.j.len();
    let inverse_ok = ind.j.iter().all(|(&a, &b)| ind.j.get(&g.inverse(a)) == Some(&g.inverse(b)));
    let off_units = ind.theta.iter().all(|&b| !g.is_unit(b));
    r.check("lift-injective", "J is injective on Psi1", injective, "");
    r.check("lift-inverse", "J(gamma^-1) = J(gamma)^-1 and J(gamma) is not a unit", inverse_ok && off_units, "");
    let treeing = match restrict(g, &ind.target) {
        Ok((gy, map)) => {
            let theta_y: BTreeSet<ArrowId> = ind.theta.iter().filter_map(|a| map.arrow_of.get(a).copied()).collect();
            theta_y.len() == ind.theta.len() && treeing_failure(&gy, &theta_y).is_none()
        }
        Err(_) => false,
    };
    r.check("induced-treeing", "Theta is a treeing of G|_Y", treeing, "");
    let per_germ = ind.j.iter().all(|(&a, &b)| g.weight(g.range(a)) == g.weight(g.range(b)));
    let c_theta = cost(g, &ind.theta);
    let c_psi1 = cost(g, &ind.psi1);
    let equal = per_germ && c_theta.is_ok() && c_theta == c_psi1;
    if let (Ok(a), Ok(b)) = (&c_theta, &c_psi1) {
        r.value("cost-theta", format_rational(a));
        r.value("cost-psi1", format_rational(b));
    }
    r.check("cost-preserved", "J preserves mu_r germ by germ, so C(Theta) = C(Psi1)", equal, "");
    // Each Theta arrow's geodesic from the unit in Psi(r) crosses exactly one Psi1 edge, which
    // is the germ J maps onto it.
    let mut lifted = true;
    for (&gamma, &theta) in &ind.j {
        let bfs = &fibers[&g.range(theta)];
        let mut path = vec![theta];
        let mut cur = theta;
        while let Some((_, Some(p))) = bfs.get(&cur) {
            path.push(*p);
            cur = *p;
        }
        let crossing: Vec<ArrowId> = path
            .windows(2)
            .map(|w| g.mul(g.inverse(w[1]), w[0]))
            .filter(|e| ind.psi1.contains(e))
            .collect();
        if crossing != vec![gamma] {
            lifted = false;
        }
    }
    r.check("lifted-edge-unique", "the geodesic to each Theta arrow crosses one Psi1 edge, its J-preimage", lifted, "");
    let oriented = ind.theta_plus.iter().all(|&a| !ind.theta_plus.contains(&g.inverse(a)))
        && ind.j.iter().all(|(a, b)| graphing.psi_plus.contains(a) == ind.theta_plus.contains(b));
    r.check("induced-orientation", "Theta+ = J(Psi1 ∩ Psi+) is an orientation of Theta", oriented, "");
    r.value("psi1-germs", ind.psi1.len() as u64);
    r.value("theta-germs", ind.theta.len() as u64);
    r.value("skipped-units", ind.skipped.len() as u64);
    r
}

/// Length of the tree path between `a` and `b` in a fiber, using BFS parents.
fn path_len(bfs: &BTreeMap<ArrowId, (usize, Option<ArrowId>)>, a: ArrowId, b: ArrowId) -> usize {
    let ancestors = |mut v: ArrowId| {
        let mut out = vec![v];
        while let Some((_, Some(p))) = bfs.get(&v) {
            out.push(*p);
            v = *p;
        }
        out
    };
    let pa = ancestors(a);
    let pb = ancestors(b);
    let common = pa.iter().find(|v| pb.contains(v)).expect("same fiber tree");
    pa.iter().position(|v| v == common).unwrap() + pb.iter().position(|v| v == common).unwrap()
}

/// DOT picture of the induction: units as nodes, `Psi+` edges coloured by `Psi0`/`Psi1`,
/// `Theta+` dashed.
pub fn induction_dot(g: &FiniteGroupoid, graphing: &OrientedGraphing, ind: &InducedTreeing) -> String {
    let mut s = String::from("digraph induction {\n");
    for x in g.units() {
        let shape = if ind.target.contains(&x) { "box" } else { "ellipse" };
        writeln!(s, "  u{} [label=\"{}\", shape={}];", x.0, g.unit_label(x), shape).unwrap();
    }
    for &a in &graphing.psi_plus {
        let colour = if ind.psi0.contains(&a) { "blue" } else { "red" };
        writeln!(s, "  u{} -> u{} [color={}];", g.range(a).0, g.source(a).0, colour).unwrap();
    }
    for &a in &ind.theta_plus {
        writeln!(s, "  u{} -> u{} [style=dashed];", g.range(a).0, g.source(a).0).unwrap();
    }
    s.push_str("}\n");
    s
}
