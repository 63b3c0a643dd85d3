//! Graphings, treeings, cost and the induction of a treeing onto a restriction.

mod engine;
mod induction;

pub use engine::{Induction, InductionEngine, TreedSpace};
pub use induction::{induce_treeing, induction_dot, verify_induction, InducedTreeing};

use crate::groupoid::{inverse_set, mu_r, ArrowId, FiniteGroupoid, GroupoidError, UnitId};
use crate::rational::Rational;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeingError {
    #[error("arrow set is not symmetric: inverse of {0} missing")]
    NotSymmetric(ArrowId),
    #[error("oriented part contains a unit or an inverse pair at {0}")]
    NotOriented(ArrowId),
    #[error("fiber graph at {0} is not a tree")]
    NotTreeing(UnitId),
    #[error("target unit set is empty")]
    EmptyTarget,
    #[error("isotropy at {0} is nontrivial; induction needs a principal groupoid")]
    NotPrincipal(UnitId),
    #[error("truncation too small to certify {0}")]
    Uncertified(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

/// `Psi = Psi+ ⊔ Psi+^-1` given by its oriented half.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraphing {
    pub psi_plus: BTreeSet<ArrowId>,
}

impl OrientedGraphing {
    pub fn new(g: &FiniteGroupoid, psi_plus: BTreeSet<ArrowId>) -> Result<Self, TreeingError> {
        for &a in &psi_plus {
            if a.idx() >= g.n_arrows() {
                return Err(GroupoidError::OutOfBounds(a.to_string()).into());
            }
            if g.is_unit(a) || psi_plus.contains(&g.inverse(a)) {
                return Err(TreeingError::NotOriented(a));
            }
        }
        Ok(OrientedGraphing { psi_plus })
    }

    pub fn psi(&self, g: &FiniteGroupoid) -> BTreeSet<ArrowId> {
        let mut s = self.psi_plus.clone();
        s.extend(inverse_set(g, &self.psi_plus));
        s
    }
}

/// Members of `psi` grouped by range.
pub(crate) fn by_range(g: &FiniteGroupoid, psi: &BTreeSet<ArrowId>) -> Vec<Vec<ArrowId>> {
    let mut out = vec![Vec::new(); g.n_units()];
    for &a in psi {
        out[g.range(a).idx()].push(a);
    }
    out
}

/// BFS over the fiber graph `Psi(x)` on `xG`: vertex `h` is adjacent to `h psi` for `psi` in
/// `Psi` with range `s(h)`. Returns distance and parent for every reached vertex.
pub fn fiber_bfs(
    g: &FiniteGroupoid,
    psi_at: &[Vec<ArrowId>],
    x: UnitId,
) -> BTreeMap<ArrowId, (usize, Option<ArrowId>)> {
    let mut seen = BTreeMap::from([(g.unit(x), (0, None))]);
    let mut queue = VecDeque::from([g.unit(x)]);
    while let Some(h) = queue.pop_front() {
        let d = seen[&h].0;
        for &p in &psi_at[g.source(h).idx()] {
            let k = g.mul(h, p);
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(k) {
                e.insert((d + 1, Some(h)));
                queue.push_back(k);
            }
        }
    }
    seen
}

fn fiber_shape(g: &FiniteGroupoid, psi_at: &[Vec<ArrowId>], x: UnitId) -> (bool, usize) {
    let reached = fiber_bfs(g, psi_at, x);
    let edges: usize = g.with_range(x).iter().map(|&h| psi_at[g.source(h).idx()].len()).sum();
    (reached.len() == g.with_range(x).len(), edges / 2)
}

/// Every fiber graph is connected.
pub fn is_graphing(g: &FiniteGroupoid, psi: &BTreeSet<ArrowId>) -> bool {
    let at = by_range(g, psi);
    psi.iter().all(|&a| !g.is_unit(a)) && g.units().all(|x| fiber_shape(g, &at, x).0)
}

/// First unit whose fiber graph is not a tree.
pub fn treeing_failure(g: &FiniteGroupoid, psi: &BTreeSet<ArrowId>) -> Option<UnitId> {
    let at = by_range(g, psi);
    g.units().find(|&x| {
        if psi.iter().any(|&a| g.is_unit(a)) {
            return true;
        }
        let (connected, edges) = fiber_shape(g, &at, x);
        !connected || edges + 1 != g.with_range(x).len()
    })
}

pub fn is_treeing(g: &FiniteGroupoid, psi: &BTreeSet<ArrowId>) -> bool {
    treeing_failure(g, psi).is_none()
}

/// `C(S) = mu_r(S) / 2` for a symmetric arrow set.
pub fn cost(g: &FiniteGroupoid, s: &BTreeSet<ArrowId>) -> Result<Rational, TreeingError> {
    if let Some(&a) = s.iter().find(|&&a| !s.contains(&g.inverse(a))) {
        return Err(TreeingError::NotSymmetric(a));
    }
    Ok(mu_r(g, s) / Rational::from_integer(2.into()))
}

/// Greedy split of `Psi+` (ascending arrow order) into bisections, each followed by its inverse.
/// Even positions hold subsets of `Psi+`.
pub fn decompose_pieces(g: &FiniteGroupoid, graphing: &OrientedGraphing) -> Vec<BTreeSet<ArrowId>> {
    let mut plus: Vec<(BTreeSet<ArrowId>, BTreeSet<UnitId>, BTreeSet<UnitId>)> = Vec::new();
    for &a in &graphing.psi_plus {
        let (r, s) = (g.range(a), g.source(a));
        match plus.iter_mut().find(|(_, rs, ss)| !rs.contains(&r) && !ss.contains(&s)) {
            Some((set, rs, ss)) => {
                set.insert(a);
                rs.insert(r);
                ss.insert(s);
            }
            None => plus.push((BTreeSet::from([a]), BTreeSet::from([r]), BTreeSet::from([s]))),
        }
    }
    plus.into_iter()
        .flat_map(|(set, _, _)| {
            let inv = inverse_set(g, &set);
            [set, inv]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{pair_groupoid, uniform_weights};
    use crate::MeasureMode;

    fn arrow(g: &FiniteGroupoid, x: u32, y: u32) -> ArrowId {
        g.arrow_between(UnitId(x), UnitId(y)).unwrap()
    }

    #[test]
    fn star_and_triangle() {
        let g = pair_groupoid(uniform_weights(3), MeasureMode::Probability);
        let star = OrientedGraphing::new(&g, BTreeSet::from([arrow(&g, 0, 1), arrow(&g, 0, 2)])).unwrap();
        let psi = star.psi(&g);
        assert!(is_graphing(&g, &psi) && is_treeing(&g, &psi));
        assert_eq!(cost(&g, &psi).unwrap(), crate::rational::rat(2, 3));
        let mut tri = psi.clone();
        tri.extend([arrow(&g, 1, 2), arrow(&g, 2, 1)]);
        assert!(is_graphing(&g, &tri) && !is_treeing(&g, &tri));
        let pieces = decompose_pieces(&g, &star);
        assert_eq!(pieces.len(), 4);
        assert_eq!(pieces[0], BTreeSet::from([arrow(&g, 0, 1)]));
        assert_eq!(pieces[3], BTreeSet::from([arrow(&g, 2, 0)]));
    }

    #[test]
    fn empty_set_on_a_group_is_not_a_graphing() {
        let g = crate::groupoid::single_group(&[vec![0, 1], vec![1, 0]], &[0, 1]);
        assert!(!is_graphing(&g, &BTreeSet::new()));
        assert_eq!(cost(&g, &BTreeSet::new()).unwrap(), Rational::from_integer(0.into()));
    }

    #[test]
    fn asymmetric_cost_is_rejected() {
        let g = pair_groupoid(uniform_weights(2), MeasureMode::Probability);
        let a = arrow(&g, 0, 1);
        assert_eq!(cost(&g, &BTreeSet::from([a])), Err(TreeingError::NotSymmetric(a)));
    }
}
