use super::finite::{compose_perm, is_perm, FiniteGroup, Perm};
use super::GroupError;
use crate::groupoid::{uniform_weights, FiniteGroupoid, GroupoidTables, MeasureMode};
use crate::rational::Rational;
use std::collections::{BTreeMap, VecDeque};

/// A finite group acting on `0..n_points` on the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupAction {
    pub group: FiniteGroup,
    /// `action[g][x] = g.x`.
    pub action: Vec<Perm>,
}

impl FiniteGroupAction {
    pub fn n_points(&self) -> usize {
        self.action.first().map_or(0, |p| p.len())
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    /// Checks that `g -> action[g]` is a homomorphism into the permutations of `n_points`.
    pub fn new(group: FiniteGroup, action: Vec<Perm>, n_points: usize) -> Result<Self, GroupError> {
        if action.len() != group.order() {
            return Err(GroupError::Dimension { expected: group.order(), got: action.len() });
        }
        for (i, p) in action.iter().enumerate() {
            if !is_perm(p, n_points) {
                return Err(GroupError::BadPermutation(i));
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if action[group.mul(a, b)] != compose_perm(&action[a], &action[b]) {
                    return Err(GroupError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(FiniteGroupAction { group, action })
    }

    /// Closure of generator pairs `(faithful permutation, point permutation)`. The faithful part
    /// determines the group element, so non-faithful actions (e.g. on one point) are allowed.
    pub fn from_generators(
        faithful_degree: usize,
        n_points: usize,
        gens: &[(Perm, Perm)],
        bound: usize,
    ) -> Result<Self, GroupError> {
        for (i, (f, p)) in gens.iter().enumerate() {
            if !is_perm(f, faithful_degree) || !is_perm(p, n_points) {
                return Err(GroupError::BadPermutation(i));
            }
        }
        let id = ((0..faithful_degree).collect::<Perm>(), (0..n_points).collect::<Perm>());
        let mut elems = vec![id.clone()];
        let mut index = BTreeMap::from([(id.0.clone(), 0usize)]);
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for (gf, gp) in gens {
                let f = compose_perm(gf, &elems[a].0);
                let p = compose_perm(gp, &elems[a].1);
                match index.get(&f) {
                    Some(&b) => {
                        if elems[b].1 != p {
                            return Err(GroupError::NotHomomorphism(a, b));
                        }
                    }
                    None => {
                        if elems.len() >= bound {
                            return Err(GroupError::ClosureBound(bound));
                        }
                        index.insert(f.clone(), elems.len());
                        queue.push_back(elems.len());
                        elems.push((f, p));
                    }
                }
            }
        }
        let faithful: Vec<Perm> = elems.iter().map(|e| e.0.clone()).collect();
        let table = faithful
            .iter()
            .map(|a| faithful.iter().map(|b| index[&compose_perm(a, b)]).collect())
            .collect();
        let inverse = faithful
            .iter()
            .map(|a| index[&super::finite::invert_perm(a)])
            .collect();
        let names = (0..faithful.len()).map(|i| format!("e{i}")).collect();
        let group = FiniteGroup { table, inverse, names };
        Self::new(group, elems.into_iter().map(|e| e.1).collect(), n_points)
    }

    /// Left multiplication on the left cosets of `h` (cosets ordered as in `left_cosets`).
    pub fn on_cosets(group: &FiniteGroup, h: &std::collections::BTreeSet<usize>) -> Self {
        let cosets = group.left_cosets(h);
        let mut which = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &g in c {
                which[g] = i;
            }
        }
        let action = (0..group.order())
            .map(|g| {
                cosets
                    .iter()
                    .map(|c| which[group.mul(g, *c.iter().next().unwrap())])
                    .collect()
            })
            .collect();
        FiniteGroupAction { group: group.clone(), action }
    }

    /// Orbits of the subgroup `h` on points, ordered by least point.
    pub fn orbits_of(&self, h: &std::collections::BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n_points()];
        let mut out = Vec::new();
        for x in 0..self.n_points() {
            if seen[x] {
                continue;
            }
            let mut o: Vec<usize> = h.iter().map(|&g| self.act(g, x)).collect();
            o.sort();
            o.dedup();
            for &y in &o {
                seen[y] = true;
            }
            out.push(o);
        }
        out
    }
}

/// `X ⋊ G`: arrow `(x, g)` has index `x*|G| + g`, range `x` and source `g^-1 x`.
/// Weights default to uniform on the points.
pub fn translation_groupoid(a: &FiniteGroupAction, weights: Option<Vec<Rational>>) -> FiniteGroupoid {
    let n = a.n_points();
    let order = a.group.order();
    let id = |x: usize, g: usize| (x * order + g) as u32;
    let mut t = GroupoidTables::default();
    for x in 0..n {
        for g in 0..order {
            let gi = a.group.inv(g);
            let y = a.act(gi, x);
            t.range.push(x as u32);
            t.source.push(y as u32);
            t.inverse.push(id(y, gi));
            t.labels.push(format!("({},{})", x, a.group.names[g]));
            for h in 0..order {
                t.products.push((id(x, g), id(y, h), id(x, a.group.mul(g, h))));
            }
        }
        t.unit_arrow.push(id(x, 0));
    }
    let (weights, mode) = match weights {
        Some(w) => {
            let mode = if w.iter().sum::<Rational>() == Rational::from_integer(1.into()) {
                MeasureMode::Probability
            } else {
                MeasureMode::SigmaFinite
            };
            (w, mode)
        }
        None => (uniform_weights(n), MeasureMode::Probability),
    };
    FiniteGroupoid::from_tables(weights, mode, t).expect("translation groupoid tables")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_on_four_points() {
        let g = FiniteGroup::cyclic(4);
        let action = (0..4).map(|k| (0..4).map(|x| (x + k) % 4).collect()).collect();
        let a = FiniteGroupAction::new(g, action, 4).unwrap();
        let tg = translation_groupoid(&a, None);
        assert_eq!(tg.n_arrows(), 16);
        assert!(tg.validate().is_empty());
    }

    #[test]
    fn non_faithful_closure() {
        // Z/4 acting trivially on one point.
        let a = FiniteGroupAction::from_generators(4, 1, &[(vec![1, 2, 3, 0], vec![0])], 64).unwrap();
        assert_eq!(a.group.order(), 4);
        assert_eq!(translation_groupoid(&a, None).n_arrows(), 4);
    }

    #[test]
    fn closure_bound_is_reported() {
        let r = FiniteGroupAction::from_generators(5, 5, &[(vec![1, 2, 3, 4, 0], vec![1, 2, 3, 4, 0])], 3);
        assert_eq!(r.unwrap_err(), GroupError::ClosureBound(3));
    }
}
