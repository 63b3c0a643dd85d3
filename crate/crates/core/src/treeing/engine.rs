//! The induction procedure on a principal treed groupoid given through its germs. Arrows are
//! pairs of units, so the fiber graph at `x` is the graph on the orbit of `x` with an edge for
//! every germ. This serves both finite groupoids and truncated lazy models.

use super::TreeingError;
use std::collections::BTreeMap;
use std::fmt::Debug;

pub trait TreedSpace {
    type Unit: Ord + Clone + Debug;

    /// Germs of the graphing with range `x` as `(source, piece index)`; `None` when `x` lies
    /// outside the truncation and its germs are unknown. Piece `2k + 1` is the inverse of `2k`.
    fn germs(&self, x: &Self::Unit) -> Option<Vec<(Self::Unit, usize)>>;

    /// Membership in the target set `Y`.
    fn in_target(&self, x: &Self::Unit) -> bool;
}

/// Induction data on the units it was asked about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induction<U: Ord> {
    /// `d` as a function of the unit (left invariance makes it one).
    pub distance: BTreeMap<U, usize>,
    /// The `Psi0+` germ at each unit off `Y`: `(source, piece)`.
    pub step: BTreeMap<U, (U, usize)>,
    /// Source of `f(x)`, the end of the step path in `Y`.
    pub endpoint: BTreeMap<U, U>,
    /// `(gamma, J(gamma))` for `gamma` in `Psi1`, as unit pairs `(range, source)`.
    pub theta: Vec<((U, U), (U, U))>,
    /// Units whose data the truncation could not certify.
    pub uncertified: Vec<U>,
}

pub struct InductionEngine<'a, S: TreedSpace> {
    space: &'a S,
    max_depth: usize,
    distance: BTreeMap<S::Unit, Option<usize>>,
    step: BTreeMap<S::Unit, Option<Option<(S::Unit, usize)>>>,
}

impl<'a, S: TreedSpace> InductionEngine<'a, S> {
    pub fn new(space: &'a S, max_depth: usize) -> Self {
        InductionEngine { space, max_depth, distance: BTreeMap::new(), step: BTreeMap::new() }
    }

    /// BFS distance from `x` to the target inside the orbit graph. A layer with unknown germs
    /// still certifies a hit in the very next layer; anything later is uncertain.
    pub fn distance(&mut self, x: &S::Unit) -> Option<usize> {
        if let Some(Some(d)) = self.distance.get(x) {
            return Some(*d);
        }
        let d = self.bfs_distance(x);
        self.distance.insert(x.clone(), d);
        d
    }

    fn bfs_distance(&self, x: &S::Unit) -> Option<usize> {
        if self.space.in_target(x) {
            return Some(0);
        }
        let mut seen = BTreeMap::from([(x.clone(), ())]);
        let mut layer = vec![x.clone()];
        let mut complete = true;
        for depth in 1..=self.max_depth {
            let mut next = Vec::new();
            let mut layer_complete = true;
            for u in &layer {
                match self.space.germs(u) {
                    Some(gs) => {
                        for (v, _) in gs {
                            if seen.insert(v.clone(), ()).is_none() {
                                next.push(v);
                            }
                        }
                    }
                    None => layer_complete = false,
                }
            }
            if next.iter().any(|v| self.space.in_target(v)) {
                return complete.then_some(depth);
            }
            complete &= layer_complete;
            if !complete || next.is_empty() {
                return None;
            }
            layer = next;
        }
        None
    }

    /// Whether some target unit lies within `k` steps of `y`; `None` when the truncation hides
    /// the answer.
    pub fn within(&self, y: &S::Unit, k: usize) -> Option<bool> {
        if self.space.in_target(y) {
            return Some(true);
        }
        let mut seen = BTreeMap::from([(y.clone(), ())]);
        let mut layer = vec![y.clone()];
        let mut complete = true;
        for _ in 0..k {
            let mut next = Vec::new();
            for u in &layer {
                match self.space.germs(u) {
                    Some(gs) => {
                        for (v, _) in gs {
                            if self.space.in_target(&v) {
                                return Some(true);
                            }
                            if seen.insert(v.clone(), ()).is_none() {
                                next.push(v);
                            }
                        }
                    }
                    None => complete = false,
                }
            }
            layer = next;
        }
        complete.then_some(false)
    }

    /// The `Psi0+` germ at `x`: the least piece whose germ lowers `d` by one. `Some(None)` on `Y`.
    pub fn step(&mut self, x: &S::Unit) -> Option<Option<(S::Unit, usize)>> {
        if let Some(Some(s)) = self.step.get(x) {
            return Some(s.clone());
        }
        let s = match self.distance(x) {
            Some(d) => self.step_at(x, d),
            None => None,
        };
        self.step.insert(x.clone(), s.clone());
        s
    }

    fn step_at(&mut self, x: &S::Unit, d: usize) -> Option<Option<(S::Unit, usize)>> {
        if d == 0 {
            return Some(None);
        }
        let mut germs = self.space.germs(x)?;
        germs.sort_by_key(|g| g.1);
        for (y, k) in germs {
            // Neighbours have d >= d(x) - 1, so reaching Y within d(x) - 1 pins d(y).
            if self.within(&y, d - 1)? {
                self.learn(&y, d - 1);
                return Some(Some((y, k)));
            }
        }
        None
    }

    fn learn(&mut self, y: &S::Unit, d: usize) {
        self.distance.insert(y.clone(), Some(d));
    }

    /// Source of `f(x)` in `Y`.
    pub fn endpoint(&mut self, x: &S::Unit) -> Option<S::Unit> {
        let mut cur = x.clone();
        loop {
            match self.step(&cur)? {
                None => return Some(cur),
                Some((y, _)) => cur = y,
            }
        }
    }

    /// Whether the germ `x -> y` lies in `Psi0`.
    pub fn in_psi0(&mut self, x: &S::Unit, y: &S::Unit) -> Option<bool> {
        let d = self.distance(x)?;
        if matches!(self.step(x)?, Some((ref s, _)) if s == y) {
            return Some(true);
        }
        let dy = if !self.within(y, d)? {
            d + 1
        } else if d > 0 && self.within(y, d - 1)? {
            d - 1
        } else {
            d
        };
        self.learn(y, dy);
        if dy != d + 1 {
            return Some(false);
        }
        Some(matches!(self.step(y)?, Some((ref s, _)) if s == x))
    }

    /// Runs the induction on `scope`: steps, endpoints and `J` on every `Psi1` germ with range
    /// in `scope`.
    pub fn run(&mut self, scope: &[S::Unit]) -> Induction<S::Unit> {
        let mut out = Induction {
            distance: BTreeMap::new(),
            step: BTreeMap::new(),
            endpoint: BTreeMap::new(),
            theta: Vec::new(),
            uncertified: Vec::new(),
        };
        for x in scope {
            match self.unit_data(x, &mut out) {
                Some(()) => {}
                None => out.uncertified.push(x.clone()),
            }
        }
        out
    }

    fn unit_data(&mut self, x: &S::Unit, out: &mut Induction<S::Unit>) -> Option<()> {
        let d = self.distance(x)?;
        let step = self.step(x)?;
        let end = self.endpoint(x)?;
        let germs = self.space.germs(x)?;
        let mut theta = Vec::new();
        for (y, _) in germs {
            if !self.in_psi0(x, &y)? {
                let ey = self.endpoint(&y)?;
                theta.push(((x.clone(), y), (end.clone(), ey)));
            }
        }
        out.distance.insert(x.clone(), d);
        if let Some(s) = step {
            out.step.insert(x.clone(), s);
        }
        out.endpoint.insert(x.clone(), end);
        out.theta.extend(theta);
        Some(())
    }
}

pub(crate) fn uncertified<U: Debug>(what: &str, u: &U) -> TreeingError {
    TreeingError::Uncertified(format!("{what} at {u:?}"))
}
