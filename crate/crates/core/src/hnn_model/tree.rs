//! The development tree of descent data: vertices are reduced addresses from a root of a given
//! type, each step a `(sign, relative label)`. At a vertex entered by a plus letter, minus label
//! 0 is the way back (and symmetrically), so addresses match Bass-Serre coset normal forms.

use super::{DescentData, HnnModelError};
use crate::graph::{bfs_ball, OrientedGraph};
use crate::group::Sign;
use crate::rational::{pow, Rational};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Step {
    pub sign: Sign,
    pub label: u32,
}

pub type Address = Vec<Step>;

pub fn address_string(a: &[Step]) -> String {
    if a.is_empty() {
        return "e".into();
    }
    a.iter()
        .map(|s| format!("{}{}", if s.sign == Sign::Plus { '+' } else { '-' }, s.label))
        .collect()
}

pub fn t_exponent(a: &[Step]) -> i64 {
    a.iter().map(|s| s.sign.exponent()).sum()
}

/// A letter of the descent model with its absolute slot: a point of `Z+` for plus letters and
/// of `Z-` for minus letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EdgeLetter {
    pub sign: Sign,
    pub point: usize,
}

impl fmt::Display for EdgeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "{s}{}", self.point)
    }
}

/// Type of a vertex and the slot it was entered through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexState {
    pub ty: usize,
    /// Sign of the step that reached the vertex and the slot point it arrived in.
    pub entry: Option<(Sign, usize)>,
}

impl DescentData {
    /// Slot points of the given sign at a vertex, in relative label order.
    pub fn relative_slots(&self, v: &VertexState, sign: Sign) -> Vec<usize> {
        let all = match sign {
            Sign::Plus => self.plus_slots(v.ty),
            Sign::Minus => self.minus_slots(v.ty),
        };
        match v.entry {
            Some((s, slot)) if s == sign.flip() => {
                let mut out = vec![slot];
                out.extend(all.into_iter().filter(|&x| x != slot));
                out
            }
            _ => all,
        }
    }

    pub fn degree(&self, sign: Sign) -> usize {
        match sign {
            Sign::Plus => self.q,
            Sign::Minus => self.p,
        }
    }

    pub fn advance(&self, v: &VertexState, step: Step) -> VertexState {
        let slot = self.relative_slots(v, step.sign)[step.label as usize];
        match step.sign {
            Sign::Plus => {
                let s = self.t_backward[slot];
                VertexState { ty: self.sigma_minus[s], entry: Some((Sign::Plus, s)) }
            }
            Sign::Minus => {
                let u = self.t_forward[slot];
                VertexState { ty: self.sigma_plus[u], entry: Some((Sign::Minus, u)) }
            }
        }
    }

    pub fn state(&self, base: usize, a: &[Step]) -> VertexState {
        a.iter().fold(VertexState { ty: base, entry: None }, |v, &s| self.advance(&v, s))
    }

    /// Whether `step` from a vertex entered by `last` walks back.
    pub fn is_backtrack(last: Option<&Step>, step: Step) -> bool {
        matches!(last, Some(l) if l.sign == step.sign.flip() && step.label == 0)
    }

    /// Appends a step, cancelling a backtrack.
    pub fn walk(&self, a: &mut Address, step: Step) -> Result<(), HnnModelError> {
        if step.label as usize >= self.degree(step.sign) {
            return Err(HnnModelError::BadStep(address_string(&[step])));
        }
        if Self::is_backtrack(a.last(), step) {
            a.pop();
        } else {
            a.push(step);
        }
        Ok(())
    }

    /// Forward steps from a vertex: every label except the backtrack.
    pub fn forward_steps(&self, a: &[Step]) -> Vec<Step> {
        let mut out = Vec::new();
        for sign in [Sign::Plus, Sign::Minus] {
            for label in 0..self.degree(sign) as u32 {
                let s = Step { sign, label };
                if !Self::is_backtrack(a.last(), s) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Plus-piece number of a tree edge given by the child step: `(a, 0) -> a` and
    /// `(0, b) -> q - 1 + b` for `b >= 1`.
    pub fn piece_of_step(&self, s: Step) -> usize {
        match s.sign {
            Sign::Plus => s.label as usize,
            Sign::Minus if s.label == 0 => 0,
            Sign::Minus => self.q - 1 + s.label as usize,
        }
    }

    /// Neighbours of `a` with the germ's piece index (`2k` when `a` is the tail of the plus edge,
    /// `2k + 1` when it is the head) and whether the edge points away from `a`.
    pub fn neighbours(&self, a: &[Step]) -> Vec<(Address, usize, bool)> {
        let mut out = Vec::new();
        if let Some(&last) = a.last() {
            let k = self.piece_of_step(last);
            let away = last.sign == Sign::Minus;
            out.push((a[..a.len() - 1].to_vec(), 2 * k + usize::from(!away), away));
        }
        for s in self.forward_steps(a) {
            let mut b = a.to_vec();
            b.push(s);
            let away = s.sign == Sign::Plus;
            out.push((b, 2 * self.piece_of_step(s) + usize::from(!away), away));
        }
        out
    }

    /// Letters along the tree path from `from` to `to` (same root).
    pub fn path_letters(&self, base: usize, from: &[Step], to: &[Step]) -> Vec<EdgeLetter> {
        let common = from.iter().zip(to).take_while(|(x, y)| x == y).count();
        let mut out = Vec::new();
        for i in (common..from.len()).rev() {
            // Walking up through the slot the vertex was entered by.
            let v = self.state(base, &from[..=i]);
            let (sign, point) = v.entry.expect("non-root vertex");
            out.push(EdgeLetter { sign: sign.flip(), point });
        }
        for i in common..to.len() {
            let v = self.state(base, &to[..i]);
            let point = self.relative_slots(&v, to[i].sign)[to[i].label as usize];
            out.push(EdgeLetter { sign: to[i].sign, point });
        }
        out
    }

    /// Weight of a vertex in the lazy model: `zeta(base) (p/q)^(t-exponent)`.
    pub fn vertex_weight(&self, base: usize, a: &[Step]) -> Rational {
        &self.zeta[base] * pow(&self.ratio(), -t_exponent(a))
    }
}

/// An arrow of the lazy quotient: a pair of vertices of one development tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TreedArrow {
    pub base: usize,
    pub range: Address,
    pub source: Address,
}

impl TreedArrow {
    pub fn unit(base: usize, a: Address) -> Self {
        TreedArrow { base, range: a.clone(), source: a }
    }

    pub fn is_unit(&self) -> bool {
        self.range == self.source
    }

    pub fn inverse(&self) -> Self {
        TreedArrow { base: self.base, range: self.source.clone(), source: self.range.clone() }
    }

    pub fn compose(&self, other: &TreedArrow) -> Result<TreedArrow, HnnModelError> {
        if self.base != other.base || self.source != other.range {
            return Err(HnnModelError::NotComposable);
        }
        Ok(TreedArrow { base: self.base, range: self.range.clone(), source: other.source.clone() })
    }

    /// The reduced word of the arrow.
    pub fn word(&self, d: &DescentData) -> Vec<EdgeLetter> {
        d.path_letters(self.base, &self.range, &self.source)
    }

    pub fn t_exponent(&self) -> i64 {
        t_exponent(&self.source) - t_exponent(&self.range)
    }
}

/// `(q/p)^(plus letters - minus letters)`.
pub fn rn_cocycle(d: &DescentData, a: &TreedArrow) -> Rational {
    pow(&d.ratio(), a.t_exponent())
}

/// Ball of radius `r` about the root of type `z`, oriented along plus letters.
pub fn fiber_ball(d: &DescentData, z: usize, r: usize, max_vertices: usize) -> Result<OrientedGraph, HnnModelError> {
    if z >= d.n_types() {
        return Err(HnnModelError::BadStep(format!("no point z{z}")));
    }
    bfs_ball(Vec::new(), r, max_vertices, |a: &Address| address_string(a), |a| {
        Ok::<_, HnnModelError>(d.neighbours(a).into_iter().map(|(b, _, away)| (b, away)).collect())
    })
}

/// Vertices of depth below `r` whose out/in degrees differ from `q`/`p`.
pub fn degree_violations(d: &DescentData, ball: &OrientedGraph, r: usize) -> Vec<usize> {
    (0..ball.n_vertices())
        .filter(|&v| ball.depth[v] < r && (ball.out_degree(v) != d.q || ball.in_degree(v) != d.p))
        .collect()
}
