use super::construct::QuotientResult;
use super::subgroupoid::{conjugation_certifies, Subgroupoid};
use super::QuotientError;
use crate::groupoid::{classify, ArrowId, FiniteGroupoid, UnitId};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmpVerdict {
    /// `Q` has Radon-Nikodym cocycle identically 1.
    pub direct: bool,
    /// For each arrow `(z, j)` of `Q`, a bisection of `G` in `[[G]]_S` from `theta^-1(z)` onto
    /// `theta^-1(Phi_j(z))` inside `theta^-1(z, j)`, when all of them exist.
    pub witness: Option<Vec<(ArrowId, BTreeSet<ArrowId>)>>,
    /// A `Q` arrow for which no such bisection exists.
    pub obstruction: Option<ArrowId>,
    /// Whether the witness pieces with a common index assemble into elements of the full group.
    pub aut_refined: bool,
}

impl PmpVerdict {
    /// The two routes agree.
    pub fn consistent(&self) -> bool {
        self.direct == self.witness.is_some()
    }
}

/// Kuhn's augmenting-path matching; `adj[i]` lists right vertices for left vertex `i`.
fn perfect_matching(adj: &[Vec<usize>], n_right: usize) -> Option<Vec<usize>> {
    if adj.len() != n_right {
        return None;
    }
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], mr: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if mr[j].map_or(true, |k| augment(k, adj, seen, mr)) {
                mr[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..adj.len() {
        let mut seen = vec![false; n_right];
        if !augment(i, adj, &mut seen, &mut match_right) {
            return None;
        }
    }
    let mut out = vec![0; adj.len()];
    for (j, m) in match_right.iter().enumerate() {
        out[m.unwrap()] = j;
    }
    Some(out)
}

/// Decides whether `Q = G/S` is measure preserving in two independent ways: directly on the
/// weights of `Q`, and by searching for bisections of `G` in `[[G]]_S` covering `Q`. The parent
/// `G` must be measure preserving.
pub fn quotient_is_pmp(
    g: &FiniteGroupoid,
    s: &Subgroupoid,
    qr: &QuotientResult,
) -> Result<PmpVerdict, QuotientError> {
    if !g.is_pmp() {
        return Err(QuotientError::ParentNotPmp);
    }
    let direct = qr.q.is_pmp();
    let mut witness = Vec::new();
    let mut obstruction = None;
    for qa in qr.q.arrows() {
        let (z, _) = qr.pair_of[qa.idx()];
        let w = qr.q.source(qa).idx();
        let left = s.orbit_members(z);
        let right: Vec<UnitId> = s.orbit_members(w);
        let pos = |y: UnitId| right.iter().position(|&r| r == y);
        let candidates: Vec<Vec<ArrowId>> = left
            .iter()
            .map(|&x| g.with_range(x).iter().copied().filter(|&h| qr.theta(h) == qa).collect())
            .collect();
        let adj: Vec<Vec<usize>> = candidates
            .iter()
            .map(|c| c.iter().filter_map(|&h| pos(g.source(h))).collect())
            .collect();
        match perfect_matching(&adj, right.len()) {
            Some(m) => {
                let phi: BTreeSet<ArrowId> = candidates
                    .iter()
                    .zip(m.iter())
                    .map(|(c, &j)| *c.iter().find(|&&h| g.source(h) == right[j]).unwrap())
                    .collect();
                if !conjugation_certifies(g, s, &phi) {
                    return Err(QuotientError::Inconsistent(format!(
                        "matched bisection for {qa} is not in the S-normaliser"
                    )));
                }
                witness.push((qa, phi));
            }
            None => {
                obstruction = Some(qa);
                break;
            }
        }
    }
    let witness = obstruction.is_none().then_some(witness);
    let aut_refined = witness.as_ref().is_some_and(|w| {
        let js: BTreeSet<usize> = qr.pair_of.iter().map(|p| p.1).collect();
        js.iter().all(|&j| {
            let union: BTreeSet<ArrowId> = w
                .iter()
                .filter(|(qa, _)| qr.pair_of[qa.idx()].1 == j)
                .flat_map(|(_, phi)| phi.iter().copied())
                .collect();
            classify(g, &union).bisection() && union.len() == g.n_units()
        })
    });
    Ok(PmpVerdict { direct, witness, obstruction, aut_refined })
}
