use super::subgroupoid::{in_end, Subgroupoid};
use super::QuotientError;
use crate::groupoid::{ArrowId, FiniteGroupoid};

/// An r-section listed per unit; `None` off its domain.
pub type Section = Vec<Option<ArrowId>>;

/// A choice family: sections `phi_0 = units, phi_1, ...` in `End(S)` whose values at each unit
/// meet every S-class of `xG` exactly once. Sections may be partial when the index function is
/// not constant; their domains are then invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceFamily {
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalityVerdict {
    Normal { family: ChoiceFamily, searched: usize },
    /// `g^-1 sigma g` is not in `S` although `sigma` is in the isotropy of `S` at `r(g)`.
    NotNormal { g: ArrowId, sigma: ArrowId, searched: usize },
}

impl NormalityVerdict {
    pub fn is_normal(&self) -> bool {
        matches!(self, NormalityVerdict::Normal { .. })
    }
}

/// Decides `S ◁ G` by checking every singleton bisection `{g}` against the isotropy of `S`,
/// and on success builds a choice family.
pub fn is_normal(g: &FiniteGroupoid, s: &Subgroupoid) -> NormalityVerdict {
    let mut searched = 0;
    for a in g.arrows() {
        searched += 1;
        let x = g.range(a);
        for &sigma in g.with_range(x) {
            if g.source(sigma) == x && s.contains(sigma) {
                let c = g.mul(g.mul(g.inverse(a), sigma), a);
                if !s.contains(c) {
                    return NormalityVerdict::NotNormal { g: a, sigma, searched };
                }
            }
        }
    }
    NormalityVerdict::Normal { family: choice_family(g, s), searched }
}

/// Extends the one-point section `{a}` to a total section in `End(S)`: on the S-orbit of `r(a)`
/// use `y -> f_y a` with `f_y` the least S-arrow from `y` to `r(a)` (the unit at `r(a)`), and
/// units elsewhere.
fn extend_point(g: &FiniteGroupoid, s: &Subgroupoid, a: ArrowId) -> Section {
    let x = g.range(a);
    let mut out: Section = g.units().map(|y| Some(g.unit(y))).collect();
    for y in g.units() {
        if s.orbit(y) != s.orbit(x) {
            continue;
        }
        let f = if y == x {
            g.unit(x)
        } else {
            *g.with_range(y)
                .iter()
                .find(|&&f| s.contains(f) && g.source(f) == x)
                .expect("same S-orbit")
        };
        out[y.idx()] = Some(g.mul(f, a));
    }
    out
}

/// Greedy selection: candidates are the unit section followed by the extensions of every
/// singleton, in arrow order; section `n` takes at each unit the first candidate value whose class
/// is not yet chosen there.
fn choice_family(g: &FiniteGroupoid, s: &Subgroupoid) -> ChoiceFamily {
    let mut candidates: Vec<Section> = vec![g.units().map(|y| Some(g.unit(y))).collect()];
    candidates.extend(g.arrows().map(|a| extend_point(g, s, a)));
    let max_index = s.index_function().iter().copied().max().unwrap_or(0);
    let mut sections: Vec<Section> = vec![vec![None; g.n_units()]; max_index];
    for x in g.units() {
        let mut seen = vec![false; s.index_at(x)];
        let mut n = 0;
        for c in &candidates {
            let a = c[x.idx()].expect("candidates are total");
            if !seen[s.class(a)] {
                seen[s.class(a)] = true;
                sections[n][x.idx()] = Some(a);
                n += 1;
            }
        }
    }
    ChoiceFamily { sections }
}

impl ChoiceFamily {
    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    /// The coset-representative family `X x {s_n}` for a translation groupoid `X ⋊ G` (arrow
    /// `(x, g)` at index `x*|G| + g`) and a list of left coset representatives of `H`.
    pub fn from_coset_reps(n_points: usize, order: usize, reps: &[usize]) -> Self {
        let sections = reps
            .iter()
            .map(|&r| (0..n_points).map(|x| Some(ArrowId((x * order + r) as u32))).collect())
            .collect();
        ChoiceFamily { sections }
    }

    /// Checks every section is in `End(S)` and that each class of each fiber is hit exactly once.
    pub fn validate(&self, g: &FiniteGroupoid, s: &Subgroupoid) -> Result<(), QuotientError> {
        let Some(first) = self.sections.first() else {
            return Err(QuotientError::NoUnitSection);
        };
        if g.units().any(|x| first[x.idx()].map_or(true, |a| !s.contains(a))) {
            return Err(QuotientError::NoUnitSection);
        }
        for (i, sec) in self.sections.iter().enumerate() {
            if sec.len() != g.n_units() {
                return Err(QuotientError::BadModel(format!("section {i} has wrong length")));
            }
            in_end(g, s, sec, i)?;
        }
        for x in g.units() {
            let mut hit: Vec<Option<usize>> = vec![None; s.index_at(x)];
            for (i, sec) in self.sections.iter().enumerate() {
                if let Some(a) = sec[x.idx()] {
                    let c = s.class(a);
                    if let Some(j) = hit[c] {
                        return Err(QuotientError::DoublyCovered { unit: x, first: j, second: i });
                    }
                    hit[c] = Some(i);
                }
            }
            if let Some(c) = hit.iter().position(|h| h.is_none()) {
                let arrow = *g.with_range(x).iter().find(|&&a| s.class(a) == c).unwrap();
                return Err(QuotientError::Uncovered { unit: x, arrow });
            }
        }
        Ok(())
    }
}
