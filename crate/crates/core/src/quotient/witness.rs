use super::normality::is_normal;
use super::subgroupoid::{conjugation_certifies, Subgroupoid};
use super::QuotientError;
use crate::group::{translation_groupoid, FiniteGroupAction, Lattice, Perm};
use crate::groupoid::ArrowId;
use std::collections::BTreeSet;

/// A finite permutation model of a group generated by a free abelian `E = Z^nu` (through
/// `e_generators`) and one element `t`, with E-equivariant labels `X -> E/E-` and `X -> E/E+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnnModelAction {
    pub n_points: usize,
    pub e_generators: Vec<Perm>,
    pub t: Perm,
    pub e_minus: Lattice,
    pub e_plus: Lattice,
    pub labels_minus: Vec<Vec<i64>>,
    pub labels_plus: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPiece {
    /// Coset of `E-` labelling the sources.
    pub minus_label: Vec<i64>,
    /// Coset of `E+` labelling the ranges.
    pub plus_label: Vec<i64>,
    pub arrows: BTreeSet<ArrowId>,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnnWitness {
    pub group_order: usize,
    pub pieces: Vec<WitnessPiece>,
    /// Independent verdict of the singleton-bisection normality test on the same instance.
    pub normal: bool,
}

impl HnnWitness {
    pub fn all_certified(&self) -> bool {
        self.pieces.iter().all(|p| p.certified)
    }
}

fn check_labels(
    m: &HnnModelAction,
    lattice: &Lattice,
    labels: &[Vec<i64>],
) -> Result<(), QuotientError> {
    let nu = m.e_generators.len();
    if labels.len() != m.n_points {
        return Err(QuotientError::BadModel("one label per point required".into()));
    }
    for x in 0..m.n_points {
        for (i, a) in m.e_generators.iter().enumerate() {
            let mut shifted = labels[x].clone();
            if shifted.len() != nu {
                return Err(QuotientError::BadModel(format!("label of point {x} has wrong length")));
            }
            shifted[i] += 1;
            if lattice.rep(&labels[a[x]]) != lattice.rep(&shifted) {
                return Err(QuotientError::NotEquivariant { point: x, generator: i });
            }
        }
    }
    Ok(())
}

/// Builds the pieces `{(x, t) : x in t(X_k^-) and x in X_l^+}` of the bisection `X x {t}` and
/// certifies each one lies in `[[X ⋊ G]]_{X ⋊ E}` by exact conjugation of S-restrictions.
pub fn normality_witness_hnn(m: &HnnModelAction) -> Result<HnnWitness, QuotientError> {
    let n = m.n_points;
    let nu = m.e_generators.len();
    if m.e_minus.dim() != nu || m.e_plus.dim() != nu {
        return Err(QuotientError::BadModel("lattice dimension differs from generator count".into()));
    }
    let mut gens: Vec<Perm> = m.e_generators.clone();
    gens.push(m.t.clone());
    for (i, p) in gens.iter().enumerate() {
        if p.len() != n {
            return Err(QuotientError::BadModel(format!("generator {i} has wrong degree")));
        }
    }
    for a in &m.e_generators {
        for b in &m.e_generators {
            let ab: Perm = b.iter().map(|&i| a[i]).collect();
            let ba: Perm = a.iter().map(|&i| b[i]).collect();
            if ab != ba {
                return Err(QuotientError::BadModel("E-generators do not commute".into()));
            }
        }
    }
    check_labels(m, &m.e_minus, &m.labels_minus)?;
    check_labels(m, &m.e_plus, &m.labels_plus)?;
    let pairs: Vec<(Perm, Perm)> = gens.iter().map(|p| (p.clone(), p.clone())).collect();
    let action = FiniteGroupAction::from_generators(n, n, &pairs, 1 << 16)?;
    let order = action.group.order();
    let element = |p: &Perm| (0..order).find(|&g| &action.action[g] == p).expect("generator in closure");
    let e_elems: Vec<usize> = m.e_generators.iter().map(element).collect();
    let e_bar = action.group.closure(&e_elems);
    let t = element(&m.t);
    let g = translation_groupoid(&action, None);
    let arrow = |x: usize, h: usize| ArrowId((x * order + h) as u32);
    let s_arrows: BTreeSet<ArrowId> = (0..n).flat_map(|x| e_bar.iter().map(move |&h| arrow(x, h))).collect();
    let s = Subgroupoid::new(&g, &s_arrows)?;
    let t_inv = action.group.inv(t);
    let mut pieces = Vec::new();
    for k in m.e_minus.reps() {
        for l in m.e_plus.reps() {
            let arrows: BTreeSet<ArrowId> = (0..n)
                .filter(|&x| {
                    m.e_plus.rep(&m.labels_plus[x]) == l
                        && m.e_minus.rep(&m.labels_minus[action.act(t_inv, x)]) == k
                })
                .map(|x| arrow(x, t))
                .collect();
            if arrows.is_empty() {
                continue;
            }
            let certified = conjugation_certifies(&g, &s, &arrows);
            pieces.push(WitnessPiece { minus_label: k.clone(), plus_label: l.clone(), arrows, certified });
        }
    }
    Ok(HnnWitness { group_order: order, pieces, normal: is_normal(&g, &s).is_normal() })
}
