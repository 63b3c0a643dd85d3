//! Central extensions over a free action: a homomorphic section of `X ⋊ H -> R(H/E ↷ X)` and the
//! product decomposition of `(X x E) ⋊ N` over the quotient by `(X x E) ⋊ E`.

mod decomposition;
mod section;

pub use decomposition::{product_decomposition, Decomposition};
pub use section::{build_section, product_map_report, section_report, split_report, SplitSection};

use crate::group::{FiniteGroup, FiniteGroupAction, GroupError};
use crate::quotient::QuotientError;
use crate::rational::Rational;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplittingError {
    #[error("E is not a subgroup of H: {0}")]
    NotSubgroup(String),
    #[error("E is not central: {e} and {h} do not commute")]
    NotCentral { e: usize, h: usize },
    #[error("E does not act trivially on X: {element} moves point {point}")]
    NotTrivialOnX { element: usize, point: usize },
    #[error("H/E does not act freely: {element} outside E fixes point {point}")]
    NotFree { element: usize, point: usize },
    #[error("weights are not H-invariant at point {0}")]
    WeightsNotInvariant(usize),
    #[error("weights have the wrong length")]
    WeightsLength,
    #[error("phi is not a homomorphism at {0}, {1}")]
    PhiNotHomomorphism(usize, usize),
    #[error("phi misses element {0} of H")]
    PhiNotSurjective(usize),
    #[error("phi does not map the designated copy of E bijectively onto E")]
    PhiNotBijectiveOnE,
    #[error("no covering group N was supplied")]
    NoCover,
    #[error("the E-subgroupoid is not normal")]
    NotNormal,
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A surjection `phi: N -> H` with a designated subgroup of `N` carried onto `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub group: FiniteGroup,
    pub phi: Vec<usize>,
    pub e_copy: BTreeSet<usize>,
}

impl Cover {
    /// `N = H`, `phi = id`.
    pub fn identity(h: &FiniteGroup, e: &BTreeSet<usize>) -> Self {
        Cover { group: h.clone(), phi: (0..h.order()).collect(), e_copy: e.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralExtensionInstance {
    /// `H` acting on `X`.
    pub action: FiniteGroupAction,
    pub e: BTreeSet<usize>,
    /// Point weights of `X`; uniform when absent.
    pub weights: Option<Vec<Rational>>,
    pub cover: Option<Cover>,
}

impl CentralExtensionInstance {
    pub fn h(&self) -> &FiniteGroup {
        &self.action.group
    }

    pub fn weights(&self) -> Vec<Rational> {
        let n = self.action.n_points();
        self.weights
            .clone()
            .unwrap_or_else(|| crate::groupoid::uniform_weights(n))
    }

    /// Everything except centrality, which the section does not need.
    pub fn check_structure(&self) -> Result<(), SplittingError> {
        let h = self.h();
        let n = self.action.n_points();
        if !self.e.contains(&0) {
            return Err(SplittingError::NotSubgroup("missing identity".into()));
        }
        if let Some(&bad) = self.e.iter().find(|&&a| a >= h.order()) {
            return Err(SplittingError::NotSubgroup(format!("{bad} is not an element")));
        }
        for &a in &self.e {
            for &b in &self.e {
                if !self.e.contains(&h.mul(a, b)) {
                    return Err(SplittingError::NotSubgroup(format!("not closed at {a}, {b}")));
                }
            }
        }
        for &a in &self.e {
            if let Some(x) = (0..n).find(|&x| self.action.act(a, x) != x) {
                return Err(SplittingError::NotTrivialOnX { element: a, point: x });
            }
        }
        for g in (0..h.order()).filter(|g| !self.e.contains(g)) {
            if let Some(x) = (0..n).find(|&x| self.action.act(g, x) == x) {
                return Err(SplittingError::NotFree { element: g, point: x });
            }
        }
        let w = self.weights();
        if w.len() != n {
            return Err(SplittingError::WeightsLength);
        }
        for g in 0..h.order() {
            if let Some(x) = (0..n).find(|&x| w[self.action.act(g, x)] != w[x]) {
                return Err(SplittingError::WeightsNotInvariant(x));
            }
        }
        Ok(())
    }

    pub fn check_central(&self) -> Result<(), SplittingError> {
        let h = self.h();
        for &e in &self.e {
            if let Some(g) = (0..h.order()).find(|&g| h.mul(g, e) != h.mul(e, g)) {
                return Err(SplittingError::NotCentral { e, h: g });
            }
        }
        Ok(())
    }

    pub fn check_cover(&self) -> Result<&Cover, SplittingError> {
        let c = self.cover.as_ref().ok_or(SplittingError::NoCover)?;
        let (n, h) = (&c.group, self.h());
        if c.phi.len() != n.order() || c.phi.iter().any(|&v| v >= h.order()) {
            return Err(SplittingError::PhiNotHomomorphism(0, 0));
        }
        for a in 0..n.order() {
            for b in 0..n.order() {
                if c.phi[n.mul(a, b)] != h.mul(c.phi[a], c.phi[b]) {
                    return Err(SplittingError::PhiNotHomomorphism(a, b));
                }
            }
        }
        let image: BTreeSet<usize> = c.phi.iter().copied().collect();
        if let Some(m) = (0..h.order()).find(|g| !image.contains(g)) {
            return Err(SplittingError::PhiNotSurjective(m));
        }
        let e_image: BTreeSet<usize> = c.e_copy.iter().map(|&a| c.phi[a]).collect();
        if e_image != self.e || c.e_copy.len() != self.e.len() {
            return Err(SplittingError::PhiNotBijectiveOnE);
        }
        Ok(c)
    }

    /// All hypotheses of the product decomposition.
    pub fn check(&self) -> Result<(), SplittingError> {
        self.check_structure()?;
        self.check_central()?;
        if self.cover.is_some() {
            self.check_cover()?;
        }
        Ok(())
    }
}

/// `E` as a group in its own right, elements listed in the order of `set` (identity first).
pub(crate) fn subgroup_table(g: &FiniteGroup, set: &BTreeSet<usize>) -> FiniteGroup {
    let elems: Vec<usize> = set.iter().copied().collect();
    let pos = |a: usize| elems.iter().position(|&b| b == a).expect("closed subgroup");
    let table = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| pos(g.mul(a, b))).collect())
        .collect();
    let inverse = elems.iter().map(|&a| pos(g.inv(a))).collect();
    let names = elems.iter().map(|&a| g.names[a].clone()).collect();
    FiniteGroup { table, inverse, names }
}
