//! Finite discrete measured groupoids stored as explicit tables.

mod build;
mod sections;

pub use build::{disjoint_union, pair_groupoid, product, single_group, uniform_weights};
pub use sections::{
    bisection_product, classify, inverse_set, mu_r, mu_s, radon_nikodym, range_set, restrict,
    saturate, source_set, sub_groupoid, Restriction, SectionKind,
};

use crate::rational::{format_rational, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArrowId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UnitId(pub u32);

impl ArrowId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl UnitId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

impl fmt::Display for UnitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureMode {
    Probability,
    SigmaFinite,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("table index out of bounds: {0}")]
    OutOfBounds(String),
    #[error("table sizes disagree: {0}")]
    Shape(String),
    #[error("weight of unit {0} is not positive")]
    NonPositiveWeight(UnitId),
    #[error("probability weights sum to {0}, expected 1")]
    NotNormalized(String),
    #[error("restriction to an empty unit set")]
    EmptyRestriction,
    #[error("arrow set is not closed under composition and inverses (witness {0})")]
    NotClosed(ArrowId),
    #[error("groupoid axioms fail: {0} violations, first: {1}")]
    Invalid(usize, Violation),
    #[error("instance exceeds arrow bound {bound} (needs {needed})")]
    TooLarge { bound: usize, needed: usize },
}

/// One failed groupoid axiom together with the arrows that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    UnitEndpoints { unit: UnitId, arrow: ArrowId },
    ComposedNonComposable { g: ArrowId, h: ArrowId },
    MissingComposite { g: ArrowId, h: ArrowId },
    CompositeEndpoints { g: ArrowId, h: ArrowId, gh: ArrowId },
    NotAssociative { g: ArrowId, h: ArrowId, k: ArrowId },
    UnitNotNeutral { g: ArrowId },
    InverseEndpoints { g: ArrowId },
    NotInverse { g: ArrowId },
    CocycleFails { g: ArrowId, h: ArrowId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnitEndpoints { unit, arrow } => {
                write!(f, "unit arrow {arrow} of {unit} has wrong endpoints")
            }
            Violation::ComposedNonComposable { g, h } => {
                write!(f, "product {g}*{h} defined although s({g}) != r({h})")
            }
            Violation::MissingComposite { g, h } => write!(f, "product {g}*{h} missing"),
            Violation::CompositeEndpoints { g, h, gh } => {
                write!(f, "product {g}*{h} = {gh} has wrong endpoints")
            }
            Violation::NotAssociative { g, h, k } => {
                write!(f, "({g}*{h})*{k} != {g}*({h}*{k})")
            }
            Violation::UnitNotNeutral { g } => write!(f, "units are not neutral for {g}"),
            Violation::InverseEndpoints { g } => write!(f, "inverse of {g} has wrong endpoints"),
            Violation::NotInverse { g } => write!(f, "inverse of {g} does not cancel"),
            Violation::CocycleFails { g, h } => {
                write!(f, "Radon-Nikodym cocycle not multiplicative on {g},{h}")
            }
        }
    }
}

/// Raw tables as read from a file, before any axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupoidTables {
    pub range: Vec<u32>,
    pub source: Vec<u32>,
    pub inverse: Vec<u32>,
    pub unit_arrow: Vec<u32>,
    /// `(g, h, gh)` for every composable pair.
    pub products: Vec<(u32, u32, u32)>,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    weights: Vec<Rational>,
    mode: MeasureMode,
    range: Vec<u32>,
    source: Vec<u32>,
    inverse: Vec<u32>,
    unit_arrow: Vec<u32>,
    compose: Vec<u32>,
    labels: Vec<String>,
    by_range: Vec<Vec<ArrowId>>,
    by_source: Vec<Vec<ArrowId>>,
}

pub fn check_weights(weights: &[Rational], mode: MeasureMode) -> Result<(), GroupoidError> {
    for (i, w) in weights.iter().enumerate() {
        if *w <= Rational::zero() {
            return Err(GroupoidError::NonPositiveWeight(UnitId(i as u32)));
        }
    }
    if mode == MeasureMode::Probability {
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(GroupoidError::NotNormalized(format_rational(&total)));
        }
    }
    Ok(())
}

impl FiniteGroupoid {
    /// Builds a groupoid from raw tables. Only shapes, bounds and weights are checked here;
    /// axioms are checked by [`FiniteGroupoid::validate`].
    pub fn from_tables(
        weights: Vec<Rational>,
        mode: MeasureMode,
        tables: GroupoidTables,
    ) -> Result<Self, GroupoidError> {
        check_weights(&weights, mode)?;
        let n = tables.range.len();
        let m = weights.len();
        if tables.source.len() != n || tables.inverse.len() != n {
            return Err(GroupoidError::Shape(
                "range, source and inverse tables must have equal length".into(),
            ));
        }
        if tables.unit_arrow.len() != m {
            return Err(GroupoidError::Shape(format!(
                "{} unit arrows for {} units",
                tables.unit_arrow.len(),
                m
            )));
        }
        let oob = |what: &str, v: u32, bound: usize| -> Result<(), GroupoidError> {
            if v as usize >= bound {
                Err(GroupoidError::OutOfBounds(format!("{what} = {v} (bound {bound})")))
            } else {
                Ok(())
            }
        };
        for i in 0..n {
            oob("range", tables.range[i], m)?;
            oob("source", tables.source[i], m)?;
            oob("inverse", tables.inverse[i], n)?;
        }
        for &u in &tables.unit_arrow {
            oob("unit arrow", u, n)?;
        }
        let mut compose = vec![NONE; n * n];
        for &(g, h, gh) in &tables.products {
            oob("product operand", g, n)?;
            oob("product operand", h, n)?;
            oob("product", gh, n)?;
            compose[g as usize * n + h as usize] = gh;
        }
        let labels = if tables.labels.len() == n {
            tables.labels
        } else {
            (0..n).map(|i| format!("g{i}")).collect()
        };
        let mut by_range = vec![Vec::new(); m];
        let mut by_source = vec![Vec::new(); m];
        for i in 0..n {
            by_range[tables.range[i] as usize].push(ArrowId(i as u32));
            by_source[tables.source[i] as usize].push(ArrowId(i as u32));
        }
        Ok(FiniteGroupoid {
            weights,
            mode,
            range: tables.range,
            source: tables.source,
            inverse: tables.inverse,
            unit_arrow: tables.unit_arrow,
            compose,
            labels,
            by_range,
            by_source,
        })
    }

    /// Like [`FiniteGroupoid::from_tables`] but rejects tables that fail any axiom.
    pub fn new_checked(
        weights: Vec<Rational>,
        mode: MeasureMode,
        tables: GroupoidTables,
    ) -> Result<Self, GroupoidError> {
        let g = Self::from_tables(weights, mode, tables)?;
        let v = g.validate();
        if let Some(first) = v.first() {
            return Err(GroupoidError::Invalid(v.len(), first.clone()));
        }
        Ok(g)
    }

    pub fn n_units(&self) -> usize {
        self.weights.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.range.len()
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.n_arrows() as u32).map(ArrowId)
    }

    pub fn units(&self) -> impl Iterator<Item = UnitId> {
        (0..self.n_units() as u32).map(UnitId)
    }

    pub fn range(&self, g: ArrowId) -> UnitId {
        UnitId(self.range[g.idx()])
    }

    pub fn source(&self, g: ArrowId) -> UnitId {
        UnitId(self.source[g.idx()])
    }

    pub fn inverse(&self, g: ArrowId) -> ArrowId {
        ArrowId(self.inverse[g.idx()])
    }

    pub fn unit(&self, x: UnitId) -> ArrowId {
        ArrowId(self.unit_arrow[x.idx()])
    }

    pub fn is_unit(&self, g: ArrowId) -> bool {
        self.unit(self.range(g)) == g
    }

    /// The composite `gh`, defined when `s(g) = r(h)`.
    pub fn compose(&self, g: ArrowId, h: ArrowId) -> Option<ArrowId> {
        let c = self.compose[g.idx() * self.n_arrows() + h.idx()];
        (c != NONE).then_some(ArrowId(c))
    }

    /// The composite `gh`; panics when `s(g) != r(h)`.
    pub fn mul(&self, g: ArrowId, h: ArrowId) -> ArrowId {
        self.compose(g, h)
            .unwrap_or_else(|| panic!("{g} and {h} are not composable"))
    }

    pub fn weight(&self, x: UnitId) -> &Rational {
        &self.weights[x.idx()]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn mode(&self) -> MeasureMode {
        self.mode
    }

    pub fn label(&self, g: ArrowId) -> &str {
        &self.labels[g.idx()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Arrows `g` with `r(g) = x`, i.e. the fiber `xG`.
    pub fn with_range(&self, x: UnitId) -> &[ArrowId] {
        &self.by_range[x.idx()]
    }

    pub fn with_source(&self, x: UnitId) -> &[ArrowId] {
        &self.by_source[x.idx()]
    }

    pub fn isotropy(&self, x: UnitId) -> Vec<ArrowId> {
        self.with_range(x)
            .iter()
            .copied()
            .filter(|&g| self.source(g) == x)
            .collect()
    }

    /// Arrow from `x` to `y` of least index, if any (`r = x`, `s = y`).
    pub fn arrow_between(&self, x: UnitId, y: UnitId) -> Option<ArrowId> {
        self.with_range(x).iter().copied().find(|&g| self.source(g) == y)
    }

    /// Orbits as sorted unit lists, ordered by least member.
    pub fn orbits(&self) -> Vec<Vec<UnitId>> {
        let mut seen = vec![false; self.n_units()];
        let mut out = Vec::new();
        for x in self.units() {
            if seen[x.idx()] {
                continue;
            }
            let mut orbit: Vec<UnitId> = self.with_range(x).iter().map(|&g| self.source(g)).collect();
            orbit.sort();
            orbit.dedup();
            for y in &orbit {
                seen[y.idx()] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn with_weights(&self, weights: Vec<Rational>, mode: MeasureMode) -> Result<Self, GroupoidError> {
        if weights.len() != self.n_units() {
            return Err(GroupoidError::Shape("weight vector length".into()));
        }
        check_weights(&weights, mode)?;
        let mut g = self.clone();
        g.weights = weights;
        g.mode = mode;
        Ok(g)
    }

    pub fn tables(&self) -> GroupoidTables {
        let n = self.n_arrows();
        let mut products = Vec::new();
        for g in 0..n {
            for h in 0..n {
                let c = self.compose[g * n + h];
                if c != NONE {
                    products.push((g as u32, h as u32, c));
                }
            }
        }
        GroupoidTables {
            range: self.range.clone(),
            source: self.source.clone(),
            inverse: self.inverse.clone(),
            unit_arrow: self.unit_arrow.clone(),
            products,
            labels: self.labels.clone(),
        }
    }

    /// Every axiom violation, with witnesses. Empty means the tables form a groupoid and the
    /// Radon-Nikodym cocycle is multiplicative on every composable pair.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.n_arrows();
        for x in self.units() {
            let e = self.unit(x);
            if self.range(e) != x || self.source(e) != x {
                out.push(Violation::UnitEndpoints { unit: x, arrow: e });
            }
        }
        for gi in 0..n {
            let g = ArrowId(gi as u32);
            for hi in 0..n {
                let h = ArrowId(hi as u32);
                let composable = self.source(g) == self.range(h);
                match (self.compose(g, h), composable) {
                    (Some(_), false) => out.push(Violation::ComposedNonComposable { g, h }),
                    (None, true) => out.push(Violation::MissingComposite { g, h }),
                    (Some(gh), true) => {
                        if self.range(gh) != self.range(g) || self.source(gh) != self.source(h) {
                            out.push(Violation::CompositeEndpoints { g, h, gh });
                        } else if radon_nikodym(self, gh) != radon_nikodym(self, g) * radon_nikodym(self, h) {
                            out.push(Violation::CocycleFails { g, h });
                        }
                    }
                    (None, false) => {}
                }
            }
        }
        if !out.is_empty() {
            // Later checks read composites that may be missing.
            return out;
        }
        for g in self.arrows() {
            let er = self.unit(self.range(g));
            let es = self.unit(self.source(g));
            if self.mul(er, g) != g || self.mul(g, es) != g {
                out.push(Violation::UnitNotNeutral { g });
            }
            let gi = self.inverse(g);
            if self.range(gi) != self.source(g) || self.source(gi) != self.range(g) {
                out.push(Violation::InverseEndpoints { g });
                continue;
            }
            if self.mul(g, gi) != er || self.mul(gi, g) != es {
                out.push(Violation::NotInverse { g });
            }
        }
        for g in self.arrows() {
            for &h in self.with_range(self.source(g)) {
                let gh = self.mul(g, h);
                for &k in self.with_range(self.source(h)) {
                    if self.mul(gh, k) != self.mul(g, self.mul(h, k)) {
                        out.push(Violation::NotAssociative { g, h, k });
                    }
                }
            }
        }
        out
    }

    /// True when the Radon-Nikodym cocycle is identically 1.
    pub fn is_pmp(&self) -> bool {
        self.arrows().all(|g| self.weight(self.range(g)) == self.weight(self.source(g)))
    }

    /// Units as a set.
    pub fn unit_set(&self) -> BTreeSet<UnitId> {
        self.units().collect()
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn unit_label(&self, x: UnitId) -> &str {
        self.label(self.unit(x))
    }
}
