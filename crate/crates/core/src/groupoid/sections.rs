//! Arrow subsets: sections, bisections, measures, restriction and saturation.

use super::{ArrowId, FiniteGroupoid, GroupoidError, GroupoidTables, MeasureMode, UnitId};
use crate::rational::Rational;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionKind {
    pub r_section: bool,
    pub s_section: bool,
}

impl SectionKind {
    pub fn bisection(self) -> bool {
        self.r_section && self.s_section
    }
}

pub fn classify(g: &FiniteGroupoid, set: &BTreeSet<ArrowId>) -> SectionKind {
    let mut rs = BTreeSet::new();
    let mut ss = BTreeSet::new();
    let mut r_ok = true;
    let mut s_ok = true;
    for &a in set {
        r_ok &= rs.insert(g.range(a));
        s_ok &= ss.insert(g.source(a));
    }
    SectionKind { r_section: r_ok, s_section: s_ok }
}

pub fn range_set(g: &FiniteGroupoid, set: &BTreeSet<ArrowId>) -> BTreeSet<UnitId> {
    set.iter().map(|&a| g.range(a)).collect()
}

pub fn source_set(g: &FiniteGroupoid, set: &BTreeSet<ArrowId>) -> BTreeSet<UnitId> {
    set.iter().map(|&a| g.source(a)).collect()
}

pub fn inverse_set(g: &FiniteGroupoid, set: &BTreeSet<ArrowId>) -> BTreeSet<ArrowId> {
    set.iter().map(|&a| g.inverse(a)).collect()
}

/// `AB = {ab : a in A, b in B, s(a) = r(b)}`.
pub fn bisection_product(
    g: &FiniteGroupoid,
    a: &BTreeSet<ArrowId>,
    b: &BTreeSet<ArrowId>,
) -> BTreeSet<ArrowId> {
    let mut out = BTreeSet::new();
    for &x in a {
        for &y in b {
            if let Some(xy) = g.compose(x, y) {
                out.insert(xy);
            }
        }
    }
    out
}

/// `mu^r(A) = sum over a in A of w(r(a))` (counting measure over units, weighted).
pub fn mu_r(g: &FiniteGroupoid, set: &BTreeSet<ArrowId>) -> Rational {
    set.iter().map(|&a| g.weight(g.range(a))).sum()
}

pub fn mu_s(g: &FiniteGroupoid, set: &BTreeSet<ArrowId>) -> Rational {
    set.iter().map(|&a| g.weight(g.source(a))).sum()
}

/// `Delta(g) = w(r(g)) / w(s(g))`.
pub fn radon_nikodym(g: &FiniteGroupoid, a: ArrowId) -> Rational {
    g.weight(g.range(a)) / g.weight(g.source(a))
}

/// `[A]_G`: every unit joined to a unit of `A` by some arrow.
pub fn saturate(g: &FiniteGroupoid, units: &BTreeSet<UnitId>) -> BTreeSet<UnitId> {
    units
        .iter()
        .flat_map(|&x| g.with_range(x).iter().map(|&a| g.source(a)))
        .collect()
}

/// Index maps of a restriction or sub-groupoid back into the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    /// New unit index -> parent unit.
    pub units: Vec<UnitId>,
    /// New arrow index -> parent arrow.
    pub arrows: Vec<ArrowId>,
    /// Parent arrow -> new arrow, when kept.
    pub arrow_of: BTreeMap<ArrowId, ArrowId>,
    pub unit_of: BTreeMap<UnitId, UnitId>,
}

fn induced(
    g: &FiniteGroupoid,
    units: Vec<UnitId>,
    arrows: Vec<ArrowId>,
    mode: MeasureMode,
) -> (FiniteGroupoid, Restriction) {
    let unit_of: BTreeMap<UnitId, UnitId> = units
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, UnitId(i as u32)))
        .collect();
    let arrow_of: BTreeMap<ArrowId, ArrowId> = arrows
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, ArrowId(i as u32)))
        .collect();
    let mut t = GroupoidTables::default();
    for &a in &arrows {
        t.range.push(unit_of[&g.range(a)].0);
        t.source.push(unit_of[&g.source(a)].0);
        t.inverse.push(arrow_of[&g.inverse(a)].0);
        t.labels.push(g.label(a).to_string());
    }
    for &x in &units {
        t.unit_arrow.push(arrow_of[&g.unit(x)].0);
    }
    for &a in &arrows {
        for &b in g.with_range(g.source(a)) {
            if let (Some(&nb), Some(ab)) = (arrow_of.get(&b), g.compose(a, b)) {
                t.products.push((arrow_of[&a].0, nb.0, arrow_of[&ab].0));
            }
        }
    }
    let weights = units.iter().map(|&x| g.weight(x).clone()).collect();
    let out = FiniteGroupoid::from_tables(weights, mode, t)
        .expect("induced tables inherit valid shapes");
    (out, Restriction { units, arrows, arrow_of, unit_of })
}

/// `G|_A` with weights kept as they are (not renormalised); mode becomes sigma-finite.
pub fn restrict(
    g: &FiniteGroupoid,
    units: &BTreeSet<UnitId>,
) -> Result<(FiniteGroupoid, Restriction), GroupoidError> {
    if units.is_empty() {
        return Err(GroupoidError::EmptyRestriction);
    }
    let arrows: Vec<ArrowId> = g
        .arrows()
        .filter(|&a| units.contains(&g.range(a)) && units.contains(&g.source(a)))
        .collect();
    Ok(induced(g, units.iter().copied().collect(), arrows, MeasureMode::SigmaFinite))
}

/// Wide sub-groupoid on the same units with the given arrows (units are added automatically).
pub fn sub_groupoid(
    g: &FiniteGroupoid,
    arrows: &BTreeSet<ArrowId>,
) -> Result<(FiniteGroupoid, Restriction), GroupoidError> {
    let mut set = arrows.clone();
    set.extend(g.units().map(|x| g.unit(x)));
    for &a in &set {
        if !set.contains(&g.inverse(a)) {
            return Err(GroupoidError::NotClosed(a));
        }
        for &b in g.with_range(g.source(a)) {
            if set.contains(&b) && !set.contains(&g.mul(a, b)) {
                return Err(GroupoidError::NotClosed(g.mul(a, b)));
            }
        }
    }
    Ok(induced(g, g.units().collect(), set.into_iter().collect(), g.mode()))
}
