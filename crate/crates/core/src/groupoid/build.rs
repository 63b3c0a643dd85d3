//! Standard constructions: pair groupoids, groups, products and disjoint unions.

use super::{FiniteGroupoid, GroupoidTables, MeasureMode};
use crate::rational::{int, Rational};

pub fn uniform_weights(n: usize) -> Vec<Rational> {
    vec![Rational::new(1.into(), (n as i64).into()); n]
}

/// The full relation on `n` points: arrow `(x, y)` has index `x*n + y`, range `x`, source `y`.
pub fn pair_groupoid(weights: Vec<Rational>, mode: MeasureMode) -> FiniteGroupoid {
    let n = weights.len();
    let id = |x: usize, y: usize| (x * n + y) as u32;
    let mut t = GroupoidTables::default();
    for x in 0..n {
        for y in 0..n {
            t.range.push(x as u32);
            t.source.push(y as u32);
            t.inverse.push(id(y, x));
            t.labels.push(format!("({},{})", x, y));
            for z in 0..n {
                t.products.push((id(x, y), id(y, z), id(x, z)));
            }
        }
        t.unit_arrow.push(id(x, x));
    }
    FiniteGroupoid::from_tables(weights, mode, t).expect("pair groupoid tables are well formed")
}

/// A finite group given by its Cayley table, as a one-unit groupoid of weight 1.
/// Element 0 must be the identity.
pub fn single_group(table: &[Vec<usize>], inverses: &[usize]) -> FiniteGroupoid {
    let n = table.len();
    let mut t = GroupoidTables {
        range: vec![0; n],
        source: vec![0; n],
        inverse: inverses.iter().map(|&i| i as u32).collect(),
        unit_arrow: vec![0],
        ..Default::default()
    };
    for a in 0..n {
        t.labels.push(format!("e{a}"));
        for b in 0..n {
            t.products.push((a as u32, b as u32, table[a][b] as u32));
        }
    }
    FiniteGroupoid::from_tables(vec![int(1)], MeasureMode::Probability, t)
        .expect("group tables are well formed")
}

/// Product groupoid `G x H` with product weights. Arrow `(a, b)` has index `a*|H| + b`.
pub fn product(g: &FiniteGroupoid, h: &FiniteGroupoid) -> FiniteGroupoid {
    let nh = h.n_arrows();
    let uh = h.n_units();
    let id = |a: usize, b: usize| (a * nh + b) as u32;
    let uid = |x: usize, y: usize| (x * uh + y) as u32;
    let mut t = GroupoidTables::default();
    for a in g.arrows() {
        for b in h.arrows() {
            t.range.push(uid(g.range(a).idx(), h.range(b).idx()));
            t.source.push(uid(g.source(a).idx(), h.source(b).idx()));
            t.inverse.push(id(g.inverse(a).idx(), h.inverse(b).idx()));
            t.labels.push(format!("({},{})", g.label(a), h.label(b)));
            for &a2 in g.with_range(g.source(a)) {
                for &b2 in h.with_range(h.source(b)) {
                    t.products.push((
                        id(a.idx(), b.idx()),
                        id(a2.idx(), b2.idx()),
                        id(g.mul(a, a2).idx(), h.mul(b, b2).idx()),
                    ));
                }
            }
        }
    }
    let mut weights = Vec::new();
    for x in g.units() {
        for y in h.units() {
            t.unit_arrow.push(id(g.unit(x).idx(), h.unit(y).idx()));
            weights.push(g.weight(x) * h.weight(y));
        }
    }
    let mode = if g.mode() == MeasureMode::Probability && h.mode() == MeasureMode::Probability {
        MeasureMode::Probability
    } else {
        MeasureMode::SigmaFinite
    };
    FiniteGroupoid::from_tables(weights, mode, t).expect("product tables are well formed")
}

/// `G1 ⊔ G2` with weights scaled by `c1` and `c2`.
pub fn disjoint_union(
    g1: &FiniteGroupoid,
    c1: &Rational,
    g2: &FiniteGroupoid,
    c2: &Rational,
    mode: MeasureMode,
) -> Result<FiniteGroupoid, super::GroupoidError> {
    let (n1, u1) = (g1.n_arrows() as u32, g1.n_units() as u32);
    let mut t = g1.tables();
    let t2 = g2.tables();
    t.range.extend(t2.range.iter().map(|x| x + u1));
    t.source.extend(t2.source.iter().map(|x| x + u1));
    t.inverse.extend(t2.inverse.iter().map(|x| x + n1));
    t.unit_arrow.extend(t2.unit_arrow.iter().map(|x| x + n1));
    t.products
        .extend(t2.products.iter().map(|&(a, b, c)| (a + n1, b + n1, c + n1)));
    t.labels.extend(t2.labels.iter().cloned());
    let weights = g1
        .weights()
        .iter()
        .map(|w| w * c1)
        .chain(g2.weights().iter().map(|w| w * c2))
        .collect();
    FiniteGroupoid::from_tables(weights, mode, t)
}
