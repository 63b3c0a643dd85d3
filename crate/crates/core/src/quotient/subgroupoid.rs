use super::QuotientError;
use crate::groupoid::{ArrowId, FiniteGroupoid, UnitId};
use std::collections::BTreeSet;

/// A wide subgroupoid `S` of a finite groupoid, with its equivalence relation on arrows:
/// `g ~ h` iff `r(g) = r(h)` and `h^-1 g` is in `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroupoid {
    member: Vec<bool>,
    /// Class index of each arrow within its range fiber, classes numbered by least arrow.
    class: Vec<u32>,
    /// Number of classes in each fiber `xG`.
    index: Vec<usize>,
    /// S-orbit of each unit, orbits numbered by least unit.
    orbit: Vec<usize>,
    n_orbits: usize,
}

impl Subgroupoid {
    pub fn new(g: &FiniteGroupoid, arrows: &BTreeSet<ArrowId>) -> Result<Self, QuotientError> {
        let mut member = vec![false; g.n_arrows()];
        for &a in arrows {
            if a.idx() >= g.n_arrows() {
                return Err(QuotientError::NotSubgroupoid(format!("{a} out of range")));
            }
            member[a.idx()] = true;
        }
        for x in g.units() {
            if !member[g.unit(x).idx()] {
                return Err(QuotientError::NotSubgroupoid(format!("unit of {x} missing")));
            }
        }
        for &a in arrows {
            if !member[g.inverse(a).idx()] {
                return Err(QuotientError::NotSubgroupoid(format!("inverse of {a} missing")));
            }
            for &b in g.with_range(g.source(a)) {
                if member[b.idx()] && !member[g.mul(a, b).idx()] {
                    return Err(QuotientError::NotSubgroupoid(format!("{a}*{b} missing")));
                }
            }
        }
        let mut class = vec![u32::MAX; g.n_arrows()];
        let mut index = vec![0; g.n_units()];
        for x in g.units() {
            let mut c = 0;
            for &a in g.with_range(x) {
                if class[a.idx()] != u32::MAX {
                    continue;
                }
                for &s in g.with_range(g.source(a)) {
                    if member[s.idx()] {
                        class[g.mul(a, s).idx()] = c;
                    }
                }
                c += 1;
            }
            index[x.idx()] = c as usize;
        }
        let mut orbit = vec![usize::MAX; g.n_units()];
        let mut n_orbits = 0;
        for x in g.units() {
            if orbit[x.idx()] != usize::MAX {
                continue;
            }
            for &a in g.with_range(x) {
                if member[a.idx()] {
                    orbit[g.source(a).idx()] = n_orbits;
                }
            }
            n_orbits += 1;
        }
        Ok(Subgroupoid { member, class, index, orbit, n_orbits })
    }

    /// The units alone.
    pub fn trivial(g: &FiniteGroupoid) -> Self {
        Self::new(g, &g.units().map(|x| g.unit(x)).collect()).expect("units form a subgroupoid")
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.member[a.idx()]
    }

    pub fn members(&self) -> BTreeSet<ArrowId> {
        (0..self.member.len())
            .filter(|&i| self.member[i])
            .map(|i| ArrowId(i as u32))
            .collect()
    }

    pub fn class(&self, a: ArrowId) -> usize {
        self.class[a.idx()] as usize
    }

    pub fn equivalent(&self, g: &FiniteGroupoid, a: ArrowId, b: ArrowId) -> bool {
        g.range(a) == g.range(b) && self.class(a) == self.class(b)
    }

    /// Number of S-classes in `xG`.
    pub fn index_at(&self, x: UnitId) -> usize {
        self.index[x.idx()]
    }

    pub fn index_function(&self) -> &[usize] {
        &self.index
    }

    pub fn orbit(&self, x: UnitId) -> usize {
        self.orbit[x.idx()]
    }

    pub fn n_orbits(&self) -> usize {
        self.n_orbits
    }

    pub fn orbit_members(&self, z: usize) -> Vec<UnitId> {
        (0..self.orbit.len())
            .filter(|&i| self.orbit[i] == z)
            .map(|i| UnitId(i as u32))
            .collect()
    }

    /// `S|_A`: arrows of `S` with both ends in `a`.
    pub fn restricted(&self, g: &FiniteGroupoid, a: &BTreeSet<UnitId>) -> BTreeSet<ArrowId> {
        a.iter()
            .flat_map(|&x| g.with_range(x).iter().copied())
            .filter(|&s| self.contains(s) && a.contains(&g.source(s)))
            .collect()
    }
}

/// Checks that an r-section (given per unit, `None` off its domain) is in `End(S)`: its domain is
/// S-invariant and `(r(s) phi)^-1 s (s(s) phi)` is in `S` for every `s` in `S` over the domain.
pub fn in_end(
    g: &FiniteGroupoid,
    s: &Subgroupoid,
    section: &[Option<ArrowId>],
    index: usize,
) -> Result<(), QuotientError> {
    for x in g.units() {
        if let Some(a) = section[x.idx()] {
            if g.range(a) != x {
                return Err(QuotientError::BadSection { section: index, unit: x });
            }
        }
    }
    for sigma in s.members() {
        let (r, so) = (g.range(sigma), g.source(sigma));
        match (section[r.idx()], section[so.idx()]) {
            (Some(pr), Some(ps)) => {
                let c = g.mul(g.mul(g.inverse(pr), sigma), ps);
                if !s.contains(c) {
                    return Err(QuotientError::NotInEnd { section: index, witness: sigma });
                }
            }
            (None, None) => {}
            (Some(_), None) => return Err(QuotientError::DomainNotInvariant { section: index, unit: so }),
            (None, Some(_)) => return Err(QuotientError::DomainNotInvariant { section: index, unit: r }),
        }
    }
    Ok(())
}

/// Exact test that a bisection `phi` lies in `[[G]]_S`: conjugation `s -> phi^-1 s phi` carries
/// `S|_{r(phi)}` onto `S|_{s(phi)}`.
pub fn conjugation_certifies(g: &FiniteGroupoid, s: &Subgroupoid, phi: &BTreeSet<ArrowId>) -> bool {
    let kind = crate::groupoid::classify(g, phi);
    if !kind.bisection() {
        return false;
    }
    let mut at = vec![None; g.n_units()];
    for &a in phi {
        at[g.range(a).idx()] = Some(a);
    }
    let r = crate::groupoid::range_set(g, phi);
    let src = crate::groupoid::source_set(g, phi);
    let image: BTreeSet<ArrowId> = s
        .restricted(g, &r)
        .into_iter()
        .map(|sigma| {
            let pr = at[g.range(sigma).idx()].unwrap();
            let ps = at[g.source(sigma).idx()].unwrap();
            g.mul(g.mul(g.inverse(pr), sigma), ps)
        })
        .collect();
    image == s.restricted(g, &src)
}
