use super::normality::ChoiceFamily;
use super::subgroupoid::Subgroupoid;
use super::QuotientError;
use crate::groupoid::{ArrowId, FiniteGroupoid, GroupoidTables, MeasureMode, UnitId};
use crate::rational::Rational;
use std::collections::{BTreeMap, BTreeSet};

/// The quotient `Q = G/S` realised as pairs `(z, j)` with `z` an S-orbit and `j` a family index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub q: FiniteGroupoid,
    /// Unit `x` of `G` to its S-orbit `z`.
    pub theta_units: Vec<usize>,
    /// Arrow `g` of `G` to its image in `Q`.
    pub theta: Vec<ArrowId>,
    pub family: ChoiceFamily,
    /// Indices `j` with `phi_j` defined on orbit `z`.
    pub j_sets: Vec<Vec<usize>>,
    /// `(z, j) -> Phi_j(z)`, the orbit of `s(x phi_j)`.
    pub phi: BTreeMap<(usize, usize), usize>,
    /// `(z, j, k) -> j *_z k`.
    pub star: BTreeMap<(usize, usize, usize), usize>,
    /// `i_z`, the index whose section value is S-equivalent to the unit.
    pub unit_index: Vec<usize>,
    /// `(z, j) -> kappa_z(j)`, so that `(z, j)^-1 = (Phi_j(z), kappa_z(j))`.
    pub kappa: BTreeMap<(usize, usize), usize>,
    pub arrow_of: BTreeMap<(usize, usize), ArrowId>,
    /// `Q` arrow to its pair `(z, j)`.
    pub pair_of: Vec<(usize, usize)>,
}

fn agree<K: Ord + Copy + std::fmt::Debug>(
    map: &mut BTreeMap<K, usize>,
    key: K,
    value: usize,
    what: &str,
) -> Result<(), QuotientError> {
    match map.insert(key, value) {
        Some(old) if old != value => Err(QuotientError::Inconsistent(format!(
            "{what} at {key:?}: {old} vs {value}"
        ))),
        _ => Ok(()),
    }
}

pub fn build_quotient(
    g: &FiniteGroupoid,
    s: &Subgroupoid,
    family: &ChoiceFamily,
) -> Result<QuotientResult, QuotientError> {
    family.validate(g, s)?;
    let secs = &family.sections;
    let z_of: Vec<usize> = g.units().map(|x| s.orbit(x)).collect();
    let nz = s.n_orbits();
    // Family index of the class of each arrow.
    let mut j_of = vec![usize::MAX; g.n_arrows()];
    for x in g.units() {
        let mut by_class = vec![0; s.index_at(x)];
        for (j, sec) in secs.iter().enumerate() {
            if let Some(a) = sec[x.idx()] {
                by_class[s.class(a)] = j;
            }
        }
        for &a in g.with_range(x) {
            j_of[a.idx()] = by_class[s.class(a)];
        }
    }
    let mut j_sets = vec![BTreeSet::new(); nz];
    let mut phi = BTreeMap::new();
    let mut star = BTreeMap::new();
    let mut kappa = BTreeMap::new();
    let mut unit_index = BTreeMap::new();
    for x in g.units() {
        let z = z_of[x.idx()];
        let js: BTreeSet<usize> = (0..secs.len()).filter(|&j| secs[j][x.idx()].is_some()).collect();
        if z_of.iter().position(|&w| w == z) == Some(x.idx()) {
            j_sets[z] = js.clone();
        } else if j_sets[z] != js {
            return Err(QuotientError::Inconsistent(format!("domains differ on orbit {z}")));
        }
        agree(&mut unit_index, z, j_of[g.unit(x).idx()], "unit index")?;
        for &j in &js {
            let a = secs[j][x.idx()].unwrap();
            let y = g.source(a);
            agree(&mut phi, (z, j), z_of[y.idx()], "Phi")?;
            agree(&mut kappa, (z, j), j_of[g.inverse(a).idx()], "inverse index")?;
            for k in 0..secs.len() {
                if let Some(b) = secs[k][y.idx()] {
                    agree(&mut star, (z, j, k), j_of[g.mul(a, b).idx()], "star")?;
                }
            }
        }
    }
    let j_sets: Vec<Vec<usize>> = j_sets.into_iter().map(|s| s.into_iter().collect()).collect();
    let mut arrow_of = BTreeMap::new();
    let mut pair_of = Vec::new();
    for (z, js) in j_sets.iter().enumerate() {
        for &j in js {
            arrow_of.insert((z, j), ArrowId(pair_of.len() as u32));
            pair_of.push((z, j));
        }
    }
    let mut t = GroupoidTables::default();
    for &(z, j) in &pair_of {
        let w = phi[&(z, j)];
        t.range.push(z as u32);
        t.source.push(w as u32);
        t.inverse.push(arrow_of[&(w, kappa[&(z, j)])].0);
        t.labels.push(format!("(z{z},{j})"));
        for &k in &j_sets[w] {
            t.products.push((arrow_of[&(z, j)].0, arrow_of[&(w, k)].0, arrow_of[&(z, star[&(z, j, k)])].0));
        }
    }
    let unit_index: Vec<usize> = (0..nz).map(|z| unit_index[&z]).collect();
    for (z, &i) in unit_index.iter().enumerate() {
        t.unit_arrow.push(arrow_of[&(z, i)].0);
    }
    let mut zeta = vec![Rational::from_integer(0.into()); nz];
    for x in g.units() {
        zeta[z_of[x.idx()]] += g.weight(x);
    }
    let mode = if g.mode() == MeasureMode::Probability {
        MeasureMode::Probability
    } else {
        MeasureMode::SigmaFinite
    };
    let q = FiniteGroupoid::from_tables(zeta, mode, t)?;
    let theta = g
        .arrows()
        .map(|a| arrow_of[&(z_of[g.range(a).idx()], j_of[a.idx()])])
        .collect();
    Ok(QuotientResult {
        q,
        theta_units: z_of,
        theta,
        family: family.clone(),
        j_sets,
        phi,
        star,
        unit_index,
        kappa,
        arrow_of,
        pair_of,
    })
}

/// Outcome of the structural checks on a quotient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuotientChecks {
    pub q_axioms: bool,
    pub homomorphism: bool,
    pub kernel_is_s: bool,
    pub class_surjective: bool,
    pub star_associative: bool,
    pub failures: Vec<String>,
}

impl QuotientChecks {
    pub fn all(&self) -> bool {
        self.q_axioms && self.homomorphism && self.kernel_is_s && self.class_surjective && self.star_associative
    }
}

impl QuotientResult {
    pub fn theta(&self, a: ArrowId) -> ArrowId {
        self.theta[a.idx()]
    }

    pub fn theta_unit(&self, x: UnitId) -> UnitId {
        UnitId(self.theta_units[x.idx()] as u32)
    }

    /// Checks axioms of `Q`, that `theta` is a homomorphism with kernel `S`, that it maps each
    /// fiber `xG` onto `theta(x)Q` with fibers the S-classes, and associativity of `*`.
    pub fn checks(&self, g: &FiniteGroupoid, s: &Subgroupoid) -> QuotientChecks {
        let mut c = QuotientChecks::default();
        let v = self.q.validate();
        c.q_axioms = v.is_empty();
        if let Some(first) = v.first() {
            c.failures.push(format!("quotient axioms: {first}"));
        }
        c.homomorphism = true;
        for a in g.arrows() {
            if self.q.range(self.theta(a)) != self.theta_unit(g.range(a))
                || self.q.source(self.theta(a)) != self.theta_unit(g.source(a))
            {
                c.homomorphism = false;
                c.failures.push(format!("theta moves endpoints of {a}"));
                break;
            }
            for &b in g.with_range(g.source(a)) {
                if self.q.compose(self.theta(a), self.theta(b)) != Some(self.theta(g.mul(a, b))) {
                    c.homomorphism = false;
                    c.failures.push(format!("theta not multiplicative at {a},{b}"));
                    break;
                }
            }
            if !c.homomorphism {
                break;
            }
        }
        c.kernel_is_s = g.arrows().all(|a| self.q.is_unit(self.theta(a)) == s.contains(a));
        if !c.kernel_is_s {
            c.failures.push("kernel of theta differs from S".into());
        }
        c.class_surjective = g.units().all(|x| {
            let img: BTreeSet<ArrowId> = g.with_range(x).iter().map(|&a| self.theta(a)).collect();
            let target: BTreeSet<ArrowId> = self.q.with_range(self.theta_unit(x)).iter().copied().collect();
            let fibers_are_classes = g.with_range(x).iter().all(|&a| {
                g.with_range(x)
                    .iter()
                    .all(|&b| (self.theta(a) == self.theta(b)) == s.equivalent(g, a, b))
            });
            img == target && fibers_are_classes
        });
        if !c.class_surjective {
            c.failures.push("theta is not class-surjective on some fiber".into());
        }
        c.star_associative = true;
        'outer: for (&(z, j, k), &jk) in &self.star {
            let w = self.phi[&(z, j)];
            let u = self.phi[&(w, k)];
            for &l in &self.j_sets[u] {
                let lhs = self.star[&(z, jk, l)];
                let rhs = self.star[&(z, j, self.star[&(w, k, l)])];
                if lhs != rhs {
                    c.star_associative = false;
                    c.failures.push(format!("star not associative at z{z}: {j},{k},{l}"));
                    break 'outer;
                }
            }
        }
        c
    }
}

/// Given a homomorphism `theta2: G -> Q2` (arrow images) killing `S`, returns the unique
/// `tau: Q -> Q2` with `tau o theta = theta2`.
pub fn universal_factor(
    qr: &QuotientResult,
    g: &FiniteGroupoid,
    s: &Subgroupoid,
    q2: &FiniteGroupoid,
    theta2: &[ArrowId],
) -> Result<Vec<ArrowId>, QuotientError> {
    for a in g.arrows() {
        for &b in g.with_range(g.source(a)) {
            if q2.compose(theta2[a.idx()], theta2[b.idx()]) != Some(theta2[g.mul(a, b).idx()]) {
                return Err(QuotientError::NotHomomorphism(a, b));
            }
        }
        if s.contains(a) && !q2.is_unit(theta2[a.idx()]) {
            return Err(QuotientError::DoesNotKill(a));
        }
    }
    let mut tau = vec![None; qr.q.n_arrows()];
    for a in g.arrows() {
        let slot = &mut tau[qr.theta(a).idx()];
        match slot {
            None => *slot = Some(theta2[a.idx()]),
            Some(b) if *b != theta2[a.idx()] => {
                return Err(QuotientError::Inconsistent(format!("factor not well defined at {a}")))
            }
            _ => {}
        }
    }
    let tau: Vec<ArrowId> = tau.into_iter().map(|t| t.expect("theta is onto")).collect();
    for a in qr.q.arrows() {
        for &b in qr.q.with_range(qr.q.source(a)) {
            if q2.compose(tau[a.idx()], tau[b.idx()]) != Some(tau[qr.q.mul(a, b).idx()]) {
                return Err(QuotientError::NotHomomorphism(a, b));
            }
        }
    }
    Ok(tau)
}
