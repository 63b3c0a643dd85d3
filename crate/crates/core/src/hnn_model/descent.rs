use super::HnnModelError;
use crate::rational::{format_rational, rat, Rational};
use crate::report::Report;
use serde::{Deserialize, Serialize};

/// Finite measured descent data `(Z, Z-, Z+, sigma-, sigma+, t)`. The gluing of slots is
/// stored in both directions: `t_forward: Z- -> Z+` and `t_backward: Z+ -> Z-`. They are
/// mutually inverse only when `p = q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentData {
    pub p: usize,
    pub q: usize,
    #[serde(with = "crate::rational::vec")]
    pub zeta: Vec<Rational>,
    #[serde(with = "crate::rational::vec")]
    pub zeta_minus: Vec<Rational>,
    #[serde(with = "crate::rational::vec")]
    pub zeta_plus: Vec<Rational>,
    pub sigma_minus: Vec<usize>,
    pub sigma_plus: Vec<usize>,
    pub t_forward: Vec<usize>,
    pub t_backward: Vec<usize>,
}

impl DescentData {
    /// Uniform data over `|Z| = n_types` points: point `z` of `Z` owns plus slots
    /// `z*q .. z*q + q` and minus slots `z*p .. z*p + p`. Slot `k` is glued to slot `k + shift`
    /// of the other kind (mod size), so `shift` moves between types when `n_types > 1`.
    pub fn uniform(p: usize, q: usize, n_types: usize, shift: usize) -> Result<Self, HnnModelError> {
        if p == 0 || q == 0 || n_types == 0 {
            return Err(HnnModelError::BadDescent("p, q and |Z| must be positive".into()));
        }
        let n = n_types as i64;
        let zeta = vec![rat(1, n); n_types];
        let zeta_minus = vec![rat(1, n * p as i64); n_types * p];
        let zeta_plus = vec![rat(1, n * q as i64); n_types * q];
        let sigma_minus = (0..n_types * p).map(|v| v / p).collect();
        let sigma_plus = (0..n_types * q).map(|u| u / q).collect();
        let t_forward = (0..n_types * p).map(|v| (v + shift) % (n_types * q)).collect();
        let t_backward = (0..n_types * q).map(|u| (u + shift) % (n_types * p)).collect();
        let d = DescentData { p, q, zeta, zeta_minus, zeta_plus, sigma_minus, sigma_plus, t_forward, t_backward };
        d.check()?;
        Ok(d)
    }

    /// The ergodic case `|Z| = 1`.
    pub fn single(p: usize, q: usize) -> Result<Self, HnnModelError> {
        Self::uniform(p, q, 1, 0)
    }

    pub fn n_types(&self) -> usize {
        self.zeta.len()
    }

    /// `q / p`, the modular value of `t`.
    pub fn ratio(&self) -> Rational {
        rat(self.q as i64, self.p as i64)
    }

    /// Plus slots (points of `Z+`) over `z`, ascending.
    pub fn plus_slots(&self, z: usize) -> Vec<usize> {
        (0..self.sigma_plus.len()).filter(|&u| self.sigma_plus[u] == z).collect()
    }

    pub fn minus_slots(&self, z: usize) -> Vec<usize> {
        (0..self.sigma_minus.len()).filter(|&v| self.sigma_minus[v] == z).collect()
    }

    /// Runs [`validate_descent`] and turns the first failure into an error.
    pub fn check(&self) -> Result<(), HnnModelError> {
        let r = validate_descent(self);
        match r.failures().first() {
            None => Ok(()),
            Some(a) => Err(HnnModelError::BadDescent(format!("{}: {}", a.statement, a.detail))),
        }
    }
}

/// Checks fiber sizes, weight laws and the gluing maps exactly.
pub fn validate_descent(d: &DescentData) -> Report {
    let mut r = Report::new("descent-data");
    let nz = d.n_types();
    let shapes = d.zeta_minus.len() == d.sigma_minus.len()
        && d.zeta_plus.len() == d.sigma_plus.len()
        && d.t_forward.len() == d.sigma_minus.len()
        && d.t_backward.len() == d.sigma_plus.len()
        && d.sigma_minus.iter().chain(&d.sigma_plus).all(|&z| z < nz)
        && d.t_forward.iter().all(|&u| u < d.sigma_plus.len())
        && d.t_backward.iter().all(|&v| v < d.sigma_minus.len());
    r.check("descent-shapes", "table lengths agree and every index is in range", shapes, "");
    if !shapes {
        return r;
    }
    let total: Rational = d.zeta.iter().sum();
    let positive = d.zeta.iter().chain(&d.zeta_minus).chain(&d.zeta_plus).all(|w| *w > rat(0, 1));
    r.check("descent-weights-positive", "all weights are positive", positive, "");
    r.check("descent-probability", "zeta is a probability vector", total == rat(1, 1), format_rational(&total));
    let bad_plus = (0..nz).find(|&z| d.plus_slots(z).len() != d.q);
    let bad_minus = (0..nz).find(|&z| d.minus_slots(z).len() != d.p);
    r.check(
        "descent-fiber-sizes",
        "every fiber of sigma+ has q points and every fiber of sigma- has p points",
        bad_plus.is_none() && bad_minus.is_none(),
        match (bad_plus, bad_minus) {
            (Some(z), _) => format!("sigma+ fiber over z{z}"),
            (_, Some(z)) => format!("sigma- fiber over z{z}"),
            _ => String::new(),
        },
    );
    let q = rat(d.q as i64, 1);
    let p = rat(d.p as i64, 1);
    let wp = (0..d.zeta_plus.len()).find(|&u| &d.zeta_plus[u] * &q != d.zeta[d.sigma_plus[u]]);
    let wm = (0..d.zeta_minus.len()).find(|&v| &d.zeta_minus[v] * &p != d.zeta[d.sigma_minus[v]]);
    r.check(
        "descent-fiber-weights",
        "zeta+(u) = zeta(sigma+ u)/q and zeta-(v) = zeta(sigma- v)/p",
        wp.is_none() && wm.is_none(),
        match (wp, wm) {
            (Some(u), _) => format!("plus point {u}"),
            (_, Some(v)) => format!("minus point {v}"),
            _ => String::new(),
        },
    );
    if d.p == d.q {
        let inverse = (0..d.t_forward.len()).all(|v| d.t_backward[d.t_forward[v]] == v);
        let preserving = (0..d.t_forward.len()).all(|v| d.zeta_plus[d.t_forward[v]] == d.zeta_minus[v]);
        r.check(
            "descent-gluing-measure-preserving",
            "for p = q the gluing is a measure-preserving bijection Z- -> Z+",
            inverse && preserving,
            "",
        );
    }
    r
}
