use super::DescentData;
use crate::groupoid::{pair_groupoid, uniform_weights};
use crate::quotient::{build_quotient, is_normal, quotient_is_pmp, NormalityVerdict, QuotientError, Subgroupoid};
use crate::rational::format_rational;
use crate::report::Report;
use crate::{FiniteGroupoid, MeasureMode, UnitId};
use std::collections::BTreeSet;

/// Finite shadow of the descent instance: the full relation on the points of `Z- ⊔ Z+`
/// (minus points first) with uniform weights, and `S` relating points of one `sigma`-fiber
/// of the same sign. Its quotient has one unit per signed fiber.
pub fn descent_shadow(d: &DescentData) -> Result<(FiniteGroupoid, Subgroupoid), QuotientError> {
    let nm = d.sigma_minus.len();
    let n = nm + d.sigma_plus.len();
    let g = pair_groupoid(uniform_weights(n), MeasureMode::Probability);
    let class = |x: usize| if x < nm { (0, d.sigma_minus[x]) } else { (1, d.sigma_plus[x - nm]) };
    let s: BTreeSet<_> = g
        .arrows()
        .filter(|&a| class(g.range(a).idx()) == class(g.source(a).idx()))
        .collect();
    let s = Subgroupoid::new(&g, &s)?;
    Ok((g, s))
}

/// Runs the measure-preservation criterion on the shadow: the quotient is measure preserving,
/// both directly and through the witness search, exactly when `p = q`. The cocycle from plus
/// to minus fibers is `q/p`.
pub fn shadow_report(d: &DescentData) -> Result<Report, QuotientError> {
    let mut r = Report::new("descent-shadow");
    let (g, s) = descent_shadow(d)?;
    let NormalityVerdict::Normal { family, .. } = is_normal(&g, &s) else {
        return Err(QuotientError::BadModel("shadow subgroupoid is not normal".into()));
    };
    let qr = build_quotient(&g, &s, &family)?;
    let v = quotient_is_pmp(&g, &s, &qr)?;
    let nm = d.sigma_minus.len() as u32;
    let zp = qr.theta_units[nm as usize];
    let zm = qr.theta_units[0];
    let arrow = qr.q.arrow_between(UnitId(zp as u32), UnitId(zm as u32));
    let delta = arrow.map(|a| crate::groupoid::radon_nikodym(&qr.q, a));
    r.value("quotient-units", qr.q.n_units() as u64);
    if let Some(x) = &delta {
        r.value("cocycle-plus-to-minus", format_rational(x));
    }
    if d.p == d.q {
        r.check("shadow-pmp", "with p = q the quotient of the descent shadow is measure preserving", v.direct, "");
    } else {
        r.check("shadow-not-pmp", "the quotient of the descent shadow is not measure preserving", !v.direct, "");
    }
    r.check("pmp-criterion-agrees", "direct check and witness search agree", v.consistent(), "");
    r.check("shadow-cocycle", "the cocycle from plus to minus fibers is q/p", delta == Some(d.ratio()), "");
    Ok(r)
}
