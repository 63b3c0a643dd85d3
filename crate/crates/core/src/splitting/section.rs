use super::{product_decomposition, subgroup_table, CentralExtensionInstance, SplittingError};
use crate::group::translation_groupoid;
use crate::groupoid::{pair_groupoid, product, single_group, sub_groupoid, ArrowId, FiniteGroupoid, MeasureMode};
use crate::quotient::QuotientError;
use crate::rational::int;
use crate::report::Report;
use std::collections::BTreeSet;

/// The section `sigma(x, y) = (x, c_x c_y^-1)` where `c_x` is the least element carrying the
/// least point of the class of `x` to `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSection {
    /// `X ⋊ H`, arrow `(x, h)` at `x*|H| + h`.
    pub hx: FiniteGroupoid,
    /// Orbit equivalence relation of `H/E` on `X`.
    pub r: FiniteGroupoid,
    /// `R` arrow to its pair `(x, y)`.
    pub r_pairs: Vec<(usize, usize)>,
    /// `q(x, h) = (x, h^-1 x)`, per arrow of `X ⋊ H`.
    pub q: Vec<ArrowId>,
    /// Per arrow of `R`.
    pub sigma: Vec<ArrowId>,
    /// Least point of each class.
    pub transversal: Vec<usize>,
    /// `c_x` per point.
    pub lift: Vec<usize>,
}

pub fn build_section(inst: &CentralExtensionInstance) -> Result<SplitSection, SplittingError> {
    inst.check_structure()?;
    let a = &inst.action;
    let (n, order) = (a.n_points(), a.group.order());
    let weights = inst.weights();
    let mode = if weights.iter().sum::<crate::Rational>() == int(1) {
        MeasureMode::Probability
    } else {
        MeasureMode::SigmaFinite
    };
    let hx = translation_groupoid(a, Some(weights.clone()));
    let all: BTreeSet<usize> = (0..order).collect();
    let classes = a.orbits_of(&all);
    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let transversal: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let lift: Vec<usize> = (0..n)
        .map(|x| {
            let x0 = transversal[class_of[x]];
            (0..order).find(|&g| a.act(g, x0) == x).expect("x lies in the orbit of x0")
        })
        .collect();
    let pair = pair_groupoid(weights, mode);
    let kept: BTreeSet<ArrowId> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| class_of[x] == class_of[y])
        .map(|(x, y)| ArrowId((x * n + y) as u32))
        .collect();
    let (r, res) = sub_groupoid(&pair, &kept).map_err(QuotientError::from)?;
    let r_pairs: Vec<(usize, usize)> = res.arrows.iter().map(|p| (p.idx() / n, p.idx() % n)).collect();
    let q = hx
        .arrows()
        .map(|g| res.arrow_of[&ArrowId((hx.range(g).idx() * n + hx.source(g).idx()) as u32)])
        .collect();
    let sigma = r_pairs
        .iter()
        .map(|&(x, y)| ArrowId((x * order + a.group.mul(lift[x], a.group.inv(lift[y]))) as u32))
        .collect();
    Ok(SplitSection { hx, r, r_pairs, q, sigma, transversal, lift })
}

impl SplitSection {
    pub fn q(&self, g: ArrowId) -> ArrowId {
        self.q[g.idx()]
    }

    pub fn sigma(&self, g: ArrowId) -> ArrowId {
        self.sigma[g.idx()]
    }
}

pub fn section_report(sec: &SplitSection) -> Report {
    let mut rep = Report::new("split");
    let inverts: Vec<ArrowId> = sec.r.arrows().filter(|&g| sec.q(sec.sigma(g)) != g).collect();
    rep.check(
        "section-inverts-quotient-map",
        "q(sigma(g)) = g for every arrow of R",
        inverts.is_empty(),
        inverts.first().map(|g| format!("fails at {g}")).unwrap_or_default(),
    );
    let mut pairs = 0u64;
    let mut sigma_bad = None;
    for g in sec.r.arrows() {
        for &h in sec.r.with_range(sec.r.source(g)) {
            pairs += 1;
            if sigma_bad.is_none() && sec.hx.compose(sec.sigma(g), sec.sigma(h)) != Some(sec.sigma(sec.r.mul(g, h))) {
                sigma_bad = Some((g, h));
            }
        }
    }
    rep.check(
        "section-homomorphism",
        "sigma(gh) = sigma(g) sigma(h) for all composable pairs of R",
        sigma_bad.is_none(),
        sigma_bad.map(|(g, h)| format!("fails at {g}, {h}")).unwrap_or_default(),
    );
    let q_bad = sec.hx.arrows().find(|&g| {
        sec.hx
            .with_range(sec.hx.source(g))
            .iter()
            .any(|&h| sec.r.compose(sec.q(g), sec.q(h)) != Some(sec.q(sec.hx.mul(g, h))))
    });
    rep.check(
        "quotient-map-homomorphism",
        "q(x, h) = (x, h^-1 x) is a homomorphism",
        q_bad.is_none(),
        q_bad.map(|g| format!("fails at {g}")).unwrap_or_default(),
    );
    rep.value("r-arrows", sec.r.n_arrows());
    rep.value("r-composable-pairs", pairs);
    rep
}

/// Checks `R x E -> X ⋊ H`, `(g, a) -> sigma(g)(s(g), a)`, for bijectivity and multiplicativity.
/// Multiplicativity needs `E` central; the report records where it breaks otherwise.
pub fn product_map_report(inst: &CentralExtensionInstance, sec: &SplitSection) -> Report {
    let mut rep = Report::new("split");
    let h = inst.h();
    let order = h.order();
    let e_elems: Vec<usize> = inst.e.iter().copied().collect();
    let e_group = subgroup_table(h, &inst.e);
    let e_gpd = single_group(&e_group.table, &e_group.inverse);
    let re = product(&sec.r, &e_gpd);
    let ne = e_elems.len();
    let map: Vec<ArrowId> = re
        .arrows()
        .map(|ga| {
            let (g, a) = (ArrowId((ga.idx() / ne) as u32), ga.idx() % ne);
            let s = sec.sigma(g);
            let (x, c) = (s.idx() / order, s.idx() % order);
            ArrowId((x * order + h.mul(c, e_elems[a])) as u32)
        })
        .collect();
    let image: BTreeSet<ArrowId> = map.iter().copied().collect();
    rep.check(
        "product-map-bijective",
        "(g, a) -> sigma(g)(s(g), a) is a bijection R x E -> X ⋊ H",
        image.len() == re.n_arrows() && image.len() == sec.hx.n_arrows(),
        format!("{} of {} arrows hit", image.len(), sec.hx.n_arrows()),
    );
    let mut failures = 0u64;
    let mut first = None;
    for g in re.arrows() {
        for &k in re.with_range(re.source(g)) {
            if sec.hx.compose(map[g.idx()], map[k.idx()]) != Some(map[re.mul(g, k).idx()]) {
                failures += 1;
                first.get_or_insert((g, k));
            }
        }
    }
    rep.check(
        "product-map-homomorphism",
        "(g, a)(k, b) -> sigma(g)(s(g), a) sigma(k)(s(k), b) is multiplicative",
        failures == 0,
        first.map(|(g, k)| format!("{failures} failures, first at {g}, {k}")).unwrap_or_default(),
    );
    let central = inst.check_central();
    rep.check(
        "e-central",
        "E is central in H",
        central.is_ok(),
        central.err().map(|e| e.to_string()).unwrap_or_default(),
    );
    rep.value("product-map-failures", failures);
    rep
}

/// Section, product map and, when a cover is present and `E` is central, the decomposition.
pub fn split_report(inst: &CentralExtensionInstance) -> Result<Report, SplittingError> {
    let sec = build_section(inst)?;
    let mut rep = section_report(&sec);
    rep.extend(product_map_report(inst, &sec));
    if inst.cover.is_some() && inst.check_central().is_ok() {
        rep.extend(product_decomposition(inst)?.report());
    }
    Ok(rep)
}
