use super::{build_section, subgroup_table, CentralExtensionInstance, SplittingError};
use crate::group::{translation_groupoid, FiniteGroupAction, Perm};
use crate::groupoid::{product, ArrowId, FiniteGroupoid, UnitId};
use crate::quotient::{build_quotient, is_normal, NormalityVerdict, QuotientResult, Subgroupoid};
use crate::rational::{format_rational, int};
use crate::report::Report;
use std::collections::BTreeSet;

/// `F = (theta, pi): (X x Y) ⋊ N -> ((X x Y) ⋊ N)/((X x Y) ⋊ E) x (Y ⋊ E)` with `Y = E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// `(X x Y) ⋊ N`, point `(x, y)` at `x*|E| + y`, arrow `(p, g)` at `p*|N| + g`.
    pub big: FiniteGroupoid,
    pub kernel: Subgroupoid,
    pub quotient: QuotientResult,
    /// `Y ⋊ E`, arrow `(y, b)` at `y*|E| + b`.
    pub y_e: FiniteGroupoid,
    pub target: FiniteGroupoid,
    pub pi: Vec<ArrowId>,
    pub f: Vec<ArrowId>,
}

pub fn product_decomposition(inst: &CentralExtensionInstance) -> Result<Decomposition, SplittingError> {
    inst.check()?;
    let cover = inst.check_cover()?;
    let sec = build_section(inst)?;
    let (hg, ng) = (inst.h(), &cover.group);
    let n_x = inst.action.n_points();
    let e_list: Vec<usize> = cover.e_copy.iter().copied().collect();
    let ne = e_list.len();
    let e_group = subgroup_table(ng, &cover.e_copy);
    let e_index = |a: usize| {
        e_list
            .iter()
            .position(|&b| cover.phi[b] == a)
            .expect("cocycle value lies in E because H/E acts freely")
    };
    let c = &sec.lift;
    let perms: Vec<Perm> = (0..ng.order())
        .map(|g| {
            let h = cover.phi[g];
            (0..n_x * ne)
                .map(|p| {
                    let (x, y) = (p / ne, p % ne);
                    let hx = inst.action.act(h, x);
                    let a = hg.mul(hg.mul(c[x], hg.inv(c[hx])), h);
                    hx * ne + e_group.mul(e_index(a), y)
                })
                .collect()
        })
        .collect();
    let action = FiniteGroupAction::new(ng.clone(), perms, n_x * ne)?;
    let ne_rat = int(ne as i64);
    let weights = inst
        .weights()
        .iter()
        .flat_map(|w| std::iter::repeat(w / &ne_rat).take(ne))
        .collect();
    let big = translation_groupoid(&action, Some(weights));
    let order = ng.order();
    let kernel_arrows: BTreeSet<ArrowId> = (0..n_x * ne)
        .flat_map(|p| e_list.iter().map(move |&g| ArrowId((p * order + g) as u32)))
        .collect();
    let kernel = Subgroupoid::new(&big, &kernel_arrows)?;
    let family = match is_normal(&big, &kernel) {
        NormalityVerdict::Normal { family, .. } => family,
        NormalityVerdict::NotNormal { .. } => return Err(SplittingError::NotNormal),
    };
    let quotient = build_quotient(&big, &kernel, &family)?;
    let e_action = FiniteGroupAction::new(
        e_group.clone(),
        (0..ne).map(|b| (0..ne).map(|y| e_group.mul(b, y)).collect()).collect(),
        ne,
    )?;
    let y_e = translation_groupoid(&e_action, None);
    let pi: Vec<ArrowId> = big
        .arrows()
        .map(|g| {
            let y = big.range(g).idx() % ne;
            let y_src = big.source(g).idx() % ne;
            ArrowId((y * ne + e_group.mul(y, e_group.inv(y_src))) as u32)
        })
        .collect();
    let target = product(&quotient.q, &y_e);
    let f = big
        .arrows()
        .map(|g| ArrowId((quotient.theta(g).idx() * y_e.n_arrows() + pi[g.idx()].idx()) as u32))
        .collect();
    Ok(Decomposition { big, kernel, quotient, y_e, target, pi, f })
}

fn first_non_multiplicative(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    map: &[ArrowId],
) -> Option<(ArrowId, ArrowId)> {
    src.arrows().find_map(|g| {
        src.with_range(src.source(g))
            .iter()
            .find(|&&h| dst.compose(map[g.idx()], map[h.idx()]) != Some(map[src.mul(g, h).idx()]))
            .map(|&h| (g, h))
    })
}

impl Decomposition {
    pub fn f(&self, g: ArrowId) -> ArrowId {
        self.f[g.idx()]
    }

    pub fn report(&self) -> Report {
        let mut rep = Report::new("split");
        let checks = self.quotient.checks(&self.big, &self.kernel);
        rep.check(
            "quotient-by-e-valid",
            "the quotient by the E-subgroupoid is a groupoid with kernel exactly E",
            checks.all(),
            checks.failures.join("; "),
        );
        let pi_bad = first_non_multiplicative(&self.big, &self.y_e, &self.pi);
        rep.check(
            "projection-homomorphism",
            "pi((x, y), g) = (y, p_Y(g^-1 (x, y))) is a homomorphism onto Y ⋊ E",
            pi_bad.is_none(),
            pi_bad.map(|(g, h)| format!("fails at {g}, {h}")).unwrap_or_default(),
        );
        let f_bad = first_non_multiplicative(&self.big, &self.target, &self.f);
        rep.check(
            "decomposition-homomorphism",
            "F = (theta, pi) is a homomorphism",
            f_bad.is_none(),
            f_bad.map(|(g, h)| format!("fails at {g}, {h}")).unwrap_or_default(),
        );
        let unit_bad = self.big.arrows().find(|&g| self.target.is_unit(self.f(g)) != self.big.is_unit(g));
        rep.check(
            "decomposition-unit-preimages",
            "F(g) is a unit exactly when g is a unit",
            unit_bad.is_none(),
            unit_bad.map(|g| format!("fails at {g}")).unwrap_or_default(),
        );
        let image: BTreeSet<ArrowId> = self.f.iter().copied().collect();
        rep.check(
            "decomposition-injective",
            "F is injective on arrows",
            image.len() == self.big.n_arrows(),
            format!("{} distinct images of {} arrows", image.len(), self.big.n_arrows()),
        );
        rep.check(
            "decomposition-surjective",
            "every arrow of the product is hit",
            image.len() == self.target.n_arrows(),
            format!("{} of {} hit", image.len(), self.target.n_arrows()),
        );
        let weight_bad = self.big.units().find(|&x| {
            let fx = self.target.range(self.f(self.big.unit(x)));
            self.target.weight(fx) != self.big.weight(x)
        });
        rep.check(
            "decomposition-measure",
            "F carries the product weights of X x Y to zeta x nu",
            weight_bad.is_none(),
            weight_bad.map(|x: UnitId| format!("fails at {x}")).unwrap_or_default(),
        );
        rep.value("decomposition-arrows", self.big.n_arrows());
        rep.value("quotient-by-e-arrows", self.quotient.q.n_arrows());
        rep.value("quotient-by-e-units", self.quotient.q.n_units());
        rep.value("quotient-by-e-total-weight", format_rational(&self.quotient.q.total_weight()));
        rep
    }
}
