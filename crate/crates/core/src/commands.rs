//! The verification suites behind each command of the `hnntree` tool, as pure functions of an
//! instance and a configuration.

use crate::group::HnnPresentation;
use crate::graph::rooted_isomorphic;
use crate::groupoid::Violation;
use crate::hnn_model::{
    cost_of_phi, cost_series_truncated, degree_violations, fiber_ball, maharam_report, shadow_report,
    unit_word_check, validate_descent, DescentData, HnnModelError,
};
use crate::instance::{GroupoidSpec, Instance, InstanceError};
use crate::quotient::{
    build_quotient, find_isomorphism, is_normal, normality_property_suite, quotient_is_pmp, NormalityVerdict,
    Subgroupoid, SuiteInput,
};
use crate::rational::format_rational;
use crate::report::Report;
use crate::splitting::split_report;
use crate::treeing::{induce_treeing, induction_dot, is_treeing, verify_induction};
use crate::FiniteGroupoid;
use serde_json::json;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Quotient,
    Induce,
    Hnn,
    Split,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Quotient => "quotient",
            Command::Induce => "induce",
            Command::Hnn => "hnn",
            Command::Split => "split",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub radius_word: usize,
    pub radius_level: usize,
    pub seed: u64,
    /// Bound on arrows of loaded groupoids and on vertices of enumerated balls.
    pub max_arrows: usize,
    /// Overrides for `hnn` when no instance is given.
    pub p: Option<usize>,
    pub q: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { radius_word: 3, radius_level: 3, seed: 0, max_arrows: 100_000, p: None, q: None }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CommandError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
}

impl From<InstanceError> for CommandError {
    fn from(e: InstanceError) -> Self {
        CommandError::Input(e.to_string())
    }
}

impl From<HnnModelError> for CommandError {
    fn from(e: HnnModelError) -> Self {
        match e {
            HnnModelError::BallTooLarge(_) | HnnModelError::Uncertified(_) => CommandError::Resource(e.to_string()),
            other => CommandError::Input(other.to_string()),
        }
    }
}

fn input(e: impl ToString) -> CommandError {
    CommandError::Input(e.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub report: Report,
    /// Graphviz rendering, when the command has one.
    pub dot: Option<String>,
    /// Extra files by name.
    pub artifacts: BTreeMap<String, String>,
}

impl Output {
    fn new(report: Report) -> Self {
        Output { report, dot: None, artifacts: BTreeMap::new() }
    }
}

pub fn run_command(cmd: Command, inst: Option<&Instance>, cfg: &RunConfig) -> Result<Output, CommandError> {
    let mut out = match cmd {
        Command::Check => check(need(inst)?, cfg)?,
        Command::Quotient => quotient(need(inst)?, cfg)?,
        Command::Induce => induce(need(inst)?, cfg)?,
        Command::Hnn => hnn(inst, cfg)?,
        Command::Split => split(need(inst)?)?,
    };
    out.report.command = cmd.name().to_string();
    if let Some(i) = inst {
        out.report.value("instance-kind", i.kind());
    }
    Ok(out)
}

fn need(inst: Option<&Instance>) -> Result<&Instance, CommandError> {
    inst.ok_or_else(|| input("--instance is required for this command"))
}

fn load_groupoid(spec: &GroupoidSpec, cfg: &RunConfig) -> Result<FiniteGroupoid, CommandError> {
    let g = spec.build()?;
    if g.n_arrows() > cfg.max_arrows {
        return Err(CommandError::Resource(format!("{} arrows, bound {}", g.n_arrows(), cfg.max_arrows)));
    }
    Ok(g)
}

/// Axioms and the multiplicativity of the Radon-Nikodym cocycle.
pub fn groupoid_report(g: &FiniteGroupoid) -> Report {
    let mut r = Report::new("groupoid");
    let v = g.validate();
    let (cocycle, axioms): (Vec<&Violation>, Vec<&Violation>) =
        v.iter().partition(|x| matches!(x, Violation::CocycleFails { .. }));
    r.check(
        "groupoid-axioms",
        "composition, units and inverses satisfy the groupoid axioms",
        axioms.is_empty(),
        axioms.first().map(|x| format!("{} violations, first: {x}", axioms.len())).unwrap_or_default(),
    );
    r.check(
        "cocycle-multiplicative",
        "Delta(gh) = Delta(g) Delta(h) on every composable pair",
        cocycle.is_empty(),
        cocycle.first().map(|x| x.to_string()).unwrap_or_default(),
    );
    r.value("units", g.n_units());
    r.value("arrows", g.n_arrows());
    r.value("measure-preserving", g.is_pmp());
    r
}

fn random_suite(cfg: &RunConfig) -> Report {
    let mut r = Report::new("random");
    let mut rng = crate::random::rng(cfg.seed);
    let bound = cfg.max_arrows.min(200);
    let mut bad = Vec::new();
    let n = 16;
    for i in 0..n {
        let g = crate::random::random_groupoid(&mut rng, bound);
        if !g.validate().is_empty() {
            bad.push(i);
        }
    }
    r.check(
        "random-groupoids-valid",
        "seeded random groupoids satisfy the axioms and the cocycle identity",
        bad.is_empty(),
        if bad.is_empty() { format!("{n} instances, seed {}", cfg.seed) } else { format!("failing: {bad:?}") },
    );
    r
}

fn check(inst: &Instance, cfg: &RunConfig) -> Result<Output, CommandError> {
    let mut r = Report::new("check");
    match inst {
        Instance::Groupoid { groupoid } => {
            r.extend(groupoid_report(&load_groupoid(groupoid, cfg)?));
            r.extend(random_suite(cfg));
        }
        Instance::Quotient { groupoid, .. } => {
            let g = load_groupoid(groupoid, cfg)?;
            r.extend(groupoid_report(&g));
            let s = Subgroupoid::new(&g, &inst.subgroupoid_arrows(&g)?).map_err(input)?;
            r.extend(normality_property_suite(&g, &s, &SuiteInput::default()));
        }
        Instance::Treeing { groupoid, .. } => {
            let g = load_groupoid(groupoid, cfg)?;
            r.extend(groupoid_report(&g));
            let (g, psi, y) = inst.treeing()?;
            r.check("graphing-is-treeing", "the oriented graphing is a treeing", is_treeing(&g, &psi.psi(&g)), "");
            match induce_treeing(&g, &psi, &y) {
                Ok(ind) => r.extend(verify_induction(&g, &psi, &ind)),
                Err(e) => {
                    r.check("induction-defined", "the induced treeing can be computed", false, e.to_string());
                }
            }
        }
        Instance::Descent { .. } | Instance::DescentData { .. } => {
            let d = inst.descent()?;
            r.extend(validate_descent(&d));
            r.extend(degree_law(&d, cfg)?);
            r.extend(unit_word_check(&d, 2 * cfg.radius_word, presentation(&d).as_ref())?);
        }
        Instance::Split { .. } => {
            let c = inst.central_extension()?;
            let hyp = c.check();
            r.check(
                "extension-hypotheses",
                "E is a central subgroup acting trivially, H/E acts freely, phi is onto and injective on E",
                hyp.is_ok(),
                hyp.err().map(|e| e.to_string()).unwrap_or_default(),
            );
        }
    }
    Ok(Output::new(r))
}

fn quotient(inst: &Instance, cfg: &RunConfig) -> Result<Output, CommandError> {
    let Instance::Quotient { groupoid, .. } = inst else {
        return Err(input("quotient needs a quotient instance"));
    };
    let g = load_groupoid(groupoid, cfg)?;
    let mut r = Report::new("quotient");
    let s = Subgroupoid::new(&g, &inst.subgroupoid_arrows(&g)?).map_err(input)?;
    let family = match is_normal(&g, &s) {
        NormalityVerdict::Normal { family, searched } => {
            r.check("subgroupoid-normal", "S is normal in G", true, format!("{searched} singleton bisections searched"));
            family
        }
        NormalityVerdict::NotNormal { g: a, sigma, .. } => {
            r.check("subgroupoid-normal", "S is normal in G", false, format!("{a}^-1 {sigma} {a} leaves S"));
            return Ok(Output::new(r));
        }
    };
    let qr = build_quotient(&g, &s, &family).map_err(input)?;
    let c = qr.checks(&g, &s);
    r.check("quotient-axioms", "Q satisfies the groupoid axioms", c.q_axioms, "");
    r.check("theta-homomorphism", "theta: G -> Q is a homomorphism", c.homomorphism, "");
    r.check("kernel-is-s", "the kernel of theta is exactly S", c.kernel_is_s, "");
    r.check("theta-class-surjective", "theta maps each fiber onto its image fiber with fibers the S-classes", c.class_surjective, "");
    r.check("star-associative", "the index product * is associative", c.star_associative, "");
    if g.is_pmp() {
        let v = quotient_is_pmp(&g, &s, &qr).map_err(input)?;
        r.check(
            "pmp-criterion-agrees",
            "Q is measure preserving exactly when covering bisections in the S-normaliser exist",
            v.consistent(),
            format!("direct {}, witness {}", v.direct, v.witness.is_some()),
        );
        r.value("quotient-measure-preserving", v.direct);
    }
    if let (Some(a), Instance::Quotient { subgroupoid: crate::instance::SubgroupoidSpec::GroupElements { elements }, .. }) =
        (groupoid.action()?, inst)
    {
        let h = elements.iter().copied().collect();
        if a.group.is_normal(&h) {
            let case = crate::fixtures::QuotientCase { name: String::new(), action: a, h };
            let iso = find_isomorphism(&qr.q, &case.model(), true, cfg.max_arrows.max(1) * 100).map_err(input)?;
            r.check("matches-group-side-model", "Q is isomorphic to (X/H) ⋊ (G/H) with pushed-forward weights", iso.is_some(), "");
        }
    }
    r.value("quotient-units", qr.q.n_units());
    r.value("quotient-arrows", qr.q.n_arrows());
    r.value("index", json!(s.index_function()));
    let mut out = Output::new(r);
    let file = json!({
        "kind": "quotient-result",
        "quotient": GroupoidSpec::tables_of(&qr.q),
        "theta": qr.theta.iter().map(|a| a.0).collect::<Vec<_>>(),
        "theta_units": qr.theta_units,
        "pairs": qr.pair_of,
        "total_weight": format_rational(&qr.q.total_weight()),
    });
    out.artifacts.insert("quotient-result.json".into(), format!("{}\n", serde_json::to_string_pretty(&file).unwrap()));
    out.dot = Some(orbit_dot(&qr.q));
    Ok(out)
}

fn orbit_dot(q: &FiniteGroupoid) -> String {
    let mut s = String::from("digraph quotient {\n");
    for x in q.units() {
        s.push_str(&format!("  u{} [label=\"{}\"];\n", x.0, format_rational(q.weight(x))));
    }
    for a in q.arrows().filter(|&a| !q.is_unit(a)) {
        s.push_str(&format!("  u{} -> u{} [label=\"{}\"];\n", q.source(a).0, q.range(a).0, q.label(a)));
    }
    s.push_str("}\n");
    s
}

fn induce(inst: &Instance, cfg: &RunConfig) -> Result<Output, CommandError> {
    if let Some(spec) = inst.groupoid_spec() {
        load_groupoid(spec, cfg)?;
    }
    let (g, psi, y) = inst.treeing()?;
    let ind = induce_treeing(&g, &psi, &y).map_err(input)?;
    let mut out = Output::new(verify_induction(&g, &psi, &ind));
    out.dot = Some(induction_dot(&g, &psi, &ind));
    Ok(out)
}

fn presentation(d: &DescentData) -> Option<HnnPresentation> {
    (d.n_types() == 1)
        .then(|| HnnPresentation::baumslag_solitar(d.p as i64, d.q as i64).ok())
        .flatten()
}

fn degree_law(d: &DescentData, cfg: &RunConfig) -> Result<Report, CommandError> {
    let mut r = Report::new("degree");
    let mut bad = Vec::new();
    for z in 0..d.n_types() {
        let ball = fiber_ball(d, z, cfg.radius_word, cfg.max_arrows)?;
        if !degree_violations(d, &ball, cfg.radius_word).is_empty() || !ball.is_tree() {
            bad.push(z);
        }
    }
    r.check(
        "degree-law",
        "every interior vertex of every fiber ball has out-degree q and in-degree p",
        bad.is_empty(),
        if bad.is_empty() { format!("radius {}", cfg.radius_word) } else { format!("fails over {bad:?}") },
    );
    Ok(r)
}

fn hnn(inst: Option<&Instance>, cfg: &RunConfig) -> Result<Output, CommandError> {
    let d = match (inst, cfg.p, cfg.q) {
        (Some(i), None, None) => i.descent()?,
        (None, Some(p), Some(q)) => DescentData::single(p, q)?,
        (None, None, None) => DescentData::single(2, 3)?,
        _ => return Err(input("give either --instance or both --p and --q")),
    };
    let mut r = Report::new("hnn");
    r.extend(validate_descent(&d));
    r.value("p", d.p);
    r.value("q", d.q);
    let pres = presentation(&d);
    let mut sizes = Vec::new();
    let mut iso = true;
    for rad in 0..=cfg.radius_word {
        let ball = fiber_ball(&d, 0, rad, cfg.max_arrows)?;
        if let Some(p) = &pres {
            let bs = crate::group::bass_serre_ball(p, rad, cfg.max_arrows)
                .map_err(|e| CommandError::Resource(e.to_string()))?;
            iso &= rooted_isomorphic(&ball, &bs);
        }
        sizes.push(ball.n_vertices());
    }
    if pres.is_some() {
        r.check(
            "fiber-ball-matches-bass-serre",
            "the fiber ball is isomorphic to the Bass-Serre ball at every radius",
            iso,
            format!("radii 0..={}", cfg.radius_word),
        );
    }
    r.value("ball-sizes", json!(sizes));
    r.value("ball-size", *sizes.last().unwrap());
    r.extend(degree_law(&d, cfg)?);
    r.extend(unit_word_check(&d, 2 * cfg.radius_word, pres.as_ref())?);
    r.value("cost-of-phi", format_rational(&cost_of_phi(&d)?));
    let mut out = Output::new(Report::new("hnn"));
    if d.p == d.q {
        r.value("maharam", "degenerate: the cocycle is trivial");
    } else {
        let (m, theta) = maharam_report(&d, cfg.radius_word, cfg.radius_level)?;
        r.extend(m);
        let series = cost_series_truncated(&d, cfg.radius_level)?;
        r.check(
            "cost-series-enumeration",
            "the truncated cost series equals the count of inward germs at the roots",
            series.closed_form == series.enumerated,
            format!("levels up to {}", cfg.radius_level),
        );
        r.value("truncated-cost", format_rational(&series.closed_form));
        r.value("germs-per-level", json!(series.germs_per_level));
        r.value("cost-diverges", series.diverges);
        out.artifacts.insert("theta.dot".into(), theta.to_dot("theta"));
    }
    r.extend(shadow_report(&d).map_err(input)?);
    out.dot = Some(fiber_ball(&d, 0, cfg.radius_word, cfg.max_arrows)?.to_dot("fiber"));
    out.report = r;
    Ok(out)
}

fn split(inst: &Instance) -> Result<Output, CommandError> {
    let c = inst.central_extension()?;
    Ok(Output::new(split_report(&c).map_err(input)?))
}
