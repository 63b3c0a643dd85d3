//! JSON instance files. Every file is an object with a `"kind"` tag; rationals are `"a/b"` strings.

use crate::group::{translation_groupoid, FiniteGroup, FiniteGroupAction, Perm};
use crate::groupoid::{pair_groupoid, GroupoidTables};
use crate::hnn_model::DescentData;
use crate::rational::{format_rational, int, parse_rational, Rational};
use crate::splitting::{CentralExtensionInstance, Cover};
use crate::treeing::OrientedGraphing;
use crate::{ArrowId, FiniteGroupoid, MeasureMode, UnitId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
}

fn field(field: &str, message: impl ToString) -> InstanceError {
    InstanceError::Field { field: field.to_string(), message: message.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum GroupSpec {
    Cyclic { n: usize },
    /// Cayley table with element 0 the identity.
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
}

impl GroupSpec {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupSpec::Table { table: g.table.clone(), names: Some(g.names.clone()) }
    }

    pub fn build(&self) -> Result<FiniteGroup, InstanceError> {
        match self {
            GroupSpec::Cyclic { n: 0 } => Err(field("group.n", "must be positive")),
            GroupSpec::Cyclic { n } => Ok(FiniteGroup::cyclic(*n)),
            GroupSpec::Table { table, names } => {
                let n = table.len();
                if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
                    return Err(field("group.table", "must be a square table over 0..n"));
                }
                if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
                    return Err(field("group.table", "element 0 is not the identity"));
                }
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            if table[table[a][b]][c] != table[a][table[b][c]] {
                                return Err(field("group.table", format!("not associative at {a}, {b}, {c}")));
                            }
                        }
                    }
                }
                let inverse = (0..n)
                    .map(|a| (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0))
                    .collect::<Option<Vec<usize>>>()
                    .ok_or_else(|| field("group.table", "some element has no inverse"))?;
                let names = match names {
                    Some(v) if v.len() == n => v.clone(),
                    Some(_) => return Err(field("group.names", "one name per element required")),
                    None => (0..n).map(|a| a.to_string()).collect(),
                };
                Ok(FiniteGroup { table: table.clone(), inverse, names })
            }
        }
    }
}

fn parse_weights(name: &str, w: &[String]) -> Result<Vec<Rational>, InstanceError> {
    w.iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| field(&format!("{name}[{i}]"), e)))
        .collect()
}

fn weight_strings(w: &[Rational]) -> Vec<String> {
    w.iter().map(format_rational).collect()
}

fn mode_of(w: &[Rational]) -> MeasureMode {
    if w.iter().sum::<Rational>() == int(1) {
        MeasureMode::Probability
    } else {
        MeasureMode::SigmaFinite
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum GroupoidSpec {
    /// Full relation; arrow `(x, y)` at `x*n + y`.
    Pair { weights: Vec<String> },
    /// `X ⋊ G`; `action[g][x] = g.x`, arrow `(x, g)` at `x*|G| + g`.
    Translation {
        group: GroupSpec,
        action: Vec<Perm>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<String>>,
    },
    Tables {
        weights: Vec<String>,
        range: Vec<u32>,
        source: Vec<u32>,
        inverse: Vec<u32>,
        unit_arrow: Vec<u32>,
        products: Vec<[u32; 3]>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        labels: Vec<String>,
    },
}

impl GroupoidSpec {
    pub fn tables_of(g: &FiniteGroupoid) -> Self {
        let t = g.tables();
        GroupoidSpec::Tables {
            weights: weight_strings(g.weights()),
            range: t.range,
            source: t.source,
            inverse: t.inverse,
            unit_arrow: t.unit_arrow,
            products: t.products.iter().map(|&(a, b, c)| [a, b, c]).collect(),
            labels: t.labels,
        }
    }

    pub fn translation_of(a: &FiniteGroupAction) -> Self {
        GroupoidSpec::Translation { group: GroupSpec::of(&a.group), action: a.action.clone(), weights: None }
    }

    pub fn action(&self) -> Result<Option<FiniteGroupAction>, InstanceError> {
        match self {
            GroupoidSpec::Translation { group, action, .. } => {
                let group = group.build()?;
                let n = action.first().map_or(0, |p| p.len());
                FiniteGroupAction::new(group, action.clone(), n).map(Some).map_err(|e| field("groupoid.action", e))
            }
            _ => Ok(None),
        }
    }

    /// Shapes and weights are checked here; groupoid axioms are left to the caller's report.
    pub fn build(&self) -> Result<FiniteGroupoid, InstanceError> {
        match self {
            GroupoidSpec::Pair { weights } => {
                let w = parse_weights("groupoid.weights", weights)?;
                if w.is_empty() {
                    return Err(field("groupoid.weights", "at least one unit required"));
                }
                crate::groupoid::check_weights(&w, mode_of(&w)).map_err(|e| field("groupoid.weights", e))?;
                Ok(pair_groupoid(w.clone(), mode_of(&w)))
            }
            GroupoidSpec::Translation { weights, .. } => {
                let a = self.action()?.expect("translation spec");
                let w = weights.as_ref().map(|w| parse_weights("groupoid.weights", w)).transpose()?;
                if let Some(w) = &w {
                    if w.len() != a.n_points() {
                        return Err(field("groupoid.weights", "one weight per point required"));
                    }
                    crate::groupoid::check_weights(w, mode_of(w)).map_err(|e| field("groupoid.weights", e))?;
                }
                Ok(translation_groupoid(&a, w))
            }
            GroupoidSpec::Tables { weights, range, source, inverse, unit_arrow, products, labels } => {
                let w = parse_weights("groupoid.weights", weights)?;
                let t = GroupoidTables {
                    range: range.clone(),
                    source: source.clone(),
                    inverse: inverse.clone(),
                    unit_arrow: unit_arrow.clone(),
                    products: products.iter().map(|p| (p[0], p[1], p[2])).collect(),
                    labels: labels.clone(),
                };
                let mode = mode_of(&w);
                FiniteGroupoid::from_tables(w, mode, t).map_err(|e| field("groupoid", e))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SubgroupoidSpec {
    Arrows { arrows: Vec<u32> },
    /// `X ⋊ H` inside a translation groupoid, `H` given by its elements.
    GroupElements { elements: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CoverSpec {
    Identity,
    Explicit { group: GroupSpec, phi: Vec<usize>, e_copy: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    Groupoid {
        groupoid: GroupoidSpec,
    },
    Quotient {
        groupoid: GroupoidSpec,
        subgroupoid: SubgroupoidSpec,
    },
    /// `psi_plus` lists oriented edges as unit pairs `[range, source]` of a principal groupoid.
    Treeing {
        groupoid: GroupoidSpec,
        psi_plus: Vec<[u32; 2]>,
        target: Vec<u32>,
    },
    /// Uniform descent data, see [`DescentData::uniform`].
    Descent {
        p: usize,
        q: usize,
        #[serde(default = "one")]
        n_types: usize,
        #[serde(default)]
        shift: usize,
    },
    DescentData {
        data: DescentData,
    },
    Split {
        group: GroupSpec,
        action: Vec<Perm>,
        e: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cover: Option<CoverSpec>,
    },
}

fn one() -> usize {
    1
}

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    serde_json::from_str(text).map_err(|e| InstanceError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn to_json(inst: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(inst).expect("instances serialise");
    s.push('\n');
    s
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Groupoid { .. } => "groupoid",
            Instance::Quotient { .. } => "quotient",
            Instance::Treeing { .. } => "treeing",
            Instance::Descent { .. } => "descent",
            Instance::DescentData { .. } => "descent-data",
            Instance::Split { .. } => "split",
        }
    }

    pub fn groupoid_spec(&self) -> Option<&GroupoidSpec> {
        match self {
            Instance::Groupoid { groupoid } | Instance::Quotient { groupoid, .. } | Instance::Treeing { groupoid, .. } => {
                Some(groupoid)
            }
            _ => None,
        }
    }

    pub fn subgroupoid_arrows(&self, g: &FiniteGroupoid) -> Result<BTreeSet<ArrowId>, InstanceError> {
        let Instance::Quotient { groupoid, subgroupoid } = self else {
            return Err(field("kind", "a quotient instance is required"));
        };
        match subgroupoid {
            SubgroupoidSpec::Arrows { arrows } => {
                if let Some(a) = arrows.iter().find(|&&a| a as usize >= g.n_arrows()) {
                    return Err(field("subgroupoid.arrows", format!("{a} is not an arrow")));
                }
                Ok(arrows.iter().map(|&a| ArrowId(a)).collect())
            }
            SubgroupoidSpec::GroupElements { elements } => {
                let a = groupoid
                    .action()?
                    .ok_or_else(|| field("subgroupoid", "group-elements needs a translation groupoid"))?;
                let order = a.group.order();
                if let Some(h) = elements.iter().find(|&&h| h >= order) {
                    return Err(field("subgroupoid.elements", format!("{h} is not a group element")));
                }
                Ok((0..a.n_points())
                    .flat_map(|x| elements.iter().map(move |&h| ArrowId((x * order + h) as u32)))
                    .collect())
            }
        }
    }

    /// `(groupoid, graphing, target)` for a treeing instance.
    pub fn treeing(&self) -> Result<(FiniteGroupoid, OrientedGraphing, BTreeSet<UnitId>), InstanceError> {
        let Instance::Treeing { groupoid, psi_plus, target } = self else {
            return Err(field("kind", "a treeing instance is required"));
        };
        let g = groupoid.build()?;
        let mut plus = BTreeSet::new();
        for (i, &[r, s]) in psi_plus.iter().enumerate() {
            if r as usize >= g.n_units() || s as usize >= g.n_units() {
                return Err(field(&format!("psi_plus[{i}]"), "unit out of range"));
            }
            let a = g
                .arrow_between(UnitId(r), UnitId(s))
                .ok_or_else(|| field(&format!("psi_plus[{i}]"), "no arrow between these units"))?;
            plus.insert(a);
        }
        if let Some(y) = target.iter().find(|&&y| y as usize >= g.n_units()) {
            return Err(field("target", format!("{y} is not a unit")));
        }
        let psi = OrientedGraphing::new(&g, plus).map_err(|e| field("psi_plus", e))?;
        Ok((g, psi, target.iter().map(|&y| UnitId(y)).collect()))
    }

    pub fn descent(&self) -> Result<DescentData, InstanceError> {
        match self {
            Instance::Descent { p, q, n_types, shift } => {
                DescentData::uniform(*p, *q, *n_types, *shift).map_err(|e| field("descent", e))
            }
            Instance::DescentData { data } => {
                data.check().map_err(|e| field("data", e))?;
                Ok(data.clone())
            }
            _ => Err(field("kind", "a descent instance is required")),
        }
    }

    pub fn central_extension(&self) -> Result<CentralExtensionInstance, InstanceError> {
        let Instance::Split { group, action, e, weights, cover } = self else {
            return Err(field("kind", "a split instance is required"));
        };
        let h = group.build()?;
        let n = action.first().map_or(0, |p| p.len());
        let action = FiniteGroupAction::new(h.clone(), action.clone(), n).map_err(|err| field("action", err))?;
        let e: BTreeSet<usize> = e.iter().copied().collect();
        let weights = weights.as_ref().map(|w| parse_weights("weights", w)).transpose()?;
        let cover = match cover {
            None => None,
            Some(CoverSpec::Identity) => Some(Cover::identity(&h, &e)),
            Some(CoverSpec::Explicit { group, phi, e_copy }) => Some(Cover {
                group: group.build()?,
                phi: phi.clone(),
                e_copy: e_copy.iter().copied().collect(),
            }),
        };
        Ok(CentralExtensionInstance { action, e, weights, cover })
    }

    pub fn split_of(inst: &CentralExtensionInstance) -> Self {
        let cover = inst.cover.as_ref().map(|c| {
            if c.phi.len() == inst.h().order() && c.phi.iter().enumerate().all(|(i, &v)| i == v) && c.e_copy == inst.e {
                CoverSpec::Identity
            } else {
                CoverSpec::Explicit {
                    group: GroupSpec::of(&c.group),
                    phi: c.phi.clone(),
                    e_copy: c.e_copy.iter().copied().collect(),
                }
            }
        });
        Instance::Split {
            group: GroupSpec::of(inst.h()),
            action: inst.action.action.clone(),
            e: inst.e.iter().copied().collect(),
            weights: inst.weights.as_ref().map(|w| weight_strings(w)),
            cover,
        }
    }
}

/// The shipped instance files, by file name.
pub fn shipped_instances() -> Vec<(String, Instance)> {
    use crate::fixtures::*;
    let mut out = Vec::new();
    let (g, psi, y) = three_point_star();
    let edges = psi
        .psi_plus
        .iter()
        .map(|&a| [g.range(a).0, g.source(a).0])
        .collect();
    out.push((
        "three-point-star.json".to_string(),
        Instance::Treeing {
            groupoid: GroupoidSpec::Pair { weights: weight_strings(g.weights()) },
            psi_plus: edges,
            target: y.iter().map(|u| u.0).collect(),
        },
    ));
    for c in quotient_catalogue() {
        out.push((
            format!("quotient-{}.json", c.name),
            Instance::Quotient {
                groupoid: GroupoidSpec::translation_of(&c.action),
                subgroupoid: SubgroupoidSpec::GroupElements { elements: c.h.iter().copied().collect() },
            },
        ));
    }
    out.push((
        "groupoid-three-point-pair.json".to_string(),
        Instance::Groupoid { groupoid: GroupoidSpec::tables_of(&g) },
    ));
    for (name, d) in descent_instances() {
        out.push((format!("descent-{name}.json"), Instance::DescentData { data: d }));
    }
    for (name, inst) in [
        ("split-z4-central.json", z4_central_extension()),
        ("split-z4-wide-cover.json", z4_central_extension_wide_cover()),
        ("split-trivial-e.json", trivial_e_extension()),
        ("split-pure-central.json", pure_central_extension(2)),
        ("split-non-central.json", non_central_extension()),
    ] {
        out.push((name.to_string(), Instance::split_of(&inst)));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
