//! Small named instances used by the tests, the acceptance suite and the command-line tool.

use crate::group::{translation_groupoid, FiniteGroup, FiniteGroupAction, Lattice, Perm};
use crate::groupoid::{pair_groupoid, uniform_weights, ArrowId, FiniteGroupoid, MeasureMode, UnitId};
use crate::hnn_model::{descent_shadow, DescentData};
use crate::quotient::HnnModelAction;
use crate::rational::Rational;
use crate::splitting::{CentralExtensionInstance, Cover};
use crate::treeing::OrientedGraphing;
use std::collections::BTreeSet;

fn act(group: FiniteGroup, action: Vec<Perm>, n: usize) -> FiniteGroupAction {
    FiniteGroupAction::new(group, action, n).expect("fixture action is a homomorphism")
}

/// `Z/4` on two points through `Z/4 -> Z/2`, with `E = {0, 2}` and `N = H`.
pub fn z4_central_extension() -> CentralExtensionInstance {
    let h = FiniteGroup::cyclic(4);
    let action = (0..4).map(|k| if k % 2 == 0 { vec![0, 1] } else { vec![1, 0] }).collect();
    let e = BTreeSet::from([0, 2]);
    CentralExtensionInstance {
        cover: Some(Cover::identity(&h, &e)),
        action: act(h, action, 2),
        e,
        weights: None,
    }
}

/// As [`z4_central_extension`] but covered by `N = Z/2 x Z/4` through the second factor.
pub fn z4_central_extension_wide_cover() -> CentralExtensionInstance {
    let mut inst = z4_central_extension();
    let n = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
    let phi = (0..8).map(|i| i % 4).collect();
    inst.cover = Some(Cover { group: n, phi, e_copy: BTreeSet::from([0, 2]) });
    inst
}

/// `Z/2` acting freely on two points with `E` trivial.
pub fn trivial_e_extension() -> CentralExtensionInstance {
    let h = FiniteGroup::cyclic(2);
    let e = BTreeSet::from([0]);
    CentralExtensionInstance {
        cover: Some(Cover::identity(&h, &e)),
        action: act(h, vec![vec![0, 1], vec![1, 0]], 2),
        e,
        weights: None,
    }
}

/// `N = H = E = Z/n` over a single point.
pub fn pure_central_extension(n: usize) -> CentralExtensionInstance {
    let h = FiniteGroup::cyclic(n);
    let e: BTreeSet<usize> = (0..n).collect();
    CentralExtensionInstance {
        cover: Some(Cover::identity(&h, &e)),
        action: act(h, vec![vec![0]; n], 1),
        e,
        weights: None,
    }
}

/// `S3` on two points through the sign, with the non-central `E = A3`.
pub fn non_central_extension() -> CentralExtensionInstance {
    let gens: Vec<Perm> = vec![vec![1, 2, 0], vec![1, 0, 2]];
    let (h, perms) = FiniteGroup::from_permutations(3, &gens, 6).expect("S3");
    let odd = |p: &Perm| (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count() % 2 == 1;
    let action = perms.iter().map(|p| if odd(p) { vec![1, 0] } else { vec![0, 1] }).collect();
    let e: BTreeSet<usize> = (0..6).filter(|&g| !odd(&perms[g])).collect();
    CentralExtensionInstance {
        cover: Some(Cover::identity(&h, &e)),
        action: act(h, action, 2),
        e,
        weights: None,
    }
}

/// Pair groupoid on three points with the star `0 -> 1`, `0 -> 2` and target `{1, 2}`.
pub fn three_point_star() -> (FiniteGroupoid, OrientedGraphing, BTreeSet<UnitId>) {
    let g = pair_groupoid(uniform_weights(3), MeasureMode::Probability);
    let edge = |x: u32, y: u32| g.arrow_between(UnitId(x), UnitId(y)).expect("pair groupoid");
    let psi = OrientedGraphing::new(&g, BTreeSet::from([edge(0, 1), edge(0, 2)])).expect("star is oriented");
    (g, psi, BTreeSet::from([UnitId(1), UnitId(2)]))
}

/// `X ⋊ G` together with a normal subgroup `H` of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCase {
    pub name: String,
    pub action: FiniteGroupAction,
    pub h: BTreeSet<usize>,
}

impl QuotientCase {
    pub fn groupoid(&self) -> FiniteGroupoid {
        translation_groupoid(&self.action, None)
    }

    /// Arrows of `X ⋊ H`.
    pub fn kernel_arrows(&self) -> BTreeSet<ArrowId> {
        let order = self.action.group.order();
        (0..self.action.n_points())
            .flat_map(|x| self.h.iter().map(move |&h| ArrowId((x * order + h) as u32)))
            .collect()
    }

    /// `(X/H) ⋊ (G/H)` with the pushed-forward weights.
    pub fn model(&self) -> FiniteGroupoid {
        let g = &self.action.group;
        let cosets = g.left_cosets(&self.h);
        let mut coset_of = vec![0; g.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &a in c {
                coset_of[a] = i;
            }
        }
        let reps: Vec<usize> = cosets.iter().map(|c| *c.iter().next().unwrap()).collect();
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
            .collect();
        let inverse = reps.iter().map(|&a| coset_of[g.inv(a)]).collect();
        let names = reps.iter().map(|&a| format!("{}H", g.names[a])).collect();
        let gh = FiniteGroup { table, inverse, names };
        let orbits = self.action.orbits_of(&self.h);
        let mut orbit_of = vec![0; self.action.n_points()];
        for (i, o) in orbits.iter().enumerate() {
            for &x in o {
                orbit_of[x] = i;
            }
        }
        let perms = reps
            .iter()
            .map(|&a| orbits.iter().map(|o| orbit_of[self.action.act(a, o[0])]).collect())
            .collect();
        let n = self.action.n_points() as i64;
        let weights = orbits.iter().map(|o| Rational::new((o.len() as i64).into(), n.into())).collect();
        translation_groupoid(&act(gh, perms, orbits.len()), Some(weights))
    }
}

fn regular(group: FiniteGroup) -> FiniteGroupAction {
    let n = group.order();
    let perms = (0..n).map(|g| (0..n).map(|x| group.mul(g, x)).collect()).collect();
    act(group, perms, n)
}

fn natural(degree: usize, gens: &[Perm]) -> FiniteGroupAction {
    let (g, perms) = FiniteGroup::from_permutations(degree, gens, 1 << 12).expect("permutation group");
    act(g, perms, degree)
}

fn normal_of_order(a: &FiniteGroupAction, size: usize) -> BTreeSet<usize> {
    a.group
        .normal_subgroups()
        .into_iter()
        .find(|h| h.len() == size)
        .expect("normal subgroup of the requested order")
}

/// Twenty `X ⋊ G` with `H ◁ G`, `|X| <= 8`, `|G| <= 24`.
pub fn quotient_catalogue() -> Vec<QuotientCase> {
    let cycle = |n: usize| -> Perm { (0..n).map(|i| (i + 1) % n).collect() };
    let swap01 = |n: usize| -> Perm {
        let mut p: Perm = (0..n).collect();
        p.swap(0, 1);
        p
    };
    let flip = |n: usize| -> Perm { (0..n).map(|i| (n - i) % n).collect() };
    let a4_gens: Vec<Perm> = vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]];
    let s4_gens: Vec<Perm> = vec![cycle(4), swap01(4)];
    let z4 = FiniteGroup::cyclic(4);
    let two_points = act(z4.clone(), (0..4).map(|k| if k % 2 == 0 { vec![0, 1] } else { vec![1, 0] }).collect(), 2);
    let s3 = FiniteGroup::symmetric(3);
    let s3_point = act(s3.clone(), vec![vec![0]; 6], 1);
    let a4 = natural(4, &a4_gens);
    let s4 = natural(4, &s4_gens);
    let v4 = |a: &FiniteGroupAction| normal_of_order(a, 4);
    let cases: Vec<(&str, FiniteGroupAction, Box<dyn Fn(&FiniteGroupAction) -> BTreeSet<usize>>)> = vec![
        ("z4-regular-mod-2", regular(z4.clone()), Box::new(|_| BTreeSet::from([0, 2]))),
        ("z4-on-two-points-mod-2", two_points, Box::new(|_| BTreeSet::from([0, 2]))),
        ("z6-regular-mod-3", regular(FiniteGroup::cyclic(6)), Box::new(|_| BTreeSet::from([0, 2, 4]))),
        ("z6-regular-mod-2", regular(FiniteGroup::cyclic(6)), Box::new(|_| BTreeSet::from([0, 3]))),
        ("s3-regular-mod-a3", regular(s3.clone()), Box::new(|a| normal_of_order(a, 3))),
        ("s3-natural-mod-a3", natural(3, &[cycle(3), swap01(3)]), Box::new(|a| normal_of_order(a, 3))),
        ("s3-on-a-point-mod-a3", s3_point, Box::new(|a| normal_of_order(a, 3))),
        ("d4-regular-mod-centre", regular(FiniteGroup::dihedral(4)), Box::new(|a| normal_of_order(a, 2))),
        ("d4-natural-mod-rotations", natural(4, &[cycle(4), flip(4)]), Box::new(|a| {
            let r = a.action.iter().position(|p| *p == vec![1, 2, 3, 0]).unwrap();
            a.group.closure(&[r])
        })),
        ("q8-regular-mod-centre", regular(FiniteGroup::quaternion()), Box::new(|a| normal_of_order(a, 2))),
        ("q8-regular-mod-order-4", regular(FiniteGroup::quaternion()), Box::new(|a| normal_of_order(a, 4))),
        ("a4-natural-mod-v4", a4.clone(), Box::new(v4)),
        ("a4-on-three-cosets-mod-v4", FiniteGroupAction::on_cosets(&a4.group, &v4(&a4)), Box::new(v4)),
        ("s4-natural-mod-v4", s4.clone(), Box::new(v4)),
        ("s4-natural-mod-a4", s4.clone(), Box::new(|a| normal_of_order(a, 12))),
        ("s4-on-three-points-mod-v4", FiniteGroupAction::on_cosets(&s4.group, &{
            let v = v4(&s4);
            let t = s4.action.iter().position(|p| *p == vec![1, 0, 2, 3]).unwrap();
            let mut gens: Vec<usize> = v.into_iter().collect();
            gens.push(t);
            s4.group.closure(&gens)
        }), Box::new(v4)),
        ("v4-regular-mod-factor", regular(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))), Box::new(|_| BTreeSet::from([0, 1]))),
        ("z8-regular-mod-order-2", regular(FiniteGroup::cyclic(8)), Box::new(|_| BTreeSet::from([0, 4]))),
        ("d6-natural-mod-order-3", natural(6, &[cycle(6), flip(6)]), Box::new(|a| normal_of_order(a, 3))),
        ("z2xz4-regular-mod-even", regular(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &z4)), Box::new(|_| BTreeSet::from([0, 2]))),
    ];
    cases
        .into_iter()
        .map(|(name, action, h)| {
            let h = h(&action);
            debug_assert!(action.group.is_normal(&h), "{name}");
            QuotientCase { name: name.to_string(), action, h }
        })
        .collect()
}

/// `Z/6` with `a = +1`, `t = -1`, labels `x mod 2` for `E/E-` and `x mod 3` for `E/E+`.
pub fn hnn_witness_z6() -> HnnModelAction {
    HnnModelAction {
        n_points: 6,
        e_generators: vec![(0..6).map(|x| (x + 1) % 6).collect()],
        t: (0..6).map(|x| (6 - x) % 6).collect(),
        e_minus: Lattice::new(1, &[vec![2]]).expect("2Z"),
        e_plus: Lattice::new(1, &[vec![3]]).expect("3Z"),
        labels_minus: (0..6).map(|x| vec![x % 2]).collect(),
        labels_plus: (0..6).map(|x| vec![x % 3]).collect(),
    }
}

/// Descent data shipped with the tool: BS(2,3) on one type, on two types, and the flat `p = q = 2`.
pub fn descent_instances() -> Vec<(&'static str, DescentData)> {
    vec![
        ("bs23-single", DescentData::single(2, 3).expect("bs23")),
        ("bs23-two-types", DescentData::uniform(2, 3, 2, 1).expect("bs23 on two types")),
        ("flat-2-2", DescentData::single(2, 2).expect("flat")),
    ]
}

/// Every finite groupoid shipped as a fixture, by name.
pub fn fixture_groupoids() -> Vec<(String, FiniteGroupoid)> {
    let mut out = vec![("three-point-star".to_string(), three_point_star().0)];
    for c in quotient_catalogue() {
        out.push((format!("{}-model", c.name), c.model()));
        out.push((c.name.clone(), c.groupoid()));
    }
    for (name, inst) in [
        ("z4-central-extension", z4_central_extension()),
        ("trivial-e-extension", trivial_e_extension()),
        ("non-central-extension", non_central_extension()),
    ] {
        out.push((name.to_string(), translation_groupoid(&inst.action, None)));
    }
    for (name, d) in descent_instances() {
        out.push((format!("{name}-shadow"), descent_shadow(&d).expect("shadow of shipped descent data").0));
    }
    out
}
