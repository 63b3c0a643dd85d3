use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use hnntree_core::fixtures::{quotient_catalogue, z4_central_extension_wide_cover};
use hnntree_core::group::{bass_serre_ball, HnnPresentation};
use hnntree_core::hnn_model::{cost_series_truncated, fiber_ball, DescentData};
use hnntree_core::quotient::{build_quotient, is_normal, NormalityVerdict, Subgroupoid};
use hnntree_core::random::{random_groupoid, random_treed_instance, rng};
use hnntree_core::splitting::product_decomposition;
use hnntree_core::treeing::induce_treeing;
use std::hint::black_box;

fn groupoids(c: &mut Criterion) {
    c.bench_function("validate random 200", |b| {
        b.iter_batched(|| random_groupoid(&mut rng(3), 200), |g| g.validate(), BatchSize::SmallInput)
    });
}

fn quotients(c: &mut Criterion) {
    let cat = quotient_catalogue();
    let case = cat.iter().max_by_key(|c| c.action.n_points() * c.action.group.order()).unwrap();
    let g = case.groupoid();
    let s = Subgroupoid::new(&g, &case.kernel_arrows()).unwrap();
    c.bench_function("normality and quotient", |b| {
        b.iter(|| {
            let NormalityVerdict::Normal { family, .. } = is_normal(&g, &s) else { unreachable!() };
            black_box(build_quotient(&g, &s, &family).unwrap())
        })
    });
}

fn treeings(c: &mut Criterion) {
    let (g, psi, y) = random_treed_instance(&mut rng(5), 200);
    c.bench_function("induce treeing 200", |b| b.iter(|| induce_treeing(&g, &psi, &y).unwrap()));
}

fn hnn(c: &mut Criterion) {
    let d = DescentData::single(2, 3).unwrap();
    let p = HnnPresentation::baumslag_solitar(2, 3).unwrap();
    c.bench_function("fiber ball r4", |b| b.iter(|| fiber_ball(&d, 0, 4, 100_000).unwrap()));
    c.bench_function("bass-serre ball r4", |b| b.iter(|| bass_serre_ball(&p, 4, 100_000).unwrap()));
    c.bench_function("cost series r6", |b| b.iter(|| cost_series_truncated(&d, 6).unwrap()));
}

fn splitting(c: &mut Criterion) {
    let inst = z4_central_extension_wide_cover();
    c.bench_function("product decomposition", |b| b.iter(|| product_decomposition(&inst).unwrap()));
}

criterion_group!(benches, groupoids, quotients, treeings, hnn, splitting);
criterion_main!(benches);
