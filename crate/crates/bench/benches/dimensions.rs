use bratteli_core::dimensions::{dims_up_to, m_table, BranchingRatios, Cone};
use bratteli_core::family::young;
use bratteli_core::measures::{sample_path, DEFAULT_SEED};
use bratteli_core::{pascalize, Family, VertexId};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("pascalize_young");
    for n in [12, 20, 28] {
        let base = young(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| pascalize(&base, n).unwrap())
        });
    }
    group.finish();
}

fn dims(c: &mut Criterion) {
    let mut group = c.benchmark_group("dims_pascalized_young");
    group.sample_size(10);
    for n in [20, 30, 40] {
        let pg = pascalize(&young(n), n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| dims_up_to(pg.graph(), n).unwrap())
        });
    }
    group.finish();
}

fn cone(c: &mut Criterion) {
    let n = 30;
    let pg = pascalize(&young(n), n).unwrap();
    let source = pg.lift(2, VertexId::ROOT).unwrap();
    c.bench_function("cone_two_empty_30", |b| b.iter(|| Cone::new(pg.graph(), source, n).unwrap()));
}

fn mtable(c: &mut Criterion) {
    let mut group = c.benchmark_group("m_table");
    for family in [Family::Chain, Family::Young] {
        let a = BranchingRatios::from_family(family, 200);
        group.bench_function(family.name(), |b| b.iter(|| m_table(&a, 200).unwrap()));
    }
    group.finish();
}

fn sampler(c: &mut Criterion) {
    let n = 40;
    let pg = pascalize(&young(n), n).unwrap();
    let dims = dims_up_to(pg.graph(), n).unwrap();
    let mut seed = DEFAULT_SEED;
    c.bench_function("sample_path_40", |b| {
        b.iter(|| {
            seed = seed.wrapping_add(1);
            sample_path(pg.graph(), &dims, n, seed).unwrap()
        })
    });
}

criterion_group!(benches, build, dims, cone, mtable, sampler);
criterion_main!(benches);
