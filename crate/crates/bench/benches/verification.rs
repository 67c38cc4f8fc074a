use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cuspidal_bench::{family, module};
use cuspidal_core::genweight::{build_f, check_relations, hom_space, u0_commutes};
use cuspidal_core::reconstruct::{reconstruct, PartialModule};
use cuspidal_core::weyl::{SpBasis, StructureConstants};
use cuspidal_core::Params;

fn structure_constants(c: &mut Criterion) {
    let mut group = c.benchmark_group("structure_constants");
    for n in [2, 3] {
        let basis = SpBasis::new(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &basis, |b, basis| {
            b.iter(|| StructureConstants::compute(basis).unwrap())
        });
    }
    group.finish();
}

fn build_and_check(c: &mut Criterion) {
    let params = Params::default_for(2).unwrap();
    let mut group = c.benchmark_group("rank2_radius4");
    for dim in [1, 3] {
        let fam = family(2, dim, 7);
        group.bench_with_input(BenchmarkId::new("build_f", dim), &fam, |b, fam| {
            b.iter(|| build_f(fam, &params, 4).unwrap())
        });
        let m = module(2, dim, 4, 7);
        group.bench_with_input(BenchmarkId::new("check_relations", dim), &m, |b, m| {
            b.iter(|| check_relations(m))
        });
        group.bench_with_input(BenchmarkId::new("u0_degree3", dim), &m, |b, m| {
            b.iter(|| u0_commutes(m, 3))
        });
    }
    group.finish();
}

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solvers");
    group.sample_size(20);
    let m = module(2, 3, 2, 3);
    group.bench_function("hom_space_dim3_r2", |b| {
        b.iter(|| hom_space(&m, &m).unwrap())
    });
    let partial = PartialModule::strip(&module(2, 2, 4, 3)).unwrap();
    group.bench_function("reconstruct_dim2_r4", |b| {
        b.iter(|| reconstruct(&partial).unwrap())
    });
    group.finish();
}

criterion_group!(benches, structure_constants, build_and_check, solvers);
criterion_main!(benches);
