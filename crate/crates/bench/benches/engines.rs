use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pschur::catalog::{build, Params};
use pschur::multiplier::{blackburn_evens, schur_tails};
use pschur::oracle::schur_from_h2;
use pschur::GroupTable;

const GROUPS: [(&str, u32); 4] = [
    ("ES(p,3,exp p)", 3),
    ("Phi3(1^4)", 3),
    ("Phi7(1^5)", 3),
    ("Phi11(1^6)", 3),
];

fn engines(c: &mut Criterion) {
    let mut tails = c.benchmark_group("tails");
    for (id, p) in GROUPS {
        let g = build(id, &Params::new(p)).unwrap();
        tails.bench_with_input(BenchmarkId::from_parameter(id), &g, |b, g| b.iter(|| schur_tails(g).unwrap()));
    }
    tails.finish();

    let mut be = c.benchmark_group("blackburn-evens");
    for id in ["ES(p,3,exp p)", "Phi11(1^6)", "Phi15(1^6)"] {
        let t = GroupTable::new(&build(id, &Params::new(3)).unwrap()).unwrap();
        be.bench_with_input(BenchmarkId::from_parameter(id), &t, |b, t| b.iter(|| blackburn_evens(t).unwrap()));
    }
    be.finish();

    let mut oracle = c.benchmark_group("oracle");
    oracle.sample_size(10);
    for (id, p) in [("ES(p,3,exp p)", 3), ("Phi3(1^4)", 3), ("Z2^4:Z2", 2)] {
        let t = GroupTable::new(&build(id, &Params::new(p)).unwrap()).unwrap();
        oracle.bench_with_input(BenchmarkId::from_parameter(id), &t, |b, t| b.iter(|| schur_from_h2(t, 128, None).unwrap()));
    }
    oracle.finish();
}

criterion_group!(benches, engines);
criterion_main!(benches);
