use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qwalk::report::scan_catalog;
use qwalk::AnalysisConfig;

const CATALOG: &str = include_str!("../tests/data/connected_4_6.g6");

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_connected_4_6");
    group.sample_size(10);
    let pool = qwalk::par::default_workers().max(2);
    for workers in [1, pool] {
        let cfg = AnalysisConfig {
            jobs: Some(workers),
            ..AnalysisConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(workers), &cfg, |b, cfg| {
            b.iter(|| scan_catalog(CATALOG, cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, scan);
criterion_main!(benches);
