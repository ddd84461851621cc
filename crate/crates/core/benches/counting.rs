//! Single-threaded versus all-core runs of the banded counting kernels.
//!
//! Without the `parallel` feature both variants run the sequential path, which
//! gives the fallback's baseline.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use latdist::{arcs, diststats, numth, rectlat, Exponent};

#[cfg(feature = "parallel")]
fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let all = rayon::current_num_threads();
    let mut sizes = vec![1];
    if all > 1 {
        sizes.push(all);
    }
    sizes
        .into_iter()
        .map(|n| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .unwrap();
            (format!("{n}t"), pool)
        })
        .collect()
}

fn kernel(c: &mut Criterion, name: &str, f: impl Fn() + Sync) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    #[cfg(feature = "parallel")]
    for (label, pool) in pools() {
        group.bench_function(BenchmarkId::new("rayon", label), |b| {
            b.iter(|| pool.install(&f))
        });
    }
    #[cfg(not(feature = "parallel"))]
    group.bench_function(BenchmarkId::new("sequential", "1t"), |b| b.iter(&f));
    group.finish();
}

fn benches(c: &mut Criterion) {
    kernel(c, "histogram_rect_fast/512x512", || {
        diststats::histogram_rect_fast(512, 512).unwrap();
    });
    kernel(c, "rhat_table/2^22", || {
        numth::rhat_table(1 << 22).unwrap();
    });
    kernel(c, "landau_count/2^24", || {
        numth::landau_count(1 << 24).unwrap();
    });
    let alpha: Exponent = "2/5".parse().unwrap();
    let spec = rectlat::build_spec(1 << 20, alpha).unwrap();
    kernel(c, "rep_counts/2^20", || {
        rectlat::rep_counts(&spec).unwrap();
    });
    kernel(c, "lshape_report/4096", || {
        diststats::lshape_report(4096).unwrap();
    });
    let beta: Exponent = "1/4".parse().unwrap();
    kernel(c, "conjecture_scan/2^18", || {
        arcs::conjecture_scan(1 << 18, beta).unwrap();
    });
}

criterion_group!(counting, benches);
criterion_main!(counting);
