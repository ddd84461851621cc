//! Results must not depend on the worker count.
#![cfg(feature = "parallel")]

use latdist::{arcs, diststats, numth, rectlat, Exponent};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

fn same_with_1_and_4<T: Send + PartialEq + std::fmt::Debug>(f: impl Fn() -> T + Send + Sync) {
    assert_eq!(in_pool(1, &f), in_pool(4, &f));
}

#[test]
fn histograms() {
    same_with_1_and_4(|| diststats::histogram_rect_fast(700, 500).unwrap());
}

#[test]
fn rhat_and_landau() {
    same_with_1_and_4(|| numth::rhat_table(3 << 20).unwrap());
    same_with_1_and_4(|| numth::landau_count(5 << 20).unwrap());
}

#[test]
fn rect_reports() {
    let alpha: Exponent = "2/5".parse().unwrap();
    same_with_1_and_4(|| {
        let r = rectlat::dalpha_report(1 << 18, alpha).unwrap();
        (r.distinct, r.binom_sum, r.intervals.buckets, r.identities)
    });
}

#[test]
fn lshape() {
    same_with_1_and_4(|| {
        let r = diststats::lshape_report(3000).unwrap();
        (
            r.distinct,
            r.energy,
            r.trivial_energy,
            r.cross_integer_pairs,
        )
    });
}

#[test]
fn arc_scan() {
    let beta: Exponent = "1/3".parse().unwrap();
    same_with_1_and_4(|| arcs::conjecture_scan(200_000, beta).unwrap());
}
