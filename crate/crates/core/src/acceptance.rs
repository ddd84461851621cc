//! End-to-end acceptance criteria.
//!
//! Each criterion runs at fixed parameters and fixed tolerances and reports
//! the values it measured. The `fast` suite holds the exact-identity checks;
//! `full` adds the asymptotic band checks.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arcs::{self, ArcWindow};
use crate::diststats::{self, DistanceHistogram, PointSet};
use crate::error::Result;
use crate::numth;
use crate::rational::Exponent;
use crate::rectlat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Fast,
    Full,
}

/// Measured outcome of one criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub measured: String,
}

impl Check {
    fn new(passed: bool, measured: impl Into<String>) -> Self {
        Check {
            passed,
            measured: measured.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub measured: String,
    #[serde(skip)]
    pub seconds: f64,
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub fast: bool,
    pub run: fn() -> Result<Check>,
}

impl Criterion {
    pub fn evaluate(&self) -> Outcome {
        let start = Instant::now();
        let check = (self.run)().unwrap_or_else(|e| Check::new(false, format!("error: {e}")));
        Outcome {
            id: self.id,
            name: self.name,
            passed: check.passed,
            measured: check.measured,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "oracle-equivalence",
            fast: true,
            run: oracle_equivalence,
        },
        Criterion {
            id: 2,
            name: "r-function-equivalence",
            fast: true,
            run: r_function_equivalence,
        },
        Criterion {
            id: 3,
            name: "rect-identities",
            fast: true,
            run: rect_identities,
        },
        Criterion {
            id: 4,
            name: "four-number-lemma",
            fast: true,
            run: four_number_exhaustive,
        },
        Criterion {
            id: 5,
            name: "rect-distinct-band",
            fast: false,
            run: rect_distinct_band,
        },
        Criterion {
            id: 6,
            name: "binom-d-band",
            fast: false,
            run: binom_d_band,
        },
        Criterion {
            id: 7,
            name: "rhat-band",
            fast: false,
            run: rhat_band,
        },
        Criterion {
            id: 8,
            name: "landau-band",
            fast: false,
            run: landau_band,
        },
        Criterion {
            id: 9,
            name: "square-energy-band",
            fast: false,
            run: square_energy_band,
        },
        Criterion {
            id: 10,
            name: "interior-circle-bound",
            fast: true,
            run: interior_circle_bound,
        },
        Criterion {
            id: 11,
            name: "lshape-band",
            fast: false,
            run: lshape_band,
        },
        Criterion {
            id: 12,
            name: "arc-explorer",
            fast: false,
            run: arc_explorer,
        },
    ]
}

pub fn run_suite(suite: Suite, mut on_result: impl FnMut(&Outcome)) -> Vec<Outcome> {
    criteria()
        .iter()
        .filter(|c| suite == Suite::Full || c.fast)
        .map(|c| {
            let o = c.evaluate();
            on_result(&o);
            o
        })
        .collect()
}

fn e(num: u32, den: u32) -> Exponent {
    Exponent::new(num, den).expect("nonzero denominator")
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    max / min
}

fn fmt_list(values: &[f64]) -> String {
    let v: Vec<String> = values.iter().map(|x| format!("{x:.4}")).collect();
    format!("[{}]", v.join(" "))
}

/// Point sets with at most 16 points: small grids, L-shapes and 50 seeded
/// random sets.
pub fn quadruple_corpus() -> Vec<PointSet> {
    let mut out = Vec::new();
    for w in 1..=16u32 {
        for h in 1..=16u32 {
            if w * h >= 2 && w * h <= 16 {
                out.push(PointSet::grid(w, h).expect("small grid"));
            }
        }
    }
    for n in 1..=8 {
        out.push(PointSet::lshape(n).expect("small L-shape"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..50 {
        let size = rng.random_range(2..=16usize);
        let mut pts = Vec::with_capacity(size);
        while pts.len() < size {
            let p = (rng.random_range(-6..=6), rng.random_range(-6..=6));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        out.push(PointSet::new(pts).expect("distinct by construction"));
    }
    out
}

fn oracle_equivalence() -> Result<Check> {
    oracle_equivalence_with(diststats::histogram_rect_fast)
}

/// Criterion 1 against an arbitrary grid-histogram routine, so a faulty
/// implementation can be shown to fail it.
pub fn oracle_equivalence_with<F>(fast: F) -> Result<Check>
where
    F: Fn(u32, u32) -> Result<DistanceHistogram>,
{
    let mut grid_mismatch = Vec::new();
    for w in 2..=12u32 {
        for h in 2..=12u32 {
            let brute = diststats::histogram_bruteforce(&PointSet::grid(w, h)?)?;
            if fast(w, h)? != brute {
                grid_mismatch.push(format!("{w}x{h}"));
            }
        }
    }
    let corpus = quadruple_corpus();
    let mut energy_mismatch = 0;
    for ps in &corpus {
        let energy = diststats::quadruple_stats(&diststats::histogram_bruteforce(ps)?)?.energy;
        if diststats::quadruple_bruteforce(ps)? != energy {
            energy_mismatch += 1;
        }
    }
    Ok(Check::new(
        grid_mismatch.is_empty() && energy_mismatch == 0,
        format!(
            "grids 121 checked, {} mismatched{}; corpus {} sets, {} energy mismatches",
            grid_mismatch.len(),
            grid_mismatch
                .first()
                .map(|g| format!(" (first {g})"))
                .unwrap_or_default(),
            corpus.len(),
            energy_mismatch
        ),
    ))
}

fn r_function_equivalence() -> Result<Check> {
    const LIMIT: u64 = 100_000;
    let sieve = numth::build_spf_sieve(LIMIT)?;
    let mut bad = Vec::new();
    for k in 1..=LIMIT {
        if numth::r_fast(k, &sieve)? != numth::r_bruteforce(k) {
            bad.push(k);
        }
    }
    Ok(Check::new(
        bad.is_empty(),
        format!("k <= {LIMIT}: {} mismatches", bad.len()),
    ))
}

/// Direct counts of ordered pairs of sublattice points with equal `i^2 + j^2`
/// and with equal `i^2 - j^2`, by comparing every pair.
pub fn quadruple_identity_oracle(spec: &rectlat::RectLatticeSpec) -> (u128, u128) {
    let pts: Vec<(u64, u64)> = (spec.i_min..=spec.width)
        .flat_map(|i| (0..=spec.height).map(move |j| (i, j)))
        .collect();
    let mut sums = 0u128;
    let mut diffs = 0u128;
    for &(i, j) in &pts {
        for &(i2, j2) in &pts {
            if i * i + j * j == i2 * i2 + j2 * j2 {
                sums += 1;
            }
            if i * i - j * j == i2 * i2 - j2 * j2 {
                diffs += 1;
            }
        }
    }
    (sums, diffs)
}

fn rect_identities() -> Result<Check> {
    let alphas = [e(3, 10), e(7, 20), e(2, 5), e(9, 20)];
    let mut checked = 0;
    let mut failures = Vec::new();
    for &alpha in &alphas {
        for n in [1u64 << 12, 1 << 16, 1 << 20] {
            let spec = rectlat::build_spec(n, alpha)?;
            let rc = rectlat::rep_counts(&spec)?;
            match rectlat::verify_identities(&rc) {
                Ok(id) => {
                    if n == 1 << 12 {
                        let (sums, diffs) = quadruple_identity_oracle(&spec);
                        if sums != diffs || sums != id.sum_r2 || diffs != id.sum_d2 {
                            failures.push(format!(
                                "n={n} a={alpha}: oracle {sums}/{diffs} vs {}/{}",
                                id.sum_r2, id.sum_d2
                            ));
                        }
                    }
                }
                Err(err) => failures.push(format!("n={n} a={alpha}: {err}")),
            }
            checked += 1;
        }
    }
    Ok(Check::new(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{checked} specs exact; quadruple oracle agrees at n=2^12")
        } else {
            failures.join("; ")
        },
    ))
}

fn four_number_exhaustive() -> Result<Check> {
    const LIMIT: u64 = 20_000;
    let mut tuples = 0u64;
    let mut bad = 0u64;
    for m in 1..=LIMIT {
        let divs: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
        for &m1 in &divs {
            for &m3 in &divs {
                let (m2, m4) = (m / m1, m / m3);
                let t = rectlat::four_number_lemma(m1, m2, m3, m4)?;
                tuples += 1;
                if !t.satisfies(m1, m2, m3, m4) {
                    bad += 1;
                }
            }
        }
    }
    Ok(Check::new(
        bad == 0,
        format!("{tuples} factorization pairs, {bad} failures"),
    ))
}

fn rect_distinct_band() -> Result<Check> {
    let alpha = e(2, 5);
    let mut ratios = Vec::new();
    for n in [1u64 << 14, 1 << 17, 1 << 20] {
        let spec = rectlat::build_spec(n, alpha)?;
        ratios.push(rectlat::distinct_distances_rect(&spec)? as f64 / n as f64);
    }
    let dev: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
    let monotone = dev.windows(2).all(|w| w[1] <= w[0]);
    let last = *ratios.last().expect("three points");
    Ok(Check::new(
        monotone && (0.85..=1.02).contains(&last),
        format!("D/n = {}", fmt_list(&ratios)),
    ))
}

fn binom_d_band() -> Result<Check> {
    let mut passed = true;
    let mut parts = Vec::new();
    for alpha in [e(3, 10), e(2, 5)] {
        let mut vals = Vec::new();
        for n in [1u64 << 14, 1 << 16, 1 << 18, 1 << 20] {
            vals.push(rectlat::dalpha_report(n, alpha)?.binom_normalized());
        }
        let s = spread(&vals);
        passed &= s <= 4.0;
        parts.push(format!("a={alpha}: {} max/min {s:.3}", fmt_list(&vals)));
    }
    Ok(Check::new(passed, parts.join("; ")))
}

fn rhat_band() -> Result<Check> {
    let table = numth::rhat_table(1 << 24)?;
    let ratios: Vec<f64> = [1u64 << 20, 1 << 22, 1 << 24]
        .iter()
        .map(|&k| table.rhat(k) as f64 / (k as f64 * (k as f64).ln()))
        .collect();
    let changes: Vec<f64> = ratios
        .windows(2)
        .map(|w| (w[1] - w[0]).abs() / w[0])
        .collect();
    Ok(Check::new(
        changes.iter().all(|&c| c < 0.10),
        format!(
            "rhat/(k ln k) = {} changes {}",
            fmt_list(&ratios),
            fmt_list(&changes)
        ),
    ))
}

fn landau_band() -> Result<Check> {
    let mut vals = Vec::new();
    for n in [1u64 << 20, 1 << 22, 1 << 24] {
        vals.push(numth::landau_normalized(n, numth::landau_count(n)?));
    }
    let in_band = vals.iter().all(|v| (0.70..=1.00).contains(v));
    let monotone = vals.windows(2).all(|w| w[1] <= w[0]);
    Ok(Check::new(
        in_band && monotone,
        format!("B(N) sqrt(ln N)/N = {}", fmt_list(&vals)),
    ))
}

fn square_energy_band() -> Result<Check> {
    let mut energy = Vec::new();
    let mut gap = Vec::new();
    for m in [256u32, 512, 1024, 2048] {
        let r = diststats::square_lattice_report(m)?;
        energy.push(r.energy_over_n3_ln_n);
        gap.push(r.gap_over_sqrt_ln_n);
    }
    let (se, sg) = (spread(&energy), spread(&gap));
    Ok(Check::new(
        se <= 1.5 && sg <= 1.3,
        format!(
            "|Q|/(N^3 ln N) = {} max/min {se:.3}; gap/sqrt(ln N) = {} max/min {sg:.3}",
            fmt_list(&energy),
            fmt_list(&gap)
        ),
    ))
}

fn interior_circle_bound() -> Result<Check> {
    const SIDE: u32 = 1000;
    let n = u128::from(SIDE) * u128::from(SIDE);
    let t_max = u64::from(SIDE / 10).pow(2);
    let h = diststats::histogram_rect_fast(SIDE, SIDE)?;
    let sieve = numth::build_spf_sieve(t_max)?;
    let mut violations = Vec::new();
    let mut worst = f64::MAX;
    for t in 1..=t_max {
        let rz = u128::from(numth::r_full_plane(t, &sieve)?);
        let count = u128::from(h.get(t));
        // 0.64 N r <= count <= N r, scaled by 100
        if !(64 * n * rz <= 100 * count && count <= n * rz) {
            violations.push(t);
        }
        if rz > 0 {
            worst = worst.min(count as f64 / (n as f64 * rz as f64));
        }
    }
    Ok(Check::new(
        violations.is_empty(),
        format!(
            "t <= {t_max}: {} violations, min |E_t|/(N r_Z2(t)) = {worst:.4}",
            violations.len()
        ),
    ))
}

fn lshape_band() -> Result<Check> {
    let mut trivial = Vec::new();
    let mut growth = Vec::new();
    for n in [1u32 << 10, 1 << 12, 1 << 14] {
        let r = diststats::lshape_report(n)?;
        let r2 = diststats::lshape_report(2 * n)?;
        trivial.push(r.trivial_over_n3());
        growth.push(r2.gap_ratio / r.gap_ratio);
    }
    let s = spread(&trivial);
    Ok(Check::new(
        s <= 1.3 && growth.iter().all(|g| (1.6..=2.2).contains(g)),
        format!(
            "trivial/n^3 = {} max/min {s:.3}; gap(2n)/gap(n) = {}",
            fmt_list(&trivial),
            fmt_list(&growth)
        ),
    ))
}

fn arc_explorer() -> Result<Check> {
    const ORACLE_MAX: u64 = 10_000;
    let mut mismatches = 0u64;
    let mut compared = 0u64;
    for beta in [e(1, 6), e(1, 4), e(2, 5)] {
        let rows = arcs::conjecture_scan(ORACLE_MAX, beta)?;
        for row in &rows {
            let r = &row.result;
            let pts = arcs::circle_points(r.n).points;
            let brute = arcs::sweep_bruteforce(&pts, ArcWindow::new(r.n, beta));
            compared += 1;
            if brute != r.max_count {
                mismatches += 1;
            }
        }
    }
    let scan = arcs::conjecture_scan(1 << 20, e(1, 6))?;
    let running = scan.last().map_or(0, |r| r.running_max);
    Ok(Check::new(
        mismatches == 0 && running <= 2,
        format!(
            "{compared} circles vs brute force, {mismatches} mismatches; beta=1/6 max over N <= 2^20 is {running}"
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let c = quadruple_corpus();
        assert_eq!(c.len(), 49 + 8 + 50);
        assert!(c.iter().all(|p| (2..=16).contains(&p.len())));
    }

    #[test]
    fn broken_sign_multiplicity_fails_oracle_check() {
        // every vector counted with two directions, as if diagonals had no mirror
        let broken = |w, h| diststats::rect_histogram_with(w, h, |_, _| 2);
        let check = oracle_equivalence_with(broken).unwrap();
        assert!(!check.passed, "{}", check.measured);
        assert!(
            oracle_equivalence_with(diststats::histogram_rect_fast)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn identity_oracle_small() {
        let spec = rectlat::build_spec(64, e(1, 3)).unwrap();
        let rc = rectlat::rep_counts(&spec).unwrap();
        let id = rectlat::verify_identities(&rc).unwrap();
        assert_eq!(quadruple_identity_oracle(&spec), (id.sum_r2, id.sum_d2));
    }
}
