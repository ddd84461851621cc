//! Lattice points on circles `a^2 + b^2 = N` and how many fit in a short arc.
//!
//! An arc of length `N^b` on the circle of radius `sqrt(N)` spans the angle
//! `w = N^b / sqrt(N)`. Two points `P`, `Q` with `Q` counter-clockwise of `P`
//! by at most `w < pi` are exactly the pairs with `cross(P, Q) >= 0` and
//! `|P - Q|^2 <= 4 N sin^2(w / 2)`. The chord bound is rounded up to an
//! integer once per circle; after that every comparison is integer-exact.
//! Rounding up can only admit extra points, never drop one.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::rational::Exponent;

/// Relative slack applied to the chord bound before flooring.
pub const CHORD_EPSILON: f64 = 1e-12;

const SCAN_BAND: u64 = 1 << 16;

/// All integer points on `a^2 + b^2 = N`, sorted by angle in `[0, 2 pi)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CirclePoints {
    pub n: u64,
    pub points: Vec<(i64, i64)>,
}

fn half(p: (i64, i64)) -> u8 {
    if p.1 > 0 || (p.1 == 0 && p.0 > 0) {
        0
    } else {
        1
    }
}

fn cross(p: (i64, i64), q: (i64, i64)) -> i128 {
    i128::from(p.0) * i128::from(q.1) - i128::from(p.1) * i128::from(q.0)
}

/// Exact angular order for nonzero integer vectors.
pub fn angle_cmp(p: (i64, i64), q: (i64, i64)) -> Ordering {
    half(p).cmp(&half(q)).then_with(|| 0.cmp(&cross(p, q)))
}

fn angle_of(p: (i64, i64)) -> f64 {
    let a = (p.1 as f64).atan2(p.0 as f64);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Expand first-quadrant representatives `(a > 0, b >= 0)` by the four
/// quarter turns; every nonzero point is produced exactly once.
fn orbit(reps: &[(u64, u64)]) -> Vec<(i64, i64)> {
    let mut pts = Vec::with_capacity(4 * reps.len());
    for &(a, b) in reps {
        let (a, b) = (a as i64, b as i64);
        pts.extend([(a, b), (-b, a), (-a, -b), (b, -a)]);
    }
    pts.sort_by(|&p, &q| angle_cmp(p, q));
    pts
}

pub fn circle_points(n: u64) -> CirclePoints {
    assert!(n >= 1, "circle_points needs N >= 1");
    let reps: Vec<(u64, u64)> = (1..=n.isqrt())
        .filter_map(|a| {
            let rest = n - a * a;
            let b = rest.isqrt();
            (b * b == rest).then_some((a, b))
        })
        .collect();
    CirclePoints {
        n,
        points: orbit(&reps),
    }
}

/// Largest number of points in a closed arc of length `N^beta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcScanResult {
    pub n: u64,
    pub beta: Exponent,
    /// `r_Z2(N)`.
    pub points: u64,
    pub arc_length: f64,
    pub angular_width: f64,
    pub max_count: u64,
    /// Angle of the first point of a window achieving `max_count`.
    pub witness_start_angle: f64,
    /// Points with `|b| < N^beta`, the window next to the horizontal axis.
    pub axis_count: u64,
}

/// Integer chord bound for one circle and one arc length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcWindow {
    pub chord_sq: u64,
}

impl ArcWindow {
    pub fn new(n: u64, beta: Exponent) -> Self {
        let nf = n as f64;
        let width = angular_width(n, beta);
        let s = (width / 2.0).sin();
        let c2 = 4.0 * nf * s * s;
        ArcWindow {
            chord_sq: (c2 * (1.0 + CHORD_EPSILON)).floor() as u64,
        }
    }

    /// `q` lies in the closed window that starts at `p`.
    pub fn contains(&self, p: (i64, i64), q: (i64, i64)) -> bool {
        let dx = (p.0 - q.0).unsigned_abs();
        let dy = (p.1 - q.1).unsigned_abs();
        cross(p, q) >= 0 && dx * dx + dy * dy <= self.chord_sq
    }
}

fn angular_width(n: u64, beta: Exponent) -> f64 {
    (n as f64).powf(beta.to_f64() - 0.5)
}

fn check_beta(beta: Exponent) -> Result<()> {
    if beta.is_below_half() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "beta must lie in (0, 1/2), got {beta}"
        )))
    }
}

/// Two-pointer sweep over the circularly doubled point list. Returns the best
/// count and the index of a window start achieving it.
pub fn sweep(points: &[(i64, i64)], window: ArcWindow) -> (u64, usize) {
    let k = points.len();
    let mut best = (0u64, 0usize);
    let mut j = 0usize;
    for i in 0..k {
        j = j.max(i);
        while j < i + k && window.contains(points[i], points[j % k]) {
            j += 1;
        }
        let count = (j - i) as u64;
        if count > best.0 {
            best = (count, i);
        }
    }
    best
}

/// `O(k^2)` reference: for every start point, count all points inside its
/// window directly.
pub fn sweep_bruteforce(points: &[(i64, i64)], window: ArcWindow) -> u64 {
    points
        .iter()
        .map(|&p| points.iter().filter(|&&q| window.contains(p, q)).count() as u64)
        .max()
        .unwrap_or(0)
}

fn axis_bound(n: u64, beta: Exponent) -> u64 {
    // largest b >= 0 with b < N^beta
    let c = beta.ceil_scaled_pow(n, 1);
    c.saturating_sub(1)
}

fn scan_circle(n: u64, beta: Exponent, points: &[(i64, i64)]) -> ArcScanResult {
    let window = ArcWindow::new(n, beta);
    let (max_count, start) = sweep(points, window);
    let limit = axis_bound(n, beta);
    ArcScanResult {
        n,
        beta,
        points: points.len() as u64,
        arc_length: (n as f64).powf(beta.to_f64()),
        angular_width: angular_width(n, beta),
        max_count,
        witness_start_angle: points.get(start).map_or(0.0, |&p| angle_of(p)),
        axis_count: points
            .iter()
            .filter(|p| p.1.unsigned_abs() <= limit)
            .count() as u64,
    }
}

pub fn max_arc_count(n: u64, beta: Exponent) -> Result<ArcScanResult> {
    if n < 1 {
        return Err(Error::Domain("N must be >= 1".into()));
    }
    check_beta(beta)?;
    let cp = circle_points(n);
    Ok(scan_circle(n, beta, &cp.points))
}

/// One row of [`conjecture_scan`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub result: ArcScanResult,
    pub running_max: u64,
}

/// Arc maxima for every `N <= nmax` that is a sum of two squares, in
/// increasing `N`. Bands of `N` are enumerated independently.
pub fn conjecture_scan(nmax: u64, beta: Exponent) -> Result<Vec<ScanRow>> {
    if nmax < 1 {
        return Err(Error::Domain("Nmax must be >= 1".into()));
    }
    check_beta(beta)?;
    let reach = nmax.isqrt() + 1;
    let parts = par::map_ordered(par::bands(1, nmax + 1, SCAN_BAND), |band| {
        let mut reps: Vec<(u64, u64, u64)> = Vec::new();
        par::for_each_in_band(&band, 1..reach, 0..reach, |a, b, k| reps.push((k, a, b)));
        reps.sort_unstable();
        reps.chunk_by(|x, y| x.0 == y.0)
            .map(|group| {
                let pairs: Vec<(u64, u64)> = group.iter().map(|&(_, a, b)| (a, b)).collect();
                scan_circle(group[0].0, beta, &orbit(&pairs))
            })
            .collect::<Vec<_>>()
    });
    let mut running = 0;
    Ok(parts
        .into_iter()
        .flatten()
        .map(|result| {
            running = running.max(result.max_count);
            ScanRow {
                result,
                running_max: running,
            }
        })
        .collect())
}
