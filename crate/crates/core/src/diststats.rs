//! Distance classes and quadruple energy of planar point sets.
//!
//! A distance class collects the ordered pairs `(p, q)`, `p != q`, at one
//! squared distance. The energy `|Q|` is the number of ordered quadruples
//! `(a, p, b, q)` with `|ap| = |bq| > 0`, which is the sum of squared class
//! sizes. Cauchy-Schwarz gives `|Q| >= (N^2 - N)^2 / x` for `x` classes;
//! the gap ratio measures how far above that bound a configuration sits.
//!
//! Squared distances are exact integers throughout.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{ensure_capacity, ensure_size, Error, Result};
use crate::par;

/// Ceiling on dense per-key counters (8 bytes each).
pub const DENSE_CEILING: u64 = 1 << 26;

/// Largest point set accepted by [`histogram_bruteforce`].
pub const HISTOGRAM_ORACLE_CEILING: usize = 10_000;

/// Largest point set accepted by [`quadruple_bruteforce`].
pub const QUADRUPLE_ORACLE_CEILING: usize = 64;

/// Longest L-shape arm accepted by [`lshape_report`]; work grows as `n^2`.
pub const LSHAPE_CEILING: u32 = 1 << 18;

/// Distinct integer points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<(i32, i32)>,
}

impl PointSet {
    pub fn new(points: Vec<(i32, i32)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for &p in &points {
            if !seen.insert(p) {
                return Err(Error::Domain(format!("duplicate point {p:?}")));
            }
        }
        Ok(PointSet { points })
    }

    /// `{0..w-1} x {0..h-1}`.
    pub fn grid(w: u32, h: u32) -> Result<Self> {
        let w = i32::try_from(w).map_err(|_| Error::Domain("grid width too large".into()))?;
        let h = i32::try_from(h).map_err(|_| Error::Domain("grid height too large".into()))?;
        let points = (0..w).flat_map(|x| (0..h).map(move |y| (x, y))).collect();
        Ok(PointSet { points })
    }

    /// `{(1,0),..,(n,0)} u {(0,1),..,(0,n)}`.
    pub fn lshape(n: u32) -> Result<Self> {
        let n = i32::try_from(n).map_err(|_| Error::Domain("L-shape arm too long".into()))?;
        let points = (1..=n)
            .map(|i| (i, 0))
            .chain((1..=n).map(|j| (0, j)))
            .collect();
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(i32, i32)] {
        &self.points
    }
}

fn squared_distance(p: (i32, i32), q: (i32, i32)) -> Result<u64> {
    let dx = (i64::from(p.0) - i64::from(q.0)).unsigned_abs();
    let dy = (i64::from(p.1) - i64::from(q.1)).unsigned_abs();
    (dx * dx)
        .checked_add(dy * dy)
        .ok_or(Error::Overflow("squared distance exceeds 64 bits"))
}

/// Ordered-pair counts keyed by squared distance, sorted by key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceHistogram {
    entries: Vec<(u64, u64)>,
    total: u64,
}

impl DistanceHistogram {
    fn from_sorted(entries: Vec<(u64, u64)>) -> Self {
        let total = entries.iter().map(|&(_, c)| c).sum();
        DistanceHistogram { entries, total }
    }

    /// `(squared distance, ordered pair count)` in increasing key order.
    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    /// Ordered pairs at squared distance `key`; zero if the class is empty.
    pub fn get(&self, key: u64) -> u64 {
        self.entries
            .binary_search_by_key(&key, |&(k, _)| k)
            .map_or(0, |i| self.entries[i].1)
    }

    /// Number of distinct nonzero distances.
    pub fn distinct(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn total_ordered_pairs(&self) -> u64 {
        self.total
    }

    /// Check the structural invariants against a point count.
    pub fn validate(&self, points: u64) -> Result<()> {
        let mut prev = 0u64;
        for &(k, c) in &self.entries {
            if k <= prev {
                return Err(Error::Invariant(format!("key {k} not increasing")));
            }
            if c == 0 || c % 2 == 1 {
                return Err(Error::Invariant(format!("count {c} at key {k}")));
            }
            prev = k;
        }
        let expect = points * points.saturating_sub(1);
        if self.total != expect {
            return Err(Error::Invariant(format!(
                "total {} != N^2 - N = {expect}",
                self.total
            )));
        }
        Ok(())
    }
}

/// All ordered pairs of distinct points, bucketed by squared distance.
pub fn histogram_bruteforce(ps: &PointSet) -> Result<DistanceHistogram> {
    let n = ps.len();
    if n < 2 {
        return Err(Error::Domain("histogram needs at least two points".into()));
    }
    ensure_size(
        "histogram oracle point set",
        n as u128,
        HISTOGRAM_ORACLE_CEILING as u128,
    )?;
    let pts = ps.points();
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            *counts.entry(squared_distance(p, q)?).or_default() += 2;
        }
    }
    let mut entries: Vec<_> = counts.into_iter().collect();
    entries.sort_unstable();
    Ok(DistanceHistogram::from_sorted(entries))
}

/// Histogram of the full `w x h` grid from difference vectors.
///
/// A vector `(dx, dy)` with `0 <= dx < w`, `0 <= dy < h` occurs at
/// `(w - dx)(h - dy)` positions; it stands for 4 ordered directions when both
/// components are nonzero and 2 otherwise.
pub fn histogram_rect_fast(w: u32, h: u32) -> Result<DistanceHistogram> {
    rect_histogram_with(w, h, |dx, dy| if dx > 0 && dy > 0 { 4 } else { 2 })
}

/// Shared body of [`histogram_rect_fast`]; `directions` gives the number of
/// ordered pairs represented by one placement of a difference vector.
pub(crate) fn rect_histogram_with<F>(w: u32, h: u32, directions: F) -> Result<DistanceHistogram>
where
    F: Fn(u64, u64) -> u64 + Sync + Send,
{
    if w == 0 || h == 0 || u64::from(w) * u64::from(h) < 2 {
        return Err(Error::Domain(format!(
            "grid {w}x{h} has fewer than two points"
        )));
    }
    let (w, h) = (u64::from(w), u64::from(h));
    let max_key = (w - 1) * (w - 1) + (h - 1) * (h - 1);
    ensure_capacity(
        "dense histogram",
        u128::from(max_key) + 1,
        u128::from(DENSE_CEILING),
    )?;
    let parts = par::map_ordered(par::bands(1, max_key + 1, par::BAND_WIDTH), |band| {
        let mut dense = vec![0u64; (band.end - band.start) as usize];
        par::for_each_in_band(&band, 0..w, 0..h, |dx, dy, key| {
            dense[(key - band.start) as usize] += (w - dx) * (h - dy) * directions(dx, dy);
        });
        dense
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(i, c)| (band.start + i as u64, c))
            .collect::<Vec<_>>()
    });
    Ok(DistanceHistogram::from_sorted(parts.concat()))
}

/// Distinct count, total and energy of a histogram, without the entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassSummary {
    pub distinct: u64,
    pub total: u64,
    pub energy: u128,
}

impl ClassSummary {
    pub fn add_class(&mut self, count: u64) -> Result<()> {
        if count == 0 {
            return Ok(());
        }
        let sq = u128::from(count) * u128::from(count);
        self.distinct += 1;
        self.total = self
            .total
            .checked_add(count)
            .ok_or(Error::Overflow("total ordered pairs"))?;
        self.energy = self
            .energy
            .checked_add(sq)
            .ok_or(Error::Overflow("quadruple energy"))?;
        Ok(())
    }

    pub fn merge(&mut self, other: &ClassSummary) -> Result<()> {
        self.distinct += other.distinct;
        self.total = self
            .total
            .checked_add(other.total)
            .ok_or(Error::Overflow("total ordered pairs"))?;
        self.energy = self
            .energy
            .checked_add(other.energy)
            .ok_or(Error::Overflow("quadruple energy"))?;
        Ok(())
    }
}

/// Energy of the distance classes and its Cauchy-Schwarz lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadrupleStats {
    /// Number of distinct distances `x`.
    pub distinct: u64,
    pub total_ordered_pairs: u64,
    /// `|Q| = sum |E_i|^2`.
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub energy: u128,
    /// Numerator of the bound `total^2 / distinct`.
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub cs_bound_num: u128,
    pub cs_bound: f64,
    /// `energy * distinct / total^2`, at least 1.
    pub gap_ratio: f64,
}

impl QuadrupleStats {
    pub fn from_summary(s: &ClassSummary) -> Result<Self> {
        if s.distinct == 0 {
            return Err(Error::Domain("no distance classes".into()));
        }
        let num = u128::from(s.total) * u128::from(s.total);
        let x = u128::from(s.distinct);
        // Exact Cauchy-Schwarz check whenever the product fits.
        if let Some(lhs) = s.energy.checked_mul(x) {
            if lhs < num {
                return Err(Error::Invariant(format!(
                    "energy {} below Cauchy-Schwarz bound {num}/{x}",
                    s.energy
                )));
            }
        }
        Ok(QuadrupleStats {
            distinct: s.distinct,
            total_ordered_pairs: s.total,
            energy: s.energy,
            cs_bound_num: num,
            cs_bound: num as f64 / x as f64,
            gap_ratio: s.energy as f64 * x as f64 / num as f64,
        })
    }

    /// Exact test of `gap_ratio == 1`.
    pub fn is_tight(&self) -> bool {
        self.energy.checked_mul(u128::from(self.distinct)) == Some(self.cs_bound_num)
    }
}

pub fn summarize(h: &DistanceHistogram) -> Result<ClassSummary> {
    let mut s = ClassSummary::default();
    for &(_, c) in h.entries() {
        s.add_class(c)?;
    }
    Ok(s)
}

pub fn quadruple_stats(h: &DistanceHistogram) -> Result<QuadrupleStats> {
    QuadrupleStats::from_summary(&summarize(h)?)
}

/// Direct count of ordered `(a, p, b, q)` with `|ap| = |bq| > 0`: every
/// ordered pair of ordered pairs is compared.
pub fn quadruple_bruteforce(ps: &PointSet) -> Result<u128> {
    ensure_size(
        "quadruple oracle point set",
        ps.len() as u128,
        QUADRUPLE_ORACLE_CEILING as u128,
    )?;
    let pts = ps.points();
    let mut segments = Vec::with_capacity(pts.len() * pts.len());
    for &a in pts {
        for &p in pts {
            if a != p {
                segments.push(squared_distance(a, p)?);
            }
        }
    }
    let mut count = 0u128;
    for &s in &segments {
        for &t in &segments {
            if s == t {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Statistics of the `m x m` grid with the normalizations used in band checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SquareLatticeReport {
    pub side: u32,
    pub points: u64,
    pub stats: QuadrupleStats,
    /// `|Q| / (N^3 ln N)`.
    pub energy_over_n3_ln_n: f64,
    /// `x sqrt(ln N) / N`.
    pub distinct_sqrt_ln_n_over_n: f64,
    /// `gap_ratio / sqrt(ln N)`.
    pub gap_over_sqrt_ln_n: f64,
}

pub fn square_lattice_report(m: u32) -> Result<SquareLatticeReport> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "square lattice side must be >= 2, got {m}"
        )));
    }
    let h = histogram_rect_fast(m, m)?;
    let stats = quadruple_stats(&h)?;
    let n = u64::from(m) * u64::from(m);
    let nf = n as f64;
    let ln = nf.ln();
    Ok(SquareLatticeReport {
        side: m,
        points: n,
        energy_over_n3_ln_n: stats.energy as f64 / (nf * nf * nf * ln),
        distinct_sqrt_ln_n_over_n: stats.distinct as f64 * ln.sqrt() / nf,
        gap_over_sqrt_ln_n: stats.gap_ratio / ln.sqrt(),
        stats,
    })
}

/// Distance statistics of the L-shaped set `P1 u P2` with arms of length `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LShapeReport {
    pub n: u32,
    pub points: u64,
    /// Distinct distances `D(P')`.
    pub distinct: u64,
    /// `sum_{1 <= i <= n/2} d_i^2`, `d_i` the ordered pairs at distance `i`.
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub trivial_energy: u128,
    /// The same sum restricted to pairs on one axis: `sum 16 (n - i)^2`.
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub intra_trivial_energy: u128,
    /// Cross-axis ordered pairs at an integer distance `i <= n/2`.
    pub cross_integer_pairs: u64,
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub energy: u128,
    pub total_ordered_pairs: u64,
    pub cs_bound: f64,
    pub gap_ratio: f64,
}

impl LShapeReport {
    pub fn trivial_over_n3(&self) -> f64 {
        let n = f64::from(self.n);
        self.trivial_energy as f64 / (n * n * n)
    }
}

/// Closed form `sum_{1 <= i <= n/2} (4 (n - i))^2` of the one-axis part of
/// the trivial energy.
pub fn lshape_intra_trivial_energy(n: u32) -> u128 {
    let n = u128::from(n);
    (1..=n / 2).map(|i| 16 * (n - i) * (n - i)).sum()
}

/// Exact statistics of the L-shape, computed band by band over squared
/// distances without materializing the histogram.
///
/// Keys `i^2` carry `4(n - i)` one-axis pairs; keys `a^2 + b^2` with
/// `1 <= a, b <= n` carry two ordered cross pairs each. Cross pairs that land
/// on a perfect square merge into the integer class.
pub fn lshape_report(n: u32) -> Result<LShapeReport> {
    if n < 1 {
        return Err(Error::Domain("L-shape arm length must be >= 1".into()));
    }
    ensure_size(
        "L-shape arm length",
        u128::from(n),
        u128::from(LSHAPE_CEILING),
    )?;
    let nn = u64::from(n);
    let max_key = 2 * nn * nn;
    let half = nn / 2;

    struct Part {
        summary: ClassSummary,
        trivial: u128,
        cross: u64,
    }

    let parts = par::map_ordered(par::bands(1, max_key + 1, par::BAND_WIDTH), |band| {
        let mut counts = vec![0u32; (band.end - band.start) as usize];
        par::for_each_in_band(&band, 1..nn + 1, 1..nn + 1, |_, _, k| {
            counts[(k - band.start) as usize] += 2;
        });
        let mut trivial = 0u128;
        let mut cross = 0u64;
        let first = crate::par::ceil_sqrt(band.start);
        for i in first.. {
            let k = i * i;
            if k >= band.end {
                break;
            }
            let slot = (k - band.start) as usize;
            let cross_here = u64::from(counts[slot]);
            if i < nn {
                counts[slot] += (4 * (nn - i)) as u32;
            }
            if i <= half {
                let d = u128::from(counts[slot]);
                trivial += d * d;
                cross += cross_here;
            }
        }
        let mut summary = ClassSummary::default();
        for &c in &counts {
            summary.add_class(u64::from(c))?;
        }
        Ok::<_, Error>(Part {
            summary,
            trivial,
            cross,
        })
    });

    let mut summary = ClassSummary::default();
    let mut trivial = 0u128;
    let mut cross = 0u64;
    for p in parts {
        let p: Part = p?;
        summary.merge(&p.summary)?;
        trivial += p.trivial;
        cross += p.cross;
    }
    let points = 2 * nn;
    if summary.total != points * (points - 1) {
        return Err(Error::Invariant(format!(
            "L-shape pair total {} != {}",
            summary.total,
            points * (points - 1)
        )));
    }
    let stats = QuadrupleStats::from_summary(&summary)?;
    Ok(LShapeReport {
        n,
        points,
        distinct: stats.distinct,
        trivial_energy: trivial,
        intra_trivial_energy: lshape_intra_trivial_energy(n),
        cross_integer_pairs: cross,
        energy: stats.energy,
        total_ordered_pairs: stats.total_ordered_pairs,
        cs_bound: stats.cs_bound,
        gap_ratio: stats.gap_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i32, i32)]) -> PointSet {
        PointSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        let h = histogram_bruteforce(&PointSet::grid(2, 2).unwrap()).unwrap();
        assert_eq!(h.entries(), &[(1, 8), (2, 4)]);
        assert_eq!(h.total_ordered_pairs(), 12);

        let h = histogram_bruteforce(&pts(&[(0, 0), (3, 4)])).unwrap();
        assert_eq!(h.entries(), &[(25, 2)]);

        let h = histogram_bruteforce(&pts(&[(0, 0), (1, 0), (2, 0)])).unwrap();
        assert_eq!(h.entries(), &[(1, 4), (4, 2)]);
    }

    #[test]
    fn rect_fast_examples() {
        assert_eq!(
            histogram_rect_fast(2, 2).unwrap().entries(),
            &[(1, 8), (2, 4)]
        );
        let h = histogram_rect_fast(3, 3).unwrap();
        assert_eq!(h.entries(), &[(1, 24), (2, 16), (4, 12), (5, 16), (8, 4)]);
        assert_eq!(h.total_ordered_pairs(), 72);
        assert_eq!(histogram_rect_fast(2, 1).unwrap().entries(), &[(1, 2)]);
        assert_eq!(histogram_rect_fast(1, 2).unwrap().entries(), &[(1, 2)]);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(PointSet::new(vec![(1, 1), (1, 1)]).is_err());
        assert!(histogram_bruteforce(&pts(&[(0, 0)])).is_err());
        assert!(histogram_rect_fast(1, 1).is_err());
        assert!(matches!(
            histogram_rect_fast(10_000, 10_000),
            Err(Error::Capacity { .. })
        ));
        let big = PointSet::grid(9, 8).unwrap();
        assert!(matches!(
            quadruple_bruteforce(&big),
            Err(Error::Size { .. })
        ));
        assert!(square_lattice_report(1).is_err());
    }

    #[test]
    fn extreme_coordinates_do_not_wrap() {
        let h = histogram_bruteforce(&pts(&[(i32::MIN, i32::MIN), (i32::MAX, i32::MIN)])).unwrap();
        let d = u64::from(u32::MAX);
        assert_eq!(h.entries(), &[(d * d, 2)]);
        let far = pts(&[(i32::MIN, i32::MIN), (i32::MAX, i32::MAX)]);
        assert!(matches!(
            histogram_bruteforce(&far),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn stats_examples() {
        let s = quadruple_stats(&histogram_rect_fast(2, 2).unwrap()).unwrap();
        assert_eq!((s.distinct, s.energy), (2, 80));
        assert_eq!(s.cs_bound, 72.0);
        assert!((s.gap_ratio - 10.0 / 9.0).abs() < 1e-15);

        let s = quadruple_stats(&histogram_bruteforce(&pts(&[(0, 0), (3, 4)])).unwrap()).unwrap();
        assert_eq!(
            (s.distinct, s.energy, s.cs_bound, s.gap_ratio),
            (1, 4, 4.0, 1.0)
        );
        assert!(s.is_tight());

        let s = quadruple_stats(&histogram_rect_fast(3, 3).unwrap()).unwrap();
        assert_eq!((s.distinct, s.energy), (5, 1248));
        assert!((s.cs_bound - 1036.8).abs() < 1e-9);
        assert!(!s.is_tight());
    }

    #[test]
    fn quadruple_bruteforce_examples() {
        assert_eq!(
            quadruple_bruteforce(&PointSet::grid(2, 2).unwrap()).unwrap(),
            80
        );
        assert_eq!(quadruple_bruteforce(&pts(&[(0, 0), (3, 4)])).unwrap(), 4);
        assert_eq!(
            quadruple_bruteforce(&PointSet::grid(3, 3).unwrap()).unwrap(),
            1248
        );
    }

    #[test]
    fn square_report_small() {
        let r = square_lattice_report(2).unwrap();
        assert_eq!((r.points, r.stats.distinct, r.stats.energy), (4, 2, 80));
        let r = square_lattice_report(3).unwrap();
        assert_eq!((r.points, r.stats.distinct, r.stats.energy), (9, 5, 1248));
    }

    #[test]
    fn lshape_two_matches_bruteforce() {
        // (1,0),(2,0),(0,1),(0,2): squared distances 1 (x2 pairs), 2, 5 (x2), 8
        let ps = PointSet::lshape(2).unwrap();
        let h = histogram_bruteforce(&ps).unwrap();
        assert_eq!(h.entries(), &[(1, 4), (2, 2), (5, 4), (8, 2)]);
        let r = lshape_report(2).unwrap();
        assert_eq!(r.distinct, 4);
        assert_eq!(r.energy, quadruple_stats(&h).unwrap().energy);
        // d_1 = 4
        assert_eq!(r.trivial_energy, 16);
        assert_eq!(r.cross_integer_pairs, 0);
    }

    #[test]
    fn lshape_one() {
        let r = lshape_report(1).unwrap();
        assert_eq!((r.points, r.distinct, r.energy), (2, 1, 4));
        assert_eq!(r.trivial_energy, 0);
    }

    #[test]
    fn lshape_counts_pythagorean_cross_pairs() {
        // n = 8: cross pair (3,4) sits at distance 5 > n/2, (6,8) at 10 > n - 1.
        // n = 12: (3,4) gives d_5 cross pairs with 5 <= 6.
        for n in [8u32, 12, 13, 20] {
            let ps = PointSet::lshape(n).unwrap();
            let h = histogram_bruteforce(&ps).unwrap();
            let r = lshape_report(n).unwrap();
            let trivial: u128 = (1..=u64::from(n) / 2)
                .map(|i| u128::from(h.get(i * i)).pow(2))
                .sum();
            assert_eq!(r.trivial_energy, trivial, "n={n}");
            assert_eq!(r.distinct, h.distinct(), "n={n}");
            assert_eq!(r.energy, quadruple_stats(&h).unwrap().energy, "n={n}");
            assert!(r.trivial_energy >= r.intra_trivial_energy);
        }
        assert_eq!(lshape_report(12).unwrap().cross_integer_pairs, 4);
    }
}
