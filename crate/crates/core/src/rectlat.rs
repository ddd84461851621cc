//! Rectangular lattices `R_a(n) = {0 <= i <= n^(1-a), 0 <= j <= n^a}`.
//!
//! The sublattice `R'_a(n)` keeps the columns `2 n^a <= i <= n^(1-a)`. Over it
//! we count `r(m)` (points with `i^2 + j^2 = m`) and `d(m)` (points with
//! `i^2 - j^2 = m`). Reflecting `j` between the two members of a pair turns
//! equal sums into equal differences, so
//!
//! * `sum r(m) = sum d(m) = |R'|`,
//! * `sum r(m)^2 = sum d(m)^2`,
//! * `sum C(r(m), 2) = sum C(d(m), 2)`.
//!
//! Distinct distances of the full lattice are then bounded below by
//! `|R'| - sum_{k >= 2} (k - 1) |M_k|`, with `M_k = {m : r(m) = k}`, and the
//! excess is at most `sum C(d(m), 2)`. That last sum is split over the
//! intervals `I_l = [l^2 T, (l + 1)^2 T)` with `T = floor(n^(2a))`.
//!
//! All real powers are exact integer floors of rational powers.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{ensure_capacity, ensure_size, Error, Result};
use crate::par;
use crate::rational::Exponent;

/// Most sublattice points enumerated by [`rep_counts`].
pub const SUBLATTICE_CEILING: u64 = 1 << 25;

/// Most keys scanned by [`distinct_distances_box`].
pub const BITSET_CEILING: u64 = 1 << 36;

/// Most colliding pairs examined by [`check_interval_witnesses`].
pub const WITNESS_CEILING: u128 = 1 << 26;

/// Exact bounds of `R_a(n)` and its sublattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RectLatticeSpec {
    pub n: u64,
    pub alpha: Exponent,
    /// `W = floor(n^(1-a))`.
    pub width: u64,
    /// `H = floor(n^a)`.
    pub height: u64,
    /// `ceil(2 n^a)`, first sublattice column.
    pub i_min: u64,
    /// `T = floor(n^(2a))`, the scale of the intervals `I_l`.
    pub scale: u64,
}

pub fn build_spec(n: u64, alpha: Exponent) -> Result<RectLatticeSpec> {
    if !alpha.is_below_half() {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1/2), got {alpha}"
        )));
    }
    if n < 1 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    let width = alpha.complement().floor_pow(n);
    let height = alpha.floor_pow(n);
    let i_min = alpha.ceil_scaled_pow(n, 2);
    let spec = RectLatticeSpec {
        n,
        alpha,
        width,
        height,
        i_min,
        scale: alpha.doubled().floor_pow(n),
    };
    spec.check()?;
    Ok(spec)
}

impl RectLatticeSpec {
    /// A spec with explicit bounds, for degenerate or toy lattices. The
    /// interval scale still comes from `n` and `alpha`.
    pub fn with_bounds(
        n: u64,
        alpha: Exponent,
        width: u64,
        height: u64,
        i_min: u64,
    ) -> Result<Self> {
        if !alpha.is_below_half() {
            return Err(Error::Domain(format!(
                "alpha must lie in (0, 1/2), got {alpha}"
            )));
        }
        let spec = RectLatticeSpec {
            n,
            alpha,
            width,
            height,
            i_min,
            scale: alpha.doubled().floor_pow(n),
        };
        if i_min > width {
            return Err(spec.empty_error());
        }
        if i_min <= height {
            return Err(Error::Domain(format!(
                "iMin={i_min} must exceed H={height} so that i^2 - j^2 > 0"
            )));
        }
        Ok(spec)
    }

    fn empty_error(&self) -> Error {
        Error::EmptySublattice {
            n: self.n,
            alpha: self.alpha.to_string(),
            i_min: self.i_min,
            width: self.width,
        }
    }

    fn check(&self) -> Result<()> {
        if self.i_min > self.width {
            return Err(self.empty_error());
        }
        // W H <= n and (W + 1)(H + 1) - n <= 3 n^(1-a).
        let area = u128::from(self.width) * u128::from(self.height);
        if area > u128::from(self.n) {
            return Err(Error::Invariant(format!("W*H = {area} exceeds n")));
        }
        let full = (self.width + 1) * (self.height + 1);
        let excess = full.saturating_sub(self.n);
        if !self.alpha.complement().le_scaled_pow(excess, self.n, 3) {
            return Err(Error::Invariant(format!(
                "(W+1)(H+1) - n = {excess} exceeds 3 n^(1-a)"
            )));
        }
        Ok(())
    }

    /// `|R'| = (W - iMin + 1)(H + 1)`.
    pub fn sublattice_size(&self) -> u64 {
        (self.width - self.i_min + 1) * (self.height + 1)
    }

    /// `|R| = (W + 1)(H + 1)`.
    pub fn lattice_size(&self) -> u64 {
        (self.width + 1) * (self.height + 1)
    }

    /// Interval index `l` with `l^2 T <= m < (l + 1)^2 T`.
    pub fn interval_of(&self, m: u64) -> u64 {
        (m / self.scale).isqrt()
    }
}

/// Smallest `n` for which the sublattice is nonempty, found by scanning
/// `n = 1, 2, ...` up to `limit`.
pub fn empirical_n0(alpha: Exponent, limit: u64) -> Option<u64> {
    (1..=limit).find(|&n| build_spec(n, alpha).is_ok())
}

/// Sparse `m -> r(m)` and `m -> d(m)` over the sublattice, sorted by `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepCounts {
    pub spec: RectLatticeSpec,
    pub r_counts: Vec<(u64, u32)>,
    pub d_counts: Vec<(u64, u32)>,
}

fn run_lengths(mut keys: Vec<u64>) -> Vec<(u64, u32)> {
    par::sort_unstable(&mut keys);
    let mut out: Vec<(u64, u32)> = Vec::new();
    for k in keys {
        match out.last_mut() {
            Some((last, c)) if *last == k => *c += 1,
            _ => out.push((k, 1)),
        }
    }
    out
}

const COLUMN_CHUNK: u64 = 256;

pub fn rep_counts(spec: &RectLatticeSpec) -> Result<RepCounts> {
    ensure_capacity(
        "sublattice",
        u128::from(spec.sublattice_size()),
        u128::from(SUBLATTICE_CEILING),
    )?;
    let h = spec.height;
    let parts = par::map_ordered(
        par::bands(spec.i_min, spec.width + 1, COLUMN_CHUNK),
        |cols| {
            let mut sums = Vec::with_capacity(((cols.end - cols.start) * (h + 1)) as usize);
            let mut diffs = Vec::with_capacity(sums.capacity());
            for i in cols {
                for j in 0..=h {
                    sums.push(i * i + j * j);
                    diffs.push(i * i - j * j);
                }
            }
            (sums, diffs)
        },
    );
    let (sums, diffs): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
    Ok(RepCounts {
        spec: *spec,
        r_counts: run_lengths(sums.concat()),
        d_counts: run_lengths(diffs.concat()),
    })
}

/// The six sums behind the identities, all exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub sum_r: u128,
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub sum_d: u128,
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub sum_r2: u128,
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub sum_d2: u128,
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub sum_binom_r2: u128,
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub sum_binom_d2: u128,
}

fn moments(counts: &[(u64, u32)]) -> Result<(u128, u128, u128)> {
    let mut s1 = 0u128;
    let mut s2 = 0u128;
    let mut sb = 0u128;
    for &(_, c) in counts {
        let c = u128::from(c);
        s1 = s1.checked_add(c).ok_or(Error::Overflow("sum of counts"))?;
        s2 = s2
            .checked_add(c * c)
            .ok_or(Error::Overflow("sum of squared counts"))?;
        sb = sb
            .checked_add(c * (c - 1) / 2)
            .ok_or(Error::Overflow("sum of binomials"))?;
    }
    Ok((s1, s2, sb))
}

/// Compute the six sums. Any failed equality is reported as
/// [`Error::Invariant`].
pub fn verify_identities(rc: &RepCounts) -> Result<IdentityReport> {
    let (sum_r, sum_r2, sum_binom_r2) = moments(&rc.r_counts)?;
    let (sum_d, sum_d2, sum_binom_d2) = moments(&rc.d_counts)?;
    let report = IdentityReport {
        sum_r,
        sum_d,
        sum_r2,
        sum_d2,
        sum_binom_r2,
        sum_binom_d2,
    };
    for (name, a, b) in [
        ("sum r = sum d", sum_r, sum_d),
        ("sum r^2 = sum d^2", sum_r2, sum_d2),
        ("sum C(r,2) = sum C(d,2)", sum_binom_r2, sum_binom_d2),
    ] {
        if a != b {
            return Err(Error::Invariant(format!("{name}: {a} != {b}")));
        }
    }
    if sum_r != u128::from(rc.spec.sublattice_size()) {
        return Err(Error::Invariant(format!(
            "sum r = {sum_r} but |R'| = {}",
            rc.spec.sublattice_size()
        )));
    }
    Ok(report)
}

/// Witness `(s1, s2, s3, s4)` with `m1 = s1 s2`, `m2 = s3 s4`, `m3 = s1 s3`,
/// `m4 = s2 s4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FourTuple {
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
    pub s4: u64,
}

impl FourTuple {
    pub fn satisfies(&self, m1: u64, m2: u64, m3: u64, m4: u64) -> bool {
        let p = |a: u64, b: u64| u128::from(a) * u128::from(b);
        p(self.s1, self.s2) == u128::from(m1)
            && p(self.s3, self.s4) == u128::from(m2)
            && p(self.s1, self.s3) == u128::from(m3)
            && p(self.s2, self.s4) == u128::from(m4)
    }
}

/// Split two factorizations `m1 m2 = m3 m4` into a common refinement.
///
/// Takes `s1 = gcd(m1, m3)`. Then `s2 = m1 / s1` divides `m4`: for each prime,
/// `v(s2) = v(m1) - min(v(m1), v(m3))`, which is at most `v(m4)` because
/// `v(m1) + v(m2) = v(m3) + v(m4)`.
pub fn four_number_lemma(m1: u64, m2: u64, m3: u64, m4: u64) -> Result<FourTuple> {
    if m1 == 0 || m2 == 0 || m3 == 0 || m4 == 0 {
        return Err(Error::Domain(
            "four-number lemma needs positive integers".into(),
        ));
    }
    if u128::from(m1) * u128::from(m2) != u128::from(m3) * u128::from(m4) {
        return Err(Error::Domain(format!("{m1}*{m2} != {m3}*{m4}")));
    }
    let s1 = m1.gcd(&m3);
    let s2 = m1 / s1;
    let s3 = m3 / s1;
    let s4 = m4 / s2;
    let t = FourTuple { s1, s2, s3, s4 };
    debug_assert!(t.satisfies(m1, m2, m3, m4));
    Ok(t)
}

/// `S = sum_m C(d(m), 2)` and its split over the intervals `I_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalSums {
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub total: u128,
    pub scale: u64,
    /// `(l, sum over m in I_l)` for every `l` holding at least one key.
    pub buckets: Vec<(u64, u128)>,
    pub l_min: u64,
    pub l_max: u64,
}

pub fn sum_binom_d2(rc: &RepCounts) -> Result<IntervalSums> {
    let scale = rc.spec.scale;
    let mut buckets: Vec<(u64, u128)> = Vec::new();
    let mut total = 0u128;
    for &(m, c) in &rc.d_counts {
        let l = m / scale;
        let l = l.isqrt();
        let b = u128::from(c) * (u128::from(c) - 1) / 2;
        total = total
            .checked_add(b)
            .ok_or(Error::Overflow("sum of binomials"))?;
        match buckets.last_mut() {
            Some((last, s)) if *last == l => *s += b,
            _ => buckets.push((l, b)),
        }
    }
    let l_min = buckets.first().map_or(0, |b| b.0);
    let l_max = buckets.last().map_or(0, |b| b.0);
    Ok(IntervalSums {
        total,
        scale,
        buckets,
        l_min,
        l_max,
    })
}

/// Distinct positive values of `dx^2 + dy^2` over `0 <= dx <= w`, `0 <= dy <= h`.
pub fn distinct_distances_box(w: u64, h: u64) -> Result<u64> {
    let max_key = w
        .checked_mul(w)
        .and_then(|a| h.checked_mul(h).and_then(|b| a.checked_add(b)))
        .ok_or(Error::Overflow("box diameter"))?;
    ensure_capacity(
        "distance bitset",
        u128::from(max_key) + 1,
        u128::from(BITSET_CEILING),
    )?;
    let counts = par::map_ordered(par::bands(1, max_key + 1, par::BAND_WIDTH), |band| {
        let width = (band.end - band.start) as usize;
        let mut bits = vec![0u64; width.div_ceil(64)];
        par::for_each_in_band(&band, 0..w + 1, 0..h + 1, |_, _, k| {
            let off = (k - band.start) as usize;
            bits[off / 64] |= 1 << (off % 64);
        });
        bits.iter().map(|b| u64::from(b.count_ones())).sum::<u64>()
    });
    Ok(counts.into_iter().sum())
}

/// `D_a(n)`: every difference vector of the lattice is realized, so this is
/// the distinct-value count over the `W x H` box of vectors.
pub fn distinct_distances_rect(spec: &RectLatticeSpec) -> Result<u64> {
    distinct_distances_box(spec.width, spec.height)
}

/// Full lower-bound chain for one `(n, a)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DalphaReport {
    pub spec: RectLatticeSpec,
    pub distinct: u64,
    pub lattice_size: u64,
    pub sublattice_size: u64,
    /// `sum_{k >= 2} (k - 1) |M_k|`.
    pub excess_sum: u64,
    /// `sum_m C(d(m), 2)`.
    #[serde(serialize_with = "crate::ser::u128_str")]
    pub binom_sum: u128,
    pub intervals: IntervalSums,
    /// `k -> |M_k|`.
    pub mk_histogram: Vec<(u32, u64)>,
    pub identities: IdentityReport,
}

impl DalphaReport {
    pub fn distinct_over_n(&self) -> f64 {
        self.distinct as f64 / self.spec.n as f64
    }

    /// `S / (floor(n^(2a)) (ln n)^2)`.
    pub fn binom_normalized(&self) -> f64 {
        let ln = (self.spec.n as f64).ln();
        self.binom_sum as f64 / (self.spec.scale as f64 * ln * ln)
    }
}

/// Assemble the chain and check `D >= |R'| - excess` and `excess <= S` exactly.
pub fn dalpha_report(n: u64, alpha: Exponent) -> Result<DalphaReport> {
    let spec = build_spec(n, alpha)?;
    dalpha_report_for(&spec)
}

pub fn dalpha_report_for(spec: &RectLatticeSpec) -> Result<DalphaReport> {
    let rc = rep_counts(spec)?;
    let identities = verify_identities(&rc)?;
    let intervals = sum_binom_d2(&rc)?;
    let distinct = distinct_distances_rect(spec)?;

    let mut mk: BTreeMap<u32, u64> = BTreeMap::new();
    for &(_, k) in &rc.r_counts {
        *mk.entry(k).or_default() += 1;
    }
    let excess_sum: u64 = mk.iter().map(|(&k, &c)| u64::from(k - 1) * c).sum();
    let sublattice_size = spec.sublattice_size();
    let values = mk.values().sum::<u64>();
    if values + excess_sum != sublattice_size {
        return Err(Error::Invariant(format!(
            "sum k |M_k| = {} != |R'| = {sublattice_size}",
            values + excess_sum
        )));
    }
    if distinct < sublattice_size - excess_sum {
        return Err(Error::Invariant(format!(
            "D = {distinct} < |R'| - excess = {}",
            sublattice_size - excess_sum
        )));
    }
    if u128::from(excess_sum) > intervals.total {
        return Err(Error::Invariant(format!(
            "excess {excess_sum} > S = {}",
            intervals.total
        )));
    }
    let bucket_total: u128 = intervals.buckets.iter().map(|b| b.1).sum();
    if bucket_total != intervals.total {
        return Err(Error::Invariant("interval sums do not add up to S".into()));
    }
    Ok(DalphaReport {
        spec: *spec,
        distinct,
        lattice_size: spec.lattice_size(),
        sublattice_size,
        excess_sum,
        binom_sum: intervals.total,
        intervals,
        mk_histogram: mk.into_iter().collect(),
        identities,
    })
}

/// One colliding pair `a^2 - b^2 = c^2 - d^2` (`a > c`, `b > d`) that broke
/// an interval inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessViolation {
    pub m: u64,
    pub l: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub tuple: FourTuple,
    pub rule: &'static str,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub pairs_checked: u64,
    /// Pairs in bucket `l = 0`, where floor slack voids the inequalities.
    pub pairs_exempt: u64,
    pub violations: Vec<WitnessViolation>,
}

/// Check every colliding pair of `i^2 - j^2` values in the sublattice against
/// the integer forms of the interval inequalities, with `T = floor(n^(2a))`:
///
/// * `l^2 T <= a^2, c^2 < (l + 2)^2 T`,
/// * `4 l^2 T <= (s3 s4)^2 < 4 (l + 2)^2 T`,
/// * `l s2 <= s3`, `l s1 <= s4`,
/// * `(s1 s2)^2 < 4T`, `s1 s3 <= 2H`, `s2 s4 <= 2H`,
///
/// where `(s1..s4)` splits `(a - c)(a + c) = (b - d)(b + d)`.
pub fn check_interval_witnesses(spec: &RectLatticeSpec) -> Result<WitnessSummary> {
    ensure_capacity(
        "sublattice",
        u128::from(spec.sublattice_size()),
        u128::from(SUBLATTICE_CEILING),
    )?;
    let mut pts: Vec<(u64, u64, u64)> = Vec::with_capacity(spec.sublattice_size() as usize);
    for i in spec.i_min..=spec.width {
        for j in 0..=spec.height {
            pts.push((i * i - j * j, i, j));
        }
    }
    par::sort_unstable(&mut pts);

    let t = u128::from(spec.scale);
    let two_h = 2 * u128::from(spec.height);
    let mut summary = WitnessSummary::default();
    let mut examined = 0u128;
    for group in pts.chunk_by(|x, y| x.0 == y.0) {
        if group.len() < 2 {
            continue;
        }
        examined += (group.len() * (group.len() - 1) / 2) as u128;
        ensure_size("colliding pairs", examined, WITNESS_CEILING)?;
        let m = group[0].0;
        let l = spec.interval_of(m);
        // Sorted by i ascending within a group, so later entries have larger i.
        for (x, &(_, c, d)) in group.iter().enumerate() {
            for &(_, a, b) in &group[x + 1..] {
                if l == 0 {
                    summary.pairs_exempt += 1;
                    continue;
                }
                summary.pairs_checked += 1;
                let tuple = four_number_lemma(a - c, a + c, b - d, b + d)?;
                if let Some(rule) = first_broken_rule(l, t, two_h, (a, b, c, d), &tuple) {
                    summary.violations.push(WitnessViolation {
                        m,
                        l,
                        a,
                        b,
                        c,
                        d,
                        tuple,
                        rule,
                    });
                }
            }
        }
    }
    Ok(summary)
}

fn first_broken_rule(
    l: u64,
    t: u128,
    two_h: u128,
    (a, b, c, d): (u64, u64, u64, u64),
    s: &FourTuple,
) -> Option<&'static str> {
    let l = u128::from(l);
    let sq = |v: u64| u128::from(v) * u128::from(v);
    let lo = l * l * t;
    let hi = (l + 2) * (l + 2) * t;
    if !(lo <= sq(a) && sq(a) < hi && lo <= sq(c) && sq(c) < hi) {
        return Some("l n^a <= a,c < (l+2) n^a");
    }
    if !s.satisfies(a - c, a + c, b - d, b + d) {
        return Some("four-number factorization");
    }
    let s34 = sq(s.s3 * s.s4);
    if !(4 * lo <= s34 && s34 < 4 * hi) {
        return Some("2l n^a <= s3 s4 < (2l+4) n^a");
    }
    let (s1, s2, s3, s4) = (
        u128::from(s.s1),
        u128::from(s.s2),
        u128::from(s.s3),
        u128::from(s.s4),
    );
    if !(s2 >= 1 && l * s2 <= s3 && s1 >= 1 && l * s1 <= s4) {
        return Some("1 <= s2 <= s3/l, 1 <= s1 <= s4/l");
    }
    if !(sq(s.s1 * s.s2) < 4 * t && s1 * s3 <= two_h && s2 * s4 <= two_h) {
        return Some("s1 s2, s1 s3, s2 s4 <= 2 n^a");
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn spec_examples() {
        let s = build_spec(1 << 20, e("2/5")).unwrap();
        assert_eq!((s.width, s.height, s.i_min), (4096, 256, 512));
        assert_eq!(s.scale, 1 << 16);
        let s = build_spec(64, e("1/3")).unwrap();
        assert_eq!((s.width, s.height, s.i_min), (16, 4, 8));
        assert_eq!(s.sublattice_size(), 45);
    }

    #[test]
    fn spec_rejections() {
        match build_spec(10, e("9/20")) {
            Err(Error::EmptySublattice { i_min, width, .. }) => assert_eq!((i_min, width), (6, 3)),
            other => panic!("expected empty sublattice, got {other:?}"),
        }
        assert!(matches!(build_spec(64, e("1/2")), Err(Error::Domain(_))));
        assert!(matches!(build_spec(64, e("0/1")), Err(Error::Domain(_))));
        assert!(matches!(build_spec(64, e("3/5")), Err(Error::Domain(_))));
    }

    #[test]
    fn n0_is_found() {
        let n0 = empirical_n0(e("1/3"), 1000).unwrap();
        assert!(build_spec(n0, e("1/3")).is_ok());
        assert!(build_spec(n0 - 1, e("1/3")).is_err());
    }

    #[test]
    fn rep_count_examples() {
        let s = build_spec(64, e("1/3")).unwrap();
        let rc = rep_counts(&s).unwrap();
        let d64 = rc.d_counts.iter().find(|&&(m, _)| m == 64).unwrap().1;
        assert_eq!(d64, 1);
        let id = verify_identities(&rc).unwrap();
        assert_eq!((id.sum_r, id.sum_d), (45, 45));
        assert_eq!(id.sum_r2, id.sum_d2);
        // support bounds: iMin^2 - H^2 <= m <= W^2
        for &(m, _) in &rc.d_counts {
            assert!((64 - 16..=256).contains(&m));
        }
    }

    #[test]
    fn degenerate_single_row() {
        let s = RectLatticeSpec::with_bounds(64, e("1/3"), 16, 0, 8).unwrap();
        let rc = rep_counts(&s).unwrap();
        let id = verify_identities(&rc).unwrap();
        assert_eq!(id.sum_r, 9);
        assert_eq!((id.sum_binom_r2, id.sum_binom_d2), (0, 0));
        let sums = sum_binom_d2(&rc).unwrap();
        assert_eq!(sums.total, 0);
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(
            four_number_lemma(12, 1, 12, 1).unwrap(),
            FourTuple {
                s1: 12,
                s2: 1,
                s3: 1,
                s4: 1
            }
        );
        assert_eq!(
            four_number_lemma(2, 6, 3, 4).unwrap(),
            FourTuple {
                s1: 1,
                s2: 2,
                s3: 3,
                s4: 2
            }
        );
        assert_eq!(
            four_number_lemma(6, 4, 8, 3).unwrap(),
            FourTuple {
                s1: 2,
                s2: 3,
                s3: 4,
                s4: 1
            }
        );
        assert!(matches!(
            four_number_lemma(2, 3, 1, 5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            four_number_lemma(0, 3, 0, 5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn box_distances() {
        assert_eq!(distinct_distances_box(2, 1).unwrap(), 4);
        assert_eq!(distinct_distances_box(1, 1).unwrap(), 2);
        assert_eq!(distinct_distances_box(0, 1).unwrap(), 1);
    }

    #[test]
    fn small_report_chain() {
        let r = dalpha_report(64, e("1/3")).unwrap();
        assert_eq!(r.sublattice_size, 45);
        assert!(r.distinct + r.excess_sum >= r.sublattice_size);
        assert!(u128::from(r.excess_sum) <= r.binom_sum);
        assert_eq!(r.binom_sum, r.identities.sum_binom_r2);
    }

    #[test]
    fn witnesses_hold_small() {
        for (n, a) in [(1u64 << 10, "2/5"), (1 << 12, "3/10"), (5000, "9/20")] {
            let s = build_spec(n, e(a)).unwrap();
            let w = check_interval_witnesses(&s).unwrap();
            assert!(w.violations.is_empty(), "{:?}", w.violations.first());
        }
    }
}
