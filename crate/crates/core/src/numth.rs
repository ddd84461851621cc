//! Sums of two squares.
//!
//! `r(k)` counts ordered pairs `(i, j)` of integers `i, j >= 0` with
//! `i^2 + j^2 = k` (so `r(1) = 2`). The all-signs variant `r_Z2(k)` counts
//! every integer pair and equals `4 * prod (e_p + 1)` over primes `p = 1 mod 4`,
//! or zero if some prime `p = 3 mod 4` has odd exponent. The two are related by
//! `r(k) = r_Z2(k) / 4 + [k is a square]`.
//!
//! Three counting routes are provided: a direct brute force, a factorization
//! route through a smallest-prime-factor sieve, and banded pair accumulation
//! for whole tables.

use std::io::{self, Read, Write};

use serde::Serialize;

use crate::error::{ensure_capacity, Error, Result};
use crate::par;

/// Largest sieve limit accepted. Entries are 32-bit, so the table needs
/// `4 * limit` bytes (1 GiB at the ceiling).
pub const SIEVE_CEILING: u64 = 1 << 28;

/// Largest limit for [`rhat_table`] (`4 + 8` bytes per entry).
pub const TABLE_CEILING: u64 = 1 << 28;

/// Largest limit for [`landau_count`]; only one band of bits is live per worker.
pub const LANDAU_CEILING: u64 = 1 << 40;

const CACHE_MAGIC: &[u8; 4] = b"SPF1";

/// Number of `(i, j)`, `i, j >= 0`, with `i^2 + j^2 = k`.
pub fn r_bruteforce(k: u64) -> u64 {
    assert!(k >= 1, "r(k) is defined for k >= 1");
    (0..=k.isqrt())
        .filter(|i| {
            let rest = k - i * i;
            let s = rest.isqrt();
            s * s == rest
        })
        .count() as u64
}

pub fn is_square(k: u64) -> bool {
    let s = k.isqrt();
    s * s == k
}

/// Smallest-prime-factor table for `2..=limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpfSieve {
    limit: u64,
    // spf[k] for k in 0..=limit; slots 0 and 1 are zero.
    spf: Vec<u32>,
}

/// Linear sieve. Runs in `O(limit)` and touches each composite once.
pub fn build_spf_sieve(limit: u64) -> Result<SpfSieve> {
    if limit < 2 {
        return Err(Error::Domain(format!(
            "sieve limit must be >= 2, got {limit}"
        )));
    }
    ensure_capacity("spf sieve", u128::from(limit), u128::from(SIEVE_CEILING))?;
    let len = limit as usize + 1;
    let mut spf = vec![0u32; len];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..len {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let lpf = spf[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > lpf || m >= len {
                break;
            }
            spf[m] = p;
        }
    }
    Ok(SpfSieve { limit, spf })
}

impl SpfSieve {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `k`, for `2 <= k <= limit`.
    pub fn spf(&self, k: u64) -> Result<u64> {
        if k < 2 {
            return Err(Error::Domain(format!("spf is defined for k >= 2, got {k}")));
        }
        if k > self.limit {
            return Err(Error::OutOfRange {
                value: k,
                limit: self.limit,
            });
        }
        Ok(u64::from(self.spf[k as usize]))
    }

    /// Prime factorization of `k` as `(prime, exponent)` in increasing order.
    pub fn factorize(&self, k: u64) -> Result<Vec<(u64, u32)>> {
        if k == 0 || k > self.limit {
            return Err(Error::OutOfRange {
                value: k,
                limit: self.limit,
            });
        }
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut rest = k;
        while rest > 1 {
            let p = u64::from(self.spf[rest as usize]);
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        Ok(out)
    }

    /// Entries for `k = 2..=limit`.
    pub fn entries(&self) -> &[u32] {
        &self.spf[2..]
    }

    /// Write the cache format: `"SPF1"`, the limit as u64 LE, then
    /// `limit - 1` u32 LE entries for `k = 2..=limit`.
    pub fn save<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&self.limit.to_le_bytes())?;
        let mut buf = Vec::with_capacity(4 * 65536);
        for chunk in self.entries().chunks(65536) {
            buf.clear();
            for v in chunk {
                buf.extend_from_slice(&v.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Read a cache written by [`SpfSieve::save`]. The magic and the stored
    /// limit are checked before any entry is read.
    pub fn load<R: Read>(mut r: R, expected_limit: u64) -> Result<SpfSieve> {
        let mut magic = [0u8; 4];
        read_exact(&mut r, &mut magic, "magic")?;
        if &magic != CACHE_MAGIC {
            return Err(Error::Cache(format!("bad magic {magic:?}")));
        }
        let mut lim = [0u8; 8];
        read_exact(&mut r, &mut lim, "limit")?;
        let limit = u64::from_le_bytes(lim);
        if limit != expected_limit {
            return Err(Error::Cache(format!(
                "cache holds limit {limit}, expected {expected_limit}"
            )));
        }
        if limit < 2 {
            return Err(Error::Cache(format!("cache limit {limit} is below 2")));
        }
        ensure_capacity("spf sieve", u128::from(limit), u128::from(SIEVE_CEILING))?;
        let mut bytes = vec![0u8; 4 * (limit as usize - 1)];
        read_exact(&mut r, &mut bytes, "entries")?;
        let mut trailing = [0u8; 1];
        if r.read(&mut trailing)? != 0 {
            return Err(Error::Cache("trailing bytes after entries".into()));
        }
        let mut spf = Vec::with_capacity(limit as usize + 1);
        spf.extend([0u32, 0u32]);
        spf.extend(
            bytes
                .chunks_exact(4)
                .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])),
        );
        let sieve = SpfSieve { limit, spf };
        sieve.check_entries()?;
        Ok(sieve)
    }

    // Cheap structural check: every entry divides its index and is either the
    // index itself or at most its square root.
    fn check_entries(&self) -> Result<()> {
        for k in 2..=self.limit {
            let p = u64::from(self.spf[k as usize]);
            if p < 2 || k % p != 0 || (p != k && p * p > k) {
                return Err(Error::Cache(format!("entry for {k} is {p}")));
            }
        }
        Ok(())
    }
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8], what: &str) -> Result<()> {
    r.read_exact(buf).map_err(|e| match e.kind() {
        io::ErrorKind::UnexpectedEof => Error::Cache(format!("truncated {what}")),
        _ => Error::Io(e),
    })
}

/// All-signs count `r_Z2(k) = #{(a, b) in Z^2 : a^2 + b^2 = k}` via factorization.
pub fn r_full_plane(k: u64, sieve: &SpfSieve) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("r is defined for k >= 1".into()));
    }
    let mut count = 4u64;
    for (p, e) in sieve.factorize(k)? {
        match p % 4 {
            1 => count *= u64::from(e) + 1,
            3 if e % 2 == 1 => return Ok(0),
            _ => {}
        }
    }
    Ok(count)
}

/// Quadrant count `r(k)` through the factorization route.
pub fn r_fast(k: u64, sieve: &SpfSieve) -> Result<u64> {
    Ok(r_full_plane(k, sieve)? / 4 + u64::from(is_square(k)))
}

/// `r(k)` for `1 <= k <= limit` together with the prefix sums `rhat(k) = sum r(i)^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhatTable {
    limit: u64,
    // Index 0 is a placeholder so that rvals[k] = r(k).
    rvals: Vec<u32>,
    rhat: Vec<u64>,
}

impl RhatTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn r(&self, k: u64) -> u32 {
        assert!(
            (1..=self.limit).contains(&k),
            "k={k} outside 1..={}",
            self.limit
        );
        self.rvals[k as usize]
    }

    pub fn rhat(&self, k: u64) -> u64 {
        assert!(k <= self.limit, "k={k} exceeds {}", self.limit);
        self.rhat[k as usize]
    }

    /// `r(1..=limit)`.
    pub fn rvals(&self) -> &[u32] {
        &self.rvals[1..]
    }

    /// `rhat(limit) / (limit ln limit)`; stable in `limit` by Ramanujan's estimate.
    pub fn normalized(&self) -> f64 {
        let k = self.limit as f64;
        self.rhat(self.limit) as f64 / (k * k.ln())
    }
}

/// Build `r` and `rhat` by accumulating every pair `(i, j)` with
/// `i^2 + j^2 <= limit` into per-key counters, band by band.
pub fn rhat_table(limit: u64) -> Result<RhatTable> {
    if limit < 1 {
        return Err(Error::Domain("rhat table limit must be >= 1".into()));
    }
    ensure_capacity("rhat table", u128::from(limit), u128::from(TABLE_CEILING))?;
    let reach = limit.isqrt() + 1;
    let chunks = par::map_ordered(par::bands(1, limit + 1, par::BAND_WIDTH), |band| {
        let mut counts = vec![0u32; (band.end - band.start) as usize];
        par::for_each_in_band(&band, 0..reach, 0..reach, |_, _, k| {
            counts[(k - band.start) as usize] += 1;
        });
        counts
    });
    let mut rvals = Vec::with_capacity(limit as usize + 1);
    rvals.push(0u32);
    for c in chunks {
        rvals.extend(c);
    }
    let mut rhat = Vec::with_capacity(rvals.len());
    let mut acc = 0u64;
    rhat.push(0);
    for &r in &rvals[1..] {
        acc = acc
            .checked_add(u64::from(r) * u64::from(r))
            .ok_or(Error::Overflow("rhat prefix sum"))?;
        rhat.push(acc);
    }
    Ok(RhatTable { limit, rvals, rhat })
}

/// Number of `1 <= k <= limit` that are a sum of two squares, from per-band
/// bitsets filled by pair enumeration.
pub fn landau_count(limit: u64) -> Result<u64> {
    if limit < 1 {
        return Err(Error::Domain("landau limit must be >= 1".into()));
    }
    ensure_capacity(
        "landau bitset",
        u128::from(limit),
        u128::from(LANDAU_CEILING),
    )?;
    let reach = limit.isqrt() + 1;
    let counts = par::map_ordered(par::bands(1, limit + 1, par::BAND_WIDTH), |band| {
        let width = (band.end - band.start) as usize;
        let mut bits = vec![0u64; width.div_ceil(64)];
        par::for_each_in_band(&band, 0..reach, 0..reach, |_, _, k| {
            let off = (k - band.start) as usize;
            bits[off / 64] |= 1 << (off % 64);
        });
        bits.iter().map(|w| u64::from(w.count_ones())).sum::<u64>()
    });
    Ok(counts.into_iter().sum())
}

/// `landau_count(N) * sqrt(ln N) / N`, which tends to the Landau-Ramanujan constant.
pub fn landau_normalized(limit: u64, count: u64) -> f64 {
    let n = limit as f64;
    count as f64 * n.ln().sqrt() / n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_spf(k: u64) -> u64 {
        let mut d = 2;
        while d * d <= k {
            if k % d == 0 {
                return d;
            }
            d += 1;
        }
        k
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(r_bruteforce(3), 0);
        assert_eq!(r_bruteforce(25), 4);
        assert_eq!(r_bruteforce(2), 1);
        assert_eq!(r_bruteforce(1), 2);
    }

    #[test]
    #[should_panic]
    fn r_of_zero_is_undefined() {
        r_bruteforce(0);
    }

    #[test]
    fn small_sieves() {
        let s = build_spf_sieve(10).unwrap();
        assert_eq!(s.spf(9).unwrap(), 3);
        assert_eq!(s.spf(7).unwrap(), 7);
        assert_eq!(s.spf(10).unwrap(), 2);
        let s = build_spf_sieve(2).unwrap();
        assert_eq!(s.spf(2).unwrap(), 2);
        assert_eq!(s.entries(), &[2]);
    }

    #[test]
    fn sieve_rejects_bad_limits() {
        assert!(matches!(build_spf_sieve(1), Err(Error::Domain(_))));
        assert!(matches!(
            build_spf_sieve(SIEVE_CEILING + 1),
            Err(Error::Capacity { .. })
        ));
        let s = build_spf_sieve(10).unwrap();
        assert!(matches!(s.spf(11), Err(Error::OutOfRange { .. })));
        assert!(matches!(r_fast(11, &s), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn sieve_matches_trial_division() {
        let s = build_spf_sieve(20_000).unwrap();
        for k in 2..=20_000 {
            assert_eq!(s.spf(k).unwrap(), trial_spf(k), "k={k}");
        }
    }

    #[test]
    fn large_prime_spot_check() {
        let s = build_spf_sieve(10_000_000).unwrap();
        assert_eq!(trial_spf(9_999_991), 9_999_991);
        assert_eq!(s.spf(9_999_991).unwrap(), 9_999_991);
    }

    #[test]
    fn fast_examples() {
        let s = build_spf_sieve(100).unwrap();
        assert_eq!(r_full_plane(25, &s).unwrap(), 12);
        assert_eq!(r_fast(25, &s).unwrap(), 4);
        assert_eq!(r_fast(1, &s).unwrap(), 2);
        assert_eq!(r_fast(3, &s).unwrap(), 0);
        assert_eq!(r_fast(9, &s).unwrap(), 2);
        assert_eq!(r_fast(50, &s).unwrap(), 3);
    }

    #[test]
    fn rhat_examples() {
        let t = rhat_table(10).unwrap();
        assert_eq!(t.rvals(), &[2, 1, 0, 2, 2, 0, 0, 1, 2, 2]);
        assert_eq!(t.rhat(10), 22);
        assert_eq!(rhat_table(1).unwrap().rhat(1), 4);
    }

    #[test]
    fn landau_examples() {
        assert_eq!(landau_count(10).unwrap(), 7);
        assert_eq!(landau_count(1).unwrap(), 1);
        let brute = (1..=100).filter(|&k| r_bruteforce(k) > 0).count() as u64;
        assert_eq!(brute, 43);
        assert_eq!(landau_count(100).unwrap(), 43);
    }

    #[test]
    fn cache_round_trip_and_rejections() {
        let s = build_spf_sieve(1000).unwrap();
        let mut buf = Vec::new();
        s.save(&mut buf).unwrap();
        assert_eq!(&buf[..4], b"SPF1");
        assert_eq!(buf.len(), 4 + 8 + 4 * 999);
        assert_eq!(SpfSieve::load(&buf[..], 1000).unwrap(), s);

        assert!(matches!(
            SpfSieve::load(&buf[..], 999),
            Err(Error::Cache(_))
        ));
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(
            SpfSieve::load(&bad[..], 1000),
            Err(Error::Cache(_))
        ));
        assert!(matches!(
            SpfSieve::load(&buf[..buf.len() - 1], 1000),
            Err(Error::Cache(_))
        ));
        let mut corrupt = buf.clone();
        // entry for k = 9 set to 2
        let off = 12 + 4 * 7;
        corrupt[off..off + 4].copy_from_slice(&2u32.to_le_bytes());
        assert!(matches!(
            SpfSieve::load(&corrupt[..], 1000),
            Err(Error::Cache(_))
        ));
    }
}
