//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) work items are spread over the
//! current rayon pool; without it the same closures run in order on the
//! calling thread. Every helper returns results in input order, and callers
//! only merge by integer addition, so output never depends on the thread count.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default width of a key band. Large enough to amortize per-band setup,
/// small enough that a band's dense counters stay cache friendly.
pub const BAND_WIDTH: u64 = 1 << 20;

/// Split `[start, end)` into consecutive bands of at most `width` keys.
pub fn bands(start: u64, end: u64, width: u64) -> Vec<Range<u64>> {
    assert!(width > 0, "band width must be positive");
    let mut out = Vec::new();
    let mut lo = start;
    while lo < end {
        let hi = lo.saturating_add(width).min(end);
        out.push(lo..hi);
        lo = hi;
    }
    out
}

/// Apply `f` to every item, preserving input order in the result.
#[cfg(feature = "parallel")]
pub fn map_ordered<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn sort_unstable<T: Ord + Send>(v: &mut [T]) {
    v.par_sort_unstable();
}

#[cfg(not(feature = "parallel"))]
pub fn sort_unstable<T: Ord + Send>(v: &mut [T]) {
    v.sort_unstable();
}

/// Number of worker threads the helpers will use.
pub fn threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Visit every `(x, y)` with `x` in `xs`, `y` in `ys` and `x^2 + y^2` in `band`.
///
/// Rows are walked in increasing `x`; within a row `y` increases, so keys
/// increase too. The bounds on `y` come from exact integer square roots.
pub fn for_each_in_band<F>(band: &Range<u64>, xs: Range<u64>, ys: Range<u64>, mut f: F)
where
    F: FnMut(u64, u64, u64),
{
    if band.is_empty() || ys.is_empty() {
        return;
    }
    for x in xs {
        let x2 = x * x;
        if x2 >= band.end {
            break;
        }
        let y_lo = if band.start > x2 {
            ceil_sqrt(band.start - x2).max(ys.start)
        } else {
            ys.start
        };
        let y_hi = (band.end - 1 - x2).isqrt().min(ys.end - 1);
        let mut y = y_lo;
        while y <= y_hi {
            f(x, y, x2 + y * y);
            y += 1;
        }
    }
}

/// Smallest `s` with `s * s >= v`.
pub fn ceil_sqrt(v: u64) -> u64 {
    let s = v.isqrt();
    if s * s == v {
        s
    } else {
        s + 1
    }
}
