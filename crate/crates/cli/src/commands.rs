use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use latdist::acceptance::{self, Suite};
use latdist::diststats::{self, PointSet};
use latdist::{arcs, numth, rectlat, Error, Exponent, Result};

use crate::table::{Cell, Table};

pub const SQUARE_COLUMNS: &[&str] = &[
    "side",
    "N",
    "x",
    "energy",
    "csBound",
    "gapRatio",
    "energy_over_N3lnN",
    "x_sqrtlnN_over_N",
];

pub const LSHAPE_COLUMNS: &[&str] = &[
    "n",
    "points",
    "D",
    "trivialEnergy",
    "intraTrivialEnergy",
    "crossIntegerPairs",
    "energy",
    "csBound",
    "gapRatio",
    "trivialEnergy_over_n3",
];

pub const RECT_COLUMNS: &[&str] = &[
    "n",
    "alpha",
    "W",
    "H",
    "iMin",
    "sublatticeSize",
    "D",
    "D_over_n",
    "sumR",
    "sumD",
    "excessSum",
    "S",
    "S_over_n2alpha_ln2n",
    "lMin",
    "lMax",
];

pub const IDENTITY_COLUMNS: &[&str] = &[
    "n",
    "alpha",
    "sumR",
    "sumD",
    "sumR2",
    "sumD2",
    "sumBinomR2",
    "sumBinomD2",
    "holds",
];

pub const RHAT_COLUMNS: &[&str] = &["limit", "rhat", "rhat_over_klnk"];

pub const LANDAU_COLUMNS: &[&str] = &["limit", "count", "count_sqrtlnN_over_N"];

pub const ARC_COLUMNS: &[&str] = &[
    "N",
    "beta",
    "points",
    "arcLength",
    "angularWidth",
    "maxCount",
    "witnessStartAngle",
    "axisCount",
    "runningMax",
];

pub const CHECK_COLUMNS: &[&str] = &["check", "passed", "detail"];

pub const ACCEPT_COLUMNS: &[&str] = &["criterion", "name", "passed", "measured"];

pub fn parse_rational(s: &str) -> Result<Exponent> {
    s.parse()
}

pub fn square_stats(sides: &[u32]) -> Result<Table> {
    let mut t = Table::new(SQUARE_COLUMNS);
    for &m in sides {
        let r = diststats::square_lattice_report(m)?;
        t.push(vec![
            m.into(),
            r.points.into(),
            r.stats.distinct.into(),
            r.stats.energy.into(),
            r.stats.cs_bound.into(),
            r.stats.gap_ratio.into(),
            r.energy_over_n3_ln_n.into(),
            r.distinct_sqrt_ln_n_over_n.into(),
        ]);
    }
    Ok(t)
}

pub fn lshape(arms: &[u32]) -> Result<Table> {
    let mut t = Table::new(LSHAPE_COLUMNS);
    for &n in arms {
        let r = diststats::lshape_report(n)?;
        t.push(vec![
            n.into(),
            r.points.into(),
            r.distinct.into(),
            r.trivial_energy.into(),
            r.intra_trivial_energy.into(),
            r.cross_integer_pairs.into(),
            r.energy.into(),
            r.cs_bound.into(),
            r.gap_ratio.into(),
            r.trivial_over_n3().into(),
        ]);
    }
    Ok(t)
}

fn grid(ns: &[u64], alphas: &[String]) -> Result<Vec<(u64, Exponent)>> {
    let parsed = alphas
        .iter()
        .map(|a| parse_rational(a))
        .collect::<Result<Vec<_>>>()?;
    Ok(parsed
        .iter()
        .flat_map(|&a| ns.iter().map(move |&n| (n, a)))
        .collect())
}

pub fn rect(ns: &[u64], alphas: &[String]) -> Result<Table> {
    let mut t = Table::new(RECT_COLUMNS);
    for (n, alpha) in grid(ns, alphas)? {
        let r = rectlat::dalpha_report(n, alpha)?;
        let s = &r.spec;
        t.push(vec![
            n.into(),
            alpha.to_string().into(),
            s.width.into(),
            s.height.into(),
            s.i_min.into(),
            r.sublattice_size.into(),
            r.distinct.into(),
            r.distinct_over_n().into(),
            r.identities.sum_r.into(),
            r.identities.sum_d.into(),
            r.excess_sum.into(),
            r.binom_sum.into(),
            r.binom_normalized().into(),
            r.intervals.l_min.into(),
            r.intervals.l_max.into(),
        ]);
    }
    Ok(t)
}

pub fn identities(ns: &[u64], alphas: &[String]) -> Result<Table> {
    let mut t = Table::new(IDENTITY_COLUMNS);
    for (n, alpha) in grid(ns, alphas)? {
        let spec = rectlat::build_spec(n, alpha)?;
        let id = rectlat::verify_identities(&rectlat::rep_counts(&spec)?)?;
        t.push(vec![
            n.into(),
            alpha.to_string().into(),
            id.sum_r.into(),
            id.sum_d.into(),
            id.sum_r2.into(),
            id.sum_d2.into(),
            id.sum_binom_r2.into(),
            id.sum_binom_d2.into(),
            true.into(),
        ]);
    }
    Ok(t)
}

pub fn rhat(limits: &[u64]) -> Result<Table> {
    let mut t = Table::new(RHAT_COLUMNS);
    if limits.contains(&0) {
        return Err(Error::Domain("rhat limit must be >= 1".into()));
    }
    let Some(&top) = limits.iter().max() else {
        return Ok(t);
    };
    let table = numth::rhat_table(top)?;
    for &k in limits {
        let kf = k as f64;
        let v = table.rhat(k);
        t.push(vec![k.into(), v.into(), (v as f64 / (kf * kf.ln())).into()]);
    }
    Ok(t)
}

pub fn landau(limits: &[u64]) -> Result<Table> {
    let mut t = Table::new(LANDAU_COLUMNS);
    for &n in limits {
        let c = numth::landau_count(n)?;
        t.push(vec![
            n.into(),
            c.into(),
            numth::landau_normalized(n, c).into(),
        ]);
    }
    Ok(t)
}

pub fn arc_scan(nmax: u64, beta: &str, summary_only: bool) -> Result<Table> {
    let beta = parse_rational(beta)?;
    let rows = arcs::conjecture_scan(nmax, beta)?;
    let mut t = Table::new(ARC_COLUMNS);
    let mut push = |row: &arcs::ScanRow| {
        let r = &row.result;
        t.push(vec![
            r.n.into(),
            r.beta.to_string().into(),
            r.points.into(),
            r.arc_length.into(),
            r.angular_width.into(),
            r.max_count.into(),
            r.witness_start_angle.into(),
            r.axis_count.into(),
            row.running_max.into(),
        ]);
    };
    if summary_only {
        // rows where the running maximum first reaches a new value
        let mut seen = 0;
        for row in &rows {
            if row.running_max > seen {
                seen = row.running_max;
                push(row);
            }
        }
    } else {
        rows.iter().for_each(push);
    }
    Ok(t)
}

/// Load `spf-<limit>.bin` from the cache directory, or build the sieve and
/// store it there.
pub fn cached_sieve(limit: u64, cache_dir: Option<&Path>) -> Result<numth::SpfSieve> {
    let Some(dir) = cache_dir else {
        return numth::build_spf_sieve(limit);
    };
    let path = dir.join(format!("spf-{limit}.bin"));
    if path.exists() {
        return numth::SpfSieve::load(BufReader::new(File::open(&path)?), limit);
    }
    let sieve = numth::build_spf_sieve(limit)?;
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("spf-{limit}.bin.tmp"));
    sieve.save(BufWriter::new(File::create(&tmp)?))?;
    std::fs::rename(&tmp, &path)?;
    Ok(sieve)
}

pub fn oracle_check(limit: u64, side: u32, cache_dir: Option<&Path>) -> Result<(Table, bool)> {
    let mut t = Table::new(CHECK_COLUMNS);
    let mut all = true;

    let sieve = cached_sieve(limit.max(2), cache_dir)?;
    let bad = (1..=limit)
        .filter(|&k| numth::r_fast(k, &sieve).map_or(true, |v| v != numth::r_bruteforce(k)))
        .count();
    all &= bad == 0;
    t.push(vec![
        "r_fast=r_bruteforce".into(),
        (bad == 0).into(),
        format!("k<={limit} mismatches={bad}").into(),
    ]);

    let mut bad = 0;
    for w in 2..=side {
        for h in 2..=side {
            let brute = diststats::histogram_bruteforce(&PointSet::grid(w, h)?)?;
            if diststats::histogram_rect_fast(w, h)? != brute {
                bad += 1;
            }
        }
    }
    all &= bad == 0;
    t.push(vec![
        "histogram_rect_fast=histogram_bruteforce".into(),
        (bad == 0).into(),
        format!("2<=W,H<={side} mismatches={bad}").into(),
    ]);

    let corpus = acceptance::quadruple_corpus();
    let mut bad = 0;
    for ps in &corpus {
        let energy = diststats::quadruple_stats(&diststats::histogram_bruteforce(ps)?)?.energy;
        if diststats::quadruple_bruteforce(ps)? != energy {
            bad += 1;
        }
    }
    all &= bad == 0;
    t.push(vec![
        "quadruple_bruteforce=energy".into(),
        (bad == 0).into(),
        format!("sets={} mismatches={bad}", corpus.len()).into(),
    ]);
    Ok((t, all))
}

/// The alpha x n grid of distinct-distance reports that accompanies the full
/// suite.
pub const GRID_ALPHAS: &[&str] = &["1/4", "3/10", "1/3", "2/5"];
pub const GRID_NS: &[u64] = &[1 << 14, 1 << 17, 1 << 20];

pub fn rect_grid() -> Result<Table> {
    let alphas: Vec<String> = GRID_ALPHAS.iter().map(|a| a.to_string()).collect();
    rect(GRID_NS, &alphas)
}

pub fn accept(suite: Suite) -> (Table, bool) {
    let mut t = Table::new(ACCEPT_COLUMNS);
    let outcomes = acceptance::run_suite(suite, |o| {
        eprintln!(
            "[{}] {:>2} {} ({:.2}s)",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.seconds
        );
    });
    let mut all = true;
    for o in outcomes {
        all &= o.passed;
        t.push(vec![
            u64::from(o.id).into(),
            o.name.into(),
            o.passed.into(),
            Cell::Text(o.measured),
        ]);
    }
    (t, all)
}
