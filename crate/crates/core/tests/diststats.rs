use latdist::diststats::{self, ClassSummary, PointSet, QuadrupleStats};
use proptest::prelude::*;

#[test]
fn rect_fast_matches_bruteforce_for_small_grids() {
    for w in 2..=12 {
        for h in 2..=12 {
            let brute = diststats::histogram_bruteforce(&PointSet::grid(w, h).unwrap()).unwrap();
            assert_eq!(
                diststats::histogram_rect_fast(w, h).unwrap(),
                brute,
                "{w}x{h}"
            );
        }
    }
}

#[test]
fn square_lattices_are_far_from_uniform() {
    for m in [256, 512, 1024] {
        let r = diststats::square_lattice_report(m).unwrap();
        assert!(r.stats.gap_ratio > 1.5, "m={m}: {}", r.stats.gap_ratio);
        let n = u64::from(m) * u64::from(m);
        assert_eq!(r.points, n);
        assert_eq!(r.stats.total_ordered_pairs, n * (n - 1));
    }
}

#[test]
fn lshape_matches_bruteforce_energy() {
    for n in [1, 2, 3, 5, 8] {
        let ps = PointSet::lshape(n).unwrap();
        let r = diststats::lshape_report(n).unwrap();
        assert_eq!(
            diststats::quadruple_bruteforce(&ps).unwrap(),
            r.energy,
            "n={n}"
        );
        let h = diststats::histogram_bruteforce(&ps).unwrap();
        assert_eq!(h.distinct(), r.distinct);
    }
}

fn arbitrary_points() -> impl Strategy<Value = PointSet> {
    prop::collection::hash_set((-20i32..20, -20i32..20), 2..=16)
        .prop_map(|s| PointSet::new(s.into_iter().collect()).unwrap())
}

proptest! {
    #[test]
    fn energy_oracle_on_random_sets(ps in arbitrary_points()) {
        let h = diststats::histogram_bruteforce(&ps).unwrap();
        let n = ps.len() as u64;
        prop_assert_eq!(h.total_ordered_pairs(), n * (n - 1));
        let stats = diststats::quadruple_stats(&h).unwrap();
        prop_assert_eq!(diststats::quadruple_bruteforce(&ps).unwrap(), stats.energy);
        prop_assert!(stats.gap_ratio >= 1.0 - 1e-12);
    }

    #[test]
    fn histogram_is_translation_invariant(ps in arbitrary_points(), dx in -50i32..50, dy in -50i32..50) {
        let moved = PointSet::new(ps.points().iter().map(|&(x, y)| (x + dx, y + dy)).collect()).unwrap();
        prop_assert_eq!(
            diststats::histogram_bruteforce(&ps).unwrap(),
            diststats::histogram_bruteforce(&moved).unwrap()
        );
    }

    #[test]
    fn cauchy_schwarz_is_tight_iff_counts_are_equal(counts in prop::collection::vec(1u64..40, 1..30)) {
        let mut s = ClassSummary::default();
        for &c in &counts {
            s.add_class(c).unwrap();
        }
        let stats = QuadrupleStats::from_summary(&s).unwrap();
        let equal = counts.iter().all(|&c| c == counts[0]);
        prop_assert_eq!(stats.is_tight(), equal);
        prop_assert!(stats.gap_ratio >= 1.0 - 1e-12);
    }

    #[test]
    fn rect_fast_matches_bruteforce(w in 1u32..20, h in 1u32..20) {
        prop_assume!(w * h >= 2);
        let brute = diststats::histogram_bruteforce(&PointSet::grid(w, h).unwrap()).unwrap();
        prop_assert_eq!(diststats::histogram_rect_fast(w, h).unwrap(), brute);
    }
}
