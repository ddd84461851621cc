use latdist::acceptance::quadruple_identity_oracle;
use latdist::diststats;
use latdist::rectlat::{self, FourTuple};
use latdist::{ErrorClass, Exponent};
use proptest::prelude::*;

fn e(s: &str) -> Exponent {
    s.parse().unwrap()
}

const ALPHAS: &[&str] = &["1/5", "1/4", "3/10", "1/3", "2/5"];

#[test]
fn identities_agree_with_quadruple_enumeration() {
    for a in ALPHAS {
        for n in [1u64 << 10, 3000, 1 << 12] {
            let Ok(spec) = rectlat::build_spec(n, e(a)) else {
                continue;
            };
            let id = rectlat::verify_identities(&rectlat::rep_counts(&spec).unwrap()).unwrap();
            assert_eq!(id.sum_r, u128::from(spec.sublattice_size()));
            let (sums, diffs) = quadruple_identity_oracle(&spec);
            assert_eq!(sums, id.sum_r2, "n={n} alpha={a}");
            assert_eq!(diffs, id.sum_d2, "n={n} alpha={a}");
            assert_eq!(id.sum_binom_r2, (id.sum_r2 - id.sum_r) / 2);
        }
    }
}

#[test]
fn counting_chain_holds_on_a_grid() {
    for a in ALPHAS {
        for n in [1u64 << 12, 1 << 14, 1 << 16] {
            let r = rectlat::dalpha_report(n, e(a)).unwrap();
            assert!(r.distinct + r.excess_sum >= r.sublattice_size);
            assert!(u128::from(r.excess_sum) <= r.binom_sum);
            assert_eq!(r.binom_sum, r.identities.sum_binom_d2);
            assert!(r.distinct <= r.lattice_size * (r.lattice_size - 1) / 2);
        }
    }
}

#[test]
fn interval_witnesses_hold_at_small_n() {
    for a in ALPHAS {
        for n in [1u64 << 12, 1 << 13, 1 << 14] {
            let Ok(spec) = rectlat::build_spec(n, e(a)) else {
                continue;
            };
            let w = rectlat::check_interval_witnesses(&spec).unwrap();
            assert!(
                w.violations.is_empty(),
                "n={n} alpha={a}: {:?}",
                &w.violations[..1]
            );
        }
    }
}

#[test]
fn box_distinct_distances_match_histogram() {
    for (w, h) in [(1, 1), (2, 1), (7, 3), (16, 4), (40, 9), (64, 64)] {
        let hist = diststats::histogram_rect_fast((w + 1) as u32, (h + 1) as u32).unwrap();
        assert_eq!(
            rectlat::distinct_distances_box(w, h).unwrap(),
            hist.distinct(),
            "{w}x{h}"
        );
    }
}

#[test]
fn empty_sublattice_is_a_validation_error() {
    let err = rectlat::build_spec(10, e("9/20")).unwrap_err();
    assert_eq!(err.class(), ErrorClass::Validation);
    assert!(err.to_string().starts_with("sublattice empty"));
    assert!(rectlat::build_spec(64, e("1/2")).is_err());
}

proptest! {
    #[test]
    fn four_number_lemma_recovers_a_refinement(
        s1 in 1u64..500, s2 in 1u64..500, s3 in 1u64..500, s4 in 1u64..500,
    ) {
        let (m1, m2, m3, m4) = (s1 * s2, s3 * s4, s1 * s3, s2 * s4);
        let t: FourTuple = rectlat::four_number_lemma(m1, m2, m3, m4).unwrap();
        prop_assert!(t.satisfies(m1, m2, m3, m4));
    }

    #[test]
    fn lemma_rejects_unequal_products(m1 in 1u64..1000, m2 in 1u64..1000, m3 in 1u64..1000, m4 in 1u64..1000) {
        prop_assume!(m1 * m2 != m3 * m4);
        prop_assert!(rectlat::four_number_lemma(m1, m2, m3, m4).is_err());
    }

    #[test]
    fn spec_bounds_are_exact_floors(n in 64u64..1_000_000, num in 1u32..10) {
        let alpha = Exponent::new(num, 20).unwrap();
        if let Ok(spec) = rectlat::build_spec(n, alpha) {
            let a = alpha.to_f64();
            let nf = n as f64;
            // floats agree except within rounding of an exact power
            prop_assert!((spec.height as f64 - nf.powf(a).floor()).abs() <= 1.0);
            prop_assert!((spec.width as f64 - nf.powf(1.0 - a).floor()).abs() <= 1.0);
            prop_assert!(spec.i_min <= spec.width);
            prop_assert!(alpha.le_scaled_pow(spec.height, n, 1));
            prop_assert!(!alpha.le_scaled_pow(spec.height + 1, n, 1));
        }
    }
}
