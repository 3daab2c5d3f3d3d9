use num_bigint::BigInt;
use oakit_core::bounds::*;
use oakit_core::Rational;

#[test]
fn specialization_identities_on_grid() {
    for k in 2..=8u64 {
        for n in 2..=5u64 {
            assert_eq!(rr_min_lambda(k, n, 1).unwrap().value, pb_min_lambda(k, n).unwrap().value);
            assert_eq!(rao_min_rows(2, k, n).unwrap().value, Rational::from(1 + k * (n - 1)));
            for t in 2..=4u64.min(k) {
                assert_eq!(mqw_min_rows(t, k, n, 1).unwrap().value, rao_min_rows(t, k, n).unwrap().value);
            }
            for m in 1..=3u64 {
                // at t = 2 the MQW row bound is the repeated-row index bound times n^2
                let rr = rr_min_lambda(k, n, m).unwrap().value;
                assert_eq!(mqw_min_rows(2, k, n, m).unwrap().value, rr * Rational::from(n * n));
            }
        }
    }
}

#[test]
fn johnson_on_oa_parameters_is_the_column_bound() {
    for k in 2..=8u64 {
        for n in 2..=5u64 {
            for lambda in 1..=4u64 {
                for m in 1..=lambda.min(3) {
                    let (l, w, mu) = oa_to_cwc_params(k, n, lambda, m).unwrap();
                    let j = johnson_r(l, w, mu).unwrap().value;
                    assert_eq!(j, Rational::new(lambda * n * n - m, m * (n - 1)));
                    assert_eq!(j, rr_max_columns(n, lambda, m).unwrap().value);
                }
            }
        }
    }
}

/// Largest family of pairwise disjoint weight-2 vectors of length 6,
/// by trying every subset of the 15 candidates.
#[test]
fn johnson_bound_meets_brute_force_for_disjoint_pairs() {
    let pairs: Vec<u32> = (0..6).flat_map(|i| (i + 1..6).map(move |j| (1 << i) | (1 << j))).collect();
    let mut best = 0;
    for mask in 0u32..1 << pairs.len() {
        let chosen: Vec<u32> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let disjoint = chosen.iter().enumerate().all(|(a, x)| chosen[a + 1..].iter().all(|y| x & y == 0));
        if disjoint {
            best = best.max(chosen.len());
        }
    }
    assert_eq!(best, 3);
    assert_eq!(johnson_r(6, 2, 0).unwrap().integer_form, BigInt::from(best));
}

#[test]
fn minima_round_up_and_maxima_round_down() {
    for k in 2..=8u64 {
        for n in 2..=5u64 {
            let lo = pb_min_lambda(k, n).unwrap();
            assert_eq!(lo.kind, BoundKind::Minimum);
            assert_eq!(lo.integer_form, lo.value.ceil());
            let hi = max_multiplicity(k, n, 2).unwrap();
            assert_eq!(hi.integer_form, hi.value.floor());
        }
    }
}

#[test]
fn wilson_specializes_to_mann_and_mann_to_fisher() {
    for v in 4..=12u64 {
        for k in 2..v {
            for m in 1..=3u64 {
                let p = DesignParameters::new(v, k, 1, 2, 100, m, Some(1)).unwrap();
                let all = bibd_bounds(&p);
                let by = |name: &str| all.iter().find(|r| r.name == name).unwrap().clone();
                assert_eq!(by("wilson").value, by("mann").value);
                let p1 = DesignParameters::new(v, k, 1, 2, 100, 1, Some(1)).unwrap();
                let all1 = bibd_bounds(&p1);
                assert_eq!(all1[1].value, all1[0].value);
            }
        }
    }
}

#[test]
fn worked_multiplicity_examples() {
    // (k, n, lambda) -> exact fraction and integer form
    let cases = [((4, 2, 2), (8, 5), 1), ((4, 2, 3), (12, 5), 2), ((5, 3, 3), (27, 11), 2)];
    for ((k, n, l), (p, q), floor) in cases {
        let r = max_multiplicity(k, n, l).unwrap();
        assert_eq!(r.value, Rational::new(p, q));
        assert_eq!(r.integer_form, BigInt::from(floor));
        assert_eq!(r.value.to_string(), format!("{p}/{q}"));
    }
}
