use num_bigint::BigInt;
use oakit_core::certificates::*;
use oakit_core::linalg::IntMatrix;
use oakit_core::search::{generate_linear_oa, generate_parity_oa};
use oakit_core::{OrthogonalArray, Rational, Verdict};

/// (name, array, largest repeated-row multiplicity)
fn fixtures() -> Vec<(&'static str, OrthogonalArray, usize)> {
    let base = generate_linear_oa(2, 3).unwrap();
    vec![
        ("oa1(3,2)", base.clone(), 1),
        ("oa1(4,3)", generate_linear_oa(3, 4).unwrap(), 1),
        ("oa1(6,5)", generate_linear_oa(5, 6).unwrap(), 1),
        ("oa2(4,2)", generate_parity_oa(4).unwrap(), 1),
        ("oa2(3,2)x2", base.stack(2), 2),
    ]
}

/// Changes one symbol of row 1 where it agrees with row 0, so the zero
/// counts seen from row 0 change too.
fn corrupt(a: &OrthogonalArray) -> OrthogonalArray {
    let mut rows: Vec<Vec<usize>> = a.rows().map(<[usize]>::to_vec).collect();
    let j = (0..a.k()).find(|&j| rows[0][j] == rows[1][j]).unwrap();
    rows[1][j] = (rows[1][j] + 1) % a.n();
    OrthogonalArray::new(a.n(), rows).unwrap()
}

#[test]
fn every_audit_passes_on_the_fixtures() {
    for (name, a, mmax) in fixtures() {
        for m in 1..=mmax {
            for method in AuditMethod::ALL {
                let r = run_audit(method, &a, m).unwrap_or_else(|e| panic!("{name} {method:?} m={m}: {e}"));
                assert!(r.all_pass(), "{name} {method:?}");
                assert!(r.implication.as_ref().unwrap().holds());
                assert_ne!(r.verdict(), Verdict::Fail);
            }
        }
    }
}

#[test]
fn index_bound_methods_reach_the_same_inequality() {
    for (name, a, _) in fixtures() {
        let (n, k, rows) = (a.n() as u64, a.k() as u64, a.num_rows() as u64);
        let expected = (Rational::from(1 + k * (n - 1)), Rational::from(rows));
        for method in [AuditMethod::Variance, AuditMethod::TdRank, AuditMethod::Gram, AuditMethod::Roots] {
            let r = run_audit(method, &a, 1).unwrap();
            assert_eq!(r.implication.unwrap().canonical(), expected, "{name} {method:?}");
        }
    }
}

#[test]
fn corrupted_arrays_fail_every_audit() {
    for (name, a, _) in fixtures() {
        let bad = corrupt(&a);
        assert!(bad.strength_lambda(2).is_err());
        for method in AuditMethod::ALL {
            let err = run_audit(method, &bad, 1).expect_err(&format!("{name} {method:?}"));
            if let Some(report) = err.report() {
                assert!(report.first_failure().is_some());
                assert_eq!(report.verdict(), Verdict::Fail);
            }
        }
    }
}

#[test]
fn variance_equality_case_on_the_smallest_array() {
    let a = generate_linear_oa(2, 3).unwrap();
    let v = variance_audit(&a, 1).unwrap();
    assert_eq!(v.abar, Rational::from(1));
    assert!(v.ssd.is_zero());
    assert!(v.equality_case);
    assert_eq!(v.report.verdict(), Verdict::Tight);
    for (obs, pred) in v.sums {
        assert_eq!(obs, pred);
    }
}

#[test]
fn variance_sums_match_a_direct_count() {
    for (name, a, mmax) in fixtures() {
        for m in 1..=mmax {
            let v = variance_audit(&a, m).unwrap();
            let counts = &v.counts.counts;
            assert_eq!(counts.len(), a.num_rows() - m, "{name}");
            let s1: u64 = counts.iter().map(|&c| c as u64).sum();
            let s2: u64 = counts.iter().map(|&c| (c as u64) * (c as u64)).sum();
            assert_eq!((v.sums[0].0, v.sums[2].0), (s1, s2));
            let len = Rational::from(counts.len() as u64);
            let mean = Rational::from(s1) / len.clone();
            let spread = counts.iter().fold(Rational::zero(), |acc, &c| {
                let d = Rational::from(c as u64) - mean.clone();
                acc + d.clone() * d
            });
            assert_eq!(v.ssd, spread);
        }
    }
}

#[test]
fn gram_on_the_smallest_array_is_tight() {
    let a = generate_linear_oa(2, 3).unwrap();
    let r = gram_certificate(&a).unwrap();
    assert_eq!(r.implication.as_ref().unwrap().to_string(), "7<=7");
    assert_eq!(r.verdict(), Verdict::Tight);
    let g = gram_matrix(&a, 1);
    assert_eq!((g.rows(), g.cols()), (7, 7));
    assert_eq!(g.determinant(), BigInt::from(2u64.pow(6) * 9));
}

#[test]
fn transversal_design_of_the_smallest_array() {
    let a = generate_linear_oa(2, 3).unwrap();
    let td = to_transversal_design(&a).unwrap();
    assert!(td.is_valid());
    let im = incidence_matrix(&td);
    assert_eq!((im.matrix.rows(), im.matrix.cols()), (7, 6));
    for c in 0..6 {
        let sum: BigInt = (0..7).map(|r| im.matrix.get(r, c).clone()).sum();
        assert_eq!(sum, BigInt::from(3));
    }
    assert_eq!(im.matrix.rank(), 6);
}

#[test]
fn incidence_rank_is_full() {
    for (name, a, _) in fixtures() {
        let im = incidence_matrix(&to_transversal_design(&a).unwrap());
        assert_eq!(rational_rank(&im.matrix), a.n() * a.k(), "{name}");
    }
}

#[test]
fn shortened_products_agree_with_the_full_family() {
    for (name, a, mmax) in fixtures() {
        let full = root_vector_family(&a).unwrap();
        for i in 0..full.len() {
            for j in 0..full.len() {
                let p = full.inner_product(i, j);
                assert_eq!(p.is_zero(), i != j, "{name} {i} {j}");
            }
        }
        for m in 1..=mmax {
            let r = shortened_family_certificate(&a, m).unwrap();
            let (lhs, rhs) = r.implication.unwrap().canonical();
            assert_eq!(lhs, Rational::from(full.len() as u64));
            assert_eq!(rhs, Rational::from((a.num_rows() - m + 1) as u64));
        }
    }
}

#[test]
fn cwc_parameters_for_the_doubled_array() {
    let a = generate_linear_oa(2, 3).unwrap().stack(2);
    let c = extract_cwc(&a, 2).unwrap();
    assert_eq!((c.length, c.weight, c.inner_product), (6, 2, 0));
    assert_eq!(c.vectors.len(), 3);
    assert_eq!(c.johnson_bound, Rational::from(3));
    assert_eq!(c.report.verdict(), Verdict::Tight);
}

#[test]
fn report_rendering() {
    let a = generate_linear_oa(2, 3).unwrap();
    let text = run_audit(AuditMethod::Gram, &a, 1).unwrap().to_string();
    assert!(text.lines().any(|l| l.starts_with("CHECK det>0 ")));
    assert_eq!(text.lines().last().unwrap(), "IMPLIES 7<=7 TIGHT");
    for m in AuditMethod::ALL {
        assert_eq!(m.name().parse::<AuditMethod>().unwrap(), m);
    }
}

/// Rank by Gaussian elimination over the rationals.
fn rational_rank(m: &IntMatrix) -> usize {
    let mut rows: Vec<Vec<Rational>> =
        (0..m.rows()).map(|i| m.row(i).iter().map(|x| Rational::from(x.clone())).collect()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone() / rows[rank][c].clone();
                for cc in c..m.cols() {
                    let d = f.clone() * rows[rank][cc].clone();
                    rows[r][cc] = rows[r][cc].clone() - d;
                }
            }
        }
        rank += 1;
    }
    rank
}
