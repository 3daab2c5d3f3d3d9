//! Gram matrix of the scaled incidence matrix and its determinant.

use alloc::format;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{fmt_vec, strength_two_index, AuditReport, Implication};
use crate::error::CertificateError;
use crate::linalg::IntMatrix;
use crate::OrthogonalArray;

/// `M~ M~^T` as an exact `(nk+1) x (nk+1)` integer matrix.
///
/// `M~` has a row per point plus one extra row, a column per block and per
/// group; the group columns carry a factor `sqrt(lambda)` and the extra
/// row is 1 on the group columns. Only products of two group entries ever
/// appear, so the factor enters as an exact `lambda`:
/// `G = P P^T + lambda Q Q^T` with `P` the point/block and `Q` the
/// point/group incidence (extra row: zeros in `P`, ones in `Q`).
pub fn gram_matrix(a: &OrthogonalArray, lambda: usize) -> IntMatrix {
    let (n, k) = (a.n(), a.k());
    let dim = n * k + 1;
    let p = IntMatrix::from_fn(dim, a.num_rows(), |x, i| {
        let hit = x < n * k && a.entry(i, x / n) == x % n;
        BigInt::from(hit as u8)
    });
    let q = IntMatrix::from_fn(dim, k, |x, j| BigInt::from((x == n * k || x / n == j) as u8));
    let pp = &p * &p.transpose();
    let qq = &q * &q.transpose();
    let lam = BigInt::from(lambda);
    IntMatrix::from_fn(dim, dim, |i, j| pp.get(i, j) + &lam * qq.get(i, j))
}

/// `lambda J + diag(lambda n, ..., lambda n, (k-1) lambda)`
fn closed_form(n: usize, k: usize, lambda: usize) -> IntMatrix {
    let dim = n * k + 1;
    IntMatrix::from_fn(dim, dim, |i, j| {
        let diag = match (i == j, i == dim - 1) {
            (false, _) => 0,
            (true, false) => lambda * n,
            (true, true) => (k - 1) * lambda,
        };
        BigInt::from(lambda + diag)
    })
}

/// Checks the Gram matrix entrywise against the closed form, computes its
/// determinant by fraction-free elimination, and concludes
/// `nk + 1 = rank(G) <= rank(M~) <= N + k`.
///
/// The closed form's determinant is `lambda^(nk+1) n^(nk) k^2`, recorded as
/// a second route to the same number.
pub fn gram_certificate(a: &OrthogonalArray) -> Result<AuditReport, CertificateError> {
    let lambda = strength_two_index(a)?;
    let (n, k) = (a.n(), a.k());
    let dim = n * k + 1;
    let gram = gram_matrix(a, lambda);
    let expected = closed_form(n, k, lambda);

    let mut report = AuditReport::new("gram");
    report.check_eq("gram-symmetric", gram.is_symmetric(), true);
    let mut mismatch: Option<usize> = None;
    for i in 0..dim {
        let ok = report.check(
            format!("gram-row[{i}]"),
            fmt_vec(gram.row(i)),
            fmt_vec(expected.row(i)),
            gram.row(i) == expected.row(i),
        );
        if !ok && mismatch.is_none() {
            mismatch = Some(i);
        }
    }

    let det = gram.determinant();
    let predicted = BigInt::from(lambda).pow((dim) as u32) * BigInt::from(n).pow((n * k) as u32) * BigInt::from(k * k);
    report.check_eq("det-closed-form", det.clone(), predicted);
    let positive = det.is_positive();
    report.check("det>0", &det, 0, positive);
    let rank_ok = !det.is_zero();
    report.check("rank(G)", if rank_ok { dim } else { gram.rank() }, dim, rank_ok);
    report.implication = Some(Implication::new(dim as u64, (a.num_rows() + k) as u64, k as u64));

    if let Some(row) = mismatch {
        return Err(CertificateError::LemmaViolated { id: format!("gram-row[{row}]"), report });
    }
    if !positive {
        return Err(CertificateError::NonpositiveDeterminant { report });
    }
    if let Some(c) = report.first_failure() {
        return Err(CertificateError::LemmaViolated { id: c.id.clone(), report: report.clone() });
    }
    Ok(report)
}

