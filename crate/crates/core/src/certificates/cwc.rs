//! Constant-weight binary code read off the zero pattern of the columns.

use alloc::format;
use alloc::vec::Vec;

use super::{normalize_for_multiplicity, strength_two_index, AuditReport, Implication};
use crate::bounds::{johnson_r, rr_max_columns};
use crate::error::CertificateError;
use crate::rational::Rational;
use crate::OrthogonalArray;

/// `k` binary vectors of length `l = lambda n^2 - m`, weight
/// `w = lambda n - m`, pairwise inner product `mu = lambda - m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantWeightCodeFamily {
    pub length: usize,
    pub weight: usize,
    pub inner_product: usize,
    pub vectors: Vec<Vec<bool>>,
    /// Johnson's bound for `(l, w, mu)`.
    pub johnson_bound: Rational,
    pub report: AuditReport,
}

/// Deletes `m` all-zero rows (after normalization), maps every nonzero
/// symbol to 0 and zero to 1, and checks the code parameters and Johnson's
/// bound against the repeated-row column bound.
pub fn extract_cwc(a: &OrthogonalArray, m: usize) -> Result<ConstantWeightCodeFamily, CertificateError> {
    let lambda = strength_two_index(a)?;
    let normalized = normalize_for_multiplicity(a, m)?;
    let (n, k) = (a.n(), a.k());
    let length = a.num_rows() - m;
    let vectors: Vec<Vec<bool>> = (0..k)
        .map(|j| normalized.rows().take(length).map(|r| r[j] == 0).collect())
        .collect();

    let weight = (lambda * n).saturating_sub(m);
    let mu = lambda.saturating_sub(m);
    let mut report = AuditReport::new("cwc");
    let mut first_weight = None;
    for (j, v) in vectors.iter().enumerate() {
        let w = v.iter().filter(|&&b| b).count();
        if !report.check_eq(format!("weight[C{}]", j + 1), w, weight) && first_weight.is_none() {
            first_weight = Some((j, w));
        }
    }
    let mut first_inner = None;
    for i in 0..k {
        for j in i + 1..k {
            let ip = vectors[i].iter().zip(&vectors[j]).filter(|(x, y)| **x && **y).count();
            let id = format!("inner[C{},C{}]", i + 1, j + 1);
            if !report.check_eq(id.clone(), ip, mu) && first_inner.is_none() {
                first_inner = Some((id, ip));
            }
        }
    }

    // w^2 - l mu = m lambda (n-1)^2 for a genuine OA
    let (l64, w64, mu64) = (length as u64, weight as u64, mu as u64);
    let gap = (w64 * w64) as i128 - (l64 * mu64) as i128;
    report.check_eq("w^2-l*mu", gap, (m * lambda * (n - 1) * (n - 1)) as i128);
    let johnson = johnson_r(l64, w64, mu64).map(|b| b.value);
    let johnson_bound = johnson.clone().unwrap_or_else(|_| Rational::zero());
    report.check("johnson-hypothesis", gap, 0, johnson.is_ok());
    if m <= lambda {
        let column_bound = rr_max_columns(n as u64, lambda as u64, m as u64).map(|b| b.value).unwrap_or_else(|_| Rational::zero());
        report.check_eq("johnson=repeated-row-bound", johnson_bound.clone(), column_bound);
    }
    report.implication = Some(Implication::new(k as u64, johnson_bound.clone(), 0u32));

    if let Some((column, w)) = first_weight {
        return Err(CertificateError::WeightMismatch { column, weight: w, expected: weight, report });
    }
    if let Some((pair, value)) = first_inner {
        return Err(CertificateError::InnerProductMismatch { pair, value, expected: mu, report });
    }
    if let Some(c) = report.first_failure() {
        return Err(CertificateError::IdentityViolated {
            id: c.id.clone(),
            lhs: c.lhs.clone(),
            rhs: c.rhs.clone(),
            report: report.clone(),
        });
    }
    Ok(ConstantWeightCodeFamily { length, weight, inner_product: mu, vectors, johnson_bound, report })
}
