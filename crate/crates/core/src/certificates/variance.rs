//! The variance method: nonnegativity of the spread of per-row zero counts.

use alloc::format;
use alloc::vec::Vec;

use super::{normalize_for_multiplicity, strength_two_index, AuditReport, Implication};
use crate::array::SymbolCountVector;
use crate::bounds::rr_max_columns;
use crate::error::CertificateError;
use crate::rational::Rational;
use crate::OrthogonalArray;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarianceAudit {
    pub m: usize,
    pub lambda: usize,
    pub counts: SymbolCountVector,
    /// `(observed, predicted)` for `sum a`, `sum a(a-1)` and `sum a^2`.
    pub sums: [(u64, u64); 3],
    pub abar: Rational,
    /// `sum (a_i - abar)^2`, computed directly from the counts.
    pub ssd: Rational,
    /// `(lambda n^2 - m) / (m(n-1))`
    pub implied_max_columns: Rational,
    pub equality_case: bool,
    pub report: AuditReport,
}

/// Audits the variance argument on `a` using a row of multiplicity `m`.
///
/// After normalizing so the last `m` rows are all-zero, with `a_i` the
/// number of zeros in row `i < N - m`:
///
/// ```text
/// sum a_i        = k(lambda n - m)
/// sum a_i(a_i-1) = k(k-1)(lambda - m)
/// sum a_i^2      = k(k(lambda - m) + lambda(n-1))
/// ```
///
/// and the spread around `abar = k(lambda n - m)/(N - m)` factors as
/// `k lambda (n-1) (N - m(1 + k(n-1))) / (N - m)`, so its nonnegativity is
/// the repeated-row bound.
pub fn variance_audit(a: &OrthogonalArray, m: usize) -> Result<VarianceAudit, CertificateError> {
    let lambda = strength_two_index(a)?;
    let normalized = normalize_for_multiplicity(a, m)?;
    let counts = normalized.symbol_counts(m)?;

    let (k, n, lam, mm) = (a.k() as u64, a.n() as u64, lambda as u64, m as u64);
    let rows = a.num_rows() as u64;
    let mut report = AuditReport::new("variance");
    report.note(format!("normalized on a row of multiplicity >= {m}; a_i counts zeros in the first {} rows", rows - mm));

    // Signed: the closed forms go negative for non-OA inputs with m > lambda.
    let (k_i, n_i, l_i, m_i) = (k as i128, n as i128, lam as i128, mm as i128);
    let predicted = [
        k_i * (l_i * n_i - m_i),
        k_i * (k_i - 1) * (l_i - m_i),
        k_i * (k_i * (l_i - m_i) + l_i * (n_i - 1)),
    ];
    let observed = [counts.sum(), counts.sum_falling(), counts.sum_squares()];
    for (id, (obs, pred)) in ["sum-a", "sum-a(a-1)", "sum-a^2"].iter().zip(observed.iter().zip(predicted)) {
        report.check_eq(*id, *obs as i128, pred);
    }

    let len = counts.len() as u64;
    let abar = Rational::from(k * (lam * n).saturating_sub(mm)) / Rational::from(len.max(1));
    let ssd = counts
        .counts
        .iter()
        .map(|&ai| {
            let d = Rational::from(ai as u64) - abar.clone();
            &d * &d
        })
        .fold(Rational::zero(), |acc, x| acc + x);

    // sum a^2 - 2 abar sum a + abar^2 (N - m), from the closed forms
    let expansion = Rational::from(predicted[2])
        - Rational::from(2u32) * abar.clone() * Rational::from(predicted[0])
        + &(&abar * &abar) * &Rational::from(len);
    report.check_eq("ssd-expansion", ssd.clone(), expansion);

    let slack = rows as i128 - m_i * (1 + k_i * (n_i - 1));
    let factored = Rational::from(k_i * l_i * (n_i - 1) * slack) / Rational::from(len.max(1));
    report.check_eq("ssd-factorization", ssd.clone(), factored);
    report.check("ssd>=0", &ssd, 0, !ssd.is_negative());

    let all_equal = counts.counts.iter().all(|&ai| Rational::from(ai as u64) == abar);
    let equality_case = ssd.is_zero();
    report.check_eq("ssd=0<=>a_i=abar", equality_case, all_equal);

    let implied_max_columns = if mm <= lam {
        rr_max_columns(n, lam, mm).map(|b| b.value).unwrap_or_else(|_| Rational::zero())
    } else {
        Rational::zero()
    };
    report.implication = Some(Implication::new(mm * (1 + k * (n - 1)), rows, 0u32));

    if let Some(c) = report.first_failure() {
        return Err(CertificateError::IdentityViolated {
            id: c.id.clone(),
            lhs: c.lhs.clone(),
            rhs: c.rhs.clone(),
            report: report.clone(),
        });
    }
    let sums: Vec<(u64, u64)> = observed.iter().zip(predicted).map(|(&o, p)| (o, p as u64)).collect();
    Ok(VarianceAudit {
        m,
        lambda,
        counts,
        sums: [sums[0], sums[1], sums[2]],
        abar,
        ssd,
        implied_max_columns,
        equality_case,
        report,
    })
}
