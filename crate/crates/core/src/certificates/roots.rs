//! Mutually orthogonal root-of-unity vectors built from the columns.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{normalize_for_multiplicity, strength_two_index, AuditReport, Implication};
use crate::cyclotomic::{cyclotomic_polynomial, format_poly, RootCountVector};
use crate::error::CertificateError;
use crate::OrthogonalArray;

/// The vectors `phi(C_0)` and `phi(s C_j)` for `1 <= s <= n-1`,
/// `1 <= j <= k`, stored as exponent vectors over `Z_n`: entry `e` stands
/// for `w^e` with `w = exp(2 pi i / n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootVectorFamily {
    pub n: usize,
    pub k: usize,
    /// `(multiplier, column)`; `C_0` is `(0, None)`.
    pub labels: Vec<(usize, Option<usize>)>,
    pub exponents: Vec<Vec<usize>>,
}

impl RootVectorFamily {
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn label(&self, idx: usize) -> String {
        match self.labels[idx] {
            (_, None) => "C0".into(),
            (s, Some(j)) => format!("{s}C{}", j + 1),
        }
    }

    /// Hermitian product `<a, b> = sum_r w^(a_r - b_r)` as root counts.
    pub fn inner_product(&self, a: usize, b: usize) -> RootCountVector {
        weighted_product(self.n, &self.exponents[a], &self.exponents[b], |_| 1)
    }
}

fn weighted_product(n: usize, a: &[usize], b: &[usize], weight: impl Fn(usize) -> u64) -> RootCountVector {
    let mut c = RootCountVector::zeros(n);
    for (r, (&x, &y)) in a.iter().zip(b).enumerate() {
        c.add((x + n - y) % n, weight(r));
    }
    c
}

pub fn root_vector_family(a: &OrthogonalArray) -> Result<RootVectorFamily, CertificateError> {
    strength_two_index(a)?;
    let (n, k) = (a.n(), a.k());
    let mut labels = alloc::vec![(0, None)];
    let mut exponents = alloc::vec![alloc::vec![0; a.num_rows()]];
    for j in 0..k {
        let column = a.column(j);
        for s in 1..n {
            labels.push((s, Some(j)));
            exponents.push(column.iter().map(|&e| (s * e) % n).collect());
        }
    }
    Ok(RootVectorFamily { n, k, labels, exponents })
}

/// Shared pairwise check. `product(a, b)` gives the inner product, `len`
/// the value each self-product must reduce to.
fn pairwise(
    report: &mut AuditReport,
    fam: &RootVectorFamily,
    len: u64,
    product: impl Fn(usize, usize) -> RootCountVector,
) -> Option<(String, String)> {
    let phi = cyclotomic_polynomial(fam.n);
    let mut first_bad = None;
    for a in 0..fam.len() {
        let own = product(a, a);
        let residual = own.residual_with(&phi);
        report.check(
            format!("<{0},{0}>", fam.label(a)),
            format_poly(&residual),
            format!("[{len}]"),
            own.equals_integer(len),
        );
    }
    for a in 0..fam.len() {
        for b in a + 1..fam.len() {
            let residual = product(a, b).residual_with(&phi);
            let pair = format!("<{},{}>", fam.label(a), fam.label(b));
            let ok = report.check(pair.clone(), format_poly(&residual), "[]", residual.is_empty());
            if !ok && first_bad.is_none() {
                first_bad = Some((pair, format_poly(&residual)));
            }
        }
    }
    first_bad
}

/// All pairs of distinct family members are orthogonal, so the
/// `1 + k(n-1)` vectors are independent in `C^N`.
pub fn orthogonality_certificate(fam: &RootVectorFamily) -> Result<AuditReport, CertificateError> {
    let rows = fam.exponents[0].len();
    let mut report = AuditReport::new("roots");
    let size = 1 + fam.k * (fam.n - 1);
    report.check_eq("family-size", fam.len(), size);
    let bad = pairwise(&mut report, fam, rows as u64, |a, b| fam.inner_product(a, b));
    report.implication = Some(Implication::new(size as u64, rows as u64, 0u32));
    finish(report, bad)
}

fn finish(report: AuditReport, bad: Option<(String, String)>) -> Result<AuditReport, CertificateError> {
    if let Some((pair, residual)) = bad {
        return Err(CertificateError::NonOrthogonal { pair, residual, report });
    }
    if let Some(c) = report.first_failure() {
        return Err(CertificateError::NonOrthogonal {
            pair: c.id.clone(),
            residual: c.lhs.clone(),
            report: report.clone(),
        });
    }
    Ok(report)
}

/// Shortened family: with the last `m` rows identical, their `m`
/// coordinates are merged into one whose contribution to every product is
/// weighted by `m` (the square of the `sqrt(m)` rescaling). Inner products
/// are unchanged, leaving `1 + k(n-1)` independent vectors in
/// `C^(N-m+1)`.
pub fn shortened_family_certificate(a: &OrthogonalArray, m: usize) -> Result<AuditReport, CertificateError> {
    let normalized = normalize_for_multiplicity(a, m)?;
    let fam = root_vector_family(&normalized)?;
    let rows = a.num_rows();
    let kept = rows - m;
    let mut report = AuditReport::new("shortened");
    report.note(format!("last {m} coordinates merged into one of weight {m}; yields only k+N-m >= kn"));

    let identical = normalized.rows().skip(kept).all(|r| r == normalized.row(kept));
    report.check_eq("merged-rows-identical", identical, true);

    let size = 1 + fam.k * (fam.n - 1);
    report.check_eq("family-size", fam.len(), size);
    let shortened = |x: usize| -> Vec<usize> { fam.exponents[x][..=kept].to_vec() };
    let weight = |r: usize| if r == kept { m as u64 } else { 1 };
    let product = |x: usize, y: usize| weighted_product(fam.n, &shortened(x), &shortened(y), weight);
    let bad = pairwise(&mut report, &fam, rows as u64, product);
    report.implication = Some(Implication::new(size as u64, (kept + 1) as u64, 0u32));
    finish(report, bad)
}
