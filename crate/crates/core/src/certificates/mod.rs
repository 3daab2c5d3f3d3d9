//! Mechanical audits of the classical proofs of the Plackett-Burman bound
//! and its repeated-row strengthening.
//!
//! Each audit takes a concrete array, recomputes every intermediate
//! identity of one proof technique with exact arithmetic, and records the
//! inequality the technique yields. The audits do not verify strength
//! themselves; a non-OA input shows up as a failed identity.

mod cwc;
mod gram;
mod report;
mod roots;
mod transversal;
mod variance;

use core::fmt;
use core::str::FromStr;

pub use cwc::{extract_cwc, ConstantWeightCodeFamily};
pub use gram::{gram_certificate, gram_matrix};
pub use report::{AuditReport, Check, Implication, Verdict};
pub use roots::{
    orthogonality_certificate, root_vector_family, shortened_family_certificate, RootVectorFamily,
};
pub use transversal::{
    check_span_equations, incidence_matrix, rank_bound_certificate, to_transversal_design,
    IncidenceMatrix, TransversalDesign,
};
pub use variance::{variance_audit, VarianceAudit};

use crate::array::OrthogonalArray;
use crate::error::{CertificateError, DesignError};

/// The audit methods selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuditMethod {
    Variance,
    TdRank,
    Gram,
    Roots,
    Shortened,
    Cwc,
}

impl AuditMethod {
    pub const ALL: [AuditMethod; 6] = [
        AuditMethod::Variance,
        AuditMethod::TdRank,
        AuditMethod::Gram,
        AuditMethod::Roots,
        AuditMethod::Shortened,
        AuditMethod::Cwc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AuditMethod::Variance => "variance",
            AuditMethod::TdRank => "td-rank",
            AuditMethod::Gram => "gram",
            AuditMethod::Roots => "roots",
            AuditMethod::Shortened => "shortened",
            AuditMethod::Cwc => "cwc",
        }
    }
}

impl fmt::Display for AuditMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AuditMethod {
    type Err = alloc::string::String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AuditMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| alloc::format!("unknown audit method `{s}`"))
    }
}

/// Runs one audit and returns its report. `m` is the repeated-row
/// multiplicity to exploit; methods that ignore it accept any value.
pub fn run_audit(
    method: AuditMethod,
    array: &OrthogonalArray,
    m: usize,
) -> Result<AuditReport, CertificateError> {
    match method {
        AuditMethod::Variance => variance_audit(array, m).map(|a| a.report),
        AuditMethod::TdRank => {
            let td = to_transversal_design(array)?;
            let mut report = check_span_equations(&td)?;
            let rank = rank_bound_certificate(&incidence_matrix(&td), m)?;
            report.absorb(rank);
            Ok(report)
        }
        AuditMethod::Gram => gram_certificate(array),
        AuditMethod::Roots => orthogonality_certificate(&root_vector_family(array)?),
        AuditMethod::Shortened => shortened_family_certificate(array, m),
        AuditMethod::Cwc => extract_cwc(array, m).map(|c| c.report),
    }
}

/// `N / n^2`, without checking balance.
pub(crate) fn strength_two_index(a: &OrthogonalArray) -> Result<usize, DesignError> {
    let nn = a.n() * a.n();
    let rows = a.num_rows();
    if rows % nn != 0 {
        return Err(DesignError::NonintegralIndex { rows, n_pow_t: nn });
    }
    Ok(rows / nn)
}

/// Normalizes `a` around a row of multiplicity at least `m`, so that the
/// last `m` (or more) rows are all-zero.
pub(crate) fn normalize_for_multiplicity(
    a: &OrthogonalArray,
    m: usize,
) -> Result<OrthogonalArray, DesignError> {
    let census = a.row_multiplicities();
    if m == 0 || census.max_multiplicity < m {
        return Err(DesignError::BadMultiplicity { m, rows: a.num_rows() });
    }
    a.normalize_to_row(census.witness)
}

pub(crate) fn fmt_vec<T: fmt::Display>(v: impl IntoIterator<Item = T>) -> alloc::string::String {
    use core::fmt::Write;
    let mut s = alloc::string::String::from("[");
    for (i, x) in v.into_iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{x}");
    }
    s.push(']');
    s
}
