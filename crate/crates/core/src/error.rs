use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::certificates::AuditReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("array must have at least one row and two columns (got {rows}x{cols})")]
    BadShape { rows: usize, cols: usize },
    #[error("alphabet size must be at least 2 (got {0})")]
    BadAlphabet(usize),
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("entry {value} at row {row}, column {col} is outside 0..{n}")]
    SymbolOutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("strength {t} is outside 2..={k}")]
    BadStrength { t: usize, k: usize },
    #[error("{rows} rows is not a multiple of n^t = {n_pow_t}")]
    NonintegralIndex { rows: usize, n_pow_t: usize },
    #[error("columns {columns:?}: tuple {tuple:?} occurs {count} times, expected {expected}")]
    NotAnOA { columns: Vec<usize>, tuple: Vec<usize>, count: usize, expected: usize },
    #[error("row index {index} out of range for {rows} rows")]
    RowOutOfRange { index: usize, rows: usize },
    #[error("the last {m} rows are not all-zero")]
    NotNormalized { m: usize },
    #[error("multiplicity must satisfy 1 <= m <= N (m = {m}, N = {rows})")]
    BadMultiplicity { m: usize, rows: usize },
    #[error("block {block} is not a {k}-subset of 0..{v}")]
    BadBlock { block: usize, k: usize, v: usize },
    #[error("design parameters need 2 <= t <= k <= v (t = {t}, k = {k}, v = {v})")]
    BadDesignShape { t: usize, k: usize, v: usize },
    #[error("points {subset:?} lie in {count} blocks, expected {expected}")]
    NotADesign { subset: Vec<usize>, count: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("Johnson hypothesis w^2 > l*mu fails (l = {l}, w = {w}, mu = {mu})")]
    HypothesisViolated { l: u64, w: u64, mu: u64 },
}

/// Failure of a proof audit. Every variant that follows a completed
/// audit carries the full report so callers can still print it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("identity {id} violated: {lhs} != {rhs}")]
    IdentityViolated { id: String, lhs: String, rhs: String, report: AuditReport },
    #[error("equation {id} violated at coordinate {coordinate}")]
    EquationViolated { id: String, coordinate: usize, report: AuditReport },
    #[error("rank deficient: {id} has rank {rank}, expected {expected}")]
    RankDeficient { id: String, rank: usize, expected: usize, report: AuditReport },
    #[error("Gram matrix entry {id} differs from the closed form")]
    LemmaViolated { id: String, report: AuditReport },
    #[error("Gram determinant is not positive")]
    NonpositiveDeterminant { report: AuditReport },
    #[error("vectors {pair} are not orthogonal; residual {residual}")]
    NonOrthogonal { pair: String, residual: String, report: AuditReport },
    #[error("column {column} has weight {weight}, expected {expected}")]
    WeightMismatch { column: usize, weight: usize, expected: usize, report: AuditReport },
    #[error("columns {pair} have inner product {value}, expected {expected}")]
    InnerProductMismatch { pair: String, value: usize, expected: usize, report: AuditReport },
}

impl CertificateError {
    /// The partial report, when the audit got far enough to produce one.
    pub fn report(&self) -> Option<&AuditReport> {
        match self {
            CertificateError::Design(_) => None,
            CertificateError::IdentityViolated { report, .. }
            | CertificateError::EquationViolated { report, .. }
            | CertificateError::RankDeficient { report, .. }
            | CertificateError::LemmaViolated { report, .. }
            | CertificateError::NonpositiveDeterminant { report }
            | CertificateError::NonOrthogonal { report, .. }
            | CertificateError::WeightMismatch { report, .. }
            | CertificateError::InnerProductMismatch { report, .. } => Some(report),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{rows} rows exceeds the search ceiling of {ceiling}")]
    OverCeiling { rows: usize, ceiling: usize },
    #[error("invalid search problem: {0}")]
    InvalidProblem(String),
    #[error("node budget exhausted before the search completed")]
    BudgetExceeded,
    #[error("unsupported generator parameters: {0}")]
    UnsupportedParameters(String),
}
