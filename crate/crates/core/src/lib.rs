//! Exact verification and bounds for orthogonal arrays and block designs.
//!
//! Everything here is integer or rational arithmetic; no floating point is
//! used to decide any verdict. The crate is `no_std` and needs only `alloc`.
//!
//! * [`array`] and [`design`] hold the data model and strength checks.
//! * [`bounds`] evaluates the existence inequalities as exact rationals.
//! * [`certificates`] re-runs the classical proof techniques on a concrete
//!   array and records every identity it checks.
//! * [`search`] is an exhaustive backtracking oracle for small parameters.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod array;
pub mod bounds;
pub mod certificates;
pub mod combinatorics;
pub mod cyclotomic;
pub mod design;
pub mod error;
pub mod linalg;
pub mod rational;
pub mod search;

pub use array::{OrthogonalArray, RowMultiplicityReport, SymbolCountVector};
pub use bounds::{BoundKind, BoundResult, BoundStatus, DesignParameters, OAParameters};
pub use certificates::{AuditReport, Implication, Verdict};
pub use design::BlockDesign;
pub use error::{BoundsError, CertificateError, DesignError, SearchError};
pub use rational::Rational;
pub use search::{SearchMode, SearchProblem, SearchResult, SearchStatus};
