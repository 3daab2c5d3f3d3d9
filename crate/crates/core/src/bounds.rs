//! Existence bounds for orthogonal arrays and block designs.
//!
//! Every bound is returned as an exact [`Rational`] together with the
//! integer it implies: a ceiling for lower bounds and a floor for upper
//! bounds. When an observed value is attached, [`BoundResult::status`]
//! says whether it satisfies the bound, and tightness is reported only on
//! exact equality.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};

use crate::combinatorics::binomial;
use crate::error::BoundsError;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// The observed quantity must be at least the value.
    Minimum,
    /// The observed quantity must be at most the value.
    Maximum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    Satisfied,
    Tight,
    Violated,
    /// No observed value was supplied.
    Unchecked,
    /// A side condition of the theorem fails for these parameters.
    Inapplicable,
}

impl fmt::Display for BoundStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundStatus::Satisfied => "SATISFIED",
            BoundStatus::Tight => "TIGHT",
            BoundStatus::Violated => "VIOLATED",
            BoundStatus::Unchecked => "UNCHECKED",
            BoundStatus::Inapplicable => "INAPPLICABLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: Rational,
    /// Ceiling of `value` for minima, floor for maxima.
    pub integer_form: BigInt,
    pub applicable: bool,
    pub observed: Option<Rational>,
}

impl BoundResult {
    fn new(name: &'static str, kind: BoundKind, value: Rational) -> Self {
        let integer_form = match kind {
            BoundKind::Minimum => value.ceil(),
            BoundKind::Maximum => value.floor(),
        };
        BoundResult { name, kind, value, integer_form, applicable: true, observed: None }
    }

    fn minimum(name: &'static str, value: Rational) -> Self {
        Self::new(name, BoundKind::Minimum, value)
    }

    fn maximum(name: &'static str, value: Rational) -> Self {
        Self::new(name, BoundKind::Maximum, value)
    }

    fn applicable_if(mut self, cond: bool) -> Self {
        self.applicable = cond;
        self
    }

    /// Attaches the quantity the bound constrains.
    pub fn with_observed(mut self, observed: impl Into<Rational>) -> Self {
        self.observed = Some(observed.into());
        self
    }

    /// `Some(true)` when the observed value meets the bound, `None` if
    /// there is nothing to compare or the bound does not apply.
    pub fn satisfied(&self) -> Option<bool> {
        match self.status() {
            BoundStatus::Satisfied | BoundStatus::Tight => Some(true),
            BoundStatus::Violated => Some(false),
            BoundStatus::Unchecked | BoundStatus::Inapplicable => None,
        }
    }

    pub fn status(&self) -> BoundStatus {
        if !self.applicable {
            return BoundStatus::Inapplicable;
        }
        let Some(obs) = &self.observed else {
            return BoundStatus::Unchecked;
        };
        let ok = match self.kind {
            BoundKind::Minimum => *obs >= self.value,
            BoundKind::Maximum => *obs <= self.value,
        };
        if !ok {
            BoundStatus::Violated
        } else if *obs == self.value {
            BoundStatus::Tight
        } else {
            BoundStatus::Satisfied
        }
    }
}

/// Validated strength-`t` array parameters with a claimed repeated row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OAParameters {
    pub t: u64,
    pub k: u64,
    pub n: u64,
    pub lambda: u64,
    pub m: u64,
}

impl OAParameters {
    pub fn new(t: u64, k: u64, n: u64, lambda: u64, m: u64) -> Result<Self, BoundsError> {
        if t < 2 || k < t || n < 2 || lambda < 1 || m < 1 {
            return Err(invalid(format!(
                "need t >= 2, k >= t, n >= 2, lambda >= 1, m >= 1 (t={t}, k={k}, n={n}, lambda={lambda}, m={m})"
            )));
        }
        // A repeated row already contributes m to every tuple count.
        if m > lambda {
            return Err(invalid(format!("m = {m} exceeds lambda = {lambda}")));
        }
        Ok(OAParameters { t, k, n, lambda, m })
    }

    /// `lambda * n^t`
    pub fn rows(&self) -> BigUint {
        BigUint::from(self.lambda) * BigUint::from(self.n).pow(self.t as u32)
    }
}

/// Validated `t-(v, k, lambda)` design parameters with `b` blocks, a block
/// of multiplicity `m`, and projection order `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignParameters {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub t: u64,
    pub b: u64,
    pub m: u64,
    pub s: u64,
}

impl DesignParameters {
    /// `s` defaults to `floor(t / 2)`.
    pub fn new(v: u64, k: u64, lambda: u64, t: u64, b: u64, m: u64, s: Option<u64>) -> Result<Self, BoundsError> {
        let s = s.unwrap_or(t / 2);
        if k < 2 || k > v || t < 2 || s < 1 || m < 1 {
            return Err(invalid(format!(
                "need 2 <= k <= v, t >= 2, s >= 1, m >= 1 (v={v}, k={k}, t={t}, s={s}, m={m})"
            )));
        }
        Ok(DesignParameters { v, k, lambda, t, b, m, s })
    }
}

fn invalid(msg: alloc::string::String) -> BoundsError {
    BoundsError::InvalidParameter(msg)
}

fn require(cond: bool, msg: &str) -> Result<(), BoundsError> {
    if cond {
        Ok(())
    } else {
        Err(invalid(msg.into()))
    }
}

fn q(x: u64) -> Rational {
    Rational::from(x)
}

/// Minimum index of a strength-2 array: `(k(n-1)+1) / n^2`.
pub fn pb_min_lambda(k: u64, n: u64) -> Result<BoundResult, BoundsError> {
    let mut r = rr_min_lambda(k, n, 1)?;
    r.name = "plackett-burman-min-lambda";
    Ok(r)
}

/// Minimum index with an `m`-times repeated row: `m(k(n-1)+1) / n^2`.
pub fn rr_min_lambda(k: u64, n: u64, m: u64) -> Result<BoundResult, BoundsError> {
    require(k >= 2 && n >= 2 && m >= 1, "need k >= 2, n >= 2, m >= 1")?;
    let value = q(m) * q(k * (n - 1) + 1) / q(n * n);
    Ok(BoundResult::minimum("repeated-row-min-lambda", value))
}

/// Maximum column count with an `m`-times repeated row:
/// `(lambda n^2 - m) / (m(n-1))`. With `m = 1` this is the column form of
/// the Plackett-Burman bound.
pub fn rr_max_columns(n: u64, lambda: u64, m: u64) -> Result<BoundResult, BoundsError> {
    require(n >= 2 && lambda >= 1 && m >= 1 && m <= lambda, "need n >= 2, 1 <= m <= lambda")?;
    let value = (q(lambda * n * n) - q(m)) / (q(m) * q(n - 1));
    Ok(BoundResult::maximum("repeated-row-max-columns", value))
}

/// Largest possible repeated-row multiplicity: `lambda n^2 / (k(n-1)+1)`.
pub fn max_multiplicity(k: u64, n: u64, lambda: u64) -> Result<BoundResult, BoundsError> {
    require(k >= 2 && n >= 2 && lambda >= 1, "need k >= 2, n >= 2, lambda >= 1")?;
    let value = q(lambda * n * n) / q(k * (n - 1) + 1);
    Ok(BoundResult::maximum("max-multiplicity", value))
}

/// Count of zeros every non-repeated row must carry when the repeated-row
/// bound holds with equality: `k(lambda n - m) / (lambda n^2 - m)`.
pub fn equality_abar(k: u64, n: u64, lambda: u64, m: u64) -> Result<Rational, BoundsError> {
    require(m >= 1 && lambda * n * n > m && lambda * n >= m, "need 1 <= m < lambda n^2")?;
    Ok(q(k) * q(lambda * n - m) / q(lambda * n * n - m))
}

fn rao_sum(t: u64, k: u64, n: u64) -> BigUint {
    let base = BigUint::from(n - 1);
    let mut total = BigUint::from(1u32);
    for i in 1..=t / 2 {
        total += binomial(k, i) * base.pow(i as u32);
    }
    if t % 2 == 1 {
        let s = (t - 1) / 2;
        total += binomial(k - 1, s) * base.pow(t.div_ceil(2) as u32);
    }
    total
}

/// Minimum row count `lambda n^t` of a strength-`t` array.
pub fn rao_min_rows(t: u64, k: u64, n: u64) -> Result<BoundResult, BoundsError> {
    require(t >= 2 && k >= t && n >= 2, "need t >= 2, k >= t, n >= 2")?;
    let value = Rational::from(BigInt::from(rao_sum(t, k, n)));
    Ok(BoundResult::minimum("rao-min-rows", value))
}

/// Minimum row count with an `m`-times repeated row: `m` times the Rao sum.
pub fn mqw_min_rows(t: u64, k: u64, n: u64, m: u64) -> Result<BoundResult, BoundsError> {
    require(t >= 2 && k >= t && n >= 2 && m >= 1, "need t >= 2, k >= t, n >= 2, m >= 1")?;
    let value = Rational::from(BigInt::from(rao_sum(t, k, n) * BigUint::from(m)));
    Ok(BoundResult::minimum("mukerjee-qian-wu-min-rows", value))
}

/// Upper bound on the size of a family of weight-`w` binary vectors of
/// length `l` with pairwise inner products at most `mu`:
/// `l(w - mu) / (w^2 - l mu)`, valid only when `w^2 > l mu`.
pub fn johnson_r(l: u64, w: u64, mu: u64) -> Result<BoundResult, BoundsError> {
    let (lb, wb, mb) = (BigInt::from(l), BigInt::from(w), BigInt::from(mu));
    let denom = &wb * &wb - &lb * &mb;
    if denom <= BigInt::from(0) {
        return Err(BoundsError::HypothesisViolated { l, w, mu });
    }
    let value = Rational::new(lb * (wb - mb), denom);
    Ok(BoundResult::maximum("johnson-max-codewords", value))
}

/// Constant-weight code parameters `(l, w, mu)` of the zero indicators of
/// the columns after deleting `m` all-zero rows.
pub fn oa_to_cwc_params(k: u64, n: u64, lambda: u64, m: u64) -> Result<(u64, u64, u64), BoundsError> {
    require(k >= 2 && n >= 2 && m >= 1 && m <= lambda, "need k >= 2, n >= 2, 1 <= m <= lambda")?;
    Ok((lambda * n * n - m, lambda * n - m, lambda - m))
}

/// Fisher, Mann, Ray-Chaudhuri-Wilson and Wilson lower bounds on `b`,
/// each compared against `p.b` and tagged with its side conditions.
pub fn bibd_bounds(p: &DesignParameters) -> Vec<BoundResult> {
    let fisher_ok = p.v > p.k;
    let rcw_ok = p.t >= 2 * p.s && p.v >= p.k + p.s;
    let c_vs = Rational::from(BigInt::from(binomial(p.v, p.s)));
    let b = q(p.b);
    alloc::vec![
        BoundResult::minimum("fisher", q(p.v)).applicable_if(fisher_ok).with_observed(b.clone()),
        BoundResult::minimum("mann", q(p.m) * q(p.v)).applicable_if(fisher_ok).with_observed(b.clone()),
        BoundResult::minimum("ray-chaudhuri-wilson", c_vs.clone()).applicable_if(rcw_ok).with_observed(b.clone()),
        BoundResult::minimum("wilson", q(p.m) * c_vs).applicable_if(rcw_ok).with_observed(b),
    ]
}
