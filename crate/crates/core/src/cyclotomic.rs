//! Exact zero-testing for sums of `n`-th roots of unity.
//!
//! A sum `c_0 + c_1 w + ... + c_{n-1} w^{n-1}` with `w = exp(2 pi i / n)`
//! vanishes exactly when the polynomial `sum c_s x^s` is divisible by the
//! cyclotomic polynomial `Phi_n`. Both sides are integer polynomials and
//! `Phi_n` is monic, so the test is plain long division.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Integer polynomial, lowest degree first, without trailing zeros.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Quotient and remainder of `num` by the monic polynomial `den`.
fn divrem_monic(num: &[BigInt], den: &[BigInt]) -> (IntPoly, IntPoly) {
    let mut rem: IntPoly = num.to_vec();
    trim(&mut rem);
    let d = den.len() - 1;
    debug_assert!(den[d].is_one());
    if rem.len() <= d {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for shift in (0..quot.len()).rev() {
        let lead = rem[shift + d].clone();
        if lead.is_zero() {
            continue;
        }
        for (i, c) in den.iter().enumerate() {
            rem[shift + i] -= &lead * c;
        }
        quot[shift] = lead;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Phi_n`, computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic_polynomial(n: usize) -> IntPoly {
    assert!(n >= 1, "Phi_0 is undefined");
    let mut x_n_minus_1 = vec![BigInt::zero(); n + 1];
    x_n_minus_1[0] = -BigInt::one();
    x_n_minus_1[n] = BigInt::one();
    let mut divisor: IntPoly = vec![BigInt::one()];
    for d in (1..n).filter(|d| n % d == 0) {
        divisor = mul(&divisor, &cyclotomic_polynomial(d));
    }
    let (quot, rem) = divrem_monic(&x_n_minus_1, &divisor);
    debug_assert!(rem.is_empty());
    quot
}

/// Counts `(c_0, ..., c_{n-1})` standing for `sum c_s w^s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootCountVector {
    counts: Vec<u64>,
}

impl RootCountVector {
    pub fn new(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty(), "root order must be at least 1");
        RootCountVector { counts }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// The root order `n`.
    pub fn order(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Adds `weight` copies of `w^exponent` (exponent taken mod `n`).
    pub fn add(&mut self, exponent: usize, weight: u64) {
        let n = self.counts.len();
        self.counts[exponent % n] += weight;
    }

    /// Total weight; equals the length of the inner product that produced it.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Remainder of `sum c_s x^s` modulo `Phi_n`.
    pub fn residual(&self) -> IntPoly {
        self.residual_with(&cyclotomic_polynomial(self.order()))
    }

    /// Like [`residual`](Self::residual) with a precomputed `Phi_n`.
    pub fn residual_with(&self, phi: &[BigInt]) -> IntPoly {
        let poly: IntPoly = self.counts.iter().map(|&c| BigInt::from(c)).collect();
        divrem_monic(&poly, phi).1
    }

    pub fn is_zero(&self) -> bool {
        self.residual().is_empty()
    }

    /// Whether the sum equals the rational integer `value`.
    pub fn equals_integer(&self, value: u64) -> bool {
        let r = self.residual();
        match value {
            0 => r.is_empty(),
            v => r.len() == 1 && r[0] == BigInt::from(v),
        }
    }
}

/// Renders a polynomial as `[c0,c1,...]`.
pub fn format_poly(p: &[BigInt]) -> String {
    let mut s = String::from("[");
    for (i, c) in p.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{c}");
    }
    s.push(']');
    s
}
