use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Tight,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Tight => "TIGHT",
        })
    }
}

/// One identity: `lhs` was computed from the array, `rhs` from the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

/// The inequality `lhs <= rhs` a proof technique yields.
///
/// Different techniques produce differently shifted forms of the same
/// inequality (`nk <= N + k - 1` versus `1 + k(n-1) <= N`); `shift` is the
/// amount subtracted from both sides to reach the common form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Implication {
    pub lhs: Rational,
    pub rhs: Rational,
    pub shift: Rational,
}

impl Implication {
    pub fn new(lhs: impl Into<Rational>, rhs: impl Into<Rational>, shift: impl Into<Rational>) -> Self {
        Implication { lhs: lhs.into(), rhs: rhs.into(), shift: shift.into() }
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    pub fn is_tight(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Both sides with the shift removed.
    pub fn canonical(&self) -> (Rational, Rational) {
        (&self.lhs - &self.shift, &self.rhs - &self.shift)
    }
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<={}", self.lhs, self.rhs)
    }
}

/// Ordered, keyed list of checks plus the implied inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub method: String,
    pub notes: Vec<String>,
    checks: Vec<Check>,
    pub implication: Option<Implication>,
}

impl AuditReport {
    pub fn new(method: &str) -> Self {
        AuditReport { method: method.to_string(), notes: Vec::new(), checks: Vec::new(), implication: None }
    }

    /// Records a check; `pass` is decided by the caller. Ids are unique.
    pub fn check(&mut self, id: impl Into<String>, lhs: impl ToString, rhs: impl ToString, pass: bool) -> bool {
        let id = id.into();
        debug_assert!(!self.checks.iter().any(|c| c.id == id), "duplicate check id {id}");
        self.checks.push(Check { id, lhs: lhs.to_string(), rhs: rhs.to_string(), pass });
        pass
    }

    /// Records an equality check.
    pub fn check_eq<T: PartialEq + ToString>(&mut self, id: impl Into<String>, lhs: T, rhs: T) -> bool {
        let pass = lhs == rhs;
        self.check(id, lhs, rhs, pass)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn check_by_id(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn verdict(&self) -> Verdict {
        match &self.implication {
            _ if !self.all_pass() => Verdict::Fail,
            None => Verdict::Pass,
            Some(imp) if !imp.holds() => Verdict::Fail,
            Some(imp) if imp.is_tight() => Verdict::Tight,
            Some(_) => Verdict::Pass,
        }
    }

    /// Appends another report's checks and notes; its implication replaces ours.
    pub fn absorb(&mut self, other: AuditReport) {
        self.notes.extend(other.notes);
        self.checks.extend(other.checks);
        if other.implication.is_some() {
            self.implication = other.implication;
        }
    }
}

impl fmt::Display for AuditReport {
    /// `# note` lines, one `CHECK` line per identity, then `IMPLIES`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.notes {
            writeln!(f, "# {n}")?;
        }
        for c in &self.checks {
            let v = if c.pass { Verdict::Pass } else { Verdict::Fail };
            writeln!(f, "CHECK {} {} {} {}", c.id, c.lhs, c.rhs, v)?;
        }
        match &self.implication {
            Some(imp) => writeln!(f, "IMPLIES {imp} {}", self.verdict()),
            None => writeln!(f, "IMPLIES none {}", self.verdict()),
        }
    }
}
