//! Transversal design of a strength-2 array, its incidence matrix, and the
//! span/rank argument.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{fmt_vec, strength_two_index, AuditReport, Implication};
use crate::error::CertificateError;
use crate::linalg::IntMatrix;
use crate::OrthogonalArray;

/// Points `(s, j)` for symbol `s` and column `j`, numbered `j * n + s`.
/// Group `j` holds the `n` points of column `j`; block `i` holds the point
/// `(A[i][j], j)` of every column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalDesign {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl TransversalDesign {
    pub fn num_points(&self) -> usize {
        self.n * self.k
    }

    pub fn point(&self, symbol: usize, group: usize) -> usize {
        group * self.n + symbol
    }

    pub fn group(&self, j: usize) -> Vec<usize> {
        (0..self.n).map(|s| self.point(s, j)).collect()
    }

    pub fn group_of(&self, point: usize) -> usize {
        point / self.n
    }

    /// Indicator vector of a point set.
    fn indicator(&self, points: &[usize]) -> Vec<i64> {
        let mut v = vec![0; self.num_points()];
        for &p in points {
            v[p] += 1;
        }
        v
    }

    /// Each block meets each group once; distinct-group pairs lie in
    /// `lambda` blocks.
    pub fn is_valid(&self) -> bool {
        let meets = self.blocks.iter().all(|b| {
            b.len() == self.k && (0..self.k).all(|j| b.iter().filter(|&&p| self.group_of(p) == j).count() == 1)
        });
        let np = self.num_points();
        let mut pairs = vec![0usize; np * np];
        for b in &self.blocks {
            for &x in b {
                for &y in b {
                    pairs[x * np + y] += 1;
                }
            }
        }
        let balanced = (0..np).all(|x| {
            (0..np).all(|y| self.group_of(x) == self.group_of(y) || pairs[x * np + y] == self.lambda)
        });
        meets && balanced
    }
}

/// Reads off the transversal design of `a`. `N` must be a multiple of `n^2`.
pub fn to_transversal_design(a: &OrthogonalArray) -> Result<TransversalDesign, CertificateError> {
    let lambda = strength_two_index(a)?;
    let n = a.n();
    let blocks = a.rows().map(|r| r.iter().enumerate().map(|(j, &s)| j * n + s).collect()).collect();
    Ok(TransversalDesign { n, k: a.k(), lambda, blocks })
}

/// The `(N + k) x nk` 0/1 matrix: block rows first, then group rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub n: usize,
    pub k: usize,
    pub num_blocks: usize,
    pub matrix: IntMatrix,
}

impl IncidenceMatrix {
    pub fn block_row(&self, i: usize) -> usize {
        i
    }

    pub fn group_row(&self, j: usize) -> usize {
        self.num_blocks + j
    }
}

pub fn incidence_matrix(td: &TransversalDesign) -> IncidenceMatrix {
    let np = td.num_points();
    let nb = td.blocks.len();
    let mut matrix = IntMatrix::zeros(nb + td.k, np);
    for (i, b) in td.blocks.iter().enumerate() {
        for &p in b {
            matrix.set(i, p, BigInt::from(1));
        }
    }
    for j in 0..td.k {
        for p in td.group(j) {
            matrix.set(nb + j, p, BigInt::from(1));
        }
    }
    IncidenceMatrix { n: td.n, k: td.k, num_blocks: nb, matrix }
}

fn add_into(acc: &mut [i64], v: &[i64], scale: i64) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += scale * x;
    }
}

/// Checks the three vector identities behind the span argument:
///
/// ```text
/// (eq1) sum_i B_i = lambda n u
/// (eq2) sum_j G_j = u
/// (eq3) lambda G_j + sum_{i : x in B_i} B_i = lambda u + lambda n x   for x in G_j
/// ```
pub fn check_span_equations(td: &TransversalDesign) -> Result<AuditReport, CertificateError> {
    let np = td.num_points();
    let lam = td.lambda as i64;
    let ln = lam * td.n as i64;
    let u = vec![1i64; np];
    let block_vecs: Vec<Vec<i64>> = td.blocks.iter().map(|b| td.indicator(b)).collect();
    let group_vecs: Vec<Vec<i64>> = (0..td.k).map(|j| td.indicator(&td.group(j))).collect();

    let mut report = AuditReport::new("td-rank");
    let mut first_bad: Option<(&str, usize)> = None;
    let mut record = |report: &mut AuditReport, id: &str, lhs: Vec<i64>, rhs: Vec<i64>, eq: &'static str| {
        let coordinate = lhs.iter().zip(&rhs).position(|(a, b)| a != b);
        if let (Some(c), None) = (coordinate, first_bad) {
            first_bad = Some((eq, c));
        }
        report.check(id, fmt_vec(&lhs), fmt_vec(&rhs), coordinate.is_none());
    };

    let mut sum_b = vec![0i64; np];
    block_vecs.iter().for_each(|b| add_into(&mut sum_b, b, 1));
    record(&mut report, "eq1", sum_b, u.iter().map(|x| x * ln).collect(), "eq1");

    let mut sum_g = vec![0i64; np];
    group_vecs.iter().for_each(|g| add_into(&mut sum_g, g, 1));
    record(&mut report, "eq2", sum_g, u.clone(), "eq2");

    for x in 0..np {
        let j = td.group_of(x);
        let mut lhs = vec![0i64; np];
        add_into(&mut lhs, &group_vecs[j], lam);
        for (b, bv) in td.blocks.iter().zip(&block_vecs) {
            if b.contains(&x) {
                add_into(&mut lhs, bv, 1);
            }
        }
        let mut rhs = vec![lam; np];
        rhs[x] += ln;
        record(&mut report, &format!("eq3[x={}:{}]", x % td.n, j), lhs, rhs, "eq3");
    }

    if let Some((eq, coordinate)) = first_bad {
        return Err(CertificateError::EquationViolated { id: eq.into(), coordinate, report });
    }
    Ok(report)
}

/// Rank argument: the rows of `M` span all `nk` coordinates, and still do
/// after dropping `G_k`, so `nk <= N + k - 1`.
///
/// With `m > 1`, `m - 1` copies of a repeated block row are dropped as
/// well. The span is unchanged, which only gives `nk <= N + k - m`.
pub fn rank_bound_certificate(im: &IncidenceMatrix, m: usize) -> Result<AuditReport, CertificateError> {
    let nk = im.n * im.k;
    let nb = im.num_blocks;
    let mut report = AuditReport::new("td-rank");
    let mut deficient: Option<(&str, usize)> = None;

    let full = im.matrix.rank();
    report.check_eq("rank(M)", full, nk);
    if full != nk {
        deficient = Some(("rank(M)", full));
    }

    let mut dropped = vec![im.group_row(im.k - 1)];
    let reduced = im.matrix.without_rows(&dropped).rank();
    report.check_eq("rank(M-G_k)", reduced, nk);
    if reduced != nk && deficient.is_none() {
        deficient = Some(("rank(M-G_k)", reduced));
    }

    let m = m.max(1);
    if m > 1 {
        let copies = (0..nb)
            .map(|i| (0..nb).filter(|&j| im.matrix.row(j) == im.matrix.row(i)).collect::<Vec<_>>())
            .find(|c| c.len() >= m);
        let Some(copies) = copies else {
            return Err(crate::error::DesignError::BadMultiplicity { m, rows: nb }.into());
        };
        dropped.extend(copies.iter().skip(1).take(m - 1));
        let weak = im.matrix.without_rows(&dropped).rank();
        report.check_eq("rank(M-G_k-dups)", weak, nk);
        if weak != nk && deficient.is_none() {
            deficient = Some(("rank(M-G_k-dups)", weak));
        }
        report.note(format!(
            "dropping {} duplicate block rows keeps the span; this yields only k+N-m >= kn, not the factor-m bound",
            m - 1
        ));
    }

    let remaining = nb + im.k - dropped.len();
    report.implication = Some(Implication::new(nk as u64, remaining as u64, (im.k - 1) as u64));
    if let Some((id, rank)) = deficient {
        return Err(CertificateError::RankDeficient { id: id.into(), rank, expected: nk, report });
    }
    Ok(report)
}
