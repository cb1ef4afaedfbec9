//! Sandwich matrices of regular J-classes and their one-sided invertibility
//! over the rational group algebra.

use crate::error::{MonoidError, Result};
use crate::green::{maximal_subgroup, GreenData, GroupTable};
use crate::linalg::Mat;
use crate::monoid_core::FiniteMonoid;
use num::BigRational;
use num::One;
use num::Zero;

/// The structure matrix P of the J-class of `e`: rows indexed by L-classes
/// of J_e, columns by R-classes, entry (b, a) the product of the chosen
/// representatives when it falls in G_e, else 0.
#[derive(Debug, Clone)]
pub struct SandwichMatrix {
    pub e: usize,
    pub group: GroupTable,
    /// L-class ids of J_e (row index set B)
    pub rows: Vec<usize>,
    /// R-class ids of J_e (column index set A)
    pub cols: Vec<usize>,
    /// lambda_b in R_e meeting L-class b
    pub row_reps: Vec<usize>,
    /// rho_a in L_e meeting R-class a
    pub col_reps: Vec<usize>,
    /// entries[b][a]: Some(element of G_e) or None for 0
    pub entries: Vec<Vec<Option<usize>>>,
}

/// Sandwich matrix with canonical least-index representatives.
pub fn sandwich_matrix(m: &FiniteMonoid, gd: &GreenData, e: usize) -> Result<SandwichMatrix> {
    sandwich_matrix_with_reps(m, gd, e, None)
}

/// Same, but allows overriding the representative choice (used to check
/// that verdicts do not depend on it).  `reps` supplies, per L-class id and
/// R-class id of J_e, the chosen representative.
pub fn sandwich_matrix_with_reps(
    m: &FiniteMonoid,
    gd: &GreenData,
    e: usize,
    reps: Option<(&[usize], &[usize])>,
) -> Result<SandwichMatrix> {
    if !m.is_idempotent(e) {
        return Err(MonoidError::NotIdempotent { element: e });
    }
    let group = maximal_subgroup(m, gd, e)?;
    let je = gd.j_class_of[e];
    let mut rows: Vec<usize> = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    for &x in &gd.j_classes[je] {
        rows.push(gd.l_class_of[x]);
        cols.push(gd.r_class_of[x]);
    }
    rows.sort_unstable();
    rows.dedup();
    cols.sort_unstable();
    cols.dedup();

    let (row_reps, col_reps) = match reps {
        Some((r, c)) => (r.to_vec(), c.to_vec()),
        None => {
            // least element of R_e in each L-class, and of L_e in each R-class
            let row_reps = rows
                .iter()
                .map(|&b| {
                    gd.l_classes[b]
                        .iter()
                        .copied()
                        .filter(|&x| gd.r_equiv(x, e))
                        .min()
                        .expect("every L-class of J_e meets R_e")
                })
                .collect();
            let col_reps = cols
                .iter()
                .map(|&a| {
                    gd.r_classes[a]
                        .iter()
                        .copied()
                        .filter(|&x| gd.l_equiv(x, e))
                        .min()
                        .expect("every R-class of J_e meets L_e")
                })
                .collect();
            (row_reps, col_reps)
        }
    };
    for (&b, &lam) in rows.iter().zip(&row_reps) {
        if !(gd.r_equiv(lam, e) && gd.l_class_of[lam] == b) {
            return Err(MonoidError::PreconditionFailed {
                hypothesis: format!("row representative {lam} lies in R_e and L-class {b}"),
            });
        }
    }
    for (&a, &rho) in cols.iter().zip(&col_reps) {
        if !(gd.l_equiv(rho, e) && gd.r_class_of[rho] == a) {
            return Err(MonoidError::PreconditionFailed {
                hypothesis: format!("column representative {rho} lies in L_e and R-class {a}"),
            });
        }
    }

    let entries = row_reps
        .iter()
        .map(|&lam| {
            col_reps
                .iter()
                .map(|&rho| {
                    let p = m.mul(lam, rho);
                    group.index_of(p).map(|_| p)
                })
                .collect()
        })
        .collect();
    Ok(SandwichMatrix {
        e,
        group,
        rows,
        cols,
        row_reps,
        col_reps,
        entries,
    })
}

impl SandwichMatrix {
    /// Expand every entry through the left regular representation of G_e,
    /// giving a rational matrix of shape (|B||G|) x (|A||G|).
    pub fn expanded(&self, m: &FiniteMonoid) -> Mat<BigRational> {
        let g = self.group.order();
        let nb = self.rows.len();
        let na = self.cols.len();
        let mut out = Mat::zeros(nb * g, na * g);
        for (bi, row) in self.entries.iter().enumerate() {
            for (ai, entry) in row.iter().enumerate() {
                let Some(p) = entry else { continue };
                let pi = self.group.index_of(*p).expect("entry lies in G_e");
                // left multiplication by p on the group algebra basis
                for col_g in 0..g {
                    let row_g = self.group.mul_idx(pi, col_g);
                    out.rows[bi * g + row_g][ai * g + col_g] = BigRational::one();
                }
            }
        }
        // silence unused when debug assertions are off
        let _ = m;
        out
    }

    /// Entry (b, a) is nonzero iff lambda_b * rho_a lies in R_e; stability
    /// makes that the same as membership in G_e.
    pub fn verify_entry_criterion(&self, m: &FiniteMonoid, gd: &GreenData) -> bool {
        for (bi, &lam) in self.row_reps.iter().enumerate() {
            for (ai, &rho) in self.col_reps.iter().enumerate() {
                let p = m.mul(lam, rho);
                let in_re = gd.r_equiv(p, self.e);
                if in_re != self.entries[bi][ai].is_some() {
                    return false;
                }
            }
        }
        true
    }
}

/// Does P have a right inverse over the rational group algebra of G_e?
/// Decided by full row rank of the expanded rational matrix.
pub fn right_invertibility(m: &FiniteMonoid, gd: &GreenData, e: usize) -> Result<bool> {
    let p = sandwich_matrix(m, gd, e)?;
    Ok(right_invertible(&p, m))
}

pub fn left_invertibility(m: &FiniteMonoid, gd: &GreenData, e: usize) -> Result<bool> {
    let p = sandwich_matrix(m, gd, e)?;
    Ok(left_invertible(&p, m))
}

pub fn right_invertible(p: &SandwichMatrix, m: &FiniteMonoid) -> bool {
    let x = p.expanded(m);
    x.rank() == p.rows.len() * p.group.order()
}

pub fn left_invertible(p: &SandwichMatrix, m: &FiniteMonoid) -> bool {
    let x = p.expanded(m);
    x.rank() == p.cols.len() * p.group.order()
}

/// Rational matrix of P itself under a linear representation of G_e
/// (`act` gives the matrix of each group element, zero entries excluded).
pub fn expand_through<F: crate::scalar::Scalar>(
    p: &SandwichMatrix,
    act: &dyn Fn(usize) -> Mat<F>,
    dim: usize,
) -> Mat<F> {
    let nb = p.rows.len();
    let na = p.cols.len();
    let mut out = Mat::zeros(nb * dim, na * dim);
    for (bi, row) in p.entries.iter().enumerate() {
        for (ai, entry) in row.iter().enumerate() {
            let Some(g) = entry else { continue };
            let block = act(*g);
            for i in 0..dim {
                for j in 0..dim {
                    out.rows[bi * dim + i][ai * dim + j] = block.rows[i][j].clone();
                }
            }
        }
    }
    out
}

/// All-zero-column check helper used by tests; a sandwich matrix never has
/// a zero row or column (every representative product meets the group for
/// the representative pairing its own class).
pub fn has_zero_line(p: &SandwichMatrix) -> bool {
    let zero_row = p.entries.iter().any(|r| r.iter().all(|x| x.is_none()));
    let zero_col = (0..p.cols.len()).any(|a| p.entries.iter().all(|r| r[a].is_none()));
    zero_row || zero_col
}

pub fn rational_rank(p: &SandwichMatrix, m: &FiniteMonoid) -> usize {
    let _ = m;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for r in &p.entries {
        rows.push(
            r.iter()
                .map(|x| {
                    if x.is_some() {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect(),
        );
    }
    Mat::from_rows(rows).rank()
}
