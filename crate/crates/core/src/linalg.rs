//! Dense exact linear algebra over a [`Scalar`] field.
//!
//! Row reduction uses a deterministic leftmost-nonzero pivot rule so that
//! every derived basis (kernels, row spaces, quotient coordinates) is
//! reproducible run to run.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<F> {
    pub rows: Vec<Vec<F>>,
}

impl<F: Scalar> Mat<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        if let Some(w) = rows.first().map(|r| r.len()) {
            assert!(rows.iter().all(|r| r.len() == w));
        }
        Mat { rows }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Mat {
            rows: vec![vec![F::zero(); ncols]; nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = F::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.nrows(), self.ncols());
        let mut t = Self::zeros(c, r);
        for i in 0..r {
            for j in 0..c {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.nrows());
        let mut out = Self::zeros(self.nrows(), other.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.ncols() {
                    if other.rows[k][j].is_zero() {
                        continue;
                    }
                    let t = self.rows[i][k].mul(&other.rows[k][j]);
                    out.rows[i][j] = out.rows[i][j].add(&t);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.ncols(), v.len());
        self.rows
            .iter()
            .map(|row| {
                let mut acc = F::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.nrows(), self.ncols());
        let mut t = F::zero();
        for i in 0..self.nrows() {
            t = t.add(&self.rows[i][i]);
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        rref_in_place(&mut rows).len()
    }
}

/// Reduced row echelon form in place; returns pivot column indices in order.
/// Zero rows are removed.
pub fn rref_in_place<F: Scalar>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].inv();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in col..ncols {
                    if !rows[r][j].is_zero() {
                        let t = factor.mul(&rows[r][j]);
                        rows[i][j] = rows[i][j].sub(&t);
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A subspace of F^n stored as an rref basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F> {
    pub ambient: usize,
    pub basis: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn from_vectors(ambient: usize, vectors: &[Vec<F>]) -> Self {
        let mut rows: Vec<Vec<F>> = vectors.to_vec();
        for v in &rows {
            assert_eq!(v.len(), ambient);
        }
        let pivots = rref_in_place(&mut rows);
        Subspace {
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduce a vector modulo the subspace (eliminate pivot coordinates).
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for j in 0..self.ambient {
                    if !row[j].is_zero() {
                        let t = factor.mul(&row[j]);
                        v[j] = v[j].sub(&t);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the rref basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.clone());
        Subspace::from_vectors(self.ambient, &vs)
    }
}

/// Basis of the right nullspace of `m`, one vector per free column.
pub fn nullspace<F: Scalar>(m: &Mat<F>) -> Vec<Vec<F>> {
    let ncols = m.ncols();
    let mut rows = m.rows.clone();
    let pivots = rref_in_place(&mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = row[free].neg();
        }
        out.push(v);
    }
    out
}

/// Express `v` as a combination of `basis` (rows); `None` when not in the span.
pub fn express_in_basis<F: Scalar>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    if basis.is_empty() {
        return if v.iter().all(|x| x.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let ambient = v.len();
    // augmented columns: basis^T | v
    let mut rows: Vec<Vec<F>> = (0..ambient)
        .map(|i| {
            let mut row: Vec<F> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let pivots = rref_in_place(&mut rows);
    let k = basis.len();
    if pivots.contains(&k) {
        return None; // inconsistent
    }
    let mut coeffs = vec![F::zero(); k];
    for (row, &p) in rows.iter().zip(&pivots) {
        coeffs[p] = row[k].clone();
    }
    // verify (guards against rank-deficient basis giving one valid solution anyway)
    let mut acc = vec![F::zero(); ambient];
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for j in 0..ambient {
            if !b[j].is_zero() {
                let t = c.mul(&b[j]);
                acc[j] = acc[j].add(&t);
            }
        }
    }
    if acc.iter().zip(v).all(|(a, b)| a == b) {
        Some(coeffs)
    } else {
        None
    }
}

/// Do the given vectors form a linearly independent family?
pub fn independent<F: Scalar>(vectors: &[Vec<F>]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let mut rows = vectors.to_vec();
    let n = rows.len();
    rref_in_place(&mut rows).len() == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rref_and_nullspace() {
        let m = Mat::from_rows(vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn subspace_membership_and_coords() {
        let s = Subspace::from_vectors(3, &[vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]);
        assert_eq!(s.dim(), 2);
        let v = vec![q(1), q(3), q(2)];
        assert!(s.contains(&v));
        let c = s.coords(&v).unwrap();
        assert_eq!(c.len(), 2);
        assert!(!s.contains(&[q(0), q(0), q(1)]));
    }

    #[test]
    fn express_vector() {
        let basis = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let c = express_in_basis(&basis, &[q(3), q(1)]).unwrap();
        assert_eq!(c, vec![q(2), q(1)]);
        assert!(express_in_basis(&[vec![q(1), q(0)]], &[q(0), q(1)]).is_none());
    }
}
