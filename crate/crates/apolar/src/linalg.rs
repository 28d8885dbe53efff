//! Dense linear algebra over a [`Scalar`] field, plus SVD-based numeric kernels.
//!
//! Exact elimination is division-based Gauss-Jordan with the pivot chosen as the
//! first row holding a nonzero entry, scanning columns left to right.  That pivot
//! rule makes the reduced row echelon form, and therefore every kernel basis and
//! rank reported here, canonical: golden tests compare them verbatim.

use crate::error::{Error, Result};
use crate::field::Scalar;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<K> {
    nrows: usize,
    ncols: usize,
    data: Vec<K>,
}

impl<K: Scalar> Mat<K> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Mat { nrows, ncols, data: vec![K::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Mat { nrows, ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> &K {
        &self.data[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K) {
        self.data[r * self.ncols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[K] {
        &self.data[r * self.ncols..(r + 1) * self.ncols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.nrows, "inner dimension mismatch");
        let mut out = Self::zeros(self.nrows, rhs.ncols);
        for r in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.ncols {
                    let v = out.get(r, c).add(&a.mul(rhs.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.ncols {
            if r == m.nrows {
                break;
            }
            let Some(pr) = (r..m.nrows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.ncols {
                    let tmp = m.get(r, j).clone();
                    m.set(r, j, m.get(pr, j).clone());
                    m.set(pr, j, tmp);
                }
            }
            let inv = m.get(r, c).inv().expect("pivot nonzero");
            for j in 0..m.ncols {
                m.set(r, j, m.get(r, j).mul(&inv));
            }
            for i in 0..m.nrows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.ncols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis: one vector per free column, with a 1 in the free
    /// slot, the negated echelon entries in the pivot slots, and 0 elsewhere.
    pub fn kernel_basis(&self) -> Vec<Vec<K>> {
        let (rr, pivots) = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.ncols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for fc in 0..self.ncols {
            if pivot_set[fc] {
                continue;
            }
            let mut vec = vec![K::zero(); self.ncols];
            vec[fc] = K::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                vec[pc] = rr.get(ri, fc).neg();
            }
            basis.push(vec);
        }
        basis
    }

    /// Particular solution of `self * x = b` with free variables set to zero.
    pub fn solve(&self, b: &[K]) -> Result<Vec<K>> {
        assert_eq!(b.len(), self.nrows, "rhs length mismatch");
        let mut aug = Mat::zeros(self.nrows, self.ncols + 1);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.ncols, b[r].clone());
        }
        let (rr, pivots) = aug.rref();
        if pivots.contains(&self.ncols) {
            return Err(Error::InconsistentSystem);
        }
        let mut x = vec![K::zero(); self.ncols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = rr.get(ri, self.ncols).clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.nrows != self.ncols {
            return Err(Error::SingularMatrix);
        }
        let n = self.nrows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, K::one());
        }
        let (rr, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::SingularMatrix);
        }
        let mut out = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, rr.get(r, n + c).clone());
            }
        }
        Ok(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows == self.ncols && self.rank() == self.nrows
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.nrows, self.ncols, |r, c| self.get(r, c).embed())
    }
}

/// Relative singular value threshold shared by every numeric kernel and rank
/// decision: a singular value below `1e-8 * sigma_max` counts as zero, matching
/// the accuracy the path tracker delivers downstream.
pub const SV_REL_TOL: f64 = 1e-8;

/// Numeric kernel basis by SVD thresholding (right singular vectors whose
/// singular values fall below `rel_tol * sigma_max`, or are exactly absent for
/// wide matrices).
pub fn numeric_kernel(m: &DMatrix<Complex64>, rel_tol: f64) -> Vec<DVector<Complex64>> {
    let ncols = m.ncols();
    if m.nrows() == 0 || ncols == 0 {
        return (0..ncols)
            .map(|i| DVector::from_fn(ncols, |r, _| if r == i { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }))
            .collect();
    }
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let tol = rel_tol * smax.max(f64::MIN_POSITIVE);
    let mut basis = Vec::new();
    for i in 0..ncols {
        let sv = if i < svd.singular_values.len() { svd.singular_values[i] } else { 0.0 };
        if sv <= tol {
            basis.push(v_t.row(i).transpose().map(|z| z.conj()));
        }
    }
    basis
}

pub fn numeric_rank(m: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    m.ncols() - numeric_kernel(m, rel_tol).len()
}

/// Kernel basis routed by field kind: canonical exact elimination for exact
/// fields, SVD thresholding at [`SV_REL_TOL`] otherwise.
pub fn kernel_vectors<K: Scalar>(m: &Mat<K>) -> Vec<Vec<K>> {
    if K::EXACT {
        m.kernel_basis()
    } else {
        numeric_kernel(&m.to_complex(), SV_REL_TOL)
            .into_iter()
            .map(|v| {
                v.iter()
                    .map(|z| K::from_complex(*z).expect("inexact field accepts complex values"))
                    .collect()
            })
            .collect()
    }
}

/// Rank routed by field kind, consistent with [`kernel_vectors`].
pub fn rank_of<K: Scalar>(m: &Mat<K>) -> usize {
    if K::EXACT {
        m.rank()
    } else {
        numeric_rank(&m.to_complex(), SV_REL_TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn m(rows: &[&[i64]]) -> Mat<Rat> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rat::from_int(v)).collect()).collect())
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let (rr, piv) = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(*rr.get(0, 0), Rat::one());
        assert_eq!(*rr.get(0, 1), Rat::zero());
    }

    #[test]
    fn kernel_is_canonical_and_annihilates() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for r in 0..a.nrows() {
                let mut acc = Rat::zero();
                for c in 0..a.ncols() {
                    acc = acc.add(&a.get(r, c).mul(&v[c]));
                }
                assert!(acc.is_zero());
            }
        }
        // second coordinate is free first: (-2, 1, 0), then (-3, 0, 1)
        assert_eq!(basis[0], vec![Rat::from_int(-2), Rat::one(), Rat::zero()]);
        assert_eq!(basis[1], vec![Rat::from_int(-3), Rat::zero(), Rat::one()]);
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = a.solve(&[Rat::from_int(3), Rat::from_int(2)]).unwrap();
        assert_eq!(x, vec![Rat::one(), Rat::one()]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), Mat::identity(2));
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_err());
        assert!(singular
            .solve(&[Rat::from_int(1), Rat::from_int(3)])
            .is_err());
    }

    #[test]
    fn numeric_kernel_matches_exact() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let nk = numeric_kernel(&a.to_complex(), SV_REL_TOL);
        assert_eq!(nk.len(), 1);
        assert_eq!(numeric_rank(&a.to_complex(), SV_REL_TOL), 2);
    }
}
