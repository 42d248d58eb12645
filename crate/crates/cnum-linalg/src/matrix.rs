//! Dense complex matrix and vector types.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64 as C64;

use crate::{LinalgError, Result};

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    /// Builds a matrix from row-major data after validating shape and finiteness.
    pub fn new(n_rows: usize, n_cols: usize, data: Vec<C64>) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != n_rows * n_cols {
            return Err(LinalgError::DimensionMismatch {
                context: "CMatrix::new entry count",
                expected: n_rows * n_cols,
                actual: data.len(),
            });
        }
        for (index, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite { index });
            }
        }
        Ok(Self { n_rows, n_cols, data })
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        assert!(n_rows > 0 && n_cols > 0, "matrix dimensions must be positive");
        Self {
            n_rows,
            n_cols,
            data: vec![C64::new(0.0, 0.0); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(LinalgError::Empty);
        }
        let n_cols = rows[0].len();
        for row in rows {
            if row.len() != n_cols {
                return Err(LinalgError::DimensionMismatch {
                    context: "CMatrix::from_rows row width",
                    expected: n_cols,
                    actual: row.len(),
                });
            }
        }
        let data: Vec<C64> = rows.iter().flatten().copied().collect();
        Self::new(rows.len(), n_cols, data)
    }

    pub fn from_diag(diag: &[C64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(LinalgError::Empty);
        }
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, z) in diag.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite { index: i });
            }
            m[(i, i)] = *z;
        }
        Ok(m)
    }

    pub fn from_real_diag(diag: &[f64]) -> Result<Self> {
        let diag: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&diag)
    }

    pub fn nrows(&self) -> usize {
        self.n_rows
    }

    pub fn ncols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.n_cols != rhs.n_rows {
            return Err(LinalgError::DimensionMismatch {
                context: "matmul inner dimension",
                expected: self.n_cols,
                actual: rhs.n_rows,
            });
        }
        let mut out = Self::zeros(self.n_rows, rhs.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.n_cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &CVector) -> Result<CVector> {
        if self.n_cols != v.dim() {
            return Err(LinalgError::DimensionMismatch {
                context: "matvec dimension",
                expected: self.n_cols,
                actual: v.dim(),
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.n_rows];
        for i in 0..self.n_rows {
            let mut s = C64::new(0.0, 0.0);
            for j in 0..self.n_cols {
                s += self[(i, j)] * v[j];
            }
            out[i] = s;
        }
        Ok(CVector::from_raw(out))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.n_rows != rhs.n_rows || self.n_cols != rhs.n_cols {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix addition shape",
                expected: self.n_rows * self.n_cols,
                actual: rhs.n_rows * rhs.n_cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data,
        })
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        debug_assert!(self.is_square());
        (0..self.n_rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖M − Mᵀ‖_F`; zero for exactly complex-symmetric matrices.
    pub fn symmetry_defect(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut s = 0.0;
        for i in 0..self.n_rows {
            for j in (i + 1)..self.n_cols {
                s += (self[(i, j)] - self[(j, i)]).norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    }

    /// `‖M − M†‖_F`; zero for exactly Hermitian matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut s = 0.0;
        for i in 0..self.n_rows {
            s += (self[(i, i)] - self[(i, i)].conj()).norm_sqr();
            for j in (i + 1)..self.n_cols {
                s += 2.0 * (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n_cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n_cols + j]
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                let z = self[(i, j)];
                write!(f, "{}({:+.6e}{:+.6e}i)", if j == 0 { "" } else { " " }, z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Dense complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    data: Vec<C64>,
}

impl CVector {
    /// Builds a vector after validating non-emptiness and finiteness.
    pub fn new(data: Vec<C64>) -> Result<Self> {
        if data.is_empty() {
            return Err(LinalgError::Empty);
        }
        for (index, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite { index });
            }
        }
        Ok(Self { data })
    }

    /// Internal constructor for values known to be finite.
    pub(crate) fn from_raw(data: Vec<C64>) -> Self {
        debug_assert!(!data.is_empty());
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector dimension must be positive");
        Self {
            data: vec![C64::new(0.0, 0.0); dim],
        }
    }

    /// Standard basis vector `e_k`.
    pub fn unit(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        let mut v = Self::zeros(dim);
        v[k] = C64::new(1.0, 0.0);
        v
    }

    pub fn from_real(data: &[f64]) -> Result<Self> {
        Self::new(data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, C64> {
        self.data.iter()
    }

    /// Euclidean (Hermitian) norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(LinalgError::DimensionMismatch {
                context: "vector subtraction",
                expected: self.dim(),
                actual: rhs.dim(),
            });
        }
        Ok(Self {
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

impl Index<usize> for CVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.data[i]
    }
}

impl IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.data[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_non_finite_entries() {
        let err = CMatrix::new(1, 2, vec![C64::new(1.0, 0.0), C64::new(f64::NAN, 0.0)]);
        assert_eq!(err.unwrap_err(), LinalgError::NonFinite { index: 1 });
        let err = CVector::new(vec![C64::new(0.0, f64::INFINITY)]);
        assert_eq!(err.unwrap_err(), LinalgError::NonFinite { index: 0 });
    }

    #[test]
    fn new_rejects_bad_shapes() {
        assert_eq!(CMatrix::new(0, 3, vec![]).unwrap_err(), LinalgError::Empty);
        assert!(matches!(
            CMatrix::new(2, 2, vec![C64::new(1.0, 0.0); 3]).unwrap_err(),
            LinalgError::DimensionMismatch { .. }
        ));
        assert_eq!(CVector::new(vec![]).unwrap_err(), LinalgError::Empty);
    }

    #[test]
    fn matmul_identity_is_noop() {
        let m = CMatrix::from_rows(&[
            vec![C64::new(1.0, 2.0), C64::new(-0.5, 0.0)],
            vec![C64::new(0.0, -1.0), C64::new(3.0, 1.0)],
        ])
        .unwrap();
        let id = CMatrix::identity(2);
        assert_eq!(m.matmul(&id).unwrap(), m);
        assert_eq!(id.matmul(&m).unwrap(), m);
    }

    #[test]
    fn symmetry_defect_detects_asymmetry() {
        let sym = CMatrix::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(0.0, 2.0)],
            vec![C64::new(0.0, 2.0), C64::new(-1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(sym.symmetry_defect(), 0.0);
        let asym = CMatrix::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(0.0, 2.0)],
            vec![C64::new(0.0, -2.0), C64::new(-1.0, 0.0)],
        ])
        .unwrap();
        assert!(asym.symmetry_defect() > 1.0);
    }

    #[test]
    fn hermiticity_defect_zero_for_hermitian() {
        let m = CMatrix::from_rows(&[
            vec![C64::new(2.0, 0.0), C64::new(1.0, 3.0)],
            vec![C64::new(1.0, -3.0), C64::new(-1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(m.hermiticity_defect(), 0.0);
    }

    #[test]
    fn transpose_and_conj_transpose() {
        let m = CMatrix::from_rows(&[vec![C64::new(1.0, 1.0), C64::new(2.0, -1.0)]]).unwrap();
        let t = m.transpose();
        assert_eq!(t.nrows(), 2);
        assert_eq!(t[(1, 0)], C64::new(2.0, -1.0));
        let h = m.conj_transpose();
        assert_eq!(h[(0, 0)], C64::new(1.0, -1.0));
    }
}
