//! Dense linear algebra sized for team counts.
//!
//! A row-major [`DenseMatrix`], a finite-valued [`DenseVector`], Gaussian
//! elimination with partial pivoting ([`solve_dense`]) and the cyclic Jacobi
//! eigenvalue method ([`symmetric_eigenvalues`]). Everything here is
//! deterministic: the same input always produces bit-identical output.

use std::fmt;
use std::ops::{Deref, Index};

use thiserror::Error;

/// Residual tolerance used for post-condition checks: `‖Ax − b‖∞ ≤ TOL_RESIDUAL · (1 + ‖b‖∞)`.
pub const TOL_RESIDUAL: f64 = 1e-9;
/// Off-diagonal Frobenius mass at which Jacobi sweeps stop.
pub const TOL_EIG: f64 = 1e-10;
/// Maximum entrywise asymmetry accepted by [`symmetric_eigenvalues`].
pub const TOL_SYM: f64 = 1e-10;
/// Relative pivot threshold; the absolute threshold is `TOL_PIVOT_REL · (1 + max|A_ij|)`.
pub const TOL_PIVOT_REL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite entry at position {index}")]
    NonFinite { index: usize },
    #[error("singular matrix: pivot {pivot:e} in column {column} below tolerance {tolerance:e}")]
    SingularMatrix {
        column: usize,
        pivot: f64,
        tolerance: f64,
    },
    #[error("matrix is not symmetric: |A[{row},{col}] - A[{col},{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

/// A dense matrix stored in row-major order: `data[i * cols + j] = A[i, j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|x| !x.is_finite()) {
            return Err(LinalgError::NonFinite { index });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from a generator; fails if any generated entry is not finite.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// Panics if the rows are ragged or contain non-finite values.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(rows.len(), cols, data).expect("finite entries")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[f64]) -> Result<DenseVector, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let out = (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        DenseVector::new(out)
    }

    /// Returns a copy with row `row` replaced by `values`.
    pub fn with_row_replaced(&self, row: usize, values: &[f64]) -> Result<Self, LinalgError> {
        if values.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|x| !x.is_finite()) {
            return Err(LinalgError::NonFinite { index });
        }
        let mut out = self.clone();
        out.data[row * self.cols..(row + 1) * self.cols].copy_from_slice(values);
        Ok(out)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self
                .row(i)
                .iter()
                .map(|x| format!("{:>8.3}", x + 0.0))
                .collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A vector whose entries are all finite.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DenseVector(Vec<f64>);

impl DenseVector {
    pub fn new(values: Vec<f64>) -> Result<Self, LinalgError> {
        if let Some(index) = values.iter().position(|x| !x.is_finite()) {
            return Err(LinalgError::NonFinite { index });
        }
        Ok(Self(values))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn norm2(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_norm(&self) -> f64 {
        max_abs(&self.0)
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

impl Deref for DenseVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<DenseVector> for Vec<f64> {
    fn from(v: DenseVector) -> Self {
        v.0
    }
}

pub(crate) fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Max-norm of `a - b`.
pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// `‖Ax − b‖∞`.
pub fn residual_max_norm(a: &DenseMatrix, x: &[f64], b: &[f64]) -> f64 {
    (0..a.rows())
        .map(|i| {
            let ax: f64 = a.row(i).iter().zip(x).map(|(p, q)| p * q).sum();
            (ax - b[i]).abs()
        })
        .fold(0.0, f64::max)
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
///
/// Fails with [`LinalgError::SingularMatrix`] as soon as the best available
/// pivot falls below `1e-12 · (1 + max|A_ij|)`. For rating systems this means
/// the caller has not (or not correctly) replaced a row to pin down the
/// nullspace.
pub fn solve_dense(a: &DenseMatrix, b: &[f64]) -> Result<DenseVector, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    if let Some(index) = b.iter().position(|x| !x.is_finite()) {
        return Err(LinalgError::NonFinite { index });
    }
    let tolerance = TOL_PIVOT_REL * (1.0 + a.max_abs());

    let mut m = a.data.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let (pivot_row, pivot) =
            (col..n)
                .map(|r| (r, m[r * n + col]))
                .fold((col, 0.0_f64), |best, (r, v)| {
                    if v.abs() > best.1.abs() {
                        (r, v)
                    } else {
                        best
                    }
                });
        if pivot.abs() < tolerance {
            return Err(LinalgError::SingularMatrix {
                column: col,
                pivot,
                tolerance,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                m.swap(col * n + j, pivot_row * n + j);
            }
            rhs.swap(col, pivot_row);
        }
        for r in col + 1..n {
            let factor = m[r * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            m[r * n + col] = 0.0;
            for j in col + 1..n {
                m[r * n + j] -= factor * m[col * n + j];
            }
            rhs[r] -= factor * rhs[col];
        }
    }

    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let tail: f64 = (i + 1..n).map(|j| m[i * n + j] * x[j]).sum();
        x[i] = (rhs[i] - tail) / m[i * n + i];
    }
    DenseVector::new(x)
}

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(a: &DenseMatrix) -> Result<DenseVector, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (a.get(i, j) - a.get(j, i)).abs();
            if gap > TOL_SYM {
                return Err(LinalgError::NotSymmetric {
                    row: i,
                    col: j,
                    gap,
                });
            }
        }
    }

    let mut m = a.data.clone();
    // symmetrize exactly so rotations act on a truly symmetric array
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (m[i * n + j] + m[j * n + i]);
            m[i * n + j] = avg;
            m[j * n + i] = avg;
        }
    }

    let off_mass = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j] * m[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_mass(&m) < TOL_EIG;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
            }
        }
        sweeps += 1;
        converged = off_mass(&m) < TOL_EIG;
    }
    if !converged {
        return Err(LinalgError::NoConvergence { sweeps });
    }

    let mut eig: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    DenseVector::new(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_massey() -> DenseMatrix {
        DenseMatrix::from_rows(&[
            &[2.0, 0.0, -1.0, -1.0],
            &[0.0, 2.0, -1.0, -1.0],
            &[-1.0, -1.0, 2.0, 0.0],
            &[-1.0, -1.0, 0.0, 2.0],
        ])
    }

    #[test]
    fn rejects_non_finite_entries() {
        assert!(matches!(
            DenseMatrix::new(1, 2, vec![1.0, f64::NAN]),
            Err(LinalgError::NonFinite { index: 1 })
        ));
        assert!(DenseVector::new(vec![f64::INFINITY]).is_err());
        assert!(matches!(
            DenseMatrix::new(2, 2, vec![1.0; 3]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn identity_solve() {
        let b = [5.0, 1.0, -2.0, -4.0];
        let x = solve_dense(&DenseMatrix::identity(4), &b).unwrap();
        assert_eq!(&*x, &b);
    }

    #[test]
    fn perturbed_massey_solve() {
        let m_hat = example_massey().with_row_replaced(3, &[1.0; 4]).unwrap();
        let b = [5.0, 1.0, -2.0, 0.0];
        let x = solve_dense(&m_hat, &b).unwrap();
        let expected = [1.75, -0.25, -0.25, -1.25];
        assert!(max_diff(&x, &expected) < 1e-12);
        assert!(residual_max_norm(&m_hat, &x, &b) <= TOL_RESIDUAL * (1.0 + max_abs(&b)));
    }

    #[test]
    fn unperturbed_massey_is_singular() {
        let m = example_massey();
        // M e = 0
        let me = m.matvec(&[1.0; 4]).unwrap();
        assert!(me.iter().all(|&v| v == 0.0));
        for b in [[5.0, 1.0, -2.0, -4.0], [1.0, 0.0, 0.0, 0.0]] {
            assert!(matches!(
                solve_dense(&m, &b),
                Err(LinalgError::SingularMatrix { .. })
            ));
        }
    }

    #[test]
    fn solve_shape_errors() {
        let a = DenseMatrix::zeros(2, 3);
        assert!(matches!(
            solve_dense(&a, &[0.0, 0.0]),
            Err(LinalgError::NotSquare { .. })
        ));
        let a = DenseMatrix::identity(2);
        assert!(matches!(
            solve_dense(&a, &[0.0]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn eigenvalues_simple_cases() {
        let e = symmetric_eigenvalues(&DenseMatrix::identity(3)).unwrap();
        assert_eq!(&*e, &[1.0, 1.0, 1.0]);
        let e = symmetric_eigenvalues(&DenseMatrix::zeros(2, 2)).unwrap();
        assert_eq!(&*e, &[0.0, 0.0]);
        let e = symmetric_eigenvalues(&DenseMatrix::zeros(0, 0)).unwrap();
        assert!(e.is_empty());
    }

    #[test]
    fn four_cycle_laplacian_spectrum() {
        // characteristic polynomial of C4's Laplacian: x (x-2)^2 (x-4)
        let e = symmetric_eigenvalues(&example_massey()).unwrap();
        assert!(max_diff(&e, &[0.0, 2.0, 2.0, 4.0]) < 1e-10);
    }

    #[test]
    fn two_by_two_against_closed_form() {
        let a = DenseMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let e = symmetric_eigenvalues(&a).unwrap();
        let disc = (1.0f64 + 4.0).sqrt();
        assert!(max_diff(&e, &[(5.0 - disc) / 2.0, (5.0 + disc) / 2.0]) < 1e-12);
    }

    #[test]
    fn asymmetric_input_rejected() {
        let a = DenseMatrix::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            symmetric_eigenvalues(&a),
            Err(LinalgError::NotSymmetric { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn transpose_and_matmul() {
        let x = DenseMatrix::from_rows(&[&[1.0, 0.0, -1.0], &[0.0, 1.0, -1.0]]);
        let m = x.transpose().matmul(&x).unwrap();
        assert_eq!(
            m,
            DenseMatrix::from_rows(&[&[1.0, 0.0, -1.0], &[0.0, 1.0, -1.0], &[-1.0, -1.0, 2.0]])
        );
        assert!(x.matmul(&x).is_err());
    }
}
