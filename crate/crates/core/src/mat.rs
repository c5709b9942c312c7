//! Dense row-major matrices with exactly the linear algebra the rest of the
//! crate needs: products, transposes, a cyclic-Jacobi symmetric eigensolver,
//! unique SPD square roots, Gauss-Jordan inversion, and determinants.
//!
//! Everything is sized for small matrices (dimensions in the single digits);
//! operations allocate freely and return new values. Entries are IEEE floats
//! and are required to be finite on construction; operations whose result
//! would contain NaN or infinity report an error instead of returning one.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {delta:e} exceeds tolerance")]
    NotSymmetric { row: usize, col: usize, delta: f64 },
    #[error("not positive definite: eigenvalue {value:e} at or below cutoff {cutoff:e}")]
    NotPositiveDefinite { value: f64, cutoff: f64 },
    #[error("singular within tolerance (pivot {pivot:e} <= {threshold:e})")]
    Singular { pivot: f64, threshold: f64 },
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
}

/// Dense matrix, row-major. Values are immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    /// Builds from a flat row-major buffer. Rejects empty shapes, length
    /// mismatches, and non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, MatError> {
        if rows == 0 || cols == 0 {
            return Err(MatError::DimMismatch("matrix must be non-empty".into()));
        }
        if data.len() != rows * cols {
            return Err(MatError::DimMismatch(format!(
                "buffer holds {} entries, shape {}x{} needs {}",
                data.len(),
                rows,
                cols,
                rows * cols
            )));
        }
        let m = Mat { rows, cols, data };
        m.ensure_finite()?;
        Ok(m)
    }

    /// Builds from nested rows, checking that all rows have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatError> {
        if rows.is_empty() {
            return Err(MatError::DimMismatch("matrix must be non-empty".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatError::DimMismatch("ragged rows".into()));
        }
        let nrows = rows.len();
        Self::from_vec(nrows, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty shape");
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Builds entrywise from a closure. Intended for in-crate construction;
    /// asserts that the closure produces finite values.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "empty shape");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert!(x.is_finite(), "non-finite entry at ({i}, {j})");
                data.push(x);
            }
        }
        Mat { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn ensure_finite(&self) -> Result<(), MatError> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_finite() {
                    return Err(MatError::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Checked matrix product.
    pub fn mul(&self, rhs: &Self) -> Result<Self, MatError> {
        if self.cols != rhs.rows {
            return Err(MatError::DimMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] =
                        out.data[i * rhs.cols + j] + aik * rhs.get(k, j);
                }
            }
        }
        out.ensure_finite()?;
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * s)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, x| acc.max(x.abs()))
    }

    /// Largest absolute entrywise difference. Panics on shape mismatch; use
    /// [`Mat::approx_eq`] at input boundaries.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "max_abs_diff on mismatched shapes"
        );
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs()))
    }

    /// Entrywise comparison: true iff max |a_ij - b_ij| <= tol.
    pub fn approx_eq(&self, other: &Self, tol: T) -> Result<bool, MatError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatError::DimMismatch(format!(
                "cannot compare {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.max_abs_diff(other) <= tol)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Self {
        assert!(r0 + nrows <= self.rows && c0 + ncols <= self.cols, "block out of range");
        Self::from_fn(nrows, ncols, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Assembles [[a, b], [c, d]] from conforming blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows, "top blocks disagree on rows");
        assert_eq!(c.rows, d.rows, "bottom blocks disagree on rows");
        assert_eq!(a.cols, c.cols, "left blocks disagree on cols");
        assert_eq!(b.cols, d.cols, "right blocks disagree on cols");
        Self::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < a.rows, j < a.cols) {
                (true, true) => a.get(i, j),
                (true, false) => b.get(i, j - a.cols),
                (false, true) => c.get(i - a.rows, j),
                (false, false) => d.get(i - a.rows, j - a.cols),
            }
        })
    }

    /// Symmetric eigendecomposition by cyclic Jacobi rotations.
    ///
    /// `tol` bounds the allowed asymmetry |a_ij - a_ji| of the input; the
    /// iteration itself runs to machine precision. Eigenvalues are returned
    /// ascending with matching eigenvector columns, so `self ~ V diag(w) V^T`.
    pub fn sym_eigen(&self, tol: T) -> Result<SymEigen<T>, MatError> {
        if !self.is_square() {
            return Err(MatError::DimMismatch(format!(
                "eigendecomposition needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        for i in 0..n {
            for j in (i + 1)..n {
                let delta = (self.get(i, j) - self.get(j, i)).abs();
                if delta > tol {
                    return Err(MatError::NotSymmetric { row: i, col: j, delta: delta.as_f64() });
                }
            }
        }

        // Work on the symmetrized copy so roundoff asymmetry cannot bias the
        // iteration.
        let half = T::of(0.5);
        let mut a: Vec<T> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                (self.get(i, j) + self.get(j, i)) * half
            })
            .collect();
        let mut v = Self::identity(n);

        let scale = self.max_abs();
        if scale == T::zero() {
            return Ok(SymEigen { values: vec![T::zero(); n], vectors: v });
        }

        const MAX_SWEEPS: usize = 64;
        let eps = T::epsilon();
        let stop = eps * T::of(n as f64) * scale;
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            let mut off = T::zero();
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off + a[p * n + q] * a[p * n + q];
                }
            }
            if off.sqrt() <= stop {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq.abs() <= eps * scale {
                        continue;
                    }
                    // Symmetric Schur rotation annihilating a[p][q].
                    let tau = (a[q * n + q] - a[p * n + p]) / (T::of(2.0) * apq);
                    let t = if tau >= T::zero() {
                        T::one() / (tau + (T::one() + tau * tau).sqrt())
                    } else {
                        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                    for k in 0..n {
                        let vkp = v.data[k * n + p];
                        let vkq = v.data[k * n + q];
                        v.data[k * n + p] = c * vkp - s * vkq;
                        v.data[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        if !converged {
            return Err(MatError::NoConvergence(MAX_SWEEPS));
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a[i * n + i].partial_cmp(&a[j * n + j]).expect("finite eigenvalues")
        });
        let values: Vec<T> = order.iter().map(|&i| a[i * n + i]).collect();
        let vectors = Self::from_fn(n, n, |i, j| v.data[i * n + order[j]]);
        Ok(SymEigen { values, vectors })
    }

    /// Unique symmetric positive-definite square root.
    ///
    /// The input must be symmetric within `tol` and have strictly positive
    /// eigenvalues; eigenvalues at or below `1e3 * eps * max_eigenvalue` are
    /// rejected as numerically indefinite. The result R is symmetrized so
    /// that R = R^T exactly and R R = self to roundoff.
    pub fn spd_sqrt(&self, tol: T) -> Result<Self, MatError> {
        let eig = self.sym_eigen(tol)?;
        let max_eig = eig.values.iter().fold(T::zero(), |acc, w| acc.max(*w));
        let cutoff = T::of(1e3) * T::epsilon() * max_eig;
        for &w in &eig.values {
            if w <= cutoff {
                return Err(MatError::NotPositiveDefinite {
                    value: w.as_f64(),
                    cutoff: cutoff.as_f64(),
                });
            }
        }
        let n = self.rows;
        let v = &eig.vectors;
        // R = V sqrt(diag) V^T, accumulated directly.
        let mut root = Self::zeros(n, n);
        for k in 0..n {
            let sk = eig.values[k].sqrt();
            for i in 0..n {
                let vik = v.get(i, k) * sk;
                for j in 0..n {
                    root.data[i * n + j] = root.data[i * n + j] + vik * v.get(j, k);
                }
            }
        }
        let half = T::of(0.5);
        let sym = Self::from_fn(n, n, |i, j| (root.get(i, j) + root.get(j, i)) * half);
        sym.ensure_finite()?;
        Ok(sym)
    }

    /// Gauss-Jordan inverse with partial pivoting. A pivot at or below
    /// `tol * max_abs(self)` reports the matrix as singular.
    pub fn inverse(&self, tol: T) -> Result<Self, MatError> {
        if !self.is_square() {
            return Err(MatError::DimMismatch(format!(
                "inverse needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let threshold = tol * self.max_abs();
        let mut a = self.data.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot = a[col * n + col].abs();
            for r in (col + 1)..n {
                let cand = a[r * n + col].abs();
                if cand > pivot {
                    pivot = cand;
                    pivot_row = r;
                }
            }
            if pivot <= threshold {
                return Err(MatError::Singular {
                    pivot: pivot.as_f64(),
                    threshold: threshold.as_f64(),
                });
            }
            if pivot_row != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot_row * n + k);
                    inv.data.swap(col * n + k, pivot_row * n + k);
                }
            }
            let d = a[col * n + col];
            for k in 0..n {
                a[col * n + k] = a[col * n + k] / d;
                inv.data[col * n + k] = inv.data[col * n + k] / d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == T::zero() {
                    continue;
                }
                for k in 0..n {
                    a[r * n + k] = a[r * n + k] - f * a[col * n + k];
                    inv.data[r * n + k] = inv.data[r * n + k] - f * inv.data[col * n + k];
                }
            }
        }
        inv.ensure_finite()?;
        Ok(inv)
    }

    /// Determinant via LU with partial pivoting. Panics on non-square input.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = T::one();
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot = a[col * n + col].abs();
            for r in (col + 1)..n {
                let cand = a[r * n + col].abs();
                if cand > pivot {
                    pivot = cand;
                    pivot_row = r;
                }
            }
            if pivot == T::zero() {
                return T::zero();
            }
            if pivot_row != col {
                for k in col..n {
                    a.swap(col * n + k, pivot_row * n + k);
                }
                det = -det;
            }
            let d = a[col * n + col];
            det = det * d;
            for r in (col + 1)..n {
                let f = a[r * n + col] / d;
                if f == T::zero() {
                    continue;
                }
                for k in col..n {
                    a[r * n + k] = a[r * n + k] - f * a[col * n + k];
                }
            }
        }
        det
    }

    /// True iff the matrix is orthogonal with determinant +1, both within tol.
    pub fn is_special_orthogonal(&self, tol: T) -> bool {
        if !self.is_square() {
            return false;
        }
        let gram = self.transpose().mul(self).expect("square product");
        gram.max_abs_diff(&Self::identity(self.rows)) <= tol && (self.det() - T::one()).abs() <= tol
    }
}

/// Result of [`Mat::sym_eigen`]: `values` ascending, eigenvectors in the
/// matching columns of `vectors`.
#[derive(Debug, Clone)]
pub struct SymEigen<T> {
    pub values: Vec<T>,
    pub vectors: Mat<T>,
}

impl<T: Scalar> Index<(usize, usize)> for Mat<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; they are for in-crate formula code
// where shapes are correct by construction. Fallible entry points are `mul`,
// `approx_eq`, and the constructors.

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;

    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        Mat::mul(self, rhs).expect("operator product")
    }
}

impl<T: Scalar> Add for &Mat<T> {
    type Output = Mat<T>;

    fn add(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sum of mismatched shapes");
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl<T: Scalar> Sub for &Mat<T> {
    type Output = Mat<T>;

    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "difference of mismatched shapes"
        );
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl<T: Scalar> Neg for &Mat<T> {
    type Output = Mat<T>;

    fn neg(self) -> Mat<T> {
        Mat::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }
}

impl<T: Scalar> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatWire<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<T>>,
}

impl<T: Scalar + Serialize> Serialize for Mat<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let data: Vec<Vec<T>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        MatWire { rows: self.rows, cols: self.cols, data }.serialize(serializer)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for Mat<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MatWire::<T>::deserialize(deserializer)?;
        let m = Mat::from_rows(wire.data).map_err(serde::de::Error::custom)?;
        if m.rows != wire.rows || m.cols != wire.cols {
            return Err(serde::de::Error::custom(format!(
                "declared shape {}x{} does not match data shape {}x{}",
                wire.rows, wire.cols, m.rows, m.cols
            )));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Mat<f64>;

    const TOL: f64 = 1e-9;

    fn m2(a: f64, b: f64, c: f64, d: f64) -> M {
        M::from_vec(2, 2, vec![a, b, c, d]).unwrap()
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(matches!(
            M::from_vec(2, 2, vec![1.0, 2.0, 3.0]),
            Err(MatError::DimMismatch(_))
        ));
        assert!(matches!(
            M::from_vec(1, 2, vec![1.0, f64::NAN]),
            Err(MatError::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(
            M::from_rows(vec![vec![1.0], vec![1.0, 2.0]]),
            Err(MatError::DimMismatch(_))
        ));
        assert!(matches!(M::from_vec(0, 0, vec![]), Err(MatError::DimMismatch(_))));
    }

    #[test]
    fn product_shape_check() {
        let a = M::zeros(2, 3);
        let b = M::zeros(2, 3);
        assert!(matches!(Mat::mul(&a, &b), Err(MatError::DimMismatch(_))));
        let c = M::zeros(3, 4);
        assert_eq!(Mat::mul(&a, &c).unwrap().rows(), 2);
    }

    #[test]
    fn product_against_hand_computation() {
        let a = m2(1.0, 2.0, 3.0, 4.0);
        let b = m2(5.0, 6.0, 7.0, 8.0);
        let ab = &a * &b;
        assert_eq!(ab, m2(19.0, 22.0, 43.0, 50.0));
    }

    #[test]
    fn approx_eq_requires_matching_shape() {
        let a = M::zeros(2, 2);
        let b = M::zeros(2, 3);
        assert!(matches!(a.approx_eq(&b, TOL), Err(MatError::DimMismatch(_))));
        assert!(a.approx_eq(&M::zeros(2, 2), 0.0).unwrap());
    }

    #[test]
    fn eigen_of_diagonal_is_exact() {
        let d = m2(3.0, 0.0, 0.0, -1.0);
        let eig = d.sym_eigen(TOL).unwrap();
        assert_eq!(eig.values, vec![-1.0, 3.0]);
    }

    // Frozen oracle: [[2,1],[1,2]] has eigenpairs (1, [1,-1]/sqrt2) and
    // (3, [1,1]/sqrt2), so the SPD root is [[(1+s)/2, (s-1)/2], [(s-1)/2,
    // (1+s)/2]] with s = sqrt(3). Constants below are that closed form to
    // twelve digits.
    #[test]
    fn spd_sqrt_matches_frozen_eigendecomposition() {
        let s = m2(2.0, 1.0, 1.0, 2.0);
        let root = s.spd_sqrt(TOL).unwrap();
        let expected = m2(
            1.366025403784,
            0.366025403784,
            0.366025403784,
            1.366025403784,
        );
        assert!(root.max_abs_diff(&expected) < 5e-13);
        // R R reproduces the input and R is exactly symmetric.
        assert!((&root * &root).max_abs_diff(&s) < 1e-12);
        assert_eq!(root.get(0, 1), root.get(1, 0));
    }

    #[test]
    fn spd_sqrt_of_identity_is_identity() {
        let id = M::identity(4);
        assert!(id.spd_sqrt(TOL).unwrap().max_abs_diff(&id) < 1e-15);
    }

    #[test]
    fn spd_sqrt_rejects_asymmetric_and_indefinite() {
        let asym = m2(1.0, 0.5, 0.0, 1.0);
        assert!(matches!(asym.spd_sqrt(TOL), Err(MatError::NotSymmetric { .. })));
        let indef = m2(1.0, 2.0, 2.0, 1.0); // eigenvalues 3 and -1
        assert!(matches!(indef.spd_sqrt(TOL), Err(MatError::NotPositiveDefinite { .. })));
        let psd = m2(1.0, 1.0, 1.0, 1.0); // eigenvalue 0
        assert!(matches!(psd.spd_sqrt(TOL), Err(MatError::NotPositiveDefinite { .. })));
    }

    #[test]
    fn inverse_of_diagonal() {
        let d = m2(2.0, 0.0, 0.0, 4.0);
        let inv = d.inverse(TOL).unwrap();
        assert!(inv.max_abs_diff(&m2(0.5, 0.0, 0.0, 0.25)) < 1e-15);
    }

    #[test]
    fn inverse_round_trip() {
        let a = M::from_vec(3, 3, vec![2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0]).unwrap();
        let inv = a.inverse(TOL).unwrap();
        assert!((&a * &inv).max_abs_diff(&M::identity(3)) < 1e-14);
        assert!((&inv * &a).max_abs_diff(&M::identity(3)) < 1e-14);
    }

    #[test]
    fn inverse_rejects_singular() {
        let s = m2(1.0, 2.0, 2.0, 4.0);
        assert!(matches!(s.inverse(TOL), Err(MatError::Singular { .. })));
    }

    #[test]
    fn determinant_values() {
        assert_eq!(m2(1.0, 2.0, 3.0, 4.0).det(), -2.0);
        assert_eq!(M::identity(5).det(), 1.0);
        assert_eq!(m2(1.0, 2.0, 2.0, 4.0).det(), 0.0);
    }

    #[test]
    fn blocks_round_trip() {
        let a = m2(1.0, 2.0, 3.0, 4.0);
        let b = M::from_vec(2, 1, vec![5.0, 6.0]).unwrap();
        let c = M::from_vec(1, 2, vec![7.0, 8.0]).unwrap();
        let d = M::from_vec(1, 1, vec![9.0]).unwrap();
        let full = M::from_blocks(&a, &b, &c, &d);
        assert_eq!(full.submatrix(0, 0, 2, 2), a);
        assert_eq!(full.submatrix(0, 2, 2, 1), b);
        assert_eq!(full.submatrix(2, 0, 1, 2), c);
        assert_eq!(full.submatrix(2, 2, 1, 1), d);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let a = m2(1.0, 2.5, -3.0, 4.0);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"rows":2,"cols":2,"data":[[1.0,2.5],[-3.0,4.0]]}"#);
        let back: M = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);

        let bad_shape = r#"{"rows":2,"cols":2,"data":[[1.0,2.0]]}"#;
        assert!(serde_json::from_str::<M>(bad_shape).is_err());
        let ragged = r#"{"rows":2,"cols":2,"data":[[1.0,2.0],[3.0]]}"#;
        assert!(serde_json::from_str::<M>(ragged).is_err());
    }

    #[test]
    fn special_orthogonal_detection() {
        let rot = m2(0.6, -0.8, 0.8, 0.6);
        assert!(rot.is_special_orthogonal(1e-12));
        let reflect = m2(1.0, 0.0, 0.0, -1.0);
        assert!(!reflect.is_special_orthogonal(1e-12));
        assert!(!m2(2.0, 0.0, 0.0, 0.5).is_special_orthogonal(1e-12));
    }
}
