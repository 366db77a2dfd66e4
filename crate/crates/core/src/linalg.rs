//! Dense linear algebra: row-major matrices, LU with partial pivoting,
//! 1-norm condition estimation and Householder least squares.

use crate::error::{contract, Error, Result};
use crate::Scalar;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(contract("ragged rows"));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn norm_one(&self) -> T {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    /// Submatrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self[(i, j)]);
            }
        }
        Self {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Determinant via LU; zero for a singular matrix.
    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(contract("determinant of a non-square matrix"));
        }
        match Lu::factor(self.clone()) {
            Ok(lu) => Ok(lu.determinant()),
            Err(Error::Singular { .. }) => Ok(T::zero()),
            Err(e) => Err(e),
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// `PA = LU` with partial (row) pivoting, stored in place.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
    parity: T,
    norm_one: T,
}

impl<T: Scalar> Lu<T> {
    /// Fails only on an exactly zero or non-finite pivot.
    pub fn factor(mut a: Matrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(contract(format!(
                "LU needs a square matrix, got {}x{}",
                a.rows, a.cols
            )));
        }
        let n = a.rows;
        let norm_one = a.norm_one();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut parity = T::one();
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, a[(i, k)].abs()))
                .fold((k, -T::one()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot > T::zero()) || !pivot.is_finite() {
                return Err(Error::Singular {
                    condition: f64::INFINITY,
                    reason: format!("zero or non-finite pivot in column {k}"),
                });
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                parity = -parity;
            }
            let pivot = a[(k, k)];
            let (upper, lower) = a.data.split_at_mut((k + 1) * n);
            let pivot_row = &upper[k * n..(k + 1) * n];
            for row in lower.chunks_exact_mut(n) {
                let factor = row[k] / pivot;
                row[k] = factor;
                if factor != T::zero() {
                    for j in (k + 1)..n {
                        row[j] -= factor * pivot_row[j];
                    }
                }
            }
        }
        Ok(Self {
            lu: a,
            perm,
            parity,
            norm_one,
        })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let mut s = x[i];
            for j in 0..i {
                s -= row[j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= row[j] * x[j];
            }
            x[i] = s / row[i];
        }
        x
    }

    /// Solves `Aᵀ x = b`.
    pub fn solve_transpose(&self, b: &[T]) -> Vec<T> {
        let n = self.dim();
        // Uᵀ z = b
        let mut z = b.to_vec();
        for i in 0..n {
            let mut s = z[i];
            for j in 0..i {
                s -= self.lu[(j, i)] * z[j];
            }
            z[i] = s / self.lu[(i, i)];
        }
        // Lᵀ y = z
        for i in (0..n).rev() {
            let mut s = z[i];
            for j in (i + 1)..n {
                s -= self.lu[(j, i)] * z[j];
            }
            z[i] = s;
        }
        let mut x = vec![T::zero(); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = z[i];
        }
        x
    }

    pub fn determinant(&self) -> T {
        (0..self.dim()).fold(self.parity, |acc, i| acc * self.lu[(i, i)])
    }

    /// Hager–Higham estimate of `‖A‖₁ ‖A⁻¹‖₁`.
    pub fn condition_estimate(&self) -> T {
        let n = self.dim();
        if n == 0 {
            return T::one();
        }
        let mut x = vec![T::one() / T::from_usize_lossy(n); n];
        let mut estimate = T::zero();
        let mut last_index = usize::MAX;
        for _ in 0..5 {
            let y = self.solve(&x);
            estimate = y.iter().map(|v| v.abs()).sum();
            let signs: Vec<T> = y
                .iter()
                .map(|&v| if v >= T::zero() { T::one() } else { -T::one() })
                .collect();
            let z = self.solve_transpose(&signs);
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.abs()))
                .fold((0, -T::one()), |b, c| if c.1 > b.1 { c } else { b });
            let ztx: T = z.iter().zip(&x).map(|(&a, &b)| a * b).sum();
            if zmax <= ztx || j == last_index {
                break;
            }
            last_index = j;
            x = vec![T::zero(); n];
            x[j] = T::one();
        }
        // Higham's alternating-sign safeguard
        let alt: Vec<T> = (0..n)
            .map(|i| {
                let s = if i % 2 == 0 { T::one() } else { -T::one() };
                s * (T::one() + T::from_usize_lossy(i) / T::from_usize_lossy(n.max(2) - 1))
            })
            .collect();
        let y = self.solve(&alt);
        let alt_est = T::lit(2.0) * y.iter().map(|v| v.abs()).sum::<T>() / T::from_usize_lossy(3 * n);
        estimate.max(alt_est) * self.norm_one
    }
}

/// Solves a rectangular system in the least-squares sense; for
/// under-determined systems returns the minimum-norm solution.
pub fn least_squares<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Vec<T>> {
    if b.len() != a.rows() {
        return Err(contract("right-hand side length does not match row count"));
    }
    if a.rows() >= a.cols() {
        let qr = HouseholderQr::factor(a.clone())?;
        let qtb = qr.apply_qt(b);
        qr.solve_upper(&qtb[..a.cols()])
    } else {
        let qr = HouseholderQr::factor(a.transpose())?;
        let y = qr.solve_upper_transpose(b)?;
        let mut padded = y;
        padded.resize(a.cols(), T::zero());
        Ok(qr.apply_q(&padded))
    }
}

/// Householder QR of a tall matrix (`rows >= cols`).
struct HouseholderQr<T> {
    qr: Matrix<T>,
    diag: Vec<T>,
}

impl<T: Scalar> HouseholderQr<T> {
    fn factor(mut a: Matrix<T>) -> Result<Self> {
        let (m, n) = (a.rows, a.cols);
        let mut diag = vec![T::zero(); n];
        for k in 0..n {
            let norm = (k..m).map(|i| a[(i, k)] * a[(i, k)]).sum::<T>().sqrt();
            if norm == T::zero() {
                return Err(Error::Singular {
                    condition: f64::INFINITY,
                    reason: format!("rank deficient in column {k}"),
                });
            }
            let alpha = if a[(k, k)] > T::zero() { -norm } else { norm };
            for i in k..m {
                a[(i, k)] /= -alpha;
            }
            a[(k, k)] += T::one();
            for j in (k + 1)..n {
                let s: T = (k..m).map(|i| a[(i, k)] * a[(i, j)]).sum::<T>() / a[(k, k)];
                for i in k..m {
                    let v = a[(i, k)];
                    a[(i, j)] -= s * v;
                }
            }
            diag[k] = alpha;
        }
        Ok(Self { qr: a, diag })
    }

    fn reflect(&self, k: usize, v: &mut [T]) {
        let m = self.qr.rows;
        let s: T = (k..m).map(|i| self.qr[(i, k)] * v[i]).sum::<T>() / self.qr[(k, k)];
        for i in k..m {
            v[i] -= s * self.qr[(i, k)];
        }
    }

    fn apply_qt(&self, b: &[T]) -> Vec<T> {
        let mut v = b.to_vec();
        for k in 0..self.qr.cols {
            self.reflect(k, &mut v);
        }
        v
    }

    fn apply_q(&self, b: &[T]) -> Vec<T> {
        let mut v = b.to_vec();
        for k in (0..self.qr.cols).rev() {
            self.reflect(k, &mut v);
        }
        v
    }

    fn r(&self, i: usize, j: usize) -> T {
        if i == j {
            self.diag[i]
        } else {
            self.qr[(i, j)]
        }
    }

    fn solve_upper(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.qr.cols;
        let mut x = b.to_vec();
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= self.r(i, j) * x[j];
            }
            x[i] = s / self.r(i, i);
        }
        Ok(x)
    }

    fn solve_upper_transpose(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.qr.cols;
        let mut x = b.to_vec();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.r(j, i) * x[j];
            }
            x[i] = s / self.r(i, i);
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hilbert(n: usize) -> Matrix<f64> {
        Matrix::from_fn(n, n, |i, j| 1.0 / (i + j + 1) as f64)
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let lu = Lu::factor(Matrix::<f64>::identity(4)).unwrap();
        let b = [1.0, -2.0, 3.5, 0.25];
        assert_eq!(lu.solve(&b), b.to_vec());
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = Matrix::<f64>::from_rows(vec![vec![0.0, 1.0], vec![2.0, 3.0]]).unwrap();
        let lu = Lu::factor(a.clone()).unwrap();
        let x = lu.solve(&[1.0, 8.0]);
        assert!((x[0] - 2.5).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
        assert!((lu.determinant() + 2.0).abs() < 1e-15);
        let xt = lu.solve_transpose(&[4.0, 7.0]);
        let back = a.transpose().mul_vec(&xt);
        assert!((back[0] - 4.0).abs() < 1e-14 && (back[1] - 7.0).abs() < 1e-14);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = Matrix::<f64>::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(Lu::factor(a.clone()), Err(Error::Singular { .. })));
        assert_eq!(a.determinant().unwrap(), 0.0);
    }

    #[test]
    fn condition_estimate_tracks_exact_value() {
        // κ₁ = ‖A‖₁‖A⁻¹‖₁ = 6 · 0.5
        let a = Matrix::<f64>::from_rows(vec![vec![4.0, 1.0], vec![2.0, 3.0]]).unwrap();
        let lu = Lu::factor(a.clone()).unwrap();
        let exact = a.norm_one() * {
            let c0 = lu.solve(&[1.0, 0.0]);
            let c1 = lu.solve(&[0.0, 1.0]);
            (c0[0].abs() + c0[1].abs()).max(c1[0].abs() + c1[1].abs())
        };
        assert!((exact - 3.0).abs() < 1e-14);
        let est = lu.condition_estimate();
        assert!(est <= exact * (1.0 + 1e-12) && est >= exact / 3.0, "est {est} exact {exact}");
        let h = Lu::factor(hilbert(8)).unwrap().condition_estimate();
        assert!(h > 1e9 && h < 1e11, "hilbert(8) κ₁ ≈ 3.4e10, got {h:e}");
    }

    #[test]
    fn minor_and_determinant() {
        let a = Matrix::<f64>::from_rows(vec![
            vec![2.0, 0.0, 1.0],
            vec![1.0, 3.0, 2.0],
            vec![1.0, 1.0, 2.0],
        ])
        .unwrap();
        assert!((a.determinant().unwrap() - 6.0).abs() < 1e-14);
        let m = a.minor(0, 1);
        assert_eq!(m, Matrix::<f64>::from_rows(vec![vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap());
    }

    #[test]
    fn least_squares_tall_and_wide() {
        // tall: exact fit of a line through three collinear points
        let a = Matrix::<f64>::from_rows(vec![vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let x = least_squares(&a, &[1.0, 3.0, 5.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14);
        // wide: minimum-norm solution of x + y = 2 is (1, 1)
        let w = Matrix::<f64>::from_rows(vec![vec![1.0, 1.0]]).unwrap();
        let x = least_squares(&w, &[2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14);
    }
}
