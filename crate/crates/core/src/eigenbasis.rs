//! Tensor-product sine eigenbasis of the Dirichlet Laplacian on a stretched box.
//!
//! The physical box is `(0, L_1) x ... x (0, L_d)`. The basis lives on the
//! larger box `(-δ_1, L_1 + δ_1) x ...`, where every mode vanishes, and is
//! only ever evaluated on that closed extended box.

use serde::{Deserialize, Serialize};

use crate::error::{contract, domain, Result};
use crate::Scalar;

/// Largest spatial dimension supported.
pub const MAX_DIM: usize = 2;

/// Inner box `(0, L)` per axis together with the stretching margin `δ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtendedRectangle<T> {
    lengths: Vec<T>,
    stretch: Vec<T>,
}

impl<T: Scalar> ExtendedRectangle<T> {
    pub fn new(lengths: Vec<T>, stretch: Vec<T>) -> Result<Self> {
        let d = lengths.len();
        if d == 0 || d > MAX_DIM {
            return Err(contract(format!("dimension must be 1 or 2, got {d}")));
        }
        if stretch.len() != d {
            return Err(contract(format!(
                "{} stretch margins given for a {d}-dimensional box",
                stretch.len()
            )));
        }
        if lengths.iter().any(|&l| !(l > T::zero()) || !l.is_finite()) {
            return Err(domain("box lengths must be positive and finite"));
        }
        if stretch.iter().any(|&s| !(s >= T::zero()) || !s.is_finite()) {
            return Err(domain("stretch margins must be non-negative and finite"));
        }
        Ok(Self { lengths, stretch })
    }

    /// Same margin `δ` on every axis.
    pub fn with_uniform_stretch(lengths: Vec<T>, delta: T) -> Result<Self> {
        let stretch = vec![delta; lengths.len()];
        Self::new(lengths, stretch)
    }

    /// Copy of this box with a new uniform margin.
    pub fn restretched(&self, delta: T) -> Result<Self> {
        Self::with_uniform_stretch(self.lengths.clone(), delta)
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[T] {
        &self.lengths
    }

    pub fn stretch(&self) -> &[T] {
        &self.stretch
    }

    /// `L_k + 2 δ_k`, the side of the box the basis is defined on.
    pub fn extended_length(&self, axis: usize) -> T {
        self.lengths[axis] + self.stretch[axis] + self.stretch[axis]
    }

    pub fn inner_area(&self) -> T {
        self.lengths.iter().fold(T::one(), |acc, &l| acc * l)
    }

    fn slack(&self, axis: usize) -> T {
        T::epsilon() * T::lit(64.0) * self.extended_length(axis)
    }

    /// Whether `x` lies in the closed extended box (up to rounding slack).
    pub fn contains_extended(&self, x: &[T]) -> bool {
        x.len() == self.dim()
            && x.iter().enumerate().all(|(k, &xk)| {
                let s = self.slack(k);
                xk >= -self.stretch[k] - s && xk <= self.lengths[k] + self.stretch[k] + s
            })
    }

    /// Whether `x` lies in the closed inner box `[0, L]^d` (up to rounding slack).
    pub fn contains_inner(&self, x: &[T]) -> bool {
        x.len() == self.dim()
            && x.iter().enumerate().all(|(k, &xk)| {
                let s = self.slack(k);
                xk >= -s && xk <= self.lengths[k] + s
            })
    }

    pub(crate) fn check_extended(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(contract(format!(
                "point has {} coordinates, box is {}-dimensional",
                x.len(),
                self.dim()
            )));
        }
        if !self.contains_extended(x) {
            return Err(domain(format!(
                "point {:?} lies outside the extended box; the basis is not defined there",
                x.iter().map(|v| v.as_f64()).collect::<Vec<_>>()
            )));
        }
        Ok(())
    }
}

/// How an expansion `Σ a_i w_i` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMode {
    Value,
    Gradient,
    Laplacian,
}

/// Result of [`BasisSet::eval_expansion`].
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation<T> {
    Value(T),
    Gradient(Vec<T>),
    Laplacian(T),
}

impl<T: Scalar> Evaluation<T> {
    /// Scalar payload of a value or Laplacian evaluation.
    pub fn scalar(&self) -> Option<T> {
        match self {
            Evaluation::Value(v) | Evaluation::Laplacian(v) => Some(*v),
            Evaluation::Gradient(_) => None,
        }
    }
}

/// The first `n` modes per axis, ordered by eigenvalue.
#[derive(Clone, Debug)]
pub struct BasisSet<T> {
    rect: ExtendedRectangle<T>,
    n: usize,
    order: Vec<[usize; MAX_DIM]>,
    eigenvalues: Vec<T>,
    // jπ/(L+2δ) per axis, indexed by j-1
    wavenumbers: Vec<Vec<T>>,
    normalization: T,
}

impl<T: Scalar> BasisSet<T> {
    /// Builds the `n^d` modes `1 <= j_k <= n`, sorted by ascending
    /// eigenvalue with a lexicographic tie-break on the multi-index.
    pub fn new(rect: ExtendedRectangle<T>, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(contract(format!("need at least 2 modes per axis, got {n}")));
        }
        let d = rect.dim();
        let pi = T::PI();
        let wavenumbers: Vec<Vec<T>> = (0..d)
            .map(|k| {
                let ell = rect.extended_length(k);
                (1..=n).map(|j| T::from_usize_lossy(j) * pi / ell).collect()
            })
            .collect();
        let normalization = {
            let prod = (0..d).fold(T::one(), |acc, k| acc * rect.extended_length(k));
            (T::from_usize_lossy(1 << d) / prod).sqrt()
        };

        let mut order: Vec<[usize; MAX_DIM]> = Vec::with_capacity(n.pow(d as u32));
        if d == 1 {
            order.extend((1..=n).map(|j| [j, 0]));
        } else {
            for j1 in 1..=n {
                for j2 in 1..=n {
                    order.push([j1, j2]);
                }
            }
        }
        let mut keyed: Vec<(T, [usize; MAX_DIM])> = order
            .into_iter()
            .map(|j| (exact_eigenvalue(&rect, &j[..d]), j))
            .collect();
        keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then_with(|| a.1.cmp(&b.1)));
        let (eigenvalues, order): (Vec<T>, Vec<_>) = keyed.into_iter().unzip();

        Ok(Self {
            rect,
            n,
            order,
            eigenvalues,
            wavenumbers,
            normalization,
        })
    }

    pub fn rect(&self) -> &ExtendedRectangle<T> {
        &self.rect
    }

    pub fn dim(&self) -> usize {
        self.rect.dim()
    }

    /// Modes per axis.
    pub fn modes_per_axis(&self) -> usize {
        self.n
    }

    /// Total number of modes, `n^d`.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Multi-index of the `i`-th mode in eigenvalue order.
    pub fn mode(&self, i: usize) -> &[usize] {
        &self.order[i][..self.dim()]
    }

    /// Eigenvalue of the `i`-th mode in eigenvalue order.
    pub fn eigenvalue_at(&self, i: usize) -> T {
        self.eigenvalues[i]
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Position of a multi-index in the eigenvalue order.
    pub fn position(&self, j: &[usize]) -> Result<usize> {
        self.check_index(j)?;
        Ok(self
            .order
            .iter()
            .position(|m| &m[..self.dim()] == j)
            .expect("every in-range multi-index is in the order"))
    }

    fn check_index(&self, j: &[usize]) -> Result<()> {
        if j.len() != self.dim() {
            return Err(contract(format!(
                "multi-index has {} entries, basis is {}-dimensional",
                j.len(),
                self.dim()
            )));
        }
        if j.iter().any(|&jk| jk < 1 || jk > self.n) {
            return Err(domain(format!("multi-index {j:?} outside 1..={}", self.n)));
        }
        Ok(())
    }

    /// `λ_j = Σ_k j_k² π² / (L_k + 2δ_k)²`.
    pub fn eigenvalue(&self, j: &[usize]) -> Result<T> {
        self.check_index(j)?;
        Ok(exact_eigenvalue(&self.rect, j))
    }

    fn phase(&self, axis: usize, jk: usize, xk: T) -> T {
        self.wavenumbers[axis][jk - 1] * (xk + self.rect.stretch[axis])
    }

    /// `w_j(x) = 2^{d/2} / sqrt(Π (L_k+2δ_k)) · Π sin(j_k π (x_k+δ_k)/(L_k+2δ_k))`.
    pub fn eval_basis(&self, j: &[usize], x: &[T]) -> Result<T> {
        self.check_index(j)?;
        self.rect.check_extended(x)?;
        Ok(j.iter()
            .zip(x)
            .enumerate()
            .fold(self.normalization, |acc, (k, (&jk, &xk))| {
                acc * self.phase(k, jk, xk).sin()
            }))
    }

    /// `∂w_j/∂x_axis` (axis is zero-based).
    pub fn eval_basis_partial(&self, j: &[usize], x: &[T], axis: usize) -> Result<T> {
        self.check_index(j)?;
        self.rect.check_extended(x)?;
        if axis >= self.dim() {
            return Err(contract(format!(
                "axis {axis} out of range for a {}-dimensional basis",
                self.dim()
            )));
        }
        Ok(j.iter()
            .zip(x)
            .enumerate()
            .fold(self.normalization, |acc, (k, (&jk, &xk))| {
                let theta = self.phase(k, jk, xk);
                if k == axis {
                    acc * self.wavenumbers[k][jk - 1] * theta.cos()
                } else {
                    acc * theta.sin()
                }
            }))
    }

    /// `Δw_j(x) = -λ_j w_j(x)`.
    pub fn eval_basis_laplacian(&self, j: &[usize], x: &[T]) -> Result<T> {
        let w = self.eval_basis(j, x)?;
        Ok(-exact_eigenvalue(&self.rect, j) * w)
    }

    /// Per-axis sine/cosine tables at `x`; evaluates every mode in O(1) each.
    pub fn tables_at(&self, x: &[T]) -> Result<PointTables<'_, T>> {
        self.rect.check_extended(x)?;
        let d = self.dim();
        let mut sin = [Vec::new(), Vec::new()];
        let mut cos = [Vec::new(), Vec::new()];
        for k in 0..d {
            sin[k] = (1..=self.n).map(|j| self.phase(k, j, x[k]).sin()).collect();
            cos[k] = (1..=self.n).map(|j| self.phase(k, j, x[k]).cos()).collect();
        }
        Ok(PointTables {
            basis: self,
            sin,
            cos,
        })
    }

    /// `Σ_i a_i (w_i | ∇w_i | Δw_i)(x)` with `a` in eigenvalue order.
    pub fn eval_expansion(&self, coeffs: &[T], x: &[T], mode: EvalMode) -> Result<Evaluation<T>> {
        if coeffs.len() != self.len() {
            return Err(contract(format!(
                "{} coefficients for a basis of {} modes",
                coeffs.len(),
                self.len()
            )));
        }
        let tables = self.tables_at(x)?;
        Ok(match mode {
            EvalMode::Value => Evaluation::Value(tables.expansion_value(coeffs)),
            EvalMode::Laplacian => Evaluation::Laplacian(
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| a * tables.laplacian(i))
                    .sum(),
            ),
            EvalMode::Gradient => Evaluation::Gradient(
                (0..self.dim())
                    .map(|axis| {
                        coeffs
                            .iter()
                            .enumerate()
                            .map(|(i, &a)| a * tables.partial(i, axis))
                            .sum()
                    })
                    .collect(),
            ),
        })
    }

    /// Value of the expansion at `x`.
    pub fn expansion_value(&self, coeffs: &[T], x: &[T]) -> Result<T> {
        match self.eval_expansion(coeffs, x, EvalMode::Value)? {
            Evaluation::Value(v) => Ok(v),
            _ => unreachable!(),
        }
    }
}

// Axes sharing an extended length are summed in integers first so that
// mathematically tied eigenvalues (square boxes) are bitwise equal.
fn exact_eigenvalue<T: Scalar>(rect: &ExtendedRectangle<T>, j: &[usize]) -> T {
    let pi2 = T::PI() * T::PI();
    let scale = |k: usize| {
        let ell = rect.extended_length(k);
        pi2 / (ell * ell)
    };
    match j.len() {
        1 => T::from_usize_lossy(j[0] * j[0]) * scale(0),
        _ if rect.extended_length(0) == rect.extended_length(1) => {
            T::from_usize_lossy(j[0] * j[0] + j[1] * j[1]) * scale(0)
        }
        _ => T::from_usize_lossy(j[0] * j[0]) * scale(0) + T::from_usize_lossy(j[1] * j[1]) * scale(1),
    }
}

/// Sine and cosine of every per-axis phase at one point.
pub struct PointTables<'a, T> {
    basis: &'a BasisSet<T>,
    sin: [Vec<T>; MAX_DIM],
    cos: [Vec<T>; MAX_DIM],
}

impl<T: Scalar> PointTables<'_, T> {
    /// `w_i(x)` for the `i`-th mode in eigenvalue order.
    #[inline]
    pub fn value(&self, i: usize) -> T {
        let j = &self.basis.order[i];
        let mut acc = self.basis.normalization;
        for k in 0..self.basis.dim() {
            acc *= self.sin[k][j[k] - 1];
        }
        acc
    }

    /// `∂w_i/∂x_axis`.
    #[inline]
    pub fn partial(&self, i: usize, axis: usize) -> T {
        let j = &self.basis.order[i];
        let mut acc = self.basis.normalization;
        for k in 0..self.basis.dim() {
            let jk = j[k] - 1;
            if k == axis {
                acc *= self.basis.wavenumbers[k][jk] * self.cos[k][jk];
            } else {
                acc *= self.sin[k][jk];
            }
        }
        acc
    }

    /// `Δw_i = -λ_i w_i`.
    #[inline]
    pub fn laplacian(&self, i: usize) -> T {
        -self.basis.eigenvalues[i] * self.value(i)
    }

    pub fn expansion_value(&self, coeffs: &[T]) -> T {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| a * self.value(i))
            .sum()
    }
}
