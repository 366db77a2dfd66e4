//! Dense collocation systems for Poisson and convection–diffusion problems.
//!
//! Unknowns are the eigenbasis coefficients `a_j` in eigenvalue order. A
//! PDE row at `x_i` reads `Σ_j a_j [(1/Re) λ_j w_j(x_i) + k(x_i)·∇w_j(x_i)] = f(x_i)`
//! and a boundary row reads `Σ_j a_j w_j(x_i) = g(x_i)`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigenbasis::{BasisSet, EvalMode, Evaluation, ExtendedRectangle};
use crate::error::{contract, Error, Result};
use crate::geometry::{BoundaryCurve, CollocationGrid, PointTag, RelocationReport};
use crate::linalg::{least_squares, Lu, Matrix};
use crate::Scalar;

pub type ScalarField<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;
pub type VectorField<T> = Arc<dyn Fn(&[T]) -> [T; 2] + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    Poisson,
    ConvectionDiffusion,
}

/// `-(1/Re) Δu + k·∇u = f` with `u = g` on the boundary.
#[derive(Clone)]
pub struct ProblemSpec<T> {
    pub kind: ProblemKind,
    pub forcing: ScalarField<T>,
    pub boundary: ScalarField<T>,
    pub velocity: Option<VectorField<T>>,
    pub reynolds: T,
    pub exact: Option<ScalarField<T>>,
}

impl<T: Scalar> fmt::Debug for ProblemSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("kind", &self.kind)
            .field("reynolds", &self.reynolds)
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

impl<T: Scalar> ProblemSpec<T> {
    pub fn poisson(forcing: ScalarField<T>, boundary: ScalarField<T>) -> Self {
        Self {
            kind: ProblemKind::Poisson,
            forcing,
            boundary,
            velocity: None,
            reynolds: T::one(),
            exact: None,
        }
    }

    pub fn convection_diffusion(
        forcing: ScalarField<T>,
        boundary: ScalarField<T>,
        velocity: VectorField<T>,
        reynolds: T,
    ) -> Self {
        Self {
            kind: ProblemKind::ConvectionDiffusion,
            forcing,
            boundary,
            velocity: Some(velocity),
            reynolds,
            exact: None,
        }
    }

    pub fn with_exact(mut self, exact: ScalarField<T>) -> Self {
        self.exact = Some(exact);
        self
    }

    /// Applies the differential operator to a function given by its value,
    /// gradient and Laplacian at `x`.
    pub fn apply_operator(&self, x: &[T], gradient: &[T], laplacian: T) -> T {
        let diffusion = -laplacian / self.reynolds;
        match (&self.velocity, self.kind) {
            (Some(k), ProblemKind::ConvectionDiffusion) => {
                let kv = k(x);
                diffusion + gradient.iter().zip(kv.iter()).map(|(&g, &c)| g * c).sum::<T>()
            }
            _ => diffusion,
        }
    }
}

/// What to do with lattice points outside the physical domain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExteriorPolicy {
    /// Exterior points receive PDE rows with the globally defined forcing.
    #[default]
    Keep,
    /// Exterior rows are dropped and the rectangular system is solved in the
    /// least-squares (minimum-norm) sense.
    Discard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Pde,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowMeta {
    pub kind: RowKind,
    /// Index into the grid's point list.
    pub point: usize,
}

/// Collocation matrix, right-hand side and row/column bookkeeping.
#[derive(Clone, Debug)]
pub struct LinearSystem<T> {
    pub matrix: Matrix<T>,
    pub rhs: Vec<T>,
    pub row_meta: Vec<RowMeta>,
    /// Basis multi-index per column.
    pub col_meta: Vec<Vec<usize>>,
}

impl<T: Scalar> LinearSystem<T> {
    pub fn is_square(&self) -> bool {
        self.matrix.is_square()
    }

    /// Largest row mismatch `|A a − b|_i`.
    pub fn max_residual(&self, coeffs: &[T]) -> T {
        self.matrix
            .mul_vec(coeffs)
            .iter()
            .zip(&self.rhs)
            .map(|(&ax, &b)| (ax - b).abs())
            .fold(T::zero(), T::max)
    }

    pub fn rhs_max_norm(&self) -> T {
        self.rhs.iter().map(|v| v.abs()).fold(T::zero(), T::max)
    }
}

/// Builds the collocation system for `problem` on `grid`.
pub fn assemble<T: Scalar>(
    problem: &ProblemSpec<T>,
    basis: &BasisSet<T>,
    grid: &CollocationGrid<T>,
    exterior: ExteriorPolicy,
) -> Result<LinearSystem<T>> {
    if basis.rect() != grid.rect() {
        return Err(contract("basis and grid are built on different boxes"));
    }
    if basis.modes_per_axis() != grid.points_per_axis() {
        return Err(contract(format!(
            "basis has {} modes per axis but grid has {} points per axis",
            basis.modes_per_axis(),
            grid.points_per_axis()
        )));
    }
    if problem.kind == ProblemKind::ConvectionDiffusion && problem.velocity.is_none() {
        return Err(contract("convection–diffusion problem without a velocity field"));
    }
    let d = basis.dim();
    let rows: Vec<usize> = grid
        .points()
        .iter()
        .enumerate()
        .filter(|(_, p)| !(exterior == ExteriorPolicy::Discard && p.tag == PointTag::Exterior))
        .map(|(i, _)| i)
        .collect();
    let inv_re = T::one() / problem.reynolds;
    let built: Vec<(Vec<T>, T, RowMeta)> = rows
        .par_iter()
        .map(|&i| {
            let p = &grid.points()[i];
            let x = &p.coords[..d];
            let tables = basis.tables_at(x)?;
            if p.tag.is_boundary_row() {
                let row = (0..basis.len()).map(|j| tables.value(j)).collect();
                Ok((row, (problem.boundary)(x), RowMeta { kind: RowKind::Boundary, point: i }))
            } else {
                let k = match (&problem.velocity, problem.kind) {
                    (Some(v), ProblemKind::ConvectionDiffusion) => Some(v(x)),
                    _ => None,
                };
                let row = (0..basis.len())
                    .map(|j| {
                        let mut entry = inv_re * basis.eigenvalue_at(j) * tables.value(j);
                        if let Some(k) = k {
                            for axis in 0..d {
                                entry += k[axis] * tables.partial(j, axis);
                            }
                        }
                        entry
                    })
                    .collect();
                Ok((row, (problem.forcing)(x), RowMeta { kind: RowKind::Pde, point: i }))
            }
        })
        .collect::<Result<_>>()?;

    let mut matrix = Matrix::zeros(built.len(), basis.len());
    let mut rhs = Vec::with_capacity(built.len());
    let mut row_meta = Vec::with_capacity(built.len());
    for (r, (row, b, meta)) in built.into_iter().enumerate() {
        matrix.row_mut(r).copy_from_slice(&row);
        rhs.push(b);
        row_meta.push(meta);
    }
    Ok(LinearSystem {
        matrix,
        rhs,
        row_meta,
        col_meta: (0..basis.len()).map(|j| basis.mode(j).to_vec()).collect(),
    })
}

/// Coefficients plus solver diagnostics.
#[derive(Clone, Debug)]
pub struct SystemSolution<T> {
    pub coeffs: Vec<T>,
    /// 1-norm condition estimate of the row-scaled matrix.
    pub condition: f64,
    /// `‖A a − b‖₂ / ‖b‖₂` on the unscaled system (absolute when `b = 0`).
    pub relative_residual: f64,
    pub refinement_steps: usize,
}

const MAX_REFINEMENT_STEPS: usize = 2;

/// Solves the collocation system: row equilibration, LU with partial
/// pivoting and iterative refinement. Non-square systems (exterior rows
/// discarded) go through Householder least squares instead.
pub fn solve<T: Scalar>(system: &LinearSystem<T>) -> Result<SystemSolution<T>> {
    let rows = system.matrix.rows();
    if system.rhs.len() != rows {
        return Err(contract("right-hand side length does not match the matrix"));
    }
    let mut scaled = system.matrix.clone();
    let mut rhs = system.rhs.clone();
    for i in 0..rows {
        let s = scaled.row(i).iter().map(|v| v.abs()).fold(T::zero(), T::max);
        if s > T::zero() {
            scaled.row_mut(i).iter_mut().for_each(|v| *v /= s);
            rhs[i] /= s;
        }
    }

    if !system.is_square() {
        let coeffs = least_squares(&scaled, &rhs)?;
        let relative_residual = relative_residual(system, &coeffs);
        return Ok(SystemSolution {
            coeffs,
            condition: f64::NAN,
            relative_residual,
            refinement_steps: 0,
        });
    }

    let lu = Lu::factor(scaled.clone())?;
    let condition = lu.condition_estimate().as_f64();
    let mut coeffs = lu.solve(&rhs);
    if coeffs.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular {
            condition,
            reason: "solution is not finite".into(),
        });
    }
    let target = 1e-8f64.max(T::epsilon().as_f64() * 1e4);
    let mut steps = 0;
    let mut residual = relative_residual(system, &coeffs);
    while steps < MAX_REFINEMENT_STEPS && residual > target {
        let r: Vec<T> = scaled
            .mul_vec(&coeffs)
            .iter()
            .zip(&rhs)
            .map(|(&ax, &b)| b - ax)
            .collect();
        let correction = lu.solve(&r);
        let candidate: Vec<T> = coeffs.iter().zip(&correction).map(|(&a, &c)| a + c).collect();
        let cand_res = relative_residual(system, &candidate);
        steps += 1;
        if !(cand_res < residual) {
            break;
        }
        coeffs = candidate;
        residual = cand_res;
    }
    Ok(SystemSolution {
        coeffs,
        condition,
        relative_residual: residual,
        refinement_steps: steps,
    })
}

fn relative_residual<T: Scalar>(system: &LinearSystem<T>, coeffs: &[T]) -> f64 {
    let ax = system.matrix.mul_vec(coeffs);
    let r2: T = ax.iter().zip(&system.rhs).map(|(&a, &b)| (a - b) * (a - b)).sum();
    let b2: T = system.rhs.iter().map(|&b| b * b).sum();
    if b2 > T::zero() {
        (r2 / b2).sqrt().as_f64()
    } else {
        r2.sqrt().as_f64()
    }
}

/// Knobs of the end-to-end pipeline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Curve samples used for relocation; `None` picks the default heuristic.
    pub curve_samples: Option<usize>,
    pub exterior: ExteriorPolicy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveDiagnostics {
    pub n: usize,
    pub stretch: Vec<f64>,
    pub rows: usize,
    pub unknowns: usize,
    pub condition: f64,
    pub relative_residual: f64,
    pub refinement_steps: usize,
    pub relocation: Option<RelocationReport>,
}

/// Solved expansion `u_n = Σ a_j w_j`, evaluable anywhere in the extended box.
#[derive(Clone, Debug)]
pub struct SpectralSolution<T> {
    pub basis: BasisSet<T>,
    pub coeffs: Vec<T>,
    pub grid: CollocationGrid<T>,
    pub curve: Option<BoundaryCurve<T>>,
    pub diagnostics: SolveDiagnostics,
}

impl<T: Scalar> SpectralSolution<T> {
    pub fn value(&self, x: &[T]) -> Result<T> {
        self.basis.expansion_value(&self.coeffs, x)
    }

    pub fn gradient(&self, x: &[T]) -> Result<Vec<T>> {
        match self.basis.eval_expansion(&self.coeffs, x, EvalMode::Gradient)? {
            Evaluation::Gradient(g) => Ok(g),
            _ => unreachable!(),
        }
    }

    pub fn laplacian(&self, x: &[T]) -> Result<T> {
        match self.basis.eval_expansion(&self.coeffs, x, EvalMode::Laplacian)? {
            Evaluation::Laplacian(v) => Ok(v),
            _ => unreachable!(),
        }
    }

    pub fn rect(&self) -> &ExtendedRectangle<T> {
        self.basis.rect()
    }
}

/// Uniform grid → (classify → relocate) → assemble → solve.
pub fn solve_problem<T: Scalar>(
    problem: &ProblemSpec<T>,
    rect: &ExtendedRectangle<T>,
    n: usize,
    curve: Option<&BoundaryCurve<T>>,
    options: SolveOptions,
) -> Result<SpectralSolution<T>> {
    let basis = BasisSet::new(rect.clone(), n)?;
    let mut grid = CollocationGrid::uniform(rect, n)?;
    if let Some(curve) = curve {
        grid = grid.classify(curve)?.relocate(curve, options.curve_samples)?;
    }
    let system = assemble(problem, &basis, &grid, options.exterior)?;
    let solved = solve(&system)?;
    let diagnostics = SolveDiagnostics {
        n,
        stretch: rect.stretch().iter().map(|s| s.as_f64()).collect(),
        rows: system.matrix.rows(),
        unknowns: system.matrix.cols(),
        condition: solved.condition,
        relative_residual: solved.relative_residual,
        refinement_steps: solved.refinement_steps,
        relocation: grid.relocation_report().cloned(),
    };
    Ok(SpectralSolution {
        basis,
        coeffs: solved.coeffs,
        grid,
        curve: curve.cloned(),
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(v: f64) -> ScalarField<f64> {
        Arc::new(move |_: &[f64]| v)
    }

    #[test]
    fn one_dimensional_structure() {
        let rect = ExtendedRectangle::new(vec![1.0], vec![0.5]).unwrap();
        let basis = BasisSet::new(rect.clone(), 4).unwrap();
        let grid = CollocationGrid::uniform(&rect, 4).unwrap();
        let sys = assemble(&ProblemSpec::poisson(constant(1.0), constant(0.0)), &basis, &grid, ExteriorPolicy::Keep)
            .unwrap();
        assert_eq!((sys.matrix.rows(), sys.matrix.cols()), (4, 4));
        let kinds: Vec<RowKind> = sys.row_meta.iter().map(|m| m.kind).collect();
        assert_eq!(kinds, vec![RowKind::Boundary, RowKind::Pde, RowKind::Pde, RowKind::Boundary]);
    }

    #[test]
    fn mismatched_basis_and_grid() {
        let rect = ExtendedRectangle::new(vec![1.0], vec![0.5]).unwrap();
        let other = ExtendedRectangle::new(vec![1.0], vec![0.25]).unwrap();
        let p = ProblemSpec::poisson(constant(1.0), constant(0.0));
        let basis = BasisSet::new(rect.clone(), 5).unwrap();
        let grid4 = CollocationGrid::uniform(&rect, 4).unwrap();
        let grid_other = CollocationGrid::uniform(&other, 5).unwrap();
        assert!(matches!(assemble(&p, &basis, &grid4, ExteriorPolicy::Keep), Err(Error::Contract(_))));
        assert!(matches!(assemble(&p, &basis, &grid_other, ExteriorPolicy::Keep), Err(Error::Contract(_))));
    }

    #[test]
    fn identity_system_solves_to_rhs() {
        let sys = LinearSystem {
            matrix: Matrix::<f64>::identity(3),
            rhs: vec![1.0, 2.0, 3.0],
            row_meta: vec![],
            col_meta: vec![],
        };
        let s = solve(&sys).unwrap();
        assert_eq!(s.coeffs, vec![1.0, 2.0, 3.0]);
        assert!(s.relative_residual < 1e-16);
    }

    #[test]
    fn singular_system_fails_explicitly() {
        let sys = LinearSystem {
            matrix: Matrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap(),
            rhs: vec![1.0, 2.0],
            row_meta: vec![],
            col_meta: vec![],
        };
        assert!(matches!(solve(&sys), Err(Error::Singular { .. })));
    }

    #[test]
    fn zero_data_gives_zero_coefficients() {
        let rect = ExtendedRectangle::with_uniform_stretch(vec![1.0, 1.0], 1.0).unwrap();
        let sol = solve_problem(
            &ProblemSpec::poisson(constant(0.0), constant(0.0)),
            &rect,
            8,
            None,
            SolveOptions::default(),
        )
        .unwrap();
        assert!(sol.coeffs.iter().all(|a| a.abs() <= 1e-10));
    }
}
