//! Spectral collocation for elliptic PDEs on a stretched Laplacian sine
//! eigenbasis.
//!
//! The basis functions are the Dirichlet eigenfunctions of a box `R` that
//! extends the computational box `R₀ = (0, L₁) × (0, L₂)` by a margin `δ` on
//! every side. Collocating on the uniform lattice of `R₀` yields a square
//! dense system; irregular domains are handled by moving lattice points
//! next to the boundary curve onto it.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix `f64`.
//!
//! ```
//! use std::sync::Arc;
//! use stretched_eigenbasis::{solve_problem, Problem, Rect, SolveOptions};
//!
//! // -Δu = 2π² sin(πx) sin(πy) on the unit square, u = 0 on the boundary
//! let pi = std::f64::consts::PI;
//! let p = Problem::poisson(
//!     Arc::new(move |x: &[f64]| 2.0 * pi * pi * (pi * x[0]).sin() * (pi * x[1]).sin()),
//!     Arc::new(|_: &[f64]| 0.0),
//! );
//! let rect = Rect::with_uniform_stretch(vec![1.0, 1.0], 1.0).unwrap();
//! let u = solve_problem(&p, &rect, 16, None, SolveOptions::default()).unwrap();
//! assert!((u.value(&[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-8);
//! ```

pub mod analysis;
pub mod assembly;
pub mod eigenbasis;
mod error;
pub mod expr;
pub mod geometry;
pub mod linalg;
pub mod problems;
pub mod quadrature;
mod scalar;

pub use assembly::{
    assemble, solve, solve_problem, ExteriorPolicy, ProblemKind, ProblemSpec, SolveDiagnostics, SolveOptions,
    SpectralSolution,
};
pub use eigenbasis::{BasisSet, EvalMode, Evaluation, ExtendedRectangle};
pub use error::{Error, Result};
pub use geometry::{BoundaryCurve, CollocationGrid, PointTag};
pub use scalar::Scalar;

pub type Rect = ExtendedRectangle<f64>;
pub type Basis = BasisSet<f64>;
pub type Grid = CollocationGrid<f64>;
pub type Curve = BoundaryCurve<f64>;
pub type Problem = ProblemSpec<f64>;
pub type Solution = SpectralSolution<f64>;
pub type System = assembly::LinearSystem<f64>;
pub type Nodes = analysis::NodeSet1D<f64>;
pub type Entry = problems::CatalogEntry<f64>;
