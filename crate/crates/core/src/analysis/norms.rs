//! Discrete error norms on a uniform evaluation lattice.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assembly::{ScalarField, SpectralSolution};
use crate::error::{contract, Result};
use crate::Scalar;

/// Default evaluation lattice is `DEFAULT_NORM_RESOLUTION²`.
pub const DEFAULT_NORM_RESOLUTION: usize = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// Lattice points inside the boundary curve (the whole box if there is none).
    #[default]
    Omega,
    /// The whole computational box `R₀`.
    Rect,
}

/// One lattice sample: the numerical and exact values and whether the point
/// counts towards the norms.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSample<T> {
    pub index: [usize; 2],
    pub x: [T; 2],
    pub u: T,
    pub exact: T,
    pub in_region: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorNorms {
    pub l2: f64,
    pub linf: f64,
    /// Lattice points inside the region.
    pub points: usize,
    /// Area (length in 1D) weight attached to each point.
    pub cell_area: f64,
}

/// Evaluates `solution` and `exact` on a `resolution^d` lattice over `R₀`.
pub fn sample_lattice<T: Scalar>(
    solution: &SpectralSolution<T>,
    exact: &ScalarField<T>,
    region: Region,
    resolution: usize,
) -> Result<Vec<LatticeSample<T>>> {
    if resolution < 2 {
        return Err(contract("norm resolution must be at least 2"));
    }
    let rect = solution.rect();
    let d = rect.dim();
    let step: Vec<T> = rect
        .lengths()
        .iter()
        .map(|&l| l / T::from_usize_lossy(resolution - 1))
        .collect();
    let count = if d == 1 { resolution } else { resolution * resolution };
    (0..count)
        .into_par_iter()
        .map(|flat| {
            let index = if d == 1 { [flat, 0] } else { [flat / resolution, flat % resolution] };
            let mut x = [T::zero(); 2];
            for axis in 0..d {
                x[axis] = T::from_usize_lossy(index[axis]) * step[axis];
            }
            let in_region = match (region, &solution.curve) {
                (Region::Omega, Some(curve)) => curve.contains(x),
                _ => true,
            };
            let u = solution.value(&x[..d])?;
            let e = exact(&x[..d]);
            Ok(LatticeSample {
                index,
                x,
                u,
                exact: e,
                in_region,
            })
        })
        .collect()
}

/// Area weight of one lattice point: `Π_k L_k/(resolution−1)`.
pub fn cell_area<T: Scalar>(lengths: &[T], resolution: usize) -> f64 {
    lengths
        .iter()
        .map(|&l| l.as_f64() / (resolution - 1) as f64)
        .product()
}

/// `L∞ = max |u − u_e|` and `L² = √(cell_area · Σ (u − u_e)²)` over the
/// samples marked in-region, summed in lattice order.
pub fn norms_from_samples(samples: impl IntoIterator<Item = (f64, f64, bool)>, cell_area: f64) -> Result<ErrorNorms> {
    let mut sum = 0.0f64;
    let mut linf = 0.0f64;
    let mut points = 0usize;
    for (u, exact, inside) in samples {
        if !inside {
            continue;
        }
        let e = u - exact;
        sum += e * e;
        linf = linf.max(e.abs());
        points += 1;
    }
    if points == 0 {
        return Err(contract("no evaluation points inside the region"));
    }
    Ok(ErrorNorms {
        l2: (cell_area * sum).sqrt(),
        linf,
        points,
        cell_area,
    })
}

/// Discrete `L²` and `L∞` errors of `solution` against `exact`.
pub fn error_norms<T: Scalar>(
    solution: &SpectralSolution<T>,
    exact: &ScalarField<T>,
    region: Region,
    resolution: usize,
) -> Result<ErrorNorms> {
    let samples = sample_lattice(solution, exact, region, resolution)?;
    norms_from_samples(
        samples.iter().map(|s| (s.u.as_f64(), s.exact.as_f64(), s.in_region)),
        cell_area(solution.rect().lengths(), resolution),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{solve_problem, ProblemSpec, SolveOptions};
    use crate::eigenbasis::ExtendedRectangle;
    use std::sync::Arc;

    fn toy() -> SpectralSolution<f64> {
        let rect = ExtendedRectangle::with_uniform_stretch(vec![1.0, 1.0], 1.0).unwrap();
        let p = ProblemSpec::poisson(Arc::new(|_: &[f64]| 1.0), Arc::new(|_: &[f64]| 0.0));
        solve_problem(&p, &rect, 6, None, SolveOptions::default()).unwrap()
    }

    #[test]
    fn own_expansion_has_zero_error() {
        let sol = Arc::new(toy());
        let s2 = sol.clone();
        let exact: ScalarField<f64> = Arc::new(move |x: &[f64]| s2.value(x).unwrap());
        let n = error_norms(&sol, &exact, Region::Rect, 32).unwrap();
        assert_eq!((n.l2, n.linf), (0.0, 0.0));
        assert_eq!(n.points, 32 * 32);
    }

    #[test]
    fn constant_offset_shifts_linf() {
        let sol = Arc::new(toy());
        let s2 = sol.clone();
        let exact: ScalarField<f64> = Arc::new(move |x: &[f64]| s2.value(x).unwrap() + 0.25);
        let n = error_norms(&sol, &exact, Region::Rect, 16).unwrap();
        assert!((n.linf - 0.25).abs() < 1e-15);
        // L² of a constant over the weighted lattice
        assert!((n.l2 - 0.25 * (n.cell_area * 256.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn empty_region_is_a_contract_error() {
        assert!(norms_from_samples(vec![(1.0, 0.0, false)], 1.0).is_err());
    }
}
