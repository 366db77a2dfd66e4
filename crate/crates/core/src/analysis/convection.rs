//! Cardinal functions and Lebesgue constants for the convection–diffusion
//! operator in one dimension.
//!
//! Two spans are exposed. The ψ route uses the phase-shifted sines
//! `ψ_j(x) = √(2/ℓ) sin(jπ(x+δ)/ℓ + θ_j(x))`,
//! `θ_j = asin(1/√(1+(jπ/k)²))`, exactly as written. The direct-row route
//! uses the collocation rows `φ_j = λ_j w_j + k w_j'` that the solver
//! actually inverts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lagrange::{lebesgue_constant, theorem1_bound, NodeSet1D};
use crate::error::{contract, domain, Error, Result};
use crate::linalg::{Lu, Matrix};
use crate::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CdRoute {
    /// Phase-shifted sines `ψ_j`.
    #[default]
    Psi,
    /// Collocation rows `λ_j w_j + k w_j'`.
    DirectRow,
}

/// Phase `θ_j(x)` for the local convection speed `k`.
pub fn psi_phase<T: Scalar>(j: usize, k: T) -> T {
    if k == T::zero() {
        return T::zero();
    }
    let r = T::from_usize_lossy(j) * T::PI() / k;
    (T::one() / (T::one() + r * r).sqrt()).asin()
}

fn check_interval<T: Scalar>(x: T, length: T, stretch: T) -> Result<()> {
    let slack = T::epsilon() * T::lit(64.0) * (length + stretch + stretch);
    if x < -stretch - slack || x > length + stretch + slack {
        return Err(domain(format!("x = {x} outside the extended interval [{}, {}]", -stretch, length + stretch)));
    }
    Ok(())
}

/// `ψ_j(x)` for a convection speed field `k` (physical `x`, one-based `j`).
pub fn psi_basis<T: Scalar>(j: usize, x: T, k: &dyn Fn(T) -> T, length: T, stretch: T) -> Result<T> {
    if j == 0 {
        return Err(contract("basis index is one-based"));
    }
    check_interval(x, length, stretch)?;
    Ok(psi_value(j, x, k(x), length, stretch))
}

fn psi_value<T: Scalar>(j: usize, x: T, k: T, length: T, stretch: T) -> T {
    let ell = length + stretch + stretch;
    let arg = T::from_usize_lossy(j) * T::PI() * (x + stretch) / ell + psi_phase(j, k);
    (T::lit(2.0) / ell).sqrt() * arg.sin()
}

fn direct_row_value<T: Scalar>(j: usize, x: T, k: T, length: T, stretch: T) -> T {
    let ell = length + stretch + stretch;
    let freq = T::from_usize_lossy(j) * T::PI() / ell;
    let amp = (T::lit(2.0) / ell).sqrt();
    let arg = freq * (x + stretch);
    amp * (freq * freq * arg.sin() + k * freq * arg.cos())
}

/// Cardinal basis of one node set and one convection field, factored once.
pub struct CdCardinals<'a, T> {
    nodes: &'a NodeSet1D<T>,
    k: &'a (dyn Fn(T) -> T + Sync),
    route: CdRoute,
    /// `inverse[i][j]`: coefficient of basis `i` in cardinal `j`.
    inverse: Matrix<T>,
    condition: f64,
}

impl<'a, T: Scalar> CdCardinals<'a, T> {
    /// Factors `Ψᵀ` (rows = nodes) and solves `Ψᵀ c = e_j` for every `j`.
    pub fn new(nodes: &'a NodeSet1D<T>, k: &'a (dyn Fn(T) -> T + Sync), route: CdRoute) -> Result<Self> {
        let n = nodes.len();
        let xs = nodes.physical();
        let node_matrix = Matrix::from_fn(n, n, |m, i| {
            basis_value(route, i + 1, xs[m], k(xs[m]), nodes.length(), nodes.stretch())
        });
        let lu = match Lu::factor(node_matrix) {
            Ok(lu) => lu,
            Err(Error::Singular { reason, .. }) => {
                return Err(Error::Singular {
                    condition: f64::INFINITY,
                    reason: format!("cardinal system: {reason}"),
                })
            }
            Err(e) => return Err(e),
        };
        let condition = lu.condition_estimate().as_f64();
        let mut inverse = Matrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            let c = lu.solve(&e);
            if c.iter().any(|v| !v.is_finite()) {
                return Err(Error::Singular {
                    condition,
                    reason: "cardinal coefficients are not finite".into(),
                });
            }
            for (i, &ci) in c.iter().enumerate() {
                inverse.row_mut(i)[j] = ci;
            }
        }
        Ok(Self {
            nodes,
            k,
            route,
            inverse,
            condition,
        })
    }

    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Coefficients `c` of cardinal `j` (zero-based): `l_j = Σ_i c_i ψ_i`.
    pub fn coefficients(&self, j: usize) -> Vec<T> {
        (0..self.len()).map(|i| self.inverse[(i, j)]).collect()
    }

    fn basis_row(&self, x: T) -> Vec<T> {
        let kx = (self.k)(x);
        (1..=self.len())
            .map(|i| basis_value(self.route, i, x, kx, self.nodes.length(), self.nodes.stretch()))
            .collect()
    }

    /// All cardinal functions at physical `x`.
    pub fn values(&self, x: T) -> Vec<T> {
        let b = self.basis_row(x);
        let n = self.len();
        let mut out = vec![T::zero(); n];
        for (i, &bi) in b.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate().take(n) {
                *o += self.inverse[(i, j)] * bi;
            }
        }
        out
    }

    pub fn lebesgue(&self, x: T) -> T {
        self.values(x).iter().map(|v| v.abs()).sum()
    }

    /// `Σ_j Σ_i |det Ψ_ji| / |det Ψ|`, i.e. the entrywise 1-norm of `Ψ⁻¹`.
    /// Multiplying by `sup |ψ_i|` turns it into a rigorous bound on `Λ_N`.
    pub fn cofactor_sum(&self) -> T {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.inverse[(i, j)].abs())
            .sum()
    }

    /// Same sum with every term weighted by the true amplitude of basis `i`
    /// (constant `k` only; the ψ amplitude is `√(2/ℓ)`).
    pub fn weighted_cofactor_sum(&self, k: T) -> T {
        let n = self.len();
        let ell = self.nodes.extended_length();
        let amp = (T::lit(2.0) / ell).sqrt();
        (0..n)
            .map(|i| {
                let freq = T::from_usize_lossy(i + 1) * T::PI() / ell;
                let sup = match self.route {
                    CdRoute::Psi => amp,
                    CdRoute::DirectRow => amp * freq * (freq * freq + k * k).sqrt(),
                };
                sup * (0..n).map(|j| self.inverse[(i, j)].abs()).sum::<T>()
            })
            .sum()
    }
}

fn basis_value<T: Scalar>(route: CdRoute, j: usize, x: T, k: T, length: T, stretch: T) -> T {
    match route {
        CdRoute::Psi => psi_value(j, x, k, length, stretch),
        CdRoute::DirectRow => direct_row_value(j, x, k, length, stretch),
    }
}

/// Cardinal function `l_j(x)` (one-based `j`, physical `x`) of the
/// convection–diffusion span.
pub fn cd_cardinal<T: Scalar>(
    nodes: &NodeSet1D<T>,
    k: &(dyn Fn(T) -> T + Sync),
    j: usize,
    x: T,
    route: CdRoute,
) -> Result<T> {
    if j < 1 || j > nodes.len() {
        return Err(contract(format!("cardinal index {j} outside 1..={}", nodes.len())));
    }
    check_interval(x, nodes.length(), nodes.stretch())?;
    let cards = CdCardinals::new(nodes, k, route)?;
    Ok(cards.values(x)[j - 1])
}

/// Sampled `max Σ_j |l_j(x)|` over `resolution` points of `[0, L]`.
pub fn cd_lebesgue_constant<T: Scalar>(cards: &CdCardinals<'_, T>, resolution: usize) -> Result<T> {
    if resolution < 1000 {
        return Err(contract(format!("resolution must be at least 1000, got {resolution}")));
    }
    let length = cards.nodes.length();
    let step = length / T::from_usize_lossy(resolution - 1);
    Ok((0..resolution)
        .into_par_iter()
        .with_min_len(256)
        .map(|i| cards.lebesgue(T::from_usize_lossy(i) * step))
        .reduce(|| T::zero(), T::max))
}

/// One `(N, k)` cell of a Lebesgue sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LebesgueCell {
    pub n: usize,
    pub k: f64,
    pub delta: f64,
    pub length: f64,
    /// Sampled Lebesgue constant.
    pub lambda: Option<f64>,
    /// Cofactor sum as stated, assuming `|ψ_i| ≤ 1`.
    pub cofactor_bound: Option<f64>,
    /// Cofactor sum weighted by the true basis amplitudes.
    pub cofactor_bound_scaled: Option<f64>,
    /// `2N cot(δπ/(L+2δ))`, `None` when infinite.
    pub theorem1_bound: Option<f64>,
    pub condition: Option<f64>,
    pub error: Option<String>,
}

/// Parameters of a sweep over node counts and constant convection speeds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_values: Vec<usize>,
    pub k_values: Vec<f64>,
    pub delta: f64,
    pub length: f64,
    pub resolution: usize,
    pub route: CdRoute,
}

/// Λ_N for every `(N, k)` with uniform nodes. `k = 0` uses the closed-form
/// sine cardinals. Failed cells carry their reason; the sweep continues.
pub fn cd_lebesgue_sweep<T: Scalar>(config: &SweepConfig) -> Vec<LebesgueCell> {
    let cells: Vec<(usize, f64)> = config
        .n_values
        .iter()
        .flat_map(|&n| config.k_values.iter().map(move |&k| (n, k)))
        .collect();
    cells
        .par_iter()
        .map(|&(n, k)| {
            let mut cell = LebesgueCell {
                n,
                k,
                delta: config.delta,
                length: config.length,
                lambda: None,
                cofactor_bound: None,
                cofactor_bound_scaled: None,
                theorem1_bound: theorem1_bound(n, config.delta, config.length).ok(),
                condition: None,
                error: None,
            };
            if let Err(e) = sweep_cell::<T>(config, n, k, &mut cell) {
                cell.error = Some(e.to_string());
            }
            cell
        })
        .collect()
}

fn sweep_cell<T: Scalar>(config: &SweepConfig, n: usize, k: f64, cell: &mut LebesgueCell) -> Result<()> {
    let nodes = NodeSet1D::<T>::uniform(n, T::lit(config.length), T::lit(config.delta))?;
    let kt = T::lit(k);
    let field = move |_: T| kt;
    let cards = CdCardinals::new(&nodes, &field, config.route)?;
    cell.condition = Some(cards.condition());
    cell.cofactor_bound = Some(cards.cofactor_sum().as_f64());
    cell.cofactor_bound_scaled = Some(cards.weighted_cofactor_sum(kt).as_f64());
    let lambda = if k == 0.0 && config.route == CdRoute::Psi {
        lebesgue_constant(&nodes, config.resolution)?
    } else {
        cd_lebesgue_constant(&cards, config.resolution)?
    };
    cell.lambda = Some(lambda.as_f64());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::lagrange_1d;
    use approx::assert_relative_eq;

    #[test]
    fn phase_plug_in() {
        let th: f64 = psi_phase(1, 1.0);
        let s = 1.0 / (1.0 + std::f64::consts::PI.powi(2)).sqrt();
        assert_relative_eq!(s, 0.30332, epsilon = 1e-5);
        // asin(1/√(1+r²)) = atan(1/r)
        assert_relative_eq!(th, (1.0 / std::f64::consts::PI).atan(), max_relative = 1e-14);
        assert_relative_eq!(th, 0.3082, epsilon = 5e-5);
        assert_eq!(psi_phase(3, 0.0), 0.0);
    }

    #[test]
    fn zero_speed_gives_the_sine_basis() {
        let zero = |_: f64| 0.0;
        let (l, d) = (1.0, 2.0);
        let ell: f64 = l + 2.0 * d;
        for j in 1..5 {
            for &x in &[-2.0, -0.3, 0.0, 0.4, 1.0, 3.0] {
                let w = (2.0 / ell).sqrt() * (j as f64 * std::f64::consts::PI * (x + d) / ell).sin();
                assert_eq!(psi_basis(j, x, &zero, l, d).unwrap(), w);
            }
        }
        assert!(psi_basis(1, 3.5, &zero, l, d).is_err());
    }

    #[test]
    fn cardinality_on_both_routes() {
        let nodes = NodeSet1D::uniform(9, 1.0, 1.0).unwrap();
        let k = |x: f64| 3.0 + x;
        for route in [CdRoute::Psi, CdRoute::DirectRow] {
            let cards = CdCardinals::new(&nodes, &k, route).unwrap();
            for (m, &x) in nodes.physical().iter().enumerate() {
                for (j, v) in cards.values(x).into_iter().enumerate() {
                    let expected = if j == m { 1.0 } else { 0.0 };
                    assert!((v - expected).abs() < 1e-8, "{route:?} l_{j}(x_{m}) = {v}");
                }
            }
        }
    }

    #[test]
    fn zero_speed_matches_sine_cardinals() {
        let nodes = NodeSet1D::uniform(6, 1.0, 1.0).unwrap();
        let zero = |_: f64| 0.0;
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            for j in 1..=6 {
                let a = cd_cardinal(&nodes, &zero, j, x, CdRoute::Psi).unwrap();
                let b = lagrange_1d(&nodes, j, x + 1.0).unwrap();
                assert!((a - b).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn sweep_records_every_cell() {
        let config = SweepConfig {
            n_values: vec![4, 6],
            k_values: vec![0.0, 10.0],
            delta: 2.01,
            length: 1.0,
            resolution: 1000,
            route: CdRoute::Psi,
        };
        let table = cd_lebesgue_sweep::<f64>(&config);
        assert_eq!(table.len(), 4);
        for cell in &table {
            assert!(cell.error.is_none());
            let lambda = cell.lambda.unwrap();
            assert!(lambda >= 1.0 - 1e-12 && lambda.is_finite());
            assert!(lambda <= cell.cofactor_bound_scaled.unwrap() * (1.0 + 1e-12));
        }
    }
}
