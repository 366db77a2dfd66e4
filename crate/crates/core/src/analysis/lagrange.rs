//! Cardinal functions of 1D sine interpolation on the stretched interval.
//!
//! With `ℓ = L + 2δ`, `z = x + δ` and `θ = πz/ℓ`, the span of
//! `sin(jθ)`, `j = 1..N`, is `sin θ · P(cos θ)` with `deg P < N`, so the
//! cardinal function of node `z_j` is
//!
//! ```text
//!            sin θ  Π_{k≠j} (cos θ − cos θ_k)
//! l_j(z) = ─────────────────────────────────────
//!           sin θ_j Π_{k≠j} (cos θ_j − cos θ_k)
//! ```

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{contract, domain, Result};
use crate::Scalar;

/// Default number of samples used to maximize the Lebesgue function.
pub const DEFAULT_LEBESGUE_RESOLUTION: usize = 100_000;

/// Interpolation nodes in shifted coordinates `z = x + δ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeSet1D<T> {
    nodes: Vec<T>,
    length: T,
    stretch: T,
}

impl<T: Scalar> NodeSet1D<T> {
    /// Nodes given in physical coordinates `x ∈ [0, L]`.
    pub fn from_physical(xs: &[T], length: T, stretch: T) -> Result<Self> {
        Self::from_shifted(xs.iter().map(|&x| x + stretch).collect(), length, stretch)
    }

    pub fn from_shifted(nodes: Vec<T>, length: T, stretch: T) -> Result<Self> {
        if !(length > T::zero()) || !(stretch >= T::zero()) {
            return Err(domain("need L > 0 and δ ≥ 0"));
        }
        if nodes.is_empty() {
            return Err(contract("empty node set"));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(contract("nodes must be strictly increasing (coincident nodes?)"));
        }
        let ell = length + stretch + stretch;
        if nodes[0] <= T::zero() || nodes[nodes.len() - 1] >= ell {
            return Err(contract("nodes must lie strictly inside (0, L + 2δ) in shifted coordinates"));
        }
        Ok(Self { nodes, length, stretch })
    }

    /// The uniform lattice `x_j = (j−1) L/(N−1)`.
    pub fn uniform(count: usize, length: T, stretch: T) -> Result<Self> {
        if count < 2 {
            return Err(contract("need at least two nodes"));
        }
        let denom = T::from_usize_lossy(count - 1);
        let xs: Vec<T> = (0..count).map(|j| T::from_usize_lossy(j) * length / denom).collect();
        Self::from_physical(&xs, length, stretch)
    }

    /// Uniform lattice with every interior node moved by a uniform random
    /// offset of at most `h/2`, `h = L/(N−1)`.
    pub fn perturbed_uniform<R: Rng>(count: usize, length: T, stretch: T, rng: &mut R) -> Result<Self> {
        let base = Self::uniform(count, length, stretch)?;
        let h = length / T::from_usize_lossy(count - 1);
        let mut nodes = base.nodes.clone();
        for z in nodes.iter_mut().take(count - 1).skip(1) {
            let u: f64 = rng.gen_range(-0.5..=0.5);
            *z += T::lit(u) * h;
        }
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Self::from_shifted(nodes, length, stretch)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn shifted(&self) -> &[T] {
        &self.nodes
    }

    pub fn physical(&self) -> Vec<T> {
        self.nodes.iter().map(|&z| z - self.stretch).collect()
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn stretch(&self) -> T {
        self.stretch
    }

    pub fn extended_length(&self) -> T {
        self.length + self.stretch + self.stretch
    }

    fn angle(&self, z: T) -> T {
        T::PI() * z / self.extended_length()
    }

    fn check_z(&self, z: T) -> Result<()> {
        let slack = T::epsilon() * T::lit(64.0) * self.extended_length();
        if z < -slack || z > self.extended_length() + slack {
            return Err(domain(format!(
                "z = {} outside [0, L + 2δ] = [0, {}]",
                z,
                self.extended_length()
            )));
        }
        Ok(())
    }

    /// Precomputed `cos θ_k` and denominators for fast repeated evaluation.
    pub fn cardinals(&self) -> Cardinals<'_, T> {
        let cos: Vec<T> = self.nodes.iter().map(|&z| self.angle(z).cos()).collect();
        let denominators = (0..self.len())
            .map(|j| {
                let prod = (0..self.len())
                    .filter(|&k| k != j)
                    .fold(T::one(), |acc, k| acc * (cos[j] - cos[k]));
                self.angle(self.nodes[j]).sin() * prod
            })
            .collect();
        Cardinals {
            set: self,
            cos,
            denominators,
        }
    }
}

/// Cached cardinal-function data for one node set.
pub struct Cardinals<'a, T> {
    set: &'a NodeSet1D<T>,
    cos: Vec<T>,
    denominators: Vec<T>,
}

impl<T: Scalar> Cardinals<'_, T> {
    /// `l_j(z)` by the direct product (zero-based `j`). Exact at the nodes.
    pub fn cardinal(&self, j: usize, z: T) -> T {
        if let Some(k) = self.set.nodes.iter().position(|&zk| zk == z) {
            return if k == j { T::one() } else { T::zero() };
        }
        let theta = self.set.angle(z);
        let c = theta.cos();
        let num = (0..self.cos.len())
            .filter(|&k| k != j)
            .fold(theta.sin(), |acc, k| acc * (c - self.cos[k]));
        num / self.denominators[j]
    }

    /// `Σ_j |l_j(z)|` in O(N).
    pub fn lebesgue(&self, z: T) -> T {
        let theta = self.set.angle(z);
        let c = theta.cos();
        let s = theta.sin();
        if self.cos.iter().any(|&ck| c == ck) || self.set.nodes.contains(&z) {
            return (0..self.cos.len()).map(|j| self.cardinal(j, z).abs()).sum();
        }
        let full = self.cos.iter().fold(s, |acc, &ck| acc * (c - ck));
        self.cos
            .iter()
            .zip(&self.denominators)
            .map(|(&ck, &d)| (full / ((c - ck) * d)).abs())
            .sum()
    }
}

/// Cardinal function `l_j(z)` of the node set (one-based `j`), `z` shifted.
pub fn lagrange_1d<T: Scalar>(nodes: &NodeSet1D<T>, j: usize, z: T) -> Result<T> {
    if j < 1 || j > nodes.len() {
        return Err(contract(format!("cardinal index {j} outside 1..={}", nodes.len())));
    }
    nodes.check_z(z)?;
    Ok(nodes.cardinals().cardinal(j - 1, z))
}

/// Lebesgue function `Σ_j |l_j(z)|`, `z` shifted.
pub fn lebesgue_function<T: Scalar>(nodes: &NodeSet1D<T>, z: T) -> Result<T> {
    nodes.check_z(z)?;
    Ok(nodes.cardinals().lebesgue(z))
}

/// Maximum of the Lebesgue function over `resolution` uniform samples of
/// the physical interval `z ∈ [δ, L + δ]`.
pub fn lebesgue_constant<T: Scalar>(nodes: &NodeSet1D<T>, resolution: usize) -> Result<T> {
    if resolution < 1000 {
        return Err(contract(format!("resolution must be at least 1000, got {resolution}")));
    }
    let cards = nodes.cardinals();
    let delta = nodes.stretch();
    let step = nodes.length() / T::from_usize_lossy(resolution - 1);
    let max = (0..resolution)
        .into_par_iter()
        .with_min_len(1024)
        .map(|i| cards.lebesgue(delta + T::from_usize_lossy(i) * step))
        .reduce(|| T::zero(), T::max);
    Ok(max)
}

/// `2N cot(δπ/(L+2δ))`; infinite (an error) at `δ = 0`.
pub fn theorem1_bound<T: Scalar>(count: usize, stretch: T, length: T) -> Result<T> {
    if !(stretch > T::zero()) {
        return Err(domain("the Lebesgue bound is infinite for δ = 0"));
    }
    if !(length > T::zero()) {
        return Err(domain("need L > 0"));
    }
    let angle = stretch * T::PI() / (length + stretch + stretch);
    Ok(T::lit(2.0) * T::from_usize_lossy(count) / angle.tan())
}
