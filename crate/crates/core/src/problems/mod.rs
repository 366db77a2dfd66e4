//! Built-in test problems with exact solutions, forcings and boundary curves.
//!
//! All fields are expressed in box coordinates: the inner box is
//! `(0, L₁) × (0, L₂)`. Domains that are naturally centred at the origin are
//! translated by the entry's `offset`.

pub mod curves;
mod user;

use std::sync::Arc;

use serde::Serialize;

use crate::assembly::{ProblemKind, ProblemSpec, ScalarField, VectorField};
use crate::eigenbasis::ExtendedRectangle;
use crate::error::{Error, Result};
use crate::geometry::BoundaryCurve;
use crate::Scalar;

pub use user::{load_user_problem, UserProblem};

/// Ids of the seven built-in families, in catalog order.
pub const FAMILIES: [&str; 7] = [
    "rect_poisson_x2y3",
    "rect_cd_chiu",
    "disk_poisson",
    "fish_poisson",
    "ninja_poisson",
    "ellipse_cd",
    "star_cd",
];

/// Stretch used when an entry is solved without an explicit `δ`.
pub const DEFAULT_STRETCH: f64 = 2.0;

/// Value, gradient and Laplacian of an exact solution.
#[derive(Clone)]
pub struct AnalyticSolution<T> {
    pub value: ScalarField<T>,
    pub gradient: VectorField<T>,
    pub laplacian: ScalarField<T>,
}

/// Tunable parameters of the parametrized families.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProblemParams {
    /// Reynolds number of `rect_cd_chiu`.
    pub reynolds: f64,
    /// Semi-axes of `ellipse_cd`.
    pub ellipse_a: f64,
    pub ellipse_b: f64,
}

impl Default for ProblemParams {
    fn default() -> Self {
        Self {
            reynolds: 10.0,
            ellipse_a: 0.9,
            ellipse_b: 0.6,
        }
    }
}

/// Static metadata of an entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryInfo {
    pub id: String,
    pub description: String,
    /// Inner box lengths.
    pub lengths: Vec<f64>,
    /// Translation from the problem's natural coordinates to box coordinates.
    pub offset: [f64; 2],
    /// Why the box was chosen.
    pub box_note: String,
    /// The experiment this entry backs.
    pub backs: String,
    pub has_exact: bool,
}

/// One catalog problem.
#[derive(Clone)]
pub struct CatalogEntry<T> {
    pub info: EntryInfo,
    pub spec: ProblemSpec<T>,
    pub analytic: Option<AnalyticSolution<T>>,
    pub curve: Option<BoundaryCurve<T>>,
}

impl<T: Scalar> CatalogEntry<T> {
    pub fn id(&self) -> &str {
        &self.info.id
    }

    /// The inner box stretched by `δ` on every side.
    pub fn rect(&self, delta: T) -> Result<ExtendedRectangle<T>> {
        ExtendedRectangle::with_uniform_stretch(self.info.lengths.iter().map(|&l| T::lit(l)).collect(), delta)
    }

    /// `−(1/Re) Δu_e + k·∇u_e − f` at `x`, if the entry has an exact solution.
    pub fn consistency_residual(&self, x: &[T]) -> Option<T> {
        let a = self.analytic.as_ref()?;
        let lhs = self.spec.apply_operator(x, &(a.gradient)(x), (a.laplacian)(x));
        Some(lhs - (self.spec.forcing)(x))
    }
}

/// `f = −(1/Re) Δu_e + k·∇u_e` from the exact solution's derivatives.
pub fn derived_forcing<T: Scalar>(
    kind: ProblemKind,
    reynolds: T,
    velocity: Option<VectorField<T>>,
    exact: &AnalyticSolution<T>,
) -> ScalarField<T> {
    let grad = exact.gradient.clone();
    let lap = exact.laplacian.clone();
    Arc::new(move |x: &[T]| {
        let mut f = -lap(x) / reynolds;
        if let (ProblemKind::ConvectionDiffusion, Some(k)) = (kind, &velocity) {
            let g = grad(x);
            let kv = k(x);
            f += kv[0] * g[0] + kv[1] * g[1];
        }
        f
    })
}

/// Every family with default parameters.
pub fn catalog<T: Scalar>() -> Vec<CatalogEntry<T>> {
    FAMILIES
        .iter()
        .map(|id| lookup(id, &ProblemParams::default()).expect("built-in entries are valid"))
        .collect()
}

/// One family by id.
pub fn lookup<T: Scalar>(id: &str, params: &ProblemParams) -> Result<CatalogEntry<T>> {
    match id {
        "rect_poisson_x2y3" => Ok(rect_poisson_x2y3()),
        "rect_cd_chiu" => rect_cd_chiu(params.reynolds),
        "disk_poisson" => disk_poisson(),
        "fish_poisson" => fish_poisson(),
        "ninja_poisson" => ninja_poisson(),
        "ellipse_cd" => ellipse_cd(params.ellipse_a, params.ellipse_b),
        "star_cd" => star_cd(),
        other => Err(Error::Problem(format!(
            "unknown problem `{other}`; known ids: {}",
            FAMILIES.join(", ")
        ))),
    }
}

fn info(id: &str, description: &str, lengths: [f64; 2], offset: [f64; 2], box_note: &str, backs: &str) -> EntryInfo {
    EntryInfo {
        id: id.into(),
        description: description.into(),
        lengths: lengths.to_vec(),
        offset,
        box_note: box_note.into(),
        backs: backs.into(),
        has_exact: false,
    }
}

fn with_exact<T: Scalar>(mut spec: ProblemSpec<T>, a: &AnalyticSolution<T>) -> ProblemSpec<T> {
    spec.exact = Some(a.value.clone());
    spec
}

fn rect_poisson_x2y3<T: Scalar>() -> CatalogEntry<T> {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let six = T::lit(6.0);
    let analytic = AnalyticSolution::<T> {
        value: Arc::new(|x: &[T]| x[0] * x[0] * x[1].powi(3)),
        gradient: Arc::new(move |x: &[T]| [two * x[0] * x[1].powi(3), three * x[0] * x[0] * x[1] * x[1]]),
        laplacian: Arc::new(move |x: &[T]| two * x[1].powi(3) + six * x[0] * x[0] * x[1]),
    };
    let forcing: ScalarField<T> = Arc::new(move |x: &[T]| -(two * x[1].powi(3) + six * x[0] * x[0] * x[1]));
    let spec = with_exact(ProblemSpec::poisson(forcing, analytic.value.clone()), &analytic);
    let mut info = info(
        "rect_poisson_x2y3",
        "-Δu = -(2y³ + 6x²y) on (0,2)², u = x²y³",
        [2.0, 2.0],
        [0.0, 0.0],
        "the computational domain itself",
        "spectral decay and stretch sensitivity on a rectangle",
    );
    info.has_exact = true;
    CatalogEntry {
        info,
        spec,
        analytic: Some(analytic),
        curve: None,
    }
}

fn rect_cd_chiu<T: Scalar>(reynolds: f64) -> Result<CatalogEntry<T>> {
    if !(reynolds > 0.0) || !reynolds.is_finite() {
        return Err(Error::Problem(format!("Reynolds number must be positive, got {reynolds}")));
    }
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let denom = |x: &[T]| (T::one() + x[0]).powi(2) + (T::one() + x[1]).powi(2);
    // u = −2(1+y)/D, v = 2(1+x)/D with D = (1+x)² + (1+y)²
    let u = move |x: &[T]| -two * (T::one() + x[1]) / denom(x);
    let v = move |x: &[T]| two * (T::one() + x[0]) / denom(x);
    let velocity: VectorField<T> = Arc::new(move |x: &[T]| [u(x), v(x)]);
    let analytic = AnalyticSolution::<T> {
        value: Arc::new(u),
        gradient: Arc::new(move |x: &[T]| {
            let (a, b) = (T::one() + x[0], T::one() + x[1]);
            let d = denom(x);
            [four * a * b / (d * d), two * (b * b - a * a) / (d * d)]
        }),
        // u is harmonic
        laplacian: Arc::new(|_: &[T]| T::zero()),
    };
    // S = −∂p/∂x with p = −2/D
    let forcing: ScalarField<T> = Arc::new(move |x: &[T]| {
        let d = denom(x);
        -four * (T::one() + x[0]) / (d * d)
    });
    let spec = with_exact(
        ProblemSpec::convection_diffusion(forcing, analytic.value.clone(), velocity, T::lit(reynolds)),
        &analytic,
    );
    let mut info = info(
        "rect_cd_chiu",
        &format!("-(1/Re)Δφ + uφ_x + vφ_y = S on (0,1)², φ = u, Re = {reynolds}"),
        [1.0, 1.0],
        [0.0, 0.0],
        "the computational domain itself",
        "convection-diffusion convergence for several Reynolds numbers",
    );
    info.has_exact = true;
    Ok(CatalogEntry {
        info,
        spec,
        analytic: Some(analytic),
        curve: None,
    })
}

fn disk_poisson<T: Scalar>() -> Result<CatalogEntry<T>> {
    let pi = T::PI();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let analytic = AnalyticSolution::<T> {
        value: Arc::new(move |x: &[T]| four - (x[0] - pi).powi(2) - (x[1] - pi).powi(2)),
        gradient: Arc::new(move |x: &[T]| [-two * (x[0] - pi), -two * (x[1] - pi)]),
        laplacian: Arc::new(move |_: &[T]| -four),
    };
    let spec = with_exact(
        ProblemSpec::poisson(Arc::new(move |_: &[T]| four), Arc::new(|_: &[T]| T::zero())),
        &analytic,
    );
    let mut info = info(
        "disk_poisson",
        "-Δu = 4 in the disk of radius 2 about (π,π), u = 0 on the circle",
        [std::f64::consts::TAU, std::f64::consts::TAU],
        [0.0, 0.0],
        "(0,2π)², the square the disk is inscribed in",
        "L∞ error against n on a curved domain",
    );
    info.has_exact = true;
    Ok(CatalogEntry {
        info,
        spec,
        analytic: Some(analytic),
        curve: Some(curves::circle([pi, pi], two)?),
    })
}

fn unit_poisson<T: Scalar>() -> ProblemSpec<T> {
    ProblemSpec::poisson(Arc::new(|_: &[T]| T::one()), Arc::new(|_: &[T]| T::zero()))
}

fn fish_poisson<T: Scalar>() -> Result<CatalogEntry<T>> {
    let offset = [0.6, 1.3];
    Ok(CatalogEntry {
        info: info(
            "fish_poisson",
            "-Δu = 1 inside the fish quartic, u = 0 on it",
            [2.6, 2.6],
            offset,
            "(-0.6,2.0) x (-1.3,1.3): the fish spans x in (-0.35,1.71), |y| < 0.5",
            "self-convergence on a domain with a pinch point",
        ),
        spec: unit_poisson(),
        analytic: None,
        curve: Some(curves::fish([T::lit(offset[0]), T::lit(offset[1])])?),
    })
}

fn ninja_poisson<T: Scalar>() -> Result<CatalogEntry<T>> {
    let c = 2.2;
    Ok(CatalogEntry {
        info: info(
            "ninja_poisson",
            "-Δu = 1 inside r = |cos 3θ|^{sin 6θ}, u = 0 on it",
            [4.4, 4.4],
            [c, c],
            "(-2.2,2.2)²: the curve reaches r ≈ 1.996, so (-1.2,1.2)² would clip it",
            "self-convergence on a domain with cusps",
        ),
        spec: unit_poisson(),
        analytic: None,
        curve: Some(curves::polar("ninja", [T::lit(c), T::lit(c)], curves::ninja_radius::<T>)?),
    })
}

/// Constant velocity `(−1, −1)`, i.e. the operator `−Δu − u_x − u_y`.
fn lui_velocity<T: Scalar>() -> VectorField<T> {
    Arc::new(|_: &[T]| [-T::one(), -T::one()])
}

const CENTRED_BOX: f64 = 1.2;

fn ellipse_cd<T: Scalar>(a: f64, b: f64) -> Result<CatalogEntry<T>> {
    if !(a > 0.0 && b > 0.0 && a < CENTRED_BOX && b < CENTRED_BOX) {
        return Err(Error::Problem(format!(
            "ellipse semi-axes must lie in (0, {CENTRED_BOX}), got a = {a}, b = {b}"
        )));
    }
    let c = T::lit(CENTRED_BOX);
    let (at, bt) = (T::lit(a), T::lit(b));
    let half_pi = T::FRAC_PI_2();
    let pi = T::PI();
    let gamma = move |x: &[T]| {
        let (px, py) = (x[0] - c, x[1] - c);
        px * px / (at * at) + py * py / (bt * bt) - T::one()
    };
    let analytic = AnalyticSolution::<T> {
        value: Arc::new(move |x: &[T]| (half_pi * gamma(x)).sin()),
        gradient: Arc::new(move |x: &[T]| {
            let k = (half_pi * gamma(x)).cos() * pi;
            [k * (x[0] - c) / (at * at), k * (x[1] - c) / (bt * bt)]
        }),
        laplacian: Arc::new(move |x: &[T]| {
            let g = half_pi * gamma(x);
            let (px, py) = ((x[0] - c) / (at * at), (x[1] - c) / (bt * bt));
            pi * g.cos() * (T::one() / (at * at) + T::one() / (bt * bt)) - pi * pi * g.sin() * (px * px + py * py)
        }),
    };
    let velocity = lui_velocity::<T>();
    let forcing = derived_forcing(ProblemKind::ConvectionDiffusion, T::one(), Some(velocity.clone()), &analytic);
    let spec = with_exact(
        ProblemSpec::convection_diffusion(forcing, analytic.value.clone(), velocity, T::one()),
        &analytic,
    );
    let mut info = info(
        "ellipse_cd",
        &format!("-Δu - u_x - u_y = f inside x²/{a}² + y²/{b}² < 1, u = sin(πΓ/2)"),
        [2.0 * CENTRED_BOX, 2.0 * CENTRED_BOX],
        [CENTRED_BOX, CENTRED_BOX],
        "(-1.2,1.2)² translated to (0,2.4)²",
        "convection-diffusion accuracy on an ellipse",
    );
    info.has_exact = true;
    Ok(CatalogEntry {
        info,
        spec,
        analytic: Some(analytic),
        curve: Some(curves::ellipse([c, c], at, bt)?),
    })
}

fn star_cd<T: Scalar>() -> Result<CatalogEntry<T>> {
    let c = T::lit(CENTRED_BOX);
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let r2 = move |x: &[T]| (x[0] - c).powi(2) + (x[1] - c).powi(2);
    let analytic = AnalyticSolution::<T> {
        value: Arc::new(move |x: &[T]| r2(x).sin()),
        gradient: Arc::new(move |x: &[T]| {
            let k = two * r2(x).cos();
            [k * (x[0] - c), k * (x[1] - c)]
        }),
        laplacian: Arc::new(move |x: &[T]| {
            let s = r2(x);
            four * s.cos() - four * s * s.sin()
        }),
    };
    let velocity = lui_velocity::<T>();
    let forcing = derived_forcing(ProblemKind::ConvectionDiffusion, T::one(), Some(velocity.clone()), &analytic);
    let spec = with_exact(
        ProblemSpec::convection_diffusion(forcing, analytic.value.clone(), velocity, T::one()),
        &analytic,
    );
    let mut info = info(
        "star_cd",
        "-Δu - u_x - u_y = f inside r = 0.7 + 0.2 sin 5θ, u = g = sin(x² + y²)",
        [2.0 * CENTRED_BOX, 2.0 * CENTRED_BOX],
        [CENTRED_BOX, CENTRED_BOX],
        "(-1.2,1.2)² translated to (0,2.4)²",
        "convection-diffusion accuracy on a star",
    );
    info.has_exact = true;
    Ok(CatalogEntry {
        info,
        spec,
        analytic: Some(analytic),
        curve: Some(curves::polar("star", [c, c], curves::star_radius::<T>)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn catalog_has_seven_families() {
        let ids: Vec<String> = catalog::<f64>().iter().map(|e| e.id().to_string()).collect();
        assert_eq!(ids, FAMILIES.to_vec());
        assert!(matches!(lookup::<f64>("nope", &ProblemParams::default()), Err(Error::Problem(_))));
    }

    #[test]
    fn plug_in_values() {
        let disk = lookup::<f64>("disk_poisson", &ProblemParams::default()).unwrap();
        let pi = std::f64::consts::PI;
        let ue = disk.spec.exact.clone().unwrap();
        assert_eq!(ue(&[pi, pi]), 4.0);
        for k in 0..8 {
            let a = k as f64;
            assert!(ue(&[pi + 2.0 * a.cos(), pi + 2.0 * a.sin()]).abs() < 1e-14);
        }
        let chiu = lookup::<f64>("rect_cd_chiu", &ProblemParams::default()).unwrap();
        let k = chiu.spec.velocity.clone().unwrap()(&[0.0, 0.0]);
        assert_eq!(k, [-1.0, 1.0]);

        let params = ProblemParams {
            ellipse_b: 0.9,
            ..ProblemParams::default()
        };
        let e = lookup::<f64>("ellipse_cd", &params).unwrap();
        let ue = e.spec.exact.clone().unwrap();
        for k in 0..8 {
            let a = k as f64;
            assert!(ue(&[1.2 + 0.9 * a.cos(), 1.2 + 0.9 * a.sin()]).abs() < 1e-15);
        }
    }

    #[test]
    fn x2y3_forcing() {
        let e = lookup::<f64>("rect_poisson_x2y3", &ProblemParams::default()).unwrap();
        let (x, y) = (0.7, 1.3);
        assert_relative_eq!((e.spec.forcing)(&[x, y]), -(2.0 * y * y * y + 6.0 * x * x * y), max_relative = 1e-15);
    }

    #[test]
    fn self_consistency_at_a_few_points() {
        for entry in catalog::<f64>() {
            if entry.analytic.is_none() {
                continue;
            }
            let l = entry.info.lengths.clone();
            for &(s, t) in &[(0.3, 0.4), (0.5, 0.5), (0.9, 0.1)] {
                let r = entry.consistency_residual(&[s * l[0], t * l[1]]).unwrap();
                assert!(r.abs() < 1e-12, "{}: {r}", entry.id());
            }
        }
    }
}
