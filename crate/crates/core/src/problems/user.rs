//! User-defined problems from a flat JSON object of expression strings.
//!
//! ```json
//! {
//!   "id": "bump",
//!   "kind": "convection_diffusion",
//!   "lx": 1.0, "ly": 1.0,
//!   "f": "2*pi^2*sin(pi*x)*sin(pi*y)",
//!   "g": "0",
//!   "exact": "sin(pi*x)*sin(pi*y)",
//!   "kx": "1", "ky": "0", "re": 1.0,
//!   "curve_r": "0.3 + 0.05*cos(3*t)", "center_x": 0.5, "center_y": 0.5
//! }
//! ```
//!
//! Fields use box coordinates `x`, `y`. A curve is given either as
//! `curve_x`/`curve_y` in `t ∈ [0, 1]` or as a polar radius `curve_r` in the
//! angle `t ∈ [0, 2π)` about `(center_x, center_y)`.

use std::sync::Arc;

use serde::Deserialize;

use super::{CatalogEntry, EntryInfo};
use crate::assembly::{ProblemKind, ProblemSpec, ScalarField, VectorField};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::geometry::{BoundaryCurve, CurveKind, Point2};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UserProblem {
    pub id: String,
    #[serde(default = "default_kind")]
    pub kind: ProblemKind,
    pub lx: f64,
    pub ly: f64,
    pub f: String,
    pub g: String,
    #[serde(default)]
    pub exact: Option<String>,
    #[serde(default)]
    pub kx: Option<String>,
    #[serde(default)]
    pub ky: Option<String>,
    #[serde(default = "default_re")]
    pub re: f64,
    #[serde(default)]
    pub curve_x: Option<String>,
    #[serde(default)]
    pub curve_y: Option<String>,
    #[serde(default)]
    pub curve_r: Option<String>,
    #[serde(default)]
    pub center_x: Option<f64>,
    #[serde(default)]
    pub center_y: Option<f64>,
}

fn default_kind() -> ProblemKind {
    ProblemKind::Poisson
}

fn default_re() -> f64 {
    1.0
}

fn field<T: Scalar>(e: Expr) -> ScalarField<T> {
    Arc::new(move |x: &[T]| e.eval(x))
}

fn problem(msg: impl Into<String>) -> Error {
    Error::Problem(msg.into())
}

/// Parses a config and builds a catalog-style entry from it.
pub fn load_user_problem<T: Scalar>(json: &str) -> Result<CatalogEntry<T>> {
    let cfg: UserProblem = serde_json::from_str(json).map_err(|e| problem(format!("bad problem config: {e}")))?;
    cfg.build()
}

impl UserProblem {
    pub fn build<T: Scalar>(&self) -> Result<CatalogEntry<T>> {
        if !(self.lx > 0.0 && self.ly > 0.0) {
            return Err(problem("box lengths lx, ly must be positive"));
        }
        if !(self.re > 0.0) {
            return Err(problem("re must be positive"));
        }
        let forcing = field::<T>(Expr::parse(&self.f)?);
        let boundary = field::<T>(Expr::parse(&self.g)?);
        let mut spec = match self.kind {
            ProblemKind::Poisson => {
                if self.kx.is_some() || self.ky.is_some() {
                    return Err(problem("a Poisson problem takes no velocity"));
                }
                let mut s = ProblemSpec::poisson(forcing, boundary);
                s.reynolds = T::lit(self.re);
                s
            }
            ProblemKind::ConvectionDiffusion => {
                let kx = Expr::parse(self.kx.as_deref().unwrap_or("0"))?;
                let ky = Expr::parse(self.ky.as_deref().unwrap_or("0"))?;
                let velocity: VectorField<T> = Arc::new(move |x: &[T]| [kx.eval(x), ky.eval(x)]);
                ProblemSpec::convection_diffusion(forcing, boundary, velocity, T::lit(self.re))
            }
        };
        if let Some(e) = &self.exact {
            spec.exact = Some(field(Expr::parse(e)?));
        }
        let curve = self.curve::<T>()?;
        Ok(CatalogEntry {
            info: EntryInfo {
                id: self.id.clone(),
                description: format!("user problem: f = {}, g = {}", self.f, self.g),
                lengths: vec![self.lx, self.ly],
                offset: [0.0, 0.0],
                box_note: "given in the config".into(),
                backs: "user-defined".into(),
                has_exact: self.exact.is_some(),
            },
            spec,
            analytic: None,
            curve,
        })
    }

    fn curve<T: Scalar>(&self) -> Result<Option<BoundaryCurve<T>>> {
        match (&self.curve_x, &self.curve_y, &self.curve_r) {
            (None, None, None) => Ok(None),
            (Some(cx), Some(cy), None) => {
                let (ex, ey) = (Expr::parse(cx)?, Expr::parse(cy)?);
                let c = BoundaryCurve::new(
                    self.id.clone(),
                    CurveKind::Analytic,
                    Arc::new(move |t: T| {
                        let v = [T::zero(), T::zero(), t];
                        [ex.eval(&v), ey.eval(&v)]
                    }),
                )?;
                Ok(Some(c))
            }
            (None, None, Some(r)) => {
                let er = Expr::parse(r)?;
                let center: Point2<T> = [
                    T::lit(self.center_x.unwrap_or(self.lx / 2.0)),
                    T::lit(self.center_y.unwrap_or(self.ly / 2.0)),
                ];
                let radius = move |th: T| er.eval(&[T::zero(), T::zero(), th]);
                Ok(Some(super::curves::polar(&self.id, center, radius)?))
            }
            _ => Err(problem("give either curve_x and curve_y, or curve_r")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_user_problem() {
        let json = r#"{"id":"blob","lx":1,"ly":1,"f":"1","g":"0","curve_r":"0.3+0.05*cos(3*t)"}"#;
        let entry = load_user_problem::<f64>(json).unwrap();
        let curve = entry.curve.unwrap();
        assert_eq!(curve.winding_number([0.5, 0.5]), 1);
        assert_eq!((entry.spec.forcing)(&[0.2, 0.3]), 1.0);
    }

    #[test]
    fn rejects_bad_configs() {
        for bad in [
            r#"{"id":"a","lx":1,"ly":1,"f":"1"}"#,
            r#"{"id":"a","lx":1,"ly":1,"f":"1+","g":"0"}"#,
            r#"{"id":"a","lx":-1,"ly":1,"f":"1","g":"0"}"#,
            r#"{"id":"a","lx":1,"ly":1,"f":"1","g":"0","curve_x":"t"}"#,
            r#"{"id":"a","lx":1,"ly":1,"f":"1","g":"0","colour":"red"}"#,
        ] {
            assert!(load_user_problem::<f64>(bad).is_err(), "{bad}");
        }
    }
}
