use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{contract, domain, Result};
use crate::Scalar;

/// Samples kept for classification, distance queries and perimeter estimates.
pub const DENSE_SAMPLES: usize = 4096;

pub type Point2<T> = [T; 2];

/// `t ∈ [0, 1] → γ(t)`.
pub type Parametrization<T> = Arc<dyn Fn(T) -> Point2<T> + Send + Sync>;

/// Signed level-set function, negative inside the domain.
pub type ImplicitFn<T> = Arc<dyn Fn(Point2<T>) -> T + Send + Sync>;

/// How the parametrization was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Analytic,
    Polar,
    ImplicitTraced,
}

/// Closed, counter-clockwise parametric curve bounding a 2D domain.
#[derive(Clone)]
pub struct BoundaryCurve<T> {
    name: String,
    kind: CurveKind,
    param: Parametrization<T>,
    implicit: Option<ImplicitFn<T>>,
    dense: Vec<Point2<T>>,
}

impl<T: fmt::Debug> fmt::Debug for BoundaryCurve<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryCurve")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("samples", &self.dense.len())
            .finish()
    }
}

impl<T: Scalar> BoundaryCurve<T> {
    /// Validates closedness and counter-clockwise orientation.
    pub fn new(name: impl Into<String>, kind: CurveKind, param: Parametrization<T>) -> Result<Self> {
        let name = name.into();
        let start = param(T::zero());
        let end = param(T::one());
        let dense: Vec<Point2<T>> = (0..DENSE_SAMPLES)
            .map(|i| param(T::from_usize_lossy(i) / T::from_usize_lossy(DENSE_SAMPLES)))
            .collect();
        if dense.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(domain(format!("curve `{name}` produced non-finite points")));
        }
        let curve = Self {
            name,
            kind,
            param,
            implicit: None,
            dense,
        };
        let gap = dist(start, end);
        let tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0) * curve.diameter());
        if gap > tol {
            return Err(domain(format!(
                "curve `{}` is not closed: |γ(0) − γ(1)| = {:e}",
                curve.name, gap
            )));
        }
        if curve.signed_area() <= T::zero() {
            return Err(domain(format!(
                "curve `{}` must be oriented counter-clockwise",
                curve.name
            )));
        }
        Ok(curve)
    }

    /// Attaches a level-set function (negative inside) used for cross-checks.
    pub fn with_implicit(mut self, f: ImplicitFn<T>) -> Self {
        self.implicit = Some(f);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn implicit(&self) -> Option<&ImplicitFn<T>> {
        self.implicit.as_ref()
    }

    pub fn point(&self, t: T) -> Point2<T> {
        (self.param)(t)
    }

    /// `γ(i / n_c)` for `i = 1..=n_c`.
    pub fn sample(&self, n_c: usize) -> Result<Vec<Point2<T>>> {
        if n_c < 3 {
            return Err(contract(format!("need at least 3 curve samples, got {n_c}")));
        }
        let nc = T::from_usize_lossy(n_c);
        Ok((1..=n_c)
            .map(|i| self.point(T::from_usize_lossy(i) / nc))
            .collect())
    }

    pub fn dense_polyline(&self) -> &[Point2<T>] {
        &self.dense
    }

    pub fn perimeter(&self) -> T {
        let n = self.dense.len();
        (0..n).map(|i| dist(self.dense[i], self.dense[(i + 1) % n])).sum()
    }

    fn signed_area(&self) -> T {
        let n = self.dense.len();
        let twice: T = (0..n)
            .map(|i| {
                let (a, b) = (self.dense[i], self.dense[(i + 1) % n]);
                a[0] * b[1] - b[0] * a[1]
            })
            .sum();
        twice / T::lit(2.0)
    }

    /// `(min, max)` corners of the dense polyline.
    pub fn bounding_box(&self) -> (Point2<T>, Point2<T>) {
        self.dense.iter().fold(
            (
                [T::infinity(), T::infinity()],
                [T::neg_infinity(), T::neg_infinity()],
            ),
            |(lo, hi), p| {
                (
                    [lo[0].min(p[0]), lo[1].min(p[1])],
                    [hi[0].max(p[0]), hi[1].max(p[1])],
                )
            },
        )
    }

    fn diameter(&self) -> T {
        let (lo, hi) = self.bounding_box();
        dist(lo, hi)
    }

    /// Winding number of the dense polyline about `p`.
    pub fn winding_number(&self, p: Point2<T>) -> i32 {
        let n = self.dense.len();
        let mut wn = 0;
        for i in 0..n {
            let a = self.dense[i];
            let b = self.dense[(i + 1) % n];
            let side = (b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1]);
            if a[1] <= p[1] {
                if b[1] > p[1] && side > T::zero() {
                    wn += 1;
                }
            } else if b[1] <= p[1] && side < T::zero() {
                wn -= 1;
            }
        }
        wn
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        self.winding_number(p) != 0
    }

    /// Distance from `p` to the dense polyline.
    pub fn polyline_distance(&self, p: Point2<T>) -> T {
        let n = self.dense.len();
        (0..n)
            .map(|i| segment_distance(p, self.dense[i], self.dense[(i + 1) % n]))
            .fold(T::infinity(), T::min)
    }

    /// Parameter and distance of the curve point closest to `p`, refined
    /// on the exact parametrization.
    pub fn closest_point(&self, p: Point2<T>) -> (T, T) {
        let n = self.dense.len();
        let (best, _) = (0..n)
            .map(|i| (i, dist(p, self.dense[i])))
            .fold((0, T::infinity()), |b, c| if c.1 < b.1 { c } else { b });
        let nf = T::from_usize_lossy(n);
        let centre = T::from_usize_lossy(best) / nf;
        let step = T::one() / nf;
        let f = |t: T| dist(p, self.point(wrap_unit(t)));
        let t = golden_section(f, centre - step, centre + step, 200);
        let t = wrap_unit(t);
        (t, dist(p, self.point(t)))
    }

    /// Distance from `p` to the curve.
    pub fn distance(&self, p: Point2<T>) -> T {
        self.closest_point(p).1
    }
}

/// Default number of samples used for relocation: `4 · perimeter / h`,
/// clamped below at 64.
pub fn default_curve_samples<T: Scalar>(curve: &BoundaryCurve<T>, h: T) -> usize {
    let est = (T::lit(4.0) * curve.perimeter() / h).ceil().as_f64();
    (est as usize).max(64)
}

pub(crate) fn dist<T: Scalar>(a: Point2<T>, b: Point2<T>) -> T {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn segment_distance<T: Scalar>(p: Point2<T>, a: Point2<T>, b: Point2<T>) -> T {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == T::zero() {
        return dist(p, a);
    }
    let s = (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2)
        .max(T::zero())
        .min(T::one());
    dist(p, [a[0] + s * ab[0], a[1] + s * ab[1]])
}

fn wrap_unit<T: Scalar>(t: T) -> T {
    let w = t - t.floor();
    if w >= T::one() {
        T::zero()
    } else {
        w
    }
}

fn golden_section<T: Scalar>(f: impl Fn(T) -> T, mut a: T, mut b: T, iters: usize) -> T {
    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if (b - a).abs() <= T::epsilon() * T::lit(4.0) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}
