//! Boundary curves of the built-in domains, in box coordinates.

use std::sync::Arc;

use crate::error::Result;
use crate::geometry::{BoundaryCurve, CurveKind, Point2};
use crate::Scalar;

/// Counter-clockwise circle.
pub fn circle<T: Scalar>(center: Point2<T>, radius: T) -> Result<BoundaryCurve<T>> {
    let tau = T::TAU();
    BoundaryCurve::new(
        "circle",
        CurveKind::Analytic,
        Arc::new(move |t: T| {
            let a = tau * t;
            [center[0] + radius * a.cos(), center[1] + radius * a.sin()]
        }),
    )
    .map(|c| {
        c.with_implicit(Arc::new(move |p: Point2<T>| {
            (p[0] - center[0]).hypot(p[1] - center[1]) - radius
        }))
    })
}

/// Axis-aligned ellipse with semi-axes `a`, `b`.
pub fn ellipse<T: Scalar>(center: Point2<T>, a: T, b: T) -> Result<BoundaryCurve<T>> {
    let tau = T::TAU();
    BoundaryCurve::new(
        "ellipse",
        CurveKind::Analytic,
        Arc::new(move |t: T| {
            let s = tau * t;
            [center[0] + a * s.cos(), center[1] + b * s.sin()]
        }),
    )
    .map(|c| {
        c.with_implicit(Arc::new(move |p: Point2<T>| {
            let (x, y) = ((p[0] - center[0]) / a, (p[1] - center[1]) / b);
            x * x + y * y - T::one()
        }))
    })
}

/// Closed polar curve `r(θ)` about `center`, `θ = 2πt`.
pub fn polar<T: Scalar>(
    name: &str,
    center: Point2<T>,
    radius: impl Fn(T) -> T + Send + Sync + Clone + 'static,
) -> Result<BoundaryCurve<T>> {
    let tau = T::TAU();
    let r = radius.clone();
    BoundaryCurve::new(
        name,
        CurveKind::Polar,
        Arc::new(move |t: T| {
            let th = tau * t;
            let rr = r(th);
            [center[0] + rr * th.cos(), center[1] + rr * th.sin()]
        }),
    )
    .map(|c| {
        c.with_implicit(Arc::new(move |p: Point2<T>| {
            let (dx, dy) = (p[0] - center[0], p[1] - center[1]);
            dx.hypot(dy) - radius(dy.atan2(dx))
        }))
    })
}

/// `r = 0.7 + 0.2 sin 5θ`.
pub fn star_radius<T: Scalar>(theta: T) -> T {
    T::lit(0.7) + T::lit(0.2) * (T::lit(5.0) * theta).sin()
}

/// `r = |cos 3θ|^{sin 6θ}`, continued by its limit 1 where `cos 3θ = 0`.
pub fn ninja_radius<T: Scalar>(theta: T) -> T {
    let c = (T::lit(3.0) * theta).cos().abs();
    if c == T::zero() {
        return T::one();
    }
    c.powf((T::lit(6.0) * theta).sin())
}

/// The quartic `(2x²+y²)² − 2√2 x(2x²−3y²) + 2(y²−x²)`, negative inside.
pub fn fish_implicit<T: Scalar>(x: T, y: T) -> T {
    let two = T::lit(2.0);
    let s = two * x * x + y * y;
    s * s - two * T::SQRT_2() * x * (two * x * x - T::lit(3.0) * y * y) + two * (y * y - x * x)
}

/// Interior point of the tail lobe from which the lobe is star-shaped.
const FISH_TAIL_SEED: f64 = -0.175;

/// Fish curve, a figure eight with a node at the origin. The first half
/// of the parameter runs counter-clockwise around the body lobe (`x > 0`),
/// the second half counter-clockwise around the tail lobe (`x < 0`), so
/// both lobes have winding number one.
///
/// The body is star-shaped about the node and `F/r² = A r² − 2√2 B r − 2 cos 2θ`
/// with `A = (1+cos²θ)²`, `B = cos θ (2cos²θ − 3sin²θ)` has one positive
/// root for `|θ| < π/4`. The tail is traced by bisection along rays from an
/// interior seed; rays are capped at `x = 0`, where `F = y⁴ + 2y² ≥ 0`.
pub fn fish<T: Scalar>(offset: Point2<T>) -> Result<BoundaryCurve<T>> {
    let param = move |t: T| {
        let half = T::lit(0.5);
        let [x, y] = if t <= half {
            fish_body(-T::FRAC_PI_4() + T::FRAC_PI_2() * (t / half))
        } else {
            fish_tail(T::TAU() * (t - half) / half)
        };
        [x + offset[0], y + offset[1]]
    };
    Ok(BoundaryCurve::new("fish", CurveKind::ImplicitTraced, Arc::new(param))?
        .with_implicit(Arc::new(move |p: Point2<T>| fish_implicit(p[0] - offset[0], p[1] - offset[1]))))
}

fn fish_body<T: Scalar>(theta: T) -> Point2<T> {
    let (s, c) = theta.sin_cos();
    let two = T::lit(2.0);
    let a = (T::one() + c * c) * (T::one() + c * c);
    let b = c * (two * c * c - T::lit(3.0) * s * s);
    let cos2 = (c * c - s * s).max(T::zero());
    let disc = (T::lit(8.0) * (b * b + a * cos2)).sqrt();
    let r = ((two * T::SQRT_2() * b + disc) / (two * a)).max(T::zero());
    [r * c, r * s]
}

fn fish_tail<T: Scalar>(phi: T) -> Point2<T> {
    let seed = T::lit(FISH_TAIL_SEED);
    let (s, c) = phi.sin_cos();
    let at = |r: T| [seed + r * c, r * s];
    let mut hi = if c > T::zero() { -seed / c } else { T::one() };
    hi = hi.min(T::one());
    let mut lo = T::zero();
    let outside = |r: T| {
        let p = at(r);
        fish_implicit(p[0], p[1]) >= T::zero()
    };
    if !outside(hi) {
        // only the ray through the node can end inside; its endpoint is the node
        return at(hi);
    }
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if outside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (plo, phi_) = (at(lo), at(hi));
    if fish_implicit(plo[0], plo[1]).abs() < fish_implicit(phi_[0], phi_[1]).abs() {
        plo
    } else {
        phi_
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fish_samples_satisfy_the_quartic() {
        let curve = fish([0.0f64, 0.0]).unwrap();
        for p in curve.sample(2000).unwrap() {
            assert!(fish_implicit(p[0], p[1]).abs() <= 1e-12, "{p:?}");
        }
        assert_eq!(curve.winding_number([0.8, 0.0]), 1);
        assert_eq!(curve.winding_number([-0.2, 0.0]), 1);
        assert_eq!(curve.winding_number([0.8, 0.6]), 0);
    }

    #[test]
    fn fish_passes_through_the_node_at_the_lobe_switch() {
        let curve = fish([0.0f64, 0.0]).unwrap();
        for t in [0.0, 0.5, 1.0] {
            let p = curve.point(t);
            assert!(p[0].hypot(p[1]) < 1e-12, "t = {t}: {p:?}");
        }
    }

    #[test]
    fn ninja_radius_is_continuous_at_cusps() {
        let th = std::f64::consts::PI / 6.0;
        assert!((ninja_radius(th) - 1.0).abs() < 1e-12);
        assert_eq!(ninja_radius(0.0), 1.0);
        assert!((ninja_radius(th + 1e-9) - 1.0).abs() < 1e-6);
        let curve = polar("ninja", [0.0, 0.0], ninja_radius::<f64>).unwrap();
        assert_eq!(curve.winding_number([0.0, 0.0]), 1);
    }

    #[test]
    fn star_and_ellipse_wind_once() {
        let star = polar("star", [1.2, 1.2], star_radius::<f64>).unwrap();
        assert_eq!(star.winding_number([1.2, 1.2]), 1);
        let e = ellipse([1.2, 1.2], 0.9, 0.6).unwrap();
        assert_eq!(e.winding_number([1.2, 1.2]), 1);
        assert_eq!(e.winding_number([1.2, 1.9]), 0);
    }
}
