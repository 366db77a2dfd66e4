//! Sine-series best approximation on the stretched interval.

use crate::eigenbasis::ExtendedRectangle;
use crate::error::{contract, Result};
use crate::quadrature::composite;
use crate::Scalar;

/// Gauss–Legendre points per panel.
const PANEL_POINTS: usize = 16;

/// Coefficients `b_j = ∫ f w_j`, `j = 1..=count`, of `f` on the extended
/// interval of a 1D box. `support` restricts the integral when `f` vanishes
/// outside it. Panels are sized so each basis half-wavelength gets at least
/// 16 nodes.
pub fn sine_coefficients<T: Scalar>(
    f: &dyn Fn(T) -> T,
    rect: &ExtendedRectangle<T>,
    count: usize,
    support: Option<(T, T)>,
) -> Result<Vec<T>> {
    if rect.dim() != 1 {
        return Err(contract("sine coefficients are computed on a 1D box"));
    }
    if count == 0 {
        return Err(contract("need at least one coefficient"));
    }
    let delta = rect.stretch()[0];
    let ell = rect.extended_length(0);
    let (a, b) = support.unwrap_or((-delta, rect.lengths()[0] + delta));
    if !(a < b) || a < -delta || b > rect.lengths()[0] + delta {
        return Err(contract("support must be a nonempty subinterval of the extended interval"));
    }
    // half-wavelengths of mode `count` inside [a, b], rounded up
    let halves = ((b - a) / ell * T::from_usize_lossy(count)).ceil().as_f64().max(1.0) as usize;
    let rule = composite(a, b, halves.max(64), PANEL_POINTS);
    let amp = (T::lit(2.0) / ell).sqrt();
    let values: Vec<(T, T)> = rule
        .iter()
        .map(|&(x, w)| (w * f(x), T::PI() * (x + delta) / ell))
        .collect();
    Ok((1..=count)
        .map(|j| {
            let jj = T::from_usize_lossy(j);
            amp * values.iter().map(|&(wf, theta)| wf * (jj * theta).sin()).sum::<T>()
        })
        .collect())
}

/// Truncated sine series `Σ_{j ≤ N} b_j w_j(x)`.
pub fn sine_series<T: Scalar>(coeffs: &[T], rect: &ExtendedRectangle<T>, x: T) -> T {
    let delta = rect.stretch()[0];
    let ell = rect.extended_length(0);
    let amp = (T::lit(2.0) / ell).sqrt();
    let theta = T::PI() * (x + delta) / ell;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &b)| b * (T::from_usize_lossy(i + 1) * theta).sin())
        .sum::<T>()
        * amp
}

/// `exp(−1/(1−s²))` with `s` mapping `(a, b)` onto `(−1, 1)`; zero outside.
pub fn bump<T: Scalar>(x: T, a: T, b: T) -> T {
    let s = (T::lit(2.0) * x - a - b) / (b - a);
    if s.abs() >= T::one() {
        T::zero()
    } else {
        (-T::one() / (T::one() - s * s)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pure_mode_is_reproduced() {
        let rect = ExtendedRectangle::new(vec![1.0], vec![0.5]).unwrap();
        let ell = 2.0f64;
        let w3 = move |x: f64| (2.0 / ell).sqrt() * (3.0 * std::f64::consts::PI * (x + 0.5) / ell).sin();
        let b = sine_coefficients(&w3, &rect, 6, None).unwrap();
        for (j, &bj) in b.iter().enumerate() {
            let expected = if j == 2 { 1.0 } else { 0.0 };
            assert!((bj - expected).abs() < 1e-13, "b_{} = {bj}", j + 1);
        }
        assert_relative_eq!(sine_series(&b, &rect, 0.3), w3(0.3), epsilon = 1e-13);
    }

    #[test]
    fn bump_is_compactly_supported() {
        assert_eq!(bump(0.0, 0.0, 1.0), 0.0);
        assert_eq!(bump(1.2, 0.0, 1.0), 0.0);
        assert_relative_eq!(bump(0.5, 0.0, 1.0), (-1.0f64).exp());
    }
}
