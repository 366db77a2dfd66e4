//! Moves lattice points next to a boundary curve onto the curve.
//!
//! Every pair of consecutive curve samples is checked against the lattice
//! lines it crosses. For each crossed element edge, the edge endpoint nearer
//! the crossing is moved onto the curve: to the first sample of the pair,
//! the second one, or the exact crossing `γ(t*)`, whichever is closest.
//! Because the chosen endpoint is within half an edge of `γ(t*)`, every
//! move stays within `h/2` of its lattice origin.

use std::collections::BTreeMap;

use log::warn;

use super::curve::{default_curve_samples, dist, BoundaryCurve, Point2};
use super::grid::{CollocationGrid, PointTag, RelocationReport};
use crate::error::{contract, Result};
use crate::Scalar;

struct Move<T> {
    target: Point2<T>,
    displacement: T,
    // curve segment that proposed it, for the separation guard
    segment: usize,
}

impl<T: Scalar> CollocationGrid<T> {
    /// Relocates lattice points adjacent to `curve`. `curve_samples`
    /// defaults to [`default_curve_samples`].
    ///
    /// Expects a grid produced by [`CollocationGrid::classify`].
    pub fn relocate(&self, curve: &BoundaryCurve<T>, curve_samples: Option<usize>) -> Result<Self> {
        if self.dim() != 2 {
            return Err(contract("relocation is defined for two-dimensional grids"));
        }
        let h = self.h();
        let n_c = curve_samples.unwrap_or_else(|| default_curve_samples(curve, h));
        if n_c < 8 {
            return Err(contract(format!("need at least 8 curve samples, got {n_c}")));
        }
        let half = h / T::lit(2.0);
        let slack = T::epsilon() * T::lit(64.0) * h;
        let n = self.points_per_axis();
        let spacing = [self.spacing(0), self.spacing(1)];
        let lengths = [self.rect().lengths()[0], self.rect().lengths()[1]];

        let nc = T::from_usize_lossy(n_c);
        let params: Vec<T> = (0..=n_c).map(|i| T::from_usize_lossy(i) / nc).collect();
        let samples: Vec<Point2<T>> = params.iter().map(|&t| curve.point(t)).collect();

        let mut moves: BTreeMap<usize, Move<T>> = BTreeMap::new();
        let mut conflicts = 0usize;

        for seg in 0..n_c {
            let (a, b) = (samples[seg], samples[seg + 1]);
            let (ta, tb) = (params[seg], params[seg + 1]);
            for axis in 0..2 {
                let other = 1 - axis;
                let (lo, hi) = if a[axis] <= b[axis] { (a[axis], b[axis]) } else { (b[axis], a[axis]) };
                let first = (lo / spacing[axis]).floor().as_f64().max(0.0) as usize;
                let last = ((hi / spacing[axis]).ceil().as_f64().max(0.0) as usize).min(n - 1);
                for m in first..=last {
                    let line = T::from_usize_lossy(m) * spacing[axis];
                    if (a[axis] < line) == (b[axis] < line) {
                        continue;
                    }
                    let t_star = bisect_crossing(curve, axis, line, ta, tb);
                    let crossing = curve.point(t_star);
                    let along = crossing[other];
                    if along < T::zero() || along > lengths[other] {
                        continue;
                    }
                    let k = ((along / spacing[other]).floor().as_f64().max(0.0) as usize).min(n - 2);
                    let near_k = if along - T::from_usize_lossy(k) * spacing[other]
                        <= T::from_usize_lossy(k + 1) * spacing[other] - along
                    {
                        k
                    } else {
                        k + 1
                    };
                    let (ix, iy) = if axis == 0 { (m, near_k) } else { (near_k, m) };
                    let idx = self.flat_index(ix, iy);
                    let origin = self.points()[idx].origin;

                    let (target, displacement) = [a, b, crossing]
                        .into_iter()
                        .map(|c| (c, dist(c, origin)))
                        .fold((crossing, T::infinity()), |best, cur| {
                            if cur.1 < best.1 {
                                cur
                            } else {
                                best
                            }
                        });
                    if displacement > half + slack {
                        warn!(
                            "skipping move of lattice point ({ix}, {iy}): displacement {:e} exceeds h/2",
                            displacement
                        );
                        continue;
                    }
                    match moves.get_mut(&idx) {
                        Some(existing) => {
                            conflicts += 1;
                            if displacement < existing.displacement {
                                *existing = Move {
                                    target,
                                    displacement,
                                    segment: seg,
                                };
                            }
                        }
                        None => {
                            moves.insert(
                                idx,
                                Move {
                                    target,
                                    displacement,
                                    segment: seg,
                                },
                            );
                        }
                    }
                }
            }
        }

        // Apply in curve order, refusing moves that crowd an existing node.
        let mut ordered: Vec<(usize, Move<T>)> = moves.into_iter().collect();
        ordered.sort_by_key(|(idx, m)| (m.segment, *idx));
        let min_sep = h / T::lit(10.0);
        let mut out = self.clone();
        let mut dropped = 0usize;
        let mut relocated = 0usize;
        let mut max_disp = T::zero();
        for (idx, mv) in ordered {
            let crowded = out.points().iter().enumerate().any(|(j, p)| {
                j != idx && dist(p.coords, mv.target) < min_sep
            });
            if crowded {
                warn!(
                    "dropping relocation of lattice point {:?}: closer than h/10 to another node",
                    out.points()[idx].index
                );
                dropped += 1;
                continue;
            }
            let p = &mut out.points_mut()[idx];
            p.coords = mv.target;
            p.tag = PointTag::Relocated;
            relocated += 1;
            max_disp = max_disp.max(mv.displacement);
        }
        for p in out.points_mut() {
            if p.tag == PointTag::Candidate {
                p.tag = PointTag::Interior;
            }
        }
        out.relocation = Some(RelocationReport {
            curve_samples: n_c,
            relocated,
            conflicts,
            dropped_for_separation: dropped,
            max_displacement: max_disp.as_f64(),
        });
        Ok(out)
    }
}

fn bisect_crossing<T: Scalar>(curve: &BoundaryCurve<T>, axis: usize, line: T, mut lo: T, mut hi: T) -> T {
    let f = |t: T| curve.point(t)[axis] - line;
    let mut flo = f(lo);
    if flo == T::zero() {
        return lo;
    }
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    if f(hi).abs() < flo.abs() {
        hi
    } else {
        lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenbasis::ExtendedRectangle;
    use crate::geometry::curve::CurveKind;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn circle(cx: f64, cy: f64, r: f64) -> BoundaryCurve<f64> {
        BoundaryCurve::new(
            "circle",
            CurveKind::Analytic,
            Arc::new(move |t: f64| [cx + r * (2.0 * PI * t).cos(), cy + r * (2.0 * PI * t).sin()]),
        )
        .unwrap()
    }

    #[test]
    fn unit_circle_on_eleven_point_grid() {
        // (−1.2, 1.2)² shifted to (0, 2.4)²
        let rect = ExtendedRectangle::with_uniform_stretch(vec![2.4, 2.4], 1.0).unwrap();
        let curve = circle(1.2, 1.2, 1.0);
        let grid = CollocationGrid::uniform(&rect, 11).unwrap();
        let moved = grid.classify(&curve).unwrap().relocate(&curve, None).unwrap();
        let h = moved.h();
        assert_eq!(moved.len(), 121);
        let relocated: Vec<_> = moved.points().iter().filter(|p| p.tag == PointTag::Relocated).collect();
        assert!(relocated.len() >= 16);
        for p in relocated {
            let r = (p.coords[0] - 1.2).hypot(p.coords[1] - 1.2);
            assert!((r - 1.0).abs() < 1e-12, "off circle by {}", (r - 1.0).abs());
            assert!(dist(p.coords, p.origin) <= h / 2.0 + 1e-12);
        }
    }

    #[test]
    fn lattice_point_on_curve_moves_by_zero() {
        // circle of radius 0.5 about (1, 1) passes through lattice point (1.5, 1)
        let rect = ExtendedRectangle::with_uniform_stretch(vec![2.0, 2.0], 1.0).unwrap();
        let curve = circle(1.0, 1.0, 0.5);
        let grid = CollocationGrid::uniform(&rect, 9).unwrap();
        let classified = grid.classify(&curve).unwrap();
        let idx = classified.flat_index(6, 4);
        assert_eq!(classified.points()[idx].tag, PointTag::Candidate);
        let moved = classified.relocate(&curve, None).unwrap();
        let p = &moved.points()[idx];
        assert_eq!(p.tag, PointTag::Relocated);
        assert!(dist(p.coords, p.origin) < 1e-12);
    }

    #[test]
    fn too_few_samples_is_a_contract_error() {
        let rect = ExtendedRectangle::with_uniform_stretch(vec![2.0, 2.0], 1.0).unwrap();
        let curve = circle(1.0, 1.0, 0.5);
        let grid = CollocationGrid::uniform(&rect, 9).unwrap();
        assert!(matches!(grid.relocate(&curve, Some(4)), Err(crate::Error::Contract(_))));
    }
}
