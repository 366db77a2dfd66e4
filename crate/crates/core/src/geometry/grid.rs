use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curve::{BoundaryCurve, Point2};
use crate::eigenbasis::ExtendedRectangle;
use crate::error::{contract, domain, Result};
use crate::Scalar;

/// Header line written at the top of every CSV artifact.
pub const CSV_VERSION_LINE: &str = "# stretched-eigenbasis v1";

/// Distance below which a lattice point counts as lying on the curve.
pub const ON_CURVE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointTag {
    Interior,
    RectBoundary,
    Relocated,
    Exterior,
    /// On the curve to within [`ON_CURVE_TOLERANCE`]; resolved by relocation.
    Candidate,
}

impl PointTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PointTag::Interior => "interior",
            PointTag::RectBoundary => "rect_boundary",
            PointTag::Relocated => "relocated",
            PointTag::Exterior => "exterior",
            PointTag::Candidate => "candidate",
        }
    }

    /// Whether the collocation row at this point imposes the boundary value.
    pub fn is_boundary_row(self) -> bool {
        matches!(self, PointTag::Relocated | PointTag::RectBoundary)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint<T> {
    /// Lattice index per axis (unused axes are 0).
    pub index: [usize; 2],
    pub coords: Point2<T>,
    /// Lattice position before relocation.
    pub origin: Point2<T>,
    pub tag: PointTag,
}

/// Summary of one relocation pass.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RelocationReport {
    pub curve_samples: usize,
    pub relocated: usize,
    /// Lattice points claimed by more than one curve segment.
    pub conflicts: usize,
    /// Moves dropped because they would crowd another node.
    pub dropped_for_separation: usize,
    pub max_displacement: f64,
}

/// Uniform lattice with `n` points per axis, possibly partially relocated.
#[derive(Clone, Debug)]
pub struct CollocationGrid<T> {
    rect: ExtendedRectangle<T>,
    n: usize,
    points: Vec<GridPoint<T>>,
    pub(crate) relocation: Option<RelocationReport>,
}

impl<T: Scalar> CollocationGrid<T> {
    /// Lattice `x_k = (j−1) L_k / (n−1)`; points on `∂R₀` tagged `rect_boundary`.
    pub fn uniform(rect: &ExtendedRectangle<T>, n: usize) -> Result<Self> {
        if n < 4 {
            return Err(contract(format!("grid needs at least 4 points per axis, got {n}")));
        }
        let d = rect.dim();
        let denom = T::from_usize_lossy(n - 1);
        let coord = |k: usize, j: usize| T::from_usize_lossy(j) * rect.lengths()[k] / denom;
        let on_edge = |j: usize| j == 0 || j == n - 1;
        let mut points = Vec::with_capacity(n.pow(d as u32));
        if d == 1 {
            for i in 0..n {
                let c = [coord(0, i), T::zero()];
                points.push(GridPoint {
                    index: [i, 0],
                    coords: c,
                    origin: c,
                    tag: if on_edge(i) { PointTag::RectBoundary } else { PointTag::Interior },
                });
            }
        } else {
            for ix in 0..n {
                for iy in 0..n {
                    let c = [coord(0, ix), coord(1, iy)];
                    points.push(GridPoint {
                        index: [ix, iy],
                        coords: c,
                        origin: c,
                        tag: if on_edge(ix) || on_edge(iy) {
                            PointTag::RectBoundary
                        } else {
                            PointTag::Interior
                        },
                    });
                }
            }
        }
        Ok(Self {
            rect: rect.clone(),
            n,
            points,
            relocation: None,
        })
    }

    pub fn rect(&self) -> &ExtendedRectangle<T> {
        &self.rect
    }

    pub fn dim(&self) -> usize {
        self.rect.dim()
    }

    pub fn points_per_axis(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[GridPoint<T>] {
        &self.points
    }

    pub(crate) fn points_mut(&mut self) -> &mut [GridPoint<T>] {
        &mut self.points
    }

    /// Coordinates of point `i` as a `d`-slice.
    pub fn coords(&self, i: usize) -> &[T] {
        &self.points[i].coords[..self.dim()]
    }

    /// Lattice spacing `L_k/(n−1)` along `axis`.
    pub fn spacing(&self, axis: usize) -> T {
        self.rect.lengths()[axis] / T::from_usize_lossy(self.n - 1)
    }

    /// `h = max_k L_k/(n−1)`.
    pub fn h(&self) -> T {
        (0..self.dim()).map(|k| self.spacing(k)).fold(T::zero(), T::max)
    }

    /// Flat index of the lattice point `(ix, iy)`.
    pub fn flat_index(&self, ix: usize, iy: usize) -> usize {
        if self.dim() == 1 {
            ix
        } else {
            ix * self.n + iy
        }
    }

    pub fn relocation_report(&self) -> Option<&RelocationReport> {
        self.relocation.as_ref()
    }

    pub fn count(&self, tag: PointTag) -> usize {
        self.points.iter().filter(|p| p.tag == tag).count()
    }

    /// Tags every non-relocated point as interior or exterior to `curve`
    /// by winding number; points within [`ON_CURVE_TOLERANCE`] of the curve
    /// become relocation candidates.
    pub fn classify(&self, curve: &BoundaryCurve<T>) -> Result<Self> {
        if self.dim() != 2 {
            return Err(contract("curved domains are two-dimensional"));
        }
        let (lo, hi) = curve.bounding_box();
        let l = self.rect.lengths();
        if lo[0] < T::zero() || lo[1] < T::zero() || hi[0] > l[0] || hi[1] > l[1] {
            return Err(domain(format!(
                "curve `{}` leaves the inner box [0, {}] x [0, {}]",
                curve.name(),
                l[0],
                l[1]
            )));
        }
        let tol = T::lit(ON_CURVE_TOLERANCE);
        let mut out = self.clone();
        out.points.par_iter_mut().for_each(|p| {
            if p.tag == PointTag::Relocated {
                return;
            }
            p.tag = if curve.polyline_distance(p.coords) <= tol {
                PointTag::Candidate
            } else if curve.contains(p.coords) {
                PointTag::Interior
            } else {
                PointTag::Exterior
            };
        });
        Ok(out)
    }

    /// CSV dump with columns `ix,iy,x,y,tag,orig_x,orig_y`.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(CSV_VERSION_LINE);
        s.push('\n');
        s.push_str("ix,iy,x,y,tag,orig_x,orig_y\n");
        for p in &self.points {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                p.index[0],
                p.index[1],
                p.coords[0].as_f64(),
                p.coords[1].as_f64(),
                p.tag.as_str(),
                p.origin[0].as_f64(),
                p.origin[1].as_f64()
            );
        }
        s
    }
}
