//! Uniform collocation lattices, closed boundary curves, point
//! classification and relocation of lattice points onto curves.

mod curve;
mod grid;
mod relocate;

pub use curve::{
    default_curve_samples, BoundaryCurve, CurveKind, ImplicitFn, Parametrization, Point2, DENSE_SAMPLES,
};
pub use grid::{
    CollocationGrid, GridPoint, PointTag, RelocationReport, CSV_VERSION_LINE, ON_CURVE_TOLERANCE,
};
