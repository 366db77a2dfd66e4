//! Error tables over grids of `(n, δ)`.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::norms::{error_norms, Region};
use crate::assembly::{solve_problem, ProblemSpec, ScalarField, SolveDiagnostics, SolveOptions};
use crate::eigenbasis::ExtendedRectangle;
use crate::error::{contract, Result};
use crate::geometry::{BoundaryCurve, CSV_VERSION_LINE};
use crate::Scalar;

/// Where the reference solution of a study comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    /// The problem's exact solution.
    Exact,
    /// A solve on the same box with `n` points per axis (self-convergence).
    Finest { n: usize },
}

/// Everything fixed across the cells of a study.
#[derive(Clone)]
pub struct StudyCase<T> {
    pub problem: String,
    pub spec: ProblemSpec<T>,
    /// Box template; each cell re-stretches it.
    pub rect: ExtendedRectangle<T>,
    pub curve: Option<BoundaryCurve<T>>,
    pub options: SolveOptions,
    pub reference: Reference,
    pub region: Region,
    pub resolution: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub delta: f64,
    pub l2: f64,
    pub linf: f64,
    pub cond: f64,
    pub seconds: f64,
    pub diagnostics: SolveDiagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub n: usize,
    pub delta: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub problem: String,
    pub reference: Reference,
    pub region: Region,
    pub resolution: usize,
    /// Ordered by `δ` as given, then by increasing `n`.
    pub rows: Vec<ConvergenceRow>,
    pub failures: Vec<CellFailure>,
}

impl ConvergenceReport {
    /// Rows for one `δ`, in increasing `n`.
    pub fn rows_for_delta(&self, delta: f64) -> Vec<&ConvergenceRow> {
        self.rows.iter().filter(|r| r.delta == delta).collect()
    }

    /// `problem,n,delta,l2,linf,cond,seconds`; failed cells become comment lines.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{CSV_VERSION_LINE}");
        s.push_str("problem,n,delta,l2,linf,cond,seconds\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{:e},{:e},{:e},{:.6}",
                self.problem, r.n, r.delta, r.l2, r.linf, r.cond, r.seconds
            );
        }
        for f in &self.failures {
            let _ = writeln!(s, "# failed n={} delta={}: {}", f.n, f.delta, f.reason);
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Solves every `(n, δ)` cell and measures its error. Cells are independent
/// and run in parallel; a failing cell is recorded and the study goes on.
pub fn convergence_study<T: Scalar>(
    case: &StudyCase<T>,
    n_list: &[usize],
    delta_list: &[f64],
) -> Result<ConvergenceReport> {
    if n_list.is_empty() || delta_list.is_empty() {
        return Err(contract("convergence study needs nonempty n and δ lists"));
    }
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if case.reference == Reference::Exact && case.spec.exact.is_none() {
        return Err(contract(format!("problem `{}` has no exact solution", case.problem)));
    }

    let references: Vec<Result<ScalarField<T>>> = delta_list
        .par_iter()
        .map(|&delta| reference_field(case, delta))
        .collect();

    let cells: Vec<(usize, usize)> = (0..delta_list.len())
        .flat_map(|di| ns.iter().map(move |&n| (di, n)))
        .collect();
    let outcomes: Vec<std::result::Result<ConvergenceRow, CellFailure>> = cells
        .par_iter()
        .map(|&(di, n)| {
            let delta = delta_list[di];
            let fail = |reason: String| CellFailure { n, delta, reason };
            let reference = references[di].as_ref().map_err(|e| fail(format!("reference solve: {e}")))?;
            run_cell(case, n, delta, reference).map_err(|e| fail(e.to_string()))
        })
        .collect();

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            Ok(r) => rows.push(r),
            Err(f) => {
                log::warn!("cell n={} delta={} failed: {}", f.n, f.delta, f.reason);
                failures.push(f);
            }
        }
    }
    Ok(ConvergenceReport {
        problem: case.problem.clone(),
        reference: case.reference,
        region: case.region,
        resolution: case.resolution,
        rows,
        failures,
    })
}

fn reference_field<T: Scalar>(case: &StudyCase<T>, delta: f64) -> Result<ScalarField<T>> {
    match case.reference {
        Reference::Exact => Ok(case.spec.exact.clone().expect("checked above")),
        Reference::Finest { n } => {
            let rect = case.rect.restretched(T::lit(delta))?;
            let fine = Arc::new(solve_problem(&case.spec, &rect, n, case.curve.as_ref(), case.options)?);
            Ok(Arc::new(move |x: &[T]| fine.value(x).unwrap_or_else(|_| T::nan())))
        }
    }
}

/// One cell of a study: solve at `(n, δ)` and measure the error.
pub fn run_cell<T: Scalar>(
    case: &StudyCase<T>,
    n: usize,
    delta: f64,
    reference: &ScalarField<T>,
) -> Result<ConvergenceRow> {
    let start = Instant::now();
    let rect = case.rect.restretched(T::lit(delta))?;
    let solution = solve_problem(&case.spec, &rect, n, case.curve.as_ref(), case.options)?;
    let norms = error_norms(&solution, reference, case.region, case.resolution)?;
    Ok(ConvergenceRow {
        n,
        delta,
        l2: norms.l2,
        linf: norms.linf,
        cond: solution.diagnostics.condition,
        seconds: start.elapsed().as_secs_f64(),
        diagnostics: solution.diagnostics,
    })
}
