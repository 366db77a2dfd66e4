//! Subcommand bodies.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, Context};
use serde_json::json;

use stretched_eigenbasis::analysis::{
    cd_lebesgue_sweep, cell_area, convergence_study, norms_from_samples, sample_lattice, Reference, Region,
    StudyCase, SweepConfig,
};
use stretched_eigenbasis::geometry::CSV_VERSION_LINE;
use stretched_eigenbasis::problems::{load_user_problem, lookup, ProblemParams, FAMILIES};
use stretched_eigenbasis::{solve_problem, Entry, Error, Grid, SolveOptions};

use crate::{CatalogArgs, ConvergeArgs, GridDumpArgs, LebesgueArgs, PipelineArgs, ProblemArgs, SolveArgs};

/// Reference resolution for problems that have no exact solution.
const DEFAULT_REFERENCE_N: usize = 40;

pub struct CliFailure {
    pub error: anyhow::Error,
    pub code: u8,
}

impl From<anyhow::Error> for CliFailure {
    fn from(error: anyhow::Error) -> Self {
        // a singular collocation matrix gets its own exit status
        let code = match error.downcast_ref::<Error>() {
            Some(Error::Singular { .. }) => 2,
            _ => 1,
        };
        Self { error, code }
    }
}

impl From<Error> for CliFailure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

type CliResult = Result<(), CliFailure>;

fn load_problem(args: &ProblemArgs) -> anyhow::Result<Entry> {
    if let Some(path) = &args.source.config {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return load_user_problem(&text).with_context(|| format!("loading {}", path.display()));
    }
    let id = args.source.problem.as_deref().ok_or_else(|| anyhow!("no problem given"))?;
    let params = ProblemParams {
        reynolds: args.re,
        ellipse_a: args.ellipse_a,
        ellipse_b: args.ellipse_b,
    };
    Ok(lookup(id, &params)?)
}

fn options(p: &PipelineArgs) -> SolveOptions {
    SolveOptions {
        curve_samples: p.curve_samples,
        exterior: p.exterior.into(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn solve(a: SolveArgs) -> CliResult {
    let entry = load_problem(&a.problem)?;
    let rect = entry.rect(a.delta)?;
    let region: Region = a.pipeline.region.into();
    let start = Instant::now();
    let sol = solve_problem(&entry.spec, &rect, a.n, entry.curve.as_ref(), options(&a.pipeline))?;
    let seconds = start.elapsed().as_secs_f64();

    let exact = entry.spec.exact.clone();
    let probe = exact.clone().unwrap_or_else(|| Arc::new(|_: &[f64]| 0.0));
    let samples = sample_lattice(&sol, &probe, region, a.pipeline.resolution)?;
    let d = rect.dim();

    let mut csv = String::new();
    let _ = writeln!(csv, "{CSV_VERSION_LINE}");
    csv.push_str("ix,iy,x,y,u,exact,in_region\n");
    for s in &samples {
        let y = if d == 1 { String::new() } else { s.x[1].to_string() };
        let e = if exact.is_some() { format!("{:e}", s.exact) } else { String::new() };
        let _ = writeln!(csv, "{},{},{},{},{:e},{},{}", s.index[0], s.index[1], s.x[0], y, s.u, e, s.in_region);
    }

    let norms = match exact {
        Some(_) => Some(norms_from_samples(
            samples.iter().map(|s| (s.u, s.exact, s.in_region)),
            cell_area(rect.lengths(), a.pipeline.resolution),
        )?),
        None => None,
    };
    let report = json!({
        "problem": entry.id(),
        "n": a.n,
        "delta": a.delta,
        "region": region,
        "resolution": a.pipeline.resolution,
        "exterior": options(&a.pipeline).exterior,
        "norms": norms,
        "diagnostics": sol.diagnostics,
        "seconds": seconds,
    });
    let report = serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)? + "\n";

    emit(a.out.as_deref(), &csv)?;
    let json_path: Option<PathBuf> = a.diagnostics.clone().or_else(|| a.out.as_ref().map(|p| p.with_extension("json")));
    match json_path {
        Some(p) => emit(Some(&p), &report)?,
        None => eprint!("{report}"),
    }
    Ok(())
}

pub fn converge(a: ConvergeArgs) -> CliResult {
    let entry = load_problem(&a.problem)?;
    let reference = match (a.reference_n, entry.spec.exact.is_some()) {
        (Some(n), _) => Reference::Finest { n },
        (None, true) => Reference::Exact,
        (None, false) => Reference::Finest { n: DEFAULT_REFERENCE_N },
    };
    let case = StudyCase {
        problem: entry.id().to_string(),
        spec: entry.spec.clone(),
        rect: entry.rect(a.delta[0])?,
        curve: entry.curve.clone(),
        options: options(&a.pipeline),
        reference,
        region: a.pipeline.region.into(),
        resolution: a.pipeline.resolution,
    };
    let report = convergence_study(&case, &a.n, &a.delta)?;
    if !report.failures.is_empty() {
        log::warn!("{} of {} cells failed", report.failures.len(), a.n.len() * a.delta.len());
    }
    emit(a.out.as_deref(), &report.to_csv())?;
    if let Some(path) = &a.json {
        emit(Some(path), &(report.to_json() + "\n"))?;
    }
    Ok(())
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

pub fn lebesgue(a: LebesgueArgs) -> CliResult {
    let config = SweepConfig {
        n_values: a.counts.clone(),
        k_values: a.k.clone(),
        delta: a.delta,
        length: a.length,
        resolution: a.resolution,
        route: a.route.into(),
    };
    let cells = cd_lebesgue_sweep::<f64>(&config);
    let mut csv = String::new();
    let _ = writeln!(csv, "{CSV_VERSION_LINE}");
    csv.push_str("n,k,delta,length,lambda,cofactor_bound,cofactor_bound_scaled,theorem1_bound,condition,error\n");
    let mut failed = 0;
    for c in &cells {
        let error = match &c.error {
            Some(e) => {
                failed += 1;
                format!("\"{}\"", e.replace('"', "\"\""))
            }
            None => String::new(),
        };
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            c.n,
            c.k,
            c.delta,
            c.length,
            opt(c.lambda),
            opt(c.cofactor_bound),
            opt(c.cofactor_bound_scaled),
            opt(c.theorem1_bound),
            opt(c.condition),
            error
        );
    }
    if failed > 0 {
        log::warn!("{failed} of {} cells failed", cells.len());
    }
    emit(a.out.as_deref(), &csv)?;
    Ok(())
}

pub fn grid_dump(a: GridDumpArgs) -> CliResult {
    let entry = load_problem(&a.problem)?;
    let rect = entry.rect(a.delta)?;
    let mut grid = Grid::uniform(&rect, a.n)?;
    if let Some(curve) = &entry.curve {
        grid = grid.classify(curve)?.relocate(curve, a.curve_samples)?;
    }
    emit(a.out.as_deref(), &grid.to_csv())?;
    Ok(())
}

pub fn catalog(a: CatalogArgs) -> CliResult {
    let params = ProblemParams::default();
    let infos = FAMILIES
        .iter()
        .map(|id| lookup::<f64>(id, &params).map(|e| e.info))
        .collect::<Result<Vec<_>, _>>()?;
    if a.json {
        let text = serde_json::to_string_pretty(&infos).map_err(anyhow::Error::from)?;
        println!("{text}");
    } else {
        let width = infos.iter().map(|i| i.id.len()).max().unwrap_or(0);
        for i in &infos {
            println!("{:width$}  {}", i.id, i.description);
        }
    }
    Ok(())
}
