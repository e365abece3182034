//! Convergence studies for the benchmark catalog or a JSON problem file.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use efem::bench::catalog_problem;
use efem::problem_file::load_problem;
use efem::report::{emit_report, ReportFormat};
use efem::study::{run_levels, tabulate, Rational, StudyConfig};
use efem::{FemError, ProblemSpec};

#[derive(Debug, Parser)]
#[command(
    name = "efem",
    version,
    about = "Enriched FEM convergence studies for 1D interface problems"
)]
struct Args {
    /// Benchmark id (1-6) or path to a JSON problem file
    #[arg(long)]
    problem: String,

    /// Polynomial degree; defaults to the benchmark's degree, or 1 for files
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    degree: Option<u8>,

    /// Coarsest mesh size as a rational, e.g. 1/8
    #[arg(long, default_value = "1/8")]
    h0: Rational,

    /// Number of refinement levels
    #[arg(long, default_value_t = 7)]
    levels: usize,

    /// Element count multiplier between levels
    #[arg(long, default_value_t = 2)]
    factor: usize,

    /// Compute the 2-norm condition number of every stiffness matrix
    #[arg(long)]
    cond: bool,

    /// Gauss-Legendre points per (sub)interval
    #[arg(long, default_value_t = efem::assembly::DEFAULT_QUAD_POINTS)]
    quad: usize,

    /// Output format: csv, md or json
    #[arg(long, default_value = "md")]
    format: ReportFormat,

    /// Output file, or `stdout`
    #[arg(long, default_value = "stdout")]
    out: String,
}

fn load(spec: &str) -> Result<(ProblemSpec, String, usize), FemError> {
    if let Ok(id) = spec.parse::<u8>() {
        let b = catalog_problem(id)?;
        return Ok((b.problem, format!("Problem {id}"), b.degree));
    }
    let path = PathBuf::from(spec);
    let problem = load_problem(&path)?;
    Ok((problem, path.display().to_string(), 1))
}

fn run(args: &Args) -> Result<String, FemError> {
    let (problem, label, default_degree) = load(&args.problem)?;
    let config = StudyConfig {
        degree: args.degree.map_or(default_degree, usize::from),
        h0: args.h0,
        levels: args.levels,
        factor: args.factor,
        with_cond: args.cond,
        quad_points: args.quad,
    };
    let outcomes = run_levels(&problem, &config)?;
    for o in &outcomes {
        for w in &o.warnings {
            eprintln!("warning: {} elements: {w}", o.elements);
        }
    }
    emit_report(&tabulate(&problem, &label, &config, &outcomes), args.format)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let text = match run(&args) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_numerical() { 2 } else { 1 });
        }
    };
    let written = if args.out == "stdout" || args.out == "-" {
        use std::io::Write;
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::fs::write(&args.out, text)
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", args.out);
            ExitCode::from(1)
        }
    }
}
