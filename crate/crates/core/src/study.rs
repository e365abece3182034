//! Convergence studies over a sequence of uniformly refined meshes.

use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use crate::analysis::{compute_errors, Coefficients, ErrorReport};
use crate::assembly::{assemble_system, condition_number, solve_system, AssembledSystem};
use crate::error::{FemError, Result};
use crate::problem::ProblemSpec;
use crate::report::{ConvergenceTable, TableMeta, TableRow};
use crate::space::EnrichedSpace;

/// Mesh size `num / den`, kept exact so element counts are integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl FromStr for Rational {
    type Err = FemError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || FemError::InvalidInput(format!("expected a rational like 1/8, got {s:?}"));
        let (num, den) = match s.trim().split_once('/') {
            Some((n, d)) => (
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            ),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        if num == 0 || den == 0 {
            return Err(bad());
        }
        Ok(Self { num, den })
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Rational {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Number of elements of size `self` covering a domain of length `len`.
    pub fn elements_for(&self, len: f64) -> Result<usize> {
        let n = len * self.den as f64 / self.num as f64;
        let rounded = n.round();
        if rounded < 1.0 || (n - rounded).abs() > 1e-9 * n.max(1.0) {
            return Err(FemError::InvalidInput(format!(
                "h0 = {self} does not divide the domain length {len}"
            )));
        }
        Ok(rounded as usize)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub degree: usize,
    pub h0: Rational,
    pub levels: usize,
    /// Element count multiplier between levels.
    pub factor: usize,
    pub with_cond: bool,
    pub quad_points: usize,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            degree: 1,
            h0: Rational { num: 1, den: 8 },
            levels: 7,
            factor: 2,
            with_cond: false,
            quad_points: crate::assembly::DEFAULT_QUAD_POINTS,
        }
    }
}

/// Everything produced for a single mesh.
#[derive(Debug, Clone)]
pub struct LevelSolution {
    pub space: EnrichedSpace,
    pub system: AssembledSystem,
    pub coeffs: Coefficients,
}

impl LevelSolution {
    /// `||Ax - b|| / ||b||`
    pub fn relative_residual(&self) -> f64 {
        let x = nalgebra::DVector::from_column_slice(&self.coeffs.free);
        (&self.system.matrix * x - &self.system.rhs).norm() / self.system.rhs.norm()
    }
}

/// Build, assemble and solve on a uniform mesh with `n` elements.
pub fn solve_on_mesh(problem: &ProblemSpec, n: usize, degree: usize, quad_points: usize) -> Result<LevelSolution> {
    let mesh = problem.uniform_mesh(n)?;
    let space = problem.build_space(mesh, degree)?;
    let system = assemble_system(problem, &space, quad_points)?;
    let x = solve_system(&system)?;
    let coeffs = Coefficients {
        free: x.as_slice().to_vec(),
        lift: system.lift.clone(),
    };
    Ok(LevelSolution { space, system, coeffs })
}

#[derive(Debug, Clone)]
pub struct LevelOutcome {
    pub elements: usize,
    pub h: f64,
    pub report: ErrorReport,
    pub relative_residual: f64,
    pub warnings: Vec<String>,
}

/// Solve `problem` on every level and measure errors against its exact
/// solution. Meshes for all levels are validated before any solve.
pub fn run_levels(problem: &ProblemSpec, config: &StudyConfig) -> Result<Vec<LevelOutcome>> {
    let exact = problem
        .exact()
        .ok_or_else(|| FemError::InvalidInput("a convergence study needs an exact solution".into()))?;
    if config.levels == 0 {
        return Err(FemError::InvalidInput("at least one level is required".into()));
    }
    if config.factor < 2 {
        return Err(FemError::InvalidInput("refinement factor must be at least 2".into()));
    }
    let (a, b) = problem.domain();
    let n0 = config.h0.elements_for(b - a)?;
    let counts: Vec<usize> = (0..config.levels).map(|l| n0 * config.factor.pow(l as u32)).collect();
    for (level, &n) in counts.iter().enumerate() {
        problem
            .uniform_mesh(n)
            .map_err(|e| FemError::InvalidInput(format!("level {level} ({n} elements): {e}")))?;
    }

    counts
        .par_iter()
        .map(|&n| {
            let sol = solve_on_mesh(problem, n, config.degree, config.quad_points)?;
            let mut report = compute_errors(exact, &sol.space, &sol.coeffs, config.quad_points)?;
            if config.with_cond {
                report.cond = Some(condition_number(&sol.system.matrix));
            }
            Ok(LevelOutcome {
                elements: n,
                h: (b - a) / n as f64,
                report,
                relative_residual: sol.relative_residual(),
                warnings: sol.system.warnings.clone(),
            })
        })
        .collect()
}

/// Full convergence table for `problem`, labelled `label`.
pub fn run_convergence(problem: &ProblemSpec, label: &str, config: &StudyConfig) -> Result<ConvergenceTable> {
    let outcomes = run_levels(problem, config)?;
    Ok(tabulate(problem, label, config, &outcomes))
}

/// Assemble the table for outcomes produced by [`run_levels`].
pub fn tabulate(
    problem: &ProblemSpec,
    label: &str,
    config: &StudyConfig,
    outcomes: &[LevelOutcome],
) -> ConvergenceTable {
    let rows = outcomes
        .iter()
        .map(|o| TableRow {
            elements: o.elements,
            h: o.h,
            l2: o.report.l2,
            h1_broken: o.report.h1_broken,
            nodal: o.report.nodal_max,
            cond: o.report.cond,
        })
        .collect();
    let meta = TableMeta {
        problem: label.to_string(),
        degree: config.degree,
        quad_points: config.quad_points,
        h0: config.h0.to_string(),
        levels: config.levels,
        factor: config.factor,
        domain_length: problem.domain().1 - problem.domain().0,
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    ConvergenceTable::new(meta, rows)
}
