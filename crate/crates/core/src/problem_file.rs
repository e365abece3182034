//! JSON problem files.
//!
//! ```json
//! {
//!   "domain": [0.0, 1.0],
//!   "layers": [
//!     { "D": [1.0], "delta_conv": [0.0], "w": [0.0], "f": "manufactured" },
//!     { "D": [2.0], "f": [1.0, 0.0, -3.0] }
//!   ],
//!   "interfaces": [ { "alpha": 0.3, "kind": "implicit", "lambda": 0.5 } ],
//!   "bc": { "left": { "neumann": 0.0 }, "right": { "dirichlet": 0.0 } },
//!   "exact": [[0.0, 1.0], [1.0, -1.0]]
//! }
//! ```
//!
//! Polynomials are coefficient lists in ascending degree. `delta_conv` and
//! `w` default to zero. A `"manufactured"` source is derived from the exact
//! branch of its layer.

use std::path::Path;

use serde::Deserialize;

use crate::analysis::{Branch, ExactSolution};
use crate::bench::manufactured_rhs;
use crate::error::{FemError, Result};
use crate::poly::Polynomial;
use crate::problem::{BoundaryCondition, InterfaceSpec, Layer, ProblemSpec, Source};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileProblem {
    domain: [f64; 2],
    layers: Vec<FileLayer>,
    #[serde(default)]
    interfaces: Vec<FileInterface>,
    bc: FileBoundaries,
    #[serde(default)]
    exact: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileLayer {
    #[serde(rename = "D")]
    diffusivity: Vec<f64>,
    #[serde(default)]
    delta_conv: Vec<f64>,
    #[serde(default)]
    w: Vec<f64>,
    f: FileSource,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FileSource {
    Coefficients(Vec<f64>),
    Keyword(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileInterface {
    alpha: f64,
    kind: FileInterfaceKind,
    #[serde(default)]
    lambda: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FileInterfaceKind {
    Continuous,
    Implicit,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileBoundaries {
    left: FileBoundary,
    right: FileBoundary,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FileBoundary {
    Dirichlet(f64),
    Neumann(f64),
}

impl From<&FileBoundary> for BoundaryCondition {
    fn from(b: &FileBoundary) -> Self {
        match *b {
            FileBoundary::Dirichlet(v) => BoundaryCondition::Dirichlet(v),
            FileBoundary::Neumann(v) => BoundaryCondition::Neumann(v),
        }
    }
}

fn field_err(field: String, msg: impl std::fmt::Display) -> FemError {
    FemError::ProblemFile(format!("{field}: {msg}"))
}

/// Parse a problem from JSON text.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let file: FileProblem = serde_json::from_str(text).map_err(|e| FemError::ProblemFile(e.to_string()))?;

    let exact = match &file.exact {
        Some(branches) => {
            if branches.len() != file.layers.len() {
                return Err(field_err(
                    "exact".into(),
                    format!("expected {} branches, got {}", file.layers.len(), branches.len()),
                ));
            }
            Some(
                branches
                    .iter()
                    .map(|c| Branch::polynomial(Polynomial::new(c.clone())))
                    .collect::<Vec<_>>(),
            )
        }
        None => None,
    };

    let mut layers = Vec::with_capacity(file.layers.len());
    for (l, fl) in file.layers.iter().enumerate() {
        let diffusivity = Polynomial::new(fl.diffusivity.clone());
        let convection = Polynomial::new(fl.delta_conv.clone());
        let reaction = Polynomial::new(fl.w.clone());
        let source = match &fl.f {
            FileSource::Coefficients(c) => Source::Polynomial(Polynomial::new(c.clone())),
            FileSource::Keyword(k) if k == "manufactured" => {
                let branch = exact
                    .as_ref()
                    .map(|b| &b[l])
                    .ok_or_else(|| field_err(format!("layers[{l}].f"), "\"manufactured\" requires \"exact\""))?;
                Source::Polynomial(manufactured_rhs(branch, &diffusivity, &convection, &reaction)?)
            }
            FileSource::Keyword(k) => {
                return Err(field_err(
                    format!("layers[{l}].f"),
                    format!("expected a coefficient list or \"manufactured\", got {k:?}"),
                ))
            }
        };
        layers.push(Layer {
            diffusivity,
            convection,
            reaction,
            source,
        });
    }

    let mut interfaces = Vec::with_capacity(file.interfaces.len());
    for (i, fi) in file.interfaces.iter().enumerate() {
        interfaces.push(match fi.kind {
            FileInterfaceKind::Continuous => InterfaceSpec::continuous(fi.alpha),
            FileInterfaceKind::Implicit => {
                let lambda = fi
                    .lambda
                    .ok_or_else(|| field_err(format!("interfaces[{i}].lambda"), "required for implicit interfaces"))?;
                InterfaceSpec::implicit(fi.alpha, lambda)
            }
        });
    }
    let breakpoints: Vec<f64> = interfaces.iter().map(|i| i.alpha).collect();

    let problem = ProblemSpec::new(
        (file.domain[0], file.domain[1]),
        layers,
        interfaces,
        (&file.bc.left).into(),
        (&file.bc.right).into(),
    )
    .map_err(|e| FemError::ProblemFile(e.to_string()))?;

    match exact {
        Some(branches) => {
            let exact = ExactSolution::new(breakpoints, branches)?;
            problem.with_exact(exact).map_err(|e| field_err("exact".into(), e))
        }
        None => Ok(problem),
    }
}

pub fn load_problem(path: &Path) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| FemError::ProblemFile(format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| match e {
        FemError::ProblemFile(msg) => FemError::ProblemFile(format!("{}: {msg}", path.display())),
        other => other,
    })
}
