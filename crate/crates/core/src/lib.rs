//! Enriched unfitted finite elements for one-dimensional elliptic interface
//! problems.
//!
//! The solution of `(-D u' + 2 delta u)' + w u = f` may jump across interior
//! interface points. Implicit (Robin-type) interfaces carry the condition
//! `[u] = lambda * D^- u'(alpha^-)` together with flux continuity; continuous
//! interfaces carry `[u] = 0`. Meshes are not fitted to the interfaces: each
//! interface element is enriched with a piecewise-linear function whose jump
//! is tied to its slope jump through a single parameter `gamma`.
//!
//! Module map:
//! - [`mesh`]: partitions and interface location.
//! - [`enrichment`]: the enrichment function and `gamma`.
//! - [`space`]: P1/P2 Lagrange spaces with enrichment degrees of freedom.
//! - [`problem`]: boundary value problem description.
//! - [`assembly`]: quadrature, Galerkin assembly, dense solve, conditioning.
//! - [`analysis`]: error norms, interpolation operator, observed orders.
//! - [`bench`]: the multilayer wall benchmark catalog.
//! - [`study`], [`report`], [`problem_file`]: convergence driver and I/O.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod assembly;
pub mod bench;
pub mod enrichment;
pub mod error;
pub mod mesh;
pub mod poly;
pub mod problem;
pub mod problem_file;
pub mod report;
pub mod space;
pub mod study;

pub use analysis::{ErrorReport, ExactSolution};
pub use assembly::{AssembledSystem, GaussLegendre};
pub use bench::BenchmarkProblem;
pub use enrichment::{EnrichmentFunction, Side};
pub use error::{FemError, Result};
pub use mesh::Mesh1D;
pub use poly::Polynomial;
pub use problem::{BoundaryCondition, InterfaceKind, InterfaceSpec, Layer, ProblemSpec};
pub use report::ConvergenceTable;
pub use space::EnrichedSpace;
