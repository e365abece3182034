//! Boundary value problem description.
//!
//! The strong form on each layer is
//!
//! ```text
//! (-D u' + 2 delta u)' + w u = f
//! ```
//!
//! where `D > 0`, `delta` (convection) and `w >= 0` are polynomials per
//! layer. Layers are separated by the interfaces.

use std::fmt;
use std::sync::Arc;

use crate::analysis::ExactSolution;
use crate::enrichment::{gamma_from_lambda, EnrichmentFunction, Side};
use crate::error::{FemError, Result};
use crate::mesh::Mesh1D;
use crate::poly::Polynomial;
use crate::space::{BoundaryKind, EnrichedSpace};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Sample count per layer for the sign checks on `D` and `w`.
const SIGN_SAMPLES: usize = 64;

#[derive(Clone)]
pub enum Source {
    Polynomial(Polynomial),
    Function(ScalarFn),
}

impl Source {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Source::Polynomial(p) => p.eval(x),
            Source::Function(f) => f(x),
        }
    }
}

impl fmt::Debug for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Polynomial(p) => f.debug_tuple("Polynomial").field(p).finish(),
            Source::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// Coefficients on one layer.
#[derive(Debug, Clone)]
pub struct Layer {
    pub diffusivity: Polynomial,
    pub convection: Polynomial,
    pub reaction: Polynomial,
    pub source: Source,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InterfaceKind {
    /// `[u] = 0` and continuous flux.
    Continuous,
    /// `[u] = lambda D^- u'(alpha^-)` and continuous flux.
    Implicit { lambda: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceSpec {
    pub alpha: f64,
    pub kind: InterfaceKind,
}

impl InterfaceSpec {
    pub fn continuous(alpha: f64) -> Self {
        Self {
            alpha,
            kind: InterfaceKind::Continuous,
        }
    }

    pub fn implicit(alpha: f64, lambda: f64) -> Self {
        Self {
            alpha,
            kind: InterfaceKind::Implicit { lambda },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    Dirichlet(f64),
    /// Prescribed flux. Only zero flux is supported by the assembler.
    Neumann(f64),
}

impl BoundaryCondition {
    pub fn kind(&self) -> BoundaryKind {
        match self {
            BoundaryCondition::Dirichlet(_) => BoundaryKind::Dirichlet,
            BoundaryCondition::Neumann(_) => BoundaryKind::Neumann,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProblemSpec {
    a: f64,
    b: f64,
    layers: Vec<Layer>,
    interfaces: Vec<InterfaceSpec>,
    bc_left: BoundaryCondition,
    bc_right: BoundaryCondition,
    exact: Option<ExactSolution>,
}

impl ProblemSpec {
    pub fn new(
        domain: (f64, f64),
        layers: Vec<Layer>,
        interfaces: Vec<InterfaceSpec>,
        bc_left: BoundaryCondition,
        bc_right: BoundaryCondition,
    ) -> Result<Self> {
        let (a, b) = domain;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(FemError::InvalidInput(format!("domain requires a < b, got [{a}, {b}]")));
        }
        if layers.len() != interfaces.len() + 1 {
            return Err(FemError::InvalidInput(format!(
                "{} interfaces require {} layers, got {}",
                interfaces.len(),
                interfaces.len() + 1,
                layers.len()
            )));
        }
        let mut prev = a;
        for (i, iface) in interfaces.iter().enumerate() {
            if !(iface.alpha > prev && iface.alpha < b) {
                return Err(FemError::InvalidInput(format!(
                    "interface {i} at {} must be strictly increasing inside ({a}, {b})",
                    iface.alpha
                )));
            }
            prev = iface.alpha;
            if let InterfaceKind::Implicit { lambda } = iface.kind {
                if !(lambda > 0.0 && lambda.is_finite()) {
                    return Err(FemError::InvalidInput(format!(
                        "interface {i}: implicit jump coefficient must be positive, got {lambda}"
                    )));
                }
            }
        }
        let problem = Self {
            a,
            b,
            layers,
            interfaces,
            bc_left,
            bc_right,
            exact: None,
        };
        for (l, layer) in problem.layers.iter().enumerate() {
            let (lo, hi) = problem.layer_bounds(l);
            for s in 0..=SIGN_SAMPLES {
                let x = lo + (hi - lo) * s as f64 / SIGN_SAMPLES as f64;
                let d = layer.diffusivity.eval(x);
                if !(d > 0.0) {
                    return Err(FemError::InvalidInput(format!(
                        "layer {l}: diffusivity must be positive, got {d} at x = {x}"
                    )));
                }
                let w = layer.reaction.eval(x);
                if !(w >= 0.0) {
                    return Err(FemError::InvalidInput(format!(
                        "layer {l}: reaction must be non-negative, got {w} at x = {x}"
                    )));
                }
            }
        }
        Ok(problem)
    }

    /// Attach an exact solution after checking its layer structure.
    pub fn with_exact(mut self, exact: ExactSolution) -> Result<Self> {
        if exact.breakpoints().len() != self.interfaces.len()
            || exact
                .breakpoints()
                .iter()
                .zip(&self.interfaces)
                .any(|(x, i)| *x != i.alpha)
        {
            return Err(FemError::InvalidInput(
                "exact solution breakpoints must equal the interfaces".into(),
            ));
        }
        for (i, iface) in self.interfaces.iter().enumerate() {
            if iface.kind == InterfaceKind::Continuous {
                let jump = exact.jump(i);
                if jump.abs() > 1e-12 {
                    return Err(FemError::InvalidInput(format!(
                        "exact solution jumps by {jump:e} at continuous interface {i}"
                    )));
                }
            }
        }
        self.exact = Some(exact);
        Ok(self)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn interfaces(&self) -> &[InterfaceSpec] {
        &self.interfaces
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.interfaces.iter().map(|i| i.alpha).collect()
    }

    pub fn bc(&self) -> (BoundaryCondition, BoundaryCondition) {
        (self.bc_left, self.bc_right)
    }

    pub fn exact(&self) -> Option<&ExactSolution> {
        self.exact.as_ref()
    }

    pub fn layer_bounds(&self, l: usize) -> (f64, f64) {
        let lo = if l == 0 { self.a } else { self.interfaces[l - 1].alpha };
        let hi = self.interfaces.get(l).map_or(self.b, |i| i.alpha);
        (lo, hi)
    }

    /// Layer owning `x`; at an interface `side` decides.
    pub fn layer_at(&self, x: f64, side: Side) -> usize {
        self.interfaces
            .iter()
            .take_while(|i| i.alpha < x || (i.alpha == x && side == Side::Right))
            .count()
    }

    /// Jump parameter of interface `i`: zero when continuous, otherwise
    /// `-lambda D^- D^+ / [D]` with the one-sided diffusivities at `alpha`.
    pub fn interface_gamma(&self, i: usize) -> Result<f64> {
        let iface = &self.interfaces[i];
        match iface.kind {
            InterfaceKind::Continuous => Ok(0.0),
            InterfaceKind::Implicit { lambda } => {
                let beta_minus = self.layers[i].diffusivity.eval(iface.alpha);
                let beta_plus = self.layers[i + 1].diffusivity.eval(iface.alpha);
                gamma_from_lambda(lambda, beta_minus, beta_plus)
            }
        }
    }

    pub fn uniform_mesh(&self, n: usize) -> Result<Mesh1D> {
        Mesh1D::uniform(self.a, self.b, n, &self.alphas())
    }

    /// One enrichment function per interface of `mesh`.
    pub fn enrichments(&self, mesh: &Mesh1D) -> Result<Vec<EnrichmentFunction>> {
        mesh.interface_hits()
            .iter()
            .map(|hit| {
                let (xl, xr) = mesh.element(hit.element);
                let gamma = self.interface_gamma(hit.interface)?;
                EnrichmentFunction::new(hit.element, xl, xr, hit.alpha, gamma)
            })
            .collect()
    }

    pub fn build_space(&self, mesh: Mesh1D, degree: usize) -> Result<EnrichedSpace> {
        if mesh.a() != self.a || mesh.b() != self.b {
            return Err(FemError::InvalidInput("mesh does not cover the problem domain".into()));
        }
        let alphas = self.alphas();
        if mesh.interface_hits().len() != alphas.len()
            || mesh.interface_hits().iter().zip(&alphas).any(|(h, a)| h.alpha != *a)
        {
            return Err(FemError::InvalidInput("mesh interfaces differ from the problem".into()));
        }
        let psis = self.enrichments(&mesh)?;
        EnrichedSpace::new(mesh, degree, psis, self.bc_left.kind(), self.bc_right.kind())
    }

    /// Dirichlet values in the order of [`EnrichedSpace::constrained_dofs`].
    pub fn lift_values(&self) -> Vec<f64> {
        [self.bc_left, self.bc_right]
            .iter()
            .filter_map(|bc| match bc {
                BoundaryCondition::Dirichlet(v) => Some(*v),
                BoundaryCondition::Neumann(_) => None,
            })
            .collect()
    }
}
