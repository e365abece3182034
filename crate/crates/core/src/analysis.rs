//! Error measurement, the enriched interpolation operator, and observed
//! convergence orders.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assembly::GaussLegendre;
use crate::enrichment::Side;
use crate::error::{FemError, Result};
use crate::poly::Polynomial;
use crate::problem::{ProblemSpec, ScalarFn};
use crate::space::{Dof, EnrichedSpace};

/// One smooth piece of a piecewise exact solution. Each branch must be
/// evaluable on the whole domain: the interpolation operator uses the
/// branches on both sides of an interface as extensions.
#[derive(Clone)]
pub enum Branch {
    Polynomial { p: Polynomial, dp: Polynomial },
    Function { value: ScalarFn, derivative: ScalarFn },
}

impl Branch {
    pub fn polynomial(p: Polynomial) -> Self {
        let dp = p.derivative();
        Branch::Polynomial { p, dp }
    }

    pub fn eval(&self, x: f64) -> (f64, f64) {
        match self {
            Branch::Polynomial { p, dp } => (p.eval(x), dp.eval(x)),
            Branch::Function { value, derivative } => (value(x), derivative(x)),
        }
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match self {
            Branch::Polynomial { p, .. } => Some(p),
            Branch::Function { .. } => None,
        }
    }
}

impl fmt::Debug for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Polynomial { p, .. } => f.debug_tuple("Polynomial").field(p).finish(),
            Branch::Function { .. } => f.write_str("Function(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExactSolution {
    breakpoints: Vec<f64>,
    branches: Vec<Branch>,
}

impl ExactSolution {
    /// `branches[l]` is the solution on layer `l`; `breakpoints` are the
    /// interior interfaces in increasing order.
    pub fn new(breakpoints: Vec<f64>, branches: Vec<Branch>) -> Result<Self> {
        if branches.len() != breakpoints.len() + 1 {
            return Err(FemError::InvalidInput(format!(
                "{} breakpoints require {} branches, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                branches.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(FemError::InvalidInput("breakpoints must be strictly increasing".into()));
        }
        Ok(Self { breakpoints, branches })
    }

    pub fn polynomial(breakpoints: Vec<f64>, branches: Vec<Polynomial>) -> Result<Self> {
        Self::new(breakpoints, branches.into_iter().map(Branch::polynomial).collect())
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn layer_at(&self, x: f64, side: Side) -> usize {
        self.breakpoints
            .iter()
            .take_while(|&&a| a < x || (a == x && side == Side::Right))
            .count()
    }

    pub fn eval(&self, x: f64, side: Side) -> (f64, f64) {
        self.branches[self.layer_at(x, side)].eval(x)
    }

    /// `[p]` at breakpoint `i`.
    pub fn jump(&self, i: usize) -> f64 {
        let a = self.breakpoints[i];
        self.branches[i + 1].eval(a).0 - self.branches[i].eval(a).0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub l2: f64,
    pub h1_broken: f64,
    pub nodal_max: f64,
    pub cond: Option<f64>,
}

/// Free and Dirichlet-constrained coefficients of a discrete function.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub free: Vec<f64>,
    pub lift: Vec<f64>,
}

/// The enriched P1 interpolant `pi_h p + pi_h(p2' - p1') psi + delta psi`
/// with `delta = -[p]_alpha / (alpha - x_{k+1})`, one correction per
/// interface.
pub fn interpolate_enriched(exact: &ExactSolution, space: &EnrichedSpace) -> Result<Coefficients> {
    if space.degree() != 1 {
        return Err(FemError::Unsupported(
            "the enriched interpolation operator on degree 2 spaces".into(),
        ));
    }
    let mesh = space.mesh();
    let hits = mesh.interface_hits();
    if hits.len() != exact.breakpoints().len() || hits.iter().zip(exact.breakpoints()).any(|(h, a)| h.alpha != *a) {
        return Err(FemError::InvalidInput(
            "exact solution breakpoints differ from the mesh interfaces".into(),
        ));
    }

    let mut free = vec![0.0; space.n_free()];
    let mut lift = vec![0.0; space.constrained_dofs().len()];
    let mut set = |dof: usize, v: f64| match space.free_index(dof) {
        Some(i) => free[i] = v,
        None => lift[space.constrained_index(dof).unwrap()] = v,
    };

    for (dof, d) in space.dofs().iter().enumerate() {
        if let Dof::Standard { x, .. } = *d {
            set(dof, exact.eval(x, Side::Left).0);
        }
    }
    for (i, psi) in space.enrichments().iter().enumerate() {
        let p1 = &exact.branches()[i];
        let p2 = &exact.branches()[i + 1];
        let alpha = psi.alpha();
        let jump = p2.eval(alpha).0 - p1.eval(alpha).0;
        let delta = -jump / (alpha - psi.x_right());
        let slope_gap = |x: f64| p2.eval(x).1 - p1.eval(x).1;
        let [d0, d1] = space.enrichment_dofs(i);
        set(d0, slope_gap(psi.x_left()) + delta);
        set(d1, slope_gap(psi.x_right()) + delta);
    }
    Ok(Coefficients { free, lift })
}

/// L2 norm and H1 seminorm of `g` over the given intervals; `g` returns
/// value and derivative.
pub fn function_norms(intervals: &[(f64, f64)], quad: &GaussLegendre, g: impl Fn(f64) -> (f64, f64)) -> (f64, f64) {
    let (mut l2, mut h1) = (0.0, 0.0);
    for &(lo, hi) in intervals {
        for (x, w) in quad.mapped(lo, hi) {
            let (v, d) = g(x);
            l2 += w * v * v;
            h1 += w * d * d;
        }
    }
    (l2.sqrt(), h1.sqrt())
}

/// L2, broken H1 seminorm, and interior nodal errors of the discrete
/// function `coeffs` against `exact`. Elements are split at every
/// breakpoint of `exact` they contain.
pub fn compute_errors(
    exact: &ExactSolution,
    space: &EnrichedSpace,
    coeffs: &Coefficients,
    quad_points: usize,
) -> Result<ErrorReport> {
    space.check_lengths(&coeffs.free, &coeffs.lift)?;
    let quad = GaussLegendre::new(quad_points)?;
    let mesh = space.mesh();
    let mut buf = Vec::with_capacity(5);
    let (mut l2, mut h1) = (0.0, 0.0);

    for e in 0..mesh.n_elements() {
        let (xl, xr) = mesh.element(e);
        let mut cuts = vec![xl];
        cuts.extend(exact.breakpoints().iter().copied().filter(|&a| a > xl && a < xr));
        cuts.push(xr);
        for (k, piece) in cuts.windows(2).enumerate() {
            let side = if k == 0 { Side::Left } else { Side::Right };
            let branch = &exact.branches()[exact.layer_at(0.5 * (piece[0] + piece[1]), side)];
            for (x, w) in quad.mapped(piece[0], piece[1]) {
                let (uh, duh) = space.eval_in_element(e, &coeffs.free, &coeffs.lift, x, side, &mut buf);
                let (u, du) = branch.eval(x);
                l2 += w * (u - uh).powi(2);
                h1 += w * (du - duh).powi(2);
            }
        }
    }

    let nodes = mesh.nodes();
    let mut nodal_max: f64 = 0.0;
    for (node, &x) in nodes.iter().enumerate().take(nodes.len() - 1).skip(1) {
        let (uh, _) = space.eval_in_element(node, &coeffs.free, &coeffs.lift, x, Side::Left, &mut buf);
        let (u, _) = exact.eval(x, Side::Left);
        nodal_max = nodal_max.max((u - uh).abs());
    }

    Ok(ErrorReport {
        l2: l2.sqrt(),
        h1_broken: h1.sqrt(),
        nodal_max,
        cond: None,
    })
}

/// Pairwise orders `log(e_i / e_{i+1}) / log(h_i / h_{i+1})`.
pub fn observed_orders(h: &[f64], errors: &[f64]) -> Result<Vec<f64>> {
    if h.len() != errors.len() {
        return Err(FemError::LengthMismatch {
            expected: h.len(),
            got: errors.len(),
        });
    }
    if h.len() < 2 {
        return Err(FemError::InvalidInput(
            "at least two refinement levels are needed".into(),
        ));
    }
    if let Some((index, &value)) = errors.iter().enumerate().find(|(_, &e)| !(e > 0.0)) {
        return Err(FemError::NonPositiveError { index, value });
    }
    Ok(h.windows(2)
        .zip(errors.windows(2))
        .map(|(h, e)| (e[0] / e[1]).ln() / (h[0] / h[1]).ln())
        .collect())
}

/// Mean of the last `k` entries (all entries if fewer).
pub fn mean_of_last(orders: &[f64], k: usize) -> f64 {
    let tail = &orders[orders.len().saturating_sub(k)..];
    tail.iter().sum::<f64>() / tail.len() as f64
}

/// `sup D / inf D` sampled at Gauss points on every layer.
pub fn coefficient_contrast(problem: &ProblemSpec) -> Result<f64> {
    let quad = GaussLegendre::new(8)?;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (l, layer) in problem.layers().iter().enumerate() {
        let (a, b) = problem.layer_bounds(l);
        for x in quad.mapped(a, b).map(|(x, _)| x).chain([a, b]) {
            let d = layer.diffusivity.eval(x);
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    if !(lo > 0.0) {
        return Err(FemError::InvalidInput(format!(
            "diffusivity infimum {lo} is not positive"
        )));
    }
    Ok(hi / lo)
}
