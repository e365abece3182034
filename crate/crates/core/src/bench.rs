//! Benchmark catalog: the multilayer porous wall model of a drug-eluting
//! stent, with manufactured polynomial solutions.
//!
//! The wall has up to four layers. The coefficients of layers 1..3 are
//! chained through the layer index `n` so that the polynomial branches
//! below satisfy flux continuity at every interface:
//!
//! | layer | interval  | D  | delta  | exact            |
//! |-------|-----------|----|--------|------------------|
//! | 0     | [0, 1/9]  | 1  | 0      | x^(n-1) / 30     |
//! | 1     | [1/9,1/3] | D1 | delta1 | x^n / 3          |
//! | 2     | [1/3,2/3] | D2 | delta2 | x^(n+1)          |
//! | 3     | [2/3, 1]  | D3 | delta3 | 3 (1-x) x^(n+1)  |
//!
//! Problems 1-3 use P1 elements; 4-6 repeat them with P2.

use crate::analysis::{Branch, ExactSolution};
use crate::error::{FemError, Result};
use crate::poly::Polynomial;
use crate::problem::{BoundaryCondition, InterfaceSpec, Layer, ProblemSpec, Source};

/// Layer index exponent used throughout the catalog.
pub const WALL_N: u32 = 4;

pub const ALPHA_INJECTION: f64 = 1.0 / 9.0;
pub const ALPHA_1: f64 = 1.0 / 3.0;
pub const ALPHA_2: f64 = 2.0 / 3.0;

/// Diffusivities `D0..D3`, convection parameters `delta0..delta3` and the
/// implicit jump coefficient of the injection interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallCoefficients {
    pub diffusivity: [f64; 4],
    pub convection: [f64; 4],
    pub lambda: f64,
}

impl WallCoefficients {
    pub fn new(n: u32) -> Self {
        let n = n as f64;
        let d0 = 1.0;
        let d1 = 18.0 * (n - 1.0) / (10.0 * n);
        let delta1 = 0.5 * (9.0 * n * d1 - 8.1 * (n - 1.0));
        let d2 = (6.0 * n * d1 - 2.0 * delta1) / (3.0 * (n + 1.0));
        let delta2 = 0.5 * (3.0 * (n + 1.0) * d2 - 3.0 * n * d1 + 2.0 * delta1);
        let d3 = (8.0 * delta2 - 3.0 * (n + 1.0) * d2) / (3.0 * (n + 5.0));
        let delta3 = 0.25 * (3.0 * (n - 1.0) * d3 - 3.0 * (n + 1.0) * d2 + 4.0 * delta2);
        // 1 / (81 (n-1) D0): the reading under which the exact branches
        // satisfy [u] = lambda D0 u'(alpha^-)
        let lambda = 1.0 / (81.0 * (n - 1.0) * d0);
        Self {
            diffusivity: [d0, d1, d2, d3],
            convection: [0.0, delta1, delta2, delta3],
            lambda,
        }
    }
}

/// Exact branches `u0..u3` for layer exponent `n`.
pub fn wall_branches(n: u32) -> [Polynomial; 4] {
    let n = n as usize;
    let x_np1 = Polynomial::monomial(1.0, n + 1);
    [
        Polynomial::monomial(1.0 / 30.0, n - 1),
        Polynomial::monomial(1.0 / 3.0, n),
        x_np1.clone(),
        &Polynomial::new(vec![3.0, -3.0]) * &x_np1,
    ]
}

#[derive(Debug, Clone)]
pub struct BenchmarkProblem {
    pub id: u8,
    /// Problem with the exact solution attached.
    pub problem: ProblemSpec,
    pub degree: usize,
}

impl BenchmarkProblem {
    pub fn exact(&self) -> &ExactSolution {
        self.problem.exact().expect("catalog problems carry exact solutions")
    }
}

/// `f = -(D u')' + (2 delta u)' + w u` by polynomial arithmetic.
pub fn manufactured_rhs(
    exact: &Branch,
    diffusivity: &Polynomial,
    convection: &Polynomial,
    reaction: &Polynomial,
) -> Result<Polynomial> {
    let u = exact
        .as_polynomial()
        .ok_or(FemError::NotPolynomial("manufactured source"))?;
    let du = u.derivative();
    let diffusion = -&(diffusivity * &du).derivative();
    let advection = (&convection.scale(2.0) * u).derivative();
    Ok(&(&diffusion + &advection) + &(reaction * u))
}

/// Benchmark `id` in `1..=6`.
pub fn catalog_problem(id: u8) -> Result<BenchmarkProblem> {
    let (layer_ids, reactions, degree): (&[usize], &[f64], usize) = match id {
        1 | 4 => (&[0, 1], &[0.0, 0.0], 1),
        2 | 5 => (&[1, 2, 3], &[10.0, 1.0, 0.1], 1),
        3 | 6 => (&[0, 1, 2, 3], &[0.0, 10.0, 1.0, 0.1], 1),
        _ => {
            return Err(FemError::InvalidInput(format!(
                "benchmark id must be in 1..=6, got {id}"
            )))
        }
    };
    let degree = if id > 3 { 2 } else { degree };
    let coef = WallCoefficients::new(WALL_N);
    let all_branches = wall_branches(WALL_N);

    let mut layers = Vec::with_capacity(layer_ids.len());
    let mut branches = Vec::with_capacity(layer_ids.len());
    for (&l, &w) in layer_ids.iter().zip(reactions) {
        let d = Polynomial::constant(coef.diffusivity[l]);
        let delta = Polynomial::constant(coef.convection[l]);
        let w = Polynomial::constant(w);
        let branch = Branch::polynomial(all_branches[l].clone());
        let f = manufactured_rhs(&branch, &d, &delta, &w)?;
        layers.push(Layer {
            diffusivity: d,
            convection: delta,
            reaction: w,
            source: Source::Polynomial(f),
        });
        branches.push(branch);
    }

    let interfaces: Vec<InterfaceSpec> = layer_ids
        .windows(2)
        .map(|pair| match pair[1] {
            1 => InterfaceSpec::implicit(ALPHA_INJECTION, coef.lambda),
            2 => InterfaceSpec::continuous(ALPHA_1),
            _ => InterfaceSpec::continuous(ALPHA_2),
        })
        .collect();
    let breakpoints = interfaces.iter().map(|i| i.alpha).collect();
    let right_value = all_branches[*layer_ids.last().unwrap()].eval(1.0);

    let exact = ExactSolution::new(breakpoints, branches)?;
    let problem = ProblemSpec::new(
        (0.0, 1.0),
        layers,
        interfaces,
        BoundaryCondition::Neumann(0.0),
        BoundaryCondition::Dirichlet(right_value),
    )?
    .with_exact(exact)?;

    Ok(BenchmarkProblem { id, problem, degree })
}
