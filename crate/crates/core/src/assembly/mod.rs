//! Galerkin assembly of the enriched discrete problem.
//!
//! Integrating the strong form by parts on every layer gives the bilinear
//! form
//!
//! ```text
//! a(u, q) = int (D u' - 2 delta u) q' + int w u q + sum_implicit [u][q] / lambda
//! ```
//!
//! with zero-flux Neumann ends contributing nothing. Dirichlet ends are
//! handled by a lift: constrained coefficients are moved to the right-hand
//! side and the matrix only couples free dofs.

mod quadrature;
mod solve;

use nalgebra::{DMatrix, DVector};

pub use quadrature::{GaussLegendre, MAX_POINTS};
pub use solve::{condition_number, min_real_eigenvalue, solve_dense, PIVOT_TOL, RESIDUAL_TOL};

use crate::enrichment::Side;
use crate::error::{FemError, Result};
use crate::problem::{BoundaryCondition, InterfaceKind, ProblemSpec};
use crate::space::{BasisValue, EnrichedSpace};

/// Points per (sub-)interval used when the caller has no preference.
pub const DEFAULT_QUAD_POINTS: usize = 6;

/// Gauss-Legendre rule on `[-1, 1]`.
pub fn quadrature_rule(npts: usize) -> Result<GaussLegendre> {
    GaussLegendre::new(npts)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssemblyOptions {
    pub quad_points: usize,
    /// Include the `[u][q] / lambda` terms of implicit interfaces.
    pub jump_terms: bool,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        Self {
            quad_points: DEFAULT_QUAD_POINTS,
            jump_terms: true,
        }
    }
}

/// Free-dof linear system.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub matrix: DMatrix<f64>,
    /// Load vector with the Dirichlet lift already subtracted.
    pub rhs: DVector<f64>,
    /// Dirichlet values in constrained-dof order.
    pub lift: Vec<f64>,
    pub warnings: Vec<String>,
}

impl AssembledSystem {
    pub fn n_free(&self) -> usize {
        self.rhs.len()
    }
}

pub fn assemble_system(problem: &ProblemSpec, space: &EnrichedSpace, quad_points: usize) -> Result<AssembledSystem> {
    assemble_system_with(
        problem,
        space,
        &AssemblyOptions {
            quad_points,
            ..Default::default()
        },
    )
}

pub fn assemble_system_with(
    problem: &ProblemSpec,
    space: &EnrichedSpace,
    opts: &AssemblyOptions,
) -> Result<AssembledSystem> {
    check_compatible(problem, space)?;
    let quad = GaussLegendre::new(opts.quad_points)?;
    let mut warnings = Vec::new();
    if opts.quad_points < space.degree() + 3 {
        warnings.push(format!(
            "{} quadrature points may be too coarse for degree {} (recommended >= {})",
            opts.quad_points,
            space.degree(),
            space.degree() + 3
        ));
    }

    let n = space.n_free();
    let lift = problem.lift_values();
    let mut matrix = DMatrix::<f64>::zeros(n, n);
    let mut rhs = DVector::<f64>::zeros(n);
    let mesh = space.mesh();
    let mut basis: Vec<BasisValue> = Vec::with_capacity(5);
    let mut local = [[0.0f64; 5]; 5];
    let mut local_rhs = [0.0f64; 5];
    let mut dofs = [0usize; 5];

    for e in 0..mesh.n_elements() {
        let (xl, xr) = mesh.element(e);
        let pieces: Vec<(f64, f64, Side)> = match mesh.hit_in_element(e) {
            Some(hit) => vec![(xl, hit.alpha, Side::Left), (hit.alpha, xr, Side::Right)],
            None => vec![(xl, xr, Side::Left)],
        };
        for row in local.iter_mut() {
            row.fill(0.0);
        }
        local_rhs.fill(0.0);
        let mut n_local = 0;

        for (lo, hi, side) in pieces {
            let layer = &problem.layers()[problem.layer_at(0.5 * (lo + hi), side)];
            for (x, w) in quad.mapped(lo, hi) {
                space.element_basis(e, x, side, &mut basis);
                n_local = basis.len();
                let d = layer.diffusivity.eval(x);
                let c = 2.0 * layer.convection.eval(x);
                let r = layer.reaction.eval(x);
                let f = layer.source.eval(x);
                for (i, bi) in basis.iter().enumerate() {
                    dofs[i] = bi.dof;
                    local_rhs[i] += w * f * bi.value;
                    for (j, bj) in basis.iter().enumerate() {
                        local[i][j] +=
                            w * ((d * bj.derivative - c * bj.value) * bi.derivative + r * bj.value * bi.value);
                    }
                }
            }
        }

        for i in 0..n_local {
            let Some(fi) = space.free_index(dofs[i]) else {
                continue;
            };
            rhs[fi] += local_rhs[i];
            for j in 0..n_local {
                match space.free_index(dofs[j]) {
                    Some(fj) => matrix[(fi, fj)] += local[i][j],
                    None => {
                        let k = space.constrained_index(dofs[j]).unwrap();
                        rhs[fi] -= local[i][j] * lift[k];
                    }
                }
            }
        }
    }

    if opts.jump_terms {
        for (i, iface) in problem.interfaces().iter().enumerate() {
            let InterfaceKind::Implicit { lambda } = iface.kind else {
                continue;
            };
            let hit = mesh.interface_hits()[i];
            let jumps = interface_jumps(space, i, hit.element, hit.alpha);
            for &(di, ji) in &jumps {
                let fi = space.free_index(di).unwrap();
                for &(dj, jj) in &jumps {
                    let fj = space.free_index(dj).unwrap();
                    matrix[(fi, fj)] += ji * jj / lambda;
                }
            }
        }
    }

    Ok(AssembledSystem {
        matrix,
        rhs,
        lift,
        warnings,
    })
}

/// `[u_j]_alpha` for the two enrichment dofs of interface `i`; standard dofs
/// are continuous.
fn interface_jumps(space: &EnrichedSpace, i: usize, e: usize, alpha: f64) -> Vec<(usize, f64)> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    space.element_basis(e, alpha, Side::Left, &mut left);
    space.element_basis(e, alpha, Side::Right, &mut right);
    space
        .enrichment_dofs(i)
        .iter()
        .map(|&dof| {
            let v = |list: &[BasisValue]| list.iter().find(|b| b.dof == dof).unwrap().value;
            (dof, v(&right) - v(&left))
        })
        .collect()
}

fn check_compatible(problem: &ProblemSpec, space: &EnrichedSpace) -> Result<()> {
    let hits = space.mesh().interface_hits();
    if hits.len() != problem.interfaces().len()
        || hits.iter().zip(problem.interfaces()).any(|(h, i)| h.alpha != i.alpha)
    {
        return Err(FemError::InvalidInput(
            "space was not built for this problem's interfaces".into(),
        ));
    }
    let (left, right) = problem.bc();
    if space.boundary_kinds() != (left.kind(), right.kind()) {
        return Err(FemError::InvalidInput(
            "space boundary conditions differ from the problem".into(),
        ));
    }
    for bc in [left, right] {
        if let BoundaryCondition::Neumann(g) = bc {
            if g != 0.0 {
                return Err(FemError::Unsupported(format!("nonzero Neumann flux {g}")));
            }
        }
    }
    Ok(())
}

/// Solve the assembled system; see [`solve_dense`].
pub fn solve_system(system: &AssembledSystem) -> Result<DVector<f64>> {
    solve_dense(&system.matrix, &system.rhs)
}
