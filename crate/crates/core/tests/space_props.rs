use efem::bench::catalog_problem;
use efem::enrichment::{EnrichmentFunction, Side};
use efem::mesh::Mesh1D;
use efem::space::{BoundaryKind, Dof, EnrichedSpace};
use proptest::prelude::*;

fn space_with(
    n: usize,
    degree: usize,
    alphas: &[f64],
    gammas: &[f64],
    bc: (BoundaryKind, BoundaryKind),
) -> Option<EnrichedSpace> {
    let mesh = Mesh1D::uniform(0.0, 1.0, n, alphas).ok()?;
    let psis = mesh
        .interface_hits()
        .iter()
        .map(|h| {
            let (xl, xr) = mesh.element(h.element);
            EnrichmentFunction::new(h.element, xl, xr, h.alpha, gammas[h.interface])
        })
        .collect::<Result<Vec<_>, _>>()
        .ok()?;
    EnrichedSpace::new(mesh, degree, psis, bc.0, bc.1).ok()
}

/// Coefficients placing `g` at standard nodes and `enrich` on enrichment dofs.
fn coefficients(space: &EnrichedSpace, g: impl Fn(f64) -> f64, enrich: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut free = vec![0.0; space.n_free()];
    let mut lift = vec![0.0; space.constrained_dofs().len()];
    let mut k = 0;
    for (dof, d) in space.dofs().iter().enumerate() {
        let v = match *d {
            Dof::Standard { x, .. } => g(x),
            Dof::Enriched { .. } => {
                k += 1;
                enrich[k - 1]
            }
        };
        match space.free_index(dof) {
            Some(i) => free[i] = v,
            None => lift[space.constrained_index(dof).unwrap()] = v,
        }
    }
    (free, lift)
}

fn arb_setup() -> impl Strategy<Value = (usize, usize, f64, f64)> {
    (3usize..40, 1usize..=2, 0.02f64..0.98, -0.05f64..0.05)
}

proptest! {
    #[test]
    fn partition_of_unity((n, degree, alpha, gamma) in arb_setup(), t in 0.0f64..1.0) {
        let Some(space) = space_with(n, degree, &[alpha], &[gamma], (BoundaryKind::Neumann, BoundaryKind::Dirichlet)) else { return Ok(()) };
        let x = t;
        let basis = space.eval_basis(x, Side::Left).unwrap();
        let n_std = space.n_standard();
        let (sum, dsum) = basis
            .iter()
            .filter(|b| b.dof < n_std)
            .fold((0.0, 0.0), |(s, d), b| (s + b.value, d + b.derivative));
        prop_assert!((sum - 1.0).abs() < 1e-13);
        prop_assert!(dsum.abs() < 1e-9 * n as f64);
        prop_assert!(basis.len() <= degree + 3);
    }

    #[test]
    fn polynomial_reproduction((n, degree, alpha, gamma) in arb_setup(), c in prop::array::uniform3(-3.0f64..3.0), t in 0.0f64..1.0) {
        let Some(space) = space_with(n, degree, &[alpha], &[gamma], (BoundaryKind::Dirichlet, BoundaryKind::Dirichlet)) else { return Ok(()) };
        let c2 = if degree == 2 { c[2] } else { 0.0 };
        let g = |x: f64| c[0] + c[1] * x + c2 * x * x;
        let dg = |x: f64| c[1] + 2.0 * c2 * x;
        let (free, lift) = coefficients(&space, g, &[0.0, 0.0]);
        let (v, d) = space.eval_function(&free, &lift, t, Side::Right).unwrap();
        prop_assert!((v - g(t)).abs() < 1e-13 * (1.0 + g(t).abs()) * 10.0);
        prop_assert!((d - dg(t)).abs() < 1e-10 * (1.0 + dg(t).abs()) * n as f64);
    }

    #[test]
    fn derivatives_match_finite_differences((n, degree, alpha, gamma) in arb_setup(), t in 0.0f64..1.0) {
        let Some(space) = space_with(n, degree, &[alpha], &[gamma], (BoundaryKind::Neumann, BoundaryKind::Dirichlet)) else { return Ok(()) };
        let step = 1e-6;
        let x = t.clamp(2.0 * step, 1.0 - 2.0 * step);
        let near_node = space.mesh().nodes().iter().any(|&p| (p - x).abs() < 10.0 * step);
        if near_node || (x - alpha).abs() < 10.0 * step {
            return Ok(());
        }
        let at = |y: f64| space.eval_basis(y, Side::Left).unwrap();
        let (mid, plus, minus) = (at(x), at(x + step), at(x - step));
        for b in &mid {
            let value = |v: &[efem::space::BasisValue]| v.iter().find(|c| c.dof == b.dof).unwrap().value;
            let fd = (value(&plus) - value(&minus)) / (2.0 * step);
            prop_assert!(
                (fd - b.derivative).abs() <= 1e-6 * b.derivative.abs().max(1.0),
                "dof {} fd {} exact {}", b.dof, fd, b.derivative
            );
        }
    }

    #[test]
    fn jump_formula((n, degree, alpha, gamma) in arb_setup(), a in -2.0f64..2.0, b in -2.0f64..2.0, slope in -2.0f64..2.0) {
        let Some(space) = space_with(n, degree, &[alpha], &[gamma], (BoundaryKind::Neumann, BoundaryKind::Dirichlet)) else { return Ok(()) };
        let (free, lift) = coefficients(&space, |x| 1.0 + slope * x, &[a, b]);
        let left = space.eval_function(&free, &lift, alpha, Side::Left).unwrap().0;
        let right = space.eval_function(&free, &lift, alpha, Side::Right).unwrap().0;
        let psi = &space.enrichments()[0];
        let t = (alpha - psi.x_left()) / (psi.x_right() - psi.x_left());
        let expected = (a * (1.0 - t) + b * t) * psi.jump();
        prop_assert!((right - left - expected).abs() <= 1e-13 * (1.0 + expected.abs()));
    }
}

#[test]
fn problem_one_enrichment_jump() {
    let p = catalog_problem(1).unwrap().problem;
    let space = p.build_space(p.uniform_mesh(8).unwrap(), 1).unwrap();
    let psi = &space.enrichments()[0];
    let [d0, _] = space.enrichment_dofs(0);
    let at = |side| {
        space
            .eval_basis(1.0 / 9.0, side)
            .unwrap()
            .into_iter()
            .find(|b| b.dof == d0)
            .unwrap()
    };
    let jump = at(Side::Right).value - at(Side::Left).value;
    // phi_0(1/9) = 1 - (1/9) / (1/8) = 1/9
    let expected = psi.jump() / 9.0;
    assert!((jump - expected).abs() < 1e-15, "{jump} vs {expected}");
    assert!(jump != 0.0);
}

#[test]
fn dof_counts() {
    use BoundaryKind::*;
    let count = |degree, alphas: &[f64], bc| space_with(8, degree, alphas, &[0.0, 0.0, 0.0], bc).unwrap().n_free();
    assert_eq!(count(1, &[1.0 / 9.0], (Dirichlet, Dirichlet)), 9);
    assert_eq!(count(1, &[1.0 / 9.0], (Neumann, Dirichlet)), 10);
    assert_eq!(count(2, &[1.0 / 9.0, 1.0 / 3.0, 2.0 / 3.0], (Neumann, Dirichlet)), 22);
}
