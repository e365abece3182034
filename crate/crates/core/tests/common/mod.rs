#![allow(dead_code)]

use efem::analysis::ExactSolution;
use efem::bench::catalog_problem;
use efem::problem::{Layer, Source};
use efem::{BoundaryCondition, Polynomial, ProblemSpec};

/// Benchmark `id` with every layer rebuilt by `edit`.
pub fn edited(id: u8, edit: impl Fn(&Layer) -> Layer, right: f64) -> ProblemSpec {
    let p = catalog_problem(id).unwrap().problem;
    let layers = p.layers().iter().map(edit).collect();
    ProblemSpec::new(
        p.domain(),
        layers,
        p.interfaces().to_vec(),
        BoundaryCondition::Neumann(0.0),
        BoundaryCondition::Dirichlet(right),
    )
    .unwrap()
}

/// Benchmark geometry, diffusivity and reaction with convection removed.
pub fn without_convection(id: u8) -> ProblemSpec {
    edited(
        id,
        |l| Layer {
            convection: Polynomial::zero(),
            ..l.clone()
        },
        0.25,
    )
}

/// Constant solution `c` on benchmark `id`'s geometry: no convection and
/// `f = w c`, so the constant satisfies every interface condition.
pub fn patch_problem(id: u8, c: f64) -> ProblemSpec {
    let p = edited(
        id,
        |l| Layer {
            convection: Polynomial::zero(),
            source: Source::Polynomial(l.reaction.scale(c)),
            ..l.clone()
        },
        c,
    );
    let branches = vec![Polynomial::constant(c); p.layers().len()];
    let exact = ExactSolution::polynomial(p.alphas(), branches).unwrap();
    p.with_exact(exact).unwrap()
}

pub fn degree_of(id: u8) -> usize {
    if id > 3 {
        2
    } else {
        1
    }
}
