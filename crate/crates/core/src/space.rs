//! Conforming P1/P2 Lagrange spaces enriched at every interface element.
//!
//! Each interface contributes the two products `phi_k psi` and
//! `phi_{k+1} psi`, where `phi_k`, `phi_{k+1}` are the linear hats of the
//! interface element endpoints. The same two products are used for P2.

use crate::enrichment::{EnrichmentFunction, Side};
use crate::error::{FemError, Result};
use crate::mesh::Mesh1D;

/// Boundary condition type as seen by the space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dof {
    /// Lagrange node `node` (mesh nodes and, for P2, element midpoints, in
    /// increasing coordinate order).
    Standard { node: usize, x: f64, constrained: bool },
    /// `phi_attach * psi_interface`, with `attach` a mesh node index.
    Enriched { interface: usize, attach: usize },
}

/// A basis function supported at the evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisValue {
    /// Index into [`EnrichedSpace::dofs`].
    pub dof: usize,
    pub value: f64,
    pub derivative: f64,
}

#[derive(Debug, Clone)]
pub struct EnrichedSpace {
    mesh: Mesh1D,
    degree: usize,
    enrichments: Vec<EnrichmentFunction>,
    dofs: Vec<Dof>,
    free_index: Vec<Option<usize>>,
    constrained: Vec<usize>,
    n_free: usize,
    /// element -> index into `enrichments`
    element_enrichment: Vec<Option<usize>>,
    bc: (BoundaryKind, BoundaryKind),
}

impl EnrichedSpace {
    /// `enrichments[i]` must belong to the mesh's interface `i`.
    pub fn new(
        mesh: Mesh1D,
        degree: usize,
        enrichments: Vec<EnrichmentFunction>,
        bc_left: BoundaryKind,
        bc_right: BoundaryKind,
    ) -> Result<Self> {
        if degree != 1 && degree != 2 {
            return Err(FemError::Unsupported(format!("polynomial degree {degree}")));
        }
        let hits = mesh.interface_hits();
        for psi in &enrichments {
            if mesh.hit_in_element(psi.element()).is_none() {
                return Err(FemError::InvalidInput(format!(
                    "enrichment references element {} which is not an interface element",
                    psi.element()
                )));
            }
        }
        if enrichments.len() != hits.len() {
            return Err(FemError::InvalidInput(format!(
                "{} interfaces but {} enrichment functions",
                hits.len(),
                enrichments.len()
            )));
        }
        for (hit, psi) in hits.iter().zip(&enrichments) {
            let (xl, xr) = mesh.element(hit.element);
            if psi.element() != hit.element || psi.alpha() != hit.alpha || psi.x_left() != xl || psi.x_right() != xr {
                return Err(FemError::InvalidInput(format!(
                    "enrichment {} does not match interface {} in element {}",
                    psi.element(),
                    hit.interface,
                    hit.element
                )));
            }
        }

        let n_el = mesh.n_elements();
        let n_std = degree * n_el + 1;
        let mut dofs = Vec::with_capacity(n_std + 2 * enrichments.len());
        for node in 0..n_std {
            let x = if node % degree == 0 {
                mesh.nodes()[node / degree]
            } else {
                let (xl, xr) = mesh.element(node / degree);
                0.5 * (xl + xr)
            };
            let constrained = (node == 0 && bc_left == BoundaryKind::Dirichlet)
                || (node == n_std - 1 && bc_right == BoundaryKind::Dirichlet);
            dofs.push(Dof::Standard { node, x, constrained });
        }
        let mut element_enrichment = vec![None; n_el];
        for (i, psi) in enrichments.iter().enumerate() {
            element_enrichment[psi.element()] = Some(i);
            for attach in [psi.element(), psi.element() + 1] {
                dofs.push(Dof::Enriched { interface: i, attach });
            }
        }

        let mut free_index = vec![None; dofs.len()];
        let mut constrained = Vec::new();
        let mut n_free = 0;
        for (i, dof) in dofs.iter().enumerate() {
            match dof {
                Dof::Standard { constrained: true, .. } => constrained.push(i),
                _ => {
                    free_index[i] = Some(n_free);
                    n_free += 1;
                }
            }
        }

        Ok(Self {
            mesh,
            degree,
            enrichments,
            dofs,
            free_index,
            constrained,
            n_free,
            element_enrichment,
            bc: (bc_left, bc_right),
        })
    }

    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn enrichments(&self) -> &[EnrichmentFunction] {
        &self.enrichments
    }

    pub fn dofs(&self) -> &[Dof] {
        &self.dofs
    }

    pub fn n_free(&self) -> usize {
        self.n_free
    }

    pub fn boundary_kinds(&self) -> (BoundaryKind, BoundaryKind) {
        self.bc
    }

    /// Position of dof `dof` among the free unknowns.
    pub fn free_index(&self, dof: usize) -> Option<usize> {
        self.free_index[dof]
    }

    /// Dof indices of the Dirichlet-constrained standard dofs, left end first.
    pub fn constrained_dofs(&self) -> &[usize] {
        &self.constrained
    }

    /// Position of dof `dof` among the constrained dofs.
    pub fn constrained_index(&self, dof: usize) -> Option<usize> {
        self.constrained.iter().position(|&c| c == dof)
    }

    /// Dof indices of the two enrichment functions of interface `i`.
    pub fn enrichment_dofs(&self, i: usize) -> [usize; 2] {
        let first = self.degree * self.mesh.n_elements() + 1 + 2 * i;
        [first, first + 1]
    }

    /// Number of standard Lagrange dofs.
    pub fn n_standard(&self) -> usize {
        self.degree * self.mesh.n_elements() + 1
    }

    /// Basis functions supported on element `e`, evaluated at `x` in that
    /// element. `side` selects the one-sided limit at an interface.
    pub fn element_basis(&self, e: usize, x: f64, side: Side, out: &mut Vec<BasisValue>) {
        out.clear();
        let (xl, xr) = self.mesh.element(e);
        let h = xr - xl;
        let t = (x - xl) / h;
        let first = self.degree * e;
        match self.degree {
            1 => {
                out.push(BasisValue {
                    dof: first,
                    value: 1.0 - t,
                    derivative: -1.0 / h,
                });
                out.push(BasisValue {
                    dof: first + 1,
                    value: t,
                    derivative: 1.0 / h,
                });
            }
            _ => {
                out.push(BasisValue {
                    dof: first,
                    value: (1.0 - t) * (1.0 - 2.0 * t),
                    derivative: (4.0 * t - 3.0) / h,
                });
                out.push(BasisValue {
                    dof: first + 1,
                    value: 4.0 * t * (1.0 - t),
                    derivative: (4.0 - 8.0 * t) / h,
                });
                out.push(BasisValue {
                    dof: first + 2,
                    value: t * (2.0 * t - 1.0),
                    derivative: (4.0 * t - 1.0) / h,
                });
            }
        }
        if let Some(i) = self.element_enrichment[e] {
            let (psi, dpsi) = self.enrichments[i].eval(x, side);
            let [d0, d1] = self.enrichment_dofs(i);
            let hats = [(d0, 1.0 - t, -1.0 / h), (d1, t, 1.0 / h)];
            for (dof, phi, dphi) in hats {
                out.push(BasisValue {
                    dof,
                    value: phi * psi,
                    derivative: dphi * psi + phi * dpsi,
                });
            }
        }
    }

    /// Basis functions supported at `x`, located with
    /// [`Mesh1D::locate_element`].
    pub fn eval_basis(&self, x: f64, side: Side) -> Result<Vec<BasisValue>> {
        let e = self.mesh.locate_element(x)?;
        let mut out = Vec::with_capacity(self.degree + 3);
        self.element_basis(e, x, side, &mut out);
        Ok(out)
    }

    /// Value and derivative of `sum free[i] u_i + sum lift[j] u_j` at `x`.
    pub fn eval_function(&self, free: &[f64], lift: &[f64], x: f64, side: Side) -> Result<(f64, f64)> {
        self.check_lengths(free, lift)?;
        let e = self.mesh.locate_element(x)?;
        let mut buf = Vec::with_capacity(self.degree + 3);
        Ok(self.eval_in_element(e, free, lift, x, side, &mut buf))
    }

    pub(crate) fn check_lengths(&self, free: &[f64], lift: &[f64]) -> Result<()> {
        if free.len() != self.n_free {
            return Err(FemError::LengthMismatch {
                expected: self.n_free,
                got: free.len(),
            });
        }
        if lift.len() != self.constrained.len() {
            return Err(FemError::LengthMismatch {
                expected: self.constrained.len(),
                got: lift.len(),
            });
        }
        Ok(())
    }

    /// Unchecked evaluation on a known element, reusing `buf`.
    pub(crate) fn eval_in_element(
        &self,
        e: usize,
        free: &[f64],
        lift: &[f64],
        x: f64,
        side: Side,
        buf: &mut Vec<BasisValue>,
    ) -> (f64, f64) {
        self.element_basis(e, x, side, buf);
        buf.iter().fold((0.0, 0.0), |(v, d), b| {
            let c = match self.free_index[b.dof] {
                Some(i) => free[i],
                None => lift[self.constrained_index(b.dof).unwrap()],
            };
            (v + c * b.value, d + c * b.derivative)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize, degree: usize, interfaces: &[f64], left: BoundaryKind) -> EnrichedSpace {
        let mesh = Mesh1D::uniform(0.0, 1.0, n, interfaces).unwrap();
        let psis = mesh
            .interface_hits()
            .iter()
            .map(|hit| {
                let (xl, xr) = mesh.element(hit.element);
                EnrichmentFunction::new(hit.element, xl, xr, hit.alpha, 0.0).unwrap()
            })
            .collect();
        EnrichedSpace::new(mesh, degree, psis, left, BoundaryKind::Dirichlet).unwrap()
    }

    #[test]
    fn dof_counts() {
        let d = BoundaryKind::Dirichlet;
        let nm = BoundaryKind::Neumann;
        assert_eq!(space(8, 1, &[1.0 / 9.0], d).n_free(), 9);
        assert_eq!(space(8, 1, &[1.0 / 9.0], nm).n_free(), 10);
        assert_eq!(space(8, 2, &[1.0 / 9.0, 1.0 / 3.0, 2.0 / 3.0], nm).n_free(), 22);
    }

    #[test]
    fn ordering_standard_then_enrichment() {
        let s = space(8, 1, &[1.0 / 3.0], BoundaryKind::Neumann);
        let free: Vec<&Dof> = (0..s.dofs().len())
            .filter(|&i| s.free_index(i).is_some())
            .map(|i| &s.dofs()[i])
            .collect();
        assert!(matches!(free[0], Dof::Standard { node: 0, .. }));
        assert!(matches!(free[8], Dof::Enriched { attach: 2, .. }));
        assert!(matches!(free[9], Dof::Enriched { attach: 3, .. }));
        assert_eq!(s.constrained_dofs(), &[8]);
    }

    #[test]
    fn hat_values_at_midpoint() {
        let s = space(8, 1, &[1.0 / 9.0], BoundaryKind::Dirichlet);
        let vals = s.eval_basis(0.5 + 1.0 / 16.0, Side::Left).unwrap();
        assert_eq!(vals.len(), 2);
        assert!(vals.iter().all(|b| (b.value - 0.5).abs() < 1e-15));
    }

    #[test]
    fn lagrange_property_p2() {
        let s = space(4, 2, &[], BoundaryKind::Neumann);
        for (i, dof) in s.dofs().iter().enumerate() {
            let Dof::Standard { x, .. } = *dof else { unreachable!() };
            for e in 0..4 {
                let (xl, xr) = s.mesh().element(e);
                if x < xl || x > xr {
                    continue;
                }
                let mut out = Vec::new();
                s.element_basis(e, x, Side::Left, &mut out);
                for b in &out {
                    let expected = if b.dof == i { 1.0 } else { 0.0 };
                    assert!((b.value - expected).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn enrichment_vanishes_at_attachment_node() {
        let s = space(8, 1, &[1.0 / 9.0], BoundaryKind::Neumann);
        let [d0, d1] = s.enrichment_dofs(0);
        for b in s.eval_basis(0.0, Side::Left).unwrap() {
            if b.dof == d0 || b.dof == d1 {
                assert_eq!(b.value, 0.0);
            }
        }
    }

    #[test]
    fn length_mismatch() {
        let s = space(8, 1, &[1.0 / 9.0], BoundaryKind::Neumann);
        let err = s.eval_function(&[0.0; 3], &[0.0], 0.5, Side::Left).unwrap_err();
        assert!(matches!(err, FemError::LengthMismatch { expected: 10, got: 3 }));
    }

    #[test]
    fn zero_function() {
        let s = space(8, 2, &[1.0 / 9.0], BoundaryKind::Dirichlet);
        let free = vec![0.0; s.n_free()];
        for x in [0.0, 0.1, 1.0 / 9.0, 0.77, 1.0] {
            assert_eq!(s.eval_function(&free, &[0.0, 0.0], x, Side::Right).unwrap(), (0.0, 0.0));
        }
    }

    #[test]
    fn foreign_enrichment_is_rejected() {
        let mesh = Mesh1D::uniform(0.0, 1.0, 8, &[1.0 / 9.0]).unwrap();
        let psi = EnrichmentFunction::new(3, 0.375, 0.5, 0.4, 0.0).unwrap();
        let err = EnrichedSpace::new(mesh, 1, vec![psi], BoundaryKind::Neumann, BoundaryKind::Dirichlet).unwrap_err();
        assert!(err.to_string().contains("not an interface element"));
    }
}
