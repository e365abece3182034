//! One-dimensional partitions that are not fitted to the interface points.

use crate::error::{FemError, Result};

/// Relative (to the domain length) tolerance below which an interface is
/// considered to sit on a node.
pub const NODE_COINCIDENCE_TOL: f64 = 1e-14;

/// An interface located strictly inside element `element`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceHit {
    pub interface: usize,
    pub element: usize,
    pub alpha: f64,
}

/// A partition `a = x_0 < x_1 < ... < x_n = b` together with the elements
/// cut by the interfaces.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    nodes: Vec<f64>,
    h_max: f64,
    hits: Vec<InterfaceHit>,
}

impl Mesh1D {
    /// Uniform partition of `[a, b]` into `n` elements.
    pub fn uniform(a: f64, b: f64, n: usize, interfaces: &[f64]) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(FemError::InvalidInput(format!("domain requires a < b, got [{a}, {b}]")));
        }
        if n < 2 {
            return Err(FemError::InvalidInput(format!(
                "at least two elements are required, got {n}"
            )));
        }
        let len = b - a;
        let mut nodes: Vec<f64> = (0..=n).map(|i| a + len * (i as f64) / (n as f64)).collect();
        nodes[n] = b;
        Self::from_nodes(nodes, interfaces)
    }

    /// Arbitrary (possibly non-uniform) partition.
    pub fn from_nodes(nodes: Vec<f64>, interfaces: &[f64]) -> Result<Self> {
        if nodes.len() < 3 {
            return Err(FemError::InvalidInput("at least two elements are required".into()));
        }
        if nodes.iter().any(|x| !x.is_finite()) || nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(FemError::InvalidInput(
                "mesh nodes must be finite and strictly increasing".into(),
            ));
        }
        let a = nodes[0];
        let b = *nodes.last().unwrap();
        let tol = NODE_COINCIDENCE_TOL * (b - a);

        for (i, &alpha) in interfaces.iter().enumerate() {
            if !(alpha > a && alpha < b) {
                return Err(FemError::InvalidInput(format!(
                    "interface {i} at {alpha} is not strictly inside ({a}, {b})"
                )));
            }
            for (j, &other) in interfaces.iter().enumerate().take(i) {
                if other == alpha {
                    return Err(FemError::InvalidInput(format!(
                        "interfaces {j} and {i} coincide at {alpha}"
                    )));
                }
            }
        }

        let mut hits = Vec::with_capacity(interfaces.len());
        for (i, &alpha) in interfaces.iter().enumerate() {
            // first node strictly greater than alpha
            let upper = nodes.partition_point(|&x| x <= alpha);
            for node in [upper - 1, upper] {
                if (nodes[node] - alpha).abs() <= tol {
                    return Err(FemError::InterfaceOnNode {
                        index: i,
                        alpha,
                        node,
                        x: nodes[node],
                    });
                }
            }
            let element = upper - 1;
            if let Some(prev) = hits.iter().find(|h: &&InterfaceHit| h.element == element) {
                return Err(FemError::SharedInterfaceElement {
                    first: prev.interface,
                    second: i,
                    element,
                });
            }
            hits.push(InterfaceHit {
                interface: i,
                element,
                alpha,
            });
        }

        let h_max = nodes.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        Ok(Self { nodes, h_max, hits })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn n_elements(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn a(&self) -> f64 {
        self.nodes[0]
    }

    pub fn b(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn h_max(&self) -> f64 {
        self.h_max
    }

    /// Endpoints of element `e`.
    pub fn element(&self, e: usize) -> (f64, f64) {
        (self.nodes[e], self.nodes[e + 1])
    }

    /// Interface hits in the order the interfaces were supplied.
    pub fn interface_hits(&self) -> &[InterfaceHit] {
        &self.hits
    }

    /// The interface cutting element `e`, if any.
    pub fn hit_in_element(&self, e: usize) -> Option<&InterfaceHit> {
        self.hits.iter().find(|h| h.element == e)
    }

    /// Element containing `x`. A node shared by two elements belongs to the
    /// element it starts; the last node belongs to the last element.
    pub fn locate_element(&self, x: f64) -> Result<usize> {
        let (a, b) = (self.a(), self.b());
        if !(x >= a && x <= b) {
            return Err(FemError::OutOfDomain { x, a, b });
        }
        let upper = self.nodes.partition_point(|&node| node <= x);
        Ok((upper - 1).min(self.n_elements() - 1))
    }
}
