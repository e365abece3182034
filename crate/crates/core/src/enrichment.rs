//! The one-parameter family of piecewise-linear enrichment functions.
//!
//! On the interface element `[x_k, x_{k+1}]` cut at `alpha`,
//!
//! ```text
//! psi(x) = m1 (x - x_k)       on [x_k, alpha)
//! psi(x) = m2 (x - x_{k+1})   on (alpha, x_{k+1}]
//! ```
//!
//! and zero elsewhere, with `m1 = (alpha - x_{k+1}) / h_k` and `m2` chosen so
//! that `[psi] = gamma [psi']` at `alpha`. Setting `gamma = 0` gives the
//! familiar continuous hat-shaped enrichment.

use crate::error::{FemError, Result};

/// Relative tolerance on `|[beta]|` used by [`gamma_from_lambda`].
pub const CONTINUOUS_BETA_TOL: f64 = 1e-12;

/// Relative (to `h_k`) tolerance on the `m2` denominator.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Which one-sided limit to take at an interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Jump parameter for `[p] = lambda (beta p')(alpha^-)` with `[beta p'] = 0`,
/// rewritten as `[p] = gamma [p']`.
pub fn gamma_from_lambda(lambda: f64, beta_minus: f64, beta_plus: f64) -> Result<f64> {
    if !(beta_minus > 0.0 && beta_plus > 0.0) {
        return Err(FemError::InvalidInput(format!(
            "diffusivities must be positive, got {beta_minus} and {beta_plus}"
        )));
    }
    let jump = beta_plus - beta_minus;
    if jump.abs() < CONTINUOUS_BETA_TOL * beta_minus.max(beta_plus) {
        return Err(FemError::ContinuousDiffusivity { beta_minus, beta_plus });
    }
    Ok(-lambda * beta_minus * beta_plus / jump)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnrichmentFunction {
    element: usize,
    x_left: f64,
    x_right: f64,
    alpha: f64,
    gamma: f64,
    m1: f64,
    m2: f64,
}

impl EnrichmentFunction {
    pub fn new(element: usize, x_left: f64, x_right: f64, alpha: f64, gamma: f64) -> Result<Self> {
        if !(x_left < alpha && alpha < x_right) {
            return Err(FemError::InvalidInput(format!(
                "interface {alpha} is not strictly inside [{x_left}, {x_right}]"
            )));
        }
        if !gamma.is_finite() {
            return Err(FemError::InvalidInput(format!("gamma must be finite, got {gamma}")));
        }
        let h = x_right - x_left;
        let denom = alpha - x_right - gamma;
        if denom.abs() < DEGENERACY_TOL * h {
            return Err(FemError::DegenerateEnrichment { element });
        }
        let m1 = (alpha - x_right) / h;
        let m2 = (alpha - x_left - gamma) * (alpha - x_right) / (h * denom);
        Ok(Self {
            element,
            x_left,
            x_right,
            alpha,
            gamma,
            m1,
            m2,
        })
    }

    pub fn element(&self) -> usize {
        self.element
    }

    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    /// Value and derivative at `x`; `side` picks the one-sided limit at `alpha`.
    pub fn eval(&self, x: f64, side: Side) -> (f64, f64) {
        if x < self.x_left || x > self.x_right {
            return (0.0, 0.0);
        }
        let left = x < self.alpha || (x == self.alpha && side == Side::Left);
        if left {
            (self.m1 * (x - self.x_left), self.m1)
        } else {
            (self.m2 * (x - self.x_right), self.m2)
        }
    }

    /// `[psi]` at `alpha`.
    pub fn jump(&self) -> f64 {
        self.eval(self.alpha, Side::Right).0 - self.eval(self.alpha, Side::Left).0
    }

    /// `[psi']` at `alpha`.
    pub fn slope_jump(&self) -> f64 {
        self.m2 - self.m1
    }
}
