use thiserror::Error;

pub type Result<T> = std::result::Result<T, FemError>;

#[derive(Debug, Error)]
pub enum FemError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("coordinate {x} lies outside the domain [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },

    #[error(
        "interface {index} at {alpha} coincides with mesh node {node} ({x}); \
         interfaces must lie strictly inside an element, choose a different number of elements"
    )]
    InterfaceOnNode {
        index: usize,
        alpha: f64,
        node: usize,
        x: f64,
    },

    #[error("interfaces {first} and {second} fall in the same element {element}")]
    SharedInterfaceElement {
        first: usize,
        second: usize,
        element: usize,
    },

    #[error(
        "gamma is undefined for a continuous diffusivity (beta- = {beta_minus}, beta+ = {beta_plus}); \
         use a continuous interface instead"
    )]
    ContinuousDiffusivity { beta_minus: f64, beta_plus: f64 },

    #[error("degenerate enrichment denominator in element {element}; change mesh size")]
    DegenerateEnrichment { element: usize },

    #[error("Gauss-Legendre rule with {0} points is not supported (1..=16)")]
    QuadratureOrder(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix is numerically singular at pivot {dof}")]
    SingularMatrix { dof: usize },

    #[error("solve residual {residual:e} exceeds bound {bound:e}")]
    InaccurateSolve { residual: f64, bound: f64 },

    #[error("observed order undefined: error {index} is {value}")]
    NonPositiveError { index: usize, value: f64 },

    #[error("{0} requires polynomial data")]
    NotPolynomial(&'static str),

    #[error("{0} is not supported")]
    Unsupported(String),

    #[error("problem file: {0}")]
    ProblemFile(String),
}

impl FemError {
    /// True for failures of the numerical pipeline as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            FemError::DegenerateEnrichment { .. }
                | FemError::SingularMatrix { .. }
                | FemError::InaccurateSolve { .. }
                | FemError::NonPositiveError { .. }
        )
    }
}
