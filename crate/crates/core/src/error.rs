use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to act on.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at z = {0}")]
    Pole(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular divisor: |{coord}| = {value:e} is below the guard 1e-14")]
    SingularDivisor { coord: &'static str, value: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("value out of range: {0}")]
    Range(String),
    #[error("operation not defined for map kind {0}")]
    Kind(String),
    #[error("displacement is not tangent to the sphere (|u·du| = {0:e})")]
    NonTangent(f64),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("pole singularity: {0}")]
    PoleSingularity(String),
    #[error("step size underflow at t = {t} (h = {h:e}); closest approach rho = {closest:e}")]
    StepUnderflow { t: f64, h: f64, closest: f64 },
    #[error("selection rule violated: {0}")]
    SelectionRule(String),
    #[error("invalid quantum numbers: {0}")]
    QuantumNumbers(String),
    #[error("integrand does not decay along the imaginary axis: {0}")]
    NonDecaying(String),
    #[error("quadrature order {0} is below the minimum of 8")]
    QuadratureOrder(usize),
    #[error("finite-difference stencil leaves the chart domain: {0}")]
    Boundary(String),
}

pub type Result<T> = std::result::Result<T, Error>;
