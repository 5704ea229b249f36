use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid family parameters (n={n}, r={r}): need n, r >= 1 and max(n, r) > 1")]
    InvalidParams { n: u32, r: u32 },

    #[error("polynomial vanishes at interval endpoint {0}")]
    EndpointIsRoot(String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("empty or reversed interval ({lo}, {hi})")]
    EmptyInterval { lo: String, hi: String },

    #[error("isolation width must be positive")]
    NonPositiveWidth,

    #[error("denominator has zero constant term")]
    ZeroConstantTerm,

    #[error("denominator nearly vanishes on the contour (|D| = {0:e})")]
    SingularOnContour(f64),

    #[error("theta = {theta} outside (0, {upper})")]
    OutOfDomain { theta: f64, upper: f64 },

    #[error("z = {z} outside the interval I = ({lo}, {hi})")]
    OutOfInterval { z: f64, lo: f64, hi: String },

    #[error("endpoint limits of {what} apply only when {case}")]
    WrongCase { what: &'static str, case: &'static str },

    #[error("closed cubic form needs max(n, r) = 3, got {0}")]
    WrongDegree(u32),

    #[error("root iteration did not converge after {iterations} steps (backward error {backward_error:e})")]
    NoConvergence { iterations: usize, backward_error: f64 },

    #[error("root {re} + {im}i sits on the unit circle but is not e^(+-i theta)")]
    CircleClassificationAmbiguous { re: f64, im: f64 },

    #[error("R_m has non-negligible imaginary part {0:e}")]
    NonRealResidue(f64),

    #[error("theta-root count {theta_roots} differs from Sturm count {sturm_roots}")]
    CountMismatch { theta_roots: usize, sturm_roots: usize },

    #[error("every term of the exponential sum underflowed")]
    NumericUnderflow,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
