//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by evaluators, contour builders and counters.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument is within tolerance of a pole of Γ (or of a series denominator).
    #[error("pole: {0}")]
    Pole(String),
    /// Neither series nor asymptotic evaluation attains the accuracy target.
    #[error("convergence: {0}")]
    Convergence(String),
    /// Argument lies outside the validity sector of an asymptotic expansion.
    #[error("sector: {0}")]
    Sector(String),
    /// Modulus too small for the requested asymptotic truncation order.
    #[error("accuracy: {0}")]
    Accuracy(String),
    /// Point is not on the branch required by the operation.
    #[error("branch: {0}")]
    Branch(String),
    /// Degenerate polynomial form requested for non-degenerate parameters.
    #[error("not degenerate: {0}")]
    NotDegenerate(String),
    /// Denominator of the continuation coefficient P_m vanishes.
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),
    /// Continuation case that the evaluator cannot serve.
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    /// The seed-validity inequalities fail for this index.
    #[error("validity: {0}")]
    Validity(String),
    /// A hypothesis gate of a lemma-backed construction fails.
    #[error("hypothesis: {0}")]
    Hypothesis(String),
    /// Newton iteration failed to reach the tolerance.
    #[error("divergence: {0}")]
    Divergence(String),
    /// Newton iterate left the bound box of its seed.
    #[error("box escape: {0}")]
    BoxEscape(String),
    /// A zero of the integrand lies (numerically) on the contour.
    #[error("zero on contour: {0}")]
    ZeroOnContour(String),
    /// Winding quadrature failed to settle on an integer.
    #[error("quadrature: {0}")]
    Quadrature(String),
    /// Parameter outside the domain of the auxiliary function.
    #[error("parameter: {0}")]
    Param(String),
    /// The ĝ quadratic has a zero root (inconsistent Ĉ, D̂, σ̂ data).
    #[error("degenerate quadratic: {0}")]
    DegenerateQuadratic(String),
    /// No derivative path available for a residual evaluation.
    #[error("derivative: {0}")]
    Derivative(String),
    /// Generic evaluation failure (overflow, invalid intermediate, ...).
    #[error("evaluation: {0}")]
    Evaluation(String),
}

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
