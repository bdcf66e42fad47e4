//! Special functions of the non-homogeneous Bessel equation on arbitrary
//! branches, and the machinery needed to count their zeros.
//!
//! The crate evaluates Bessel (`J`, `Y`, `H⁽¹⁾`, `H⁽²⁾`) and Lommel
//! (`S_{μ,ν}`) functions for complex order and complex argument on any sheet
//! of the logarithmic Riemann surface, locates zeros of `z·eᶻ = a` from
//! Wright-type asymptotic seeds, counts zeros of auxiliary exponential–power
//! functions inside explicit contours by the argument principle, and checks
//! the quantization dichotomy for the ODE family
//!
//! ```text
//! f'' + 2N f' + [L²M² e^{2Mz} + (N² − ν²M²)] f = Σ_j σ_j L^{μ_j+1} M² e^{[M(μ_j+1)−N]z},
//! ```
//!
//! whose entire solutions are `e^{−Nz}[A·J_ν + B·Y_ν + Σ σ_j S_{μ_j,ν}](L e^{Mz})`.
//! A solution has finitely many zeros per branch exactly when `A = B = 0` and
//! every active `μ_j ± ν` is an odd positive integer, in which case the Lommel
//! part collapses to `ζ^{μ−1}` times a polynomial in `ζ^{−2}`.
//!
//! Modules follow that pipeline: [`poly`] and [`gamma`] hold the scalar and
//! polynomial primitives, [`bessel`] and [`lommel`] the evaluators and their
//! analytic continuation, [`wright`] the zero seeds of `z·eᶻ = a`, [`census`]
//! the contours and winding counts, and [`verify`] the assembled-solution
//! residual and quantization checks.

pub mod branch;
pub mod bessel;
pub mod census;
pub mod error;
pub mod exact;
pub mod gamma;
pub mod lommel;
pub mod poly;
pub(crate) mod quad;
pub mod verify;
pub mod wright;

pub use branch::BranchPoint;
pub use error::{Error, Result};

/// Scalar type used throughout: double-precision complex numbers.
pub type C64 = num_complex::Complex64;

/// Convenience constructor for [`C64`].
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
