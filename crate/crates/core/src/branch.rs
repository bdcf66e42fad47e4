//! Points on the logarithmic Riemann surface.
//!
//! A [`BranchPoint`] is a positive modulus together with an *unreduced* real
//! argument. Two points whose arguments differ by `2π` are the same complex
//! number but different points of the surface, so powers `ζ^α` and the
//! continuation formulae `ζ e^{−mπi}` are single-valued on them.

use std::f64::consts::PI;

use crate::{c64, C64};

/// A point `ρ·e^{iτ}` of the logarithmic Riemann surface; `τ` is not reduced
/// modulo `2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint {
    /// Modulus `ρ > 0`.
    pub modulus: f64,
    /// Unreduced argument `τ` in radians.
    pub arg: f64,
}

impl BranchPoint {
    /// New surface point with the given modulus and unreduced argument.
    pub fn new(modulus: f64, arg: f64) -> Self {
        BranchPoint { modulus, arg }
    }

    /// The surface point over a complex number, on the principal sheet.
    pub fn from_c64(z: C64) -> Self {
        BranchPoint { modulus: z.norm(), arg: z.arg() }
    }

    /// The underlying complex number (forgets the sheet).
    pub fn to_c64(&self) -> C64 {
        c64(self.modulus * self.arg.cos(), self.modulus * self.arg.sin())
    }

    /// Whether the point lies on the principal sheet `−π < τ < π`.
    pub fn is_principal(&self) -> bool {
        -PI < self.arg && self.arg < PI
    }

    /// Decompose `τ = θ − mπ` with `θ ∈ (−π, π]` and even `m` (the unique
    /// reduction of `τ` modulo `2π`). Returns the principal-sheet complex
    /// number `ρ e^{iθ}` and the continuation index `m`, so that this point
    /// is `ζ_p · e^{−mπi}`.
    pub fn principal_decomposition(&self) -> (C64, i32) {
        let two_pi = 2.0 * PI;
        // smallest j with τ − 2πj ≤ π
        let j = ((self.arg - PI) / two_pi).ceil();
        let mut theta = self.arg - two_pi * j;
        let mut jj = j;
        // guard against rounding at the seam
        if theta > PI {
            theta -= two_pi;
            jj += 1.0;
        } else if theta <= -PI {
            theta += two_pi;
            jj -= 1.0;
        }
        let zp = c64(self.modulus * theta.cos(), self.modulus * theta.sin());
        (zp, (-2.0 * jj) as i32)
    }

    /// Like [`Self::principal_decomposition`] but lands strictly inside
    /// `(−π, π)`, using an odd continuation index when the reduction would
    /// fall on the cut `θ = π`. Needed by evaluators whose principal-branch
    /// formulae exclude the negative real axis.
    pub fn interior_decomposition(&self) -> (C64, i32) {
        let (zp, m) = self.principal_decomposition();
        let theta = self.arg + f64::from(m) * PI;
        if PI - theta.abs() < 1e-12 {
            // shift by one half-turn: τ = θ' − (m−1)π with θ' = θ − π
            let theta2 = theta - PI;
            let zp2 = c64(self.modulus * theta2.cos(), self.modulus * theta2.sin());
            (zp2, m - 1)
        } else {
            (zp, m)
        }
    }

    /// The power `ζ^α` computed with the unreduced argument:
    /// `exp(α (log ρ + iτ))`.
    pub fn pow(&self, alpha: C64) -> C64 {
        let log = c64(self.modulus.ln(), self.arg);
        (alpha * log).exp()
    }

    /// Rotate by `e^{−mπi}` on the surface (argument shifts by `−mπ`).
    pub fn rotate_half_turns(&self, m: i32) -> Self {
        BranchPoint { modulus: self.modulus, arg: self.arg - f64::from(m) * PI }
    }
}

impl From<C64> for BranchPoint {
    fn from(z: C64) -> Self {
        BranchPoint::from_c64(z)
    }
}
