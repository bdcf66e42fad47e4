//! Polynomial recurrences used by the continuation formulae and by Wright's
//! zero asymptotics, plus the degenerate-Lommel coefficient products.
//!
//! Everything with a rational recurrence (`Q_m`, `A_n`/`B_n`/`C_n`, `D_n^±`)
//! is computed exactly (see [`crate::exact`]) and only evaluated in floating
//! point at call sites.

use crate::exact::{xint, xone, ExactPoly, ExactScalar};
use crate::{c64, C64};

/// Polynomial with complex `f64` coefficients, `coeffs[k]` the coefficient of
/// the k-th power. Trailing zero coefficients are trimmed on construction, so
/// the leading coefficient is non-zero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl Poly {
    /// Build from coefficients, constant term first.
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of the k-th power (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(C64::ZERO)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: C64) -> C64 {
        let mut acc = C64::ZERO;
        for a in self.coeffs.iter().rev() {
            acc = acc * t + a;
        }
        acc
    }

    /// Derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::new(Vec::new());
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * k as f64)
                .collect(),
        )
    }
}

/// `u_m(ν) = sin(mνπ)/sin(νπ)`, evaluated through the Chebyshev three-term
/// recurrence `u_{m+1} = 2cos(νπ)·u_m − u_{m−1}`, `u_0 = 0`, `u_1 = 1`, so
/// integer ν (where the quotient is 0/0) takes its limit exactly.
///
/// In the classical indexing this is the Chebyshev polynomial of the second
/// kind evaluated at `cos(νπ)`: `u_m(ν) = U_{m−1}(cos νπ)`.
pub fn chebyshev_u(m: i64, nu: C64) -> C64 {
    let mm = m.unsigned_abs();
    let sign = if m < 0 { -1.0 } else { 1.0 };
    let two_c = 2.0 * (nu * std::f64::consts::PI).cos();
    let mut prev = C64::ZERO; // u_0
    let mut cur = c64(1.0, 0.0); // u_1
    match mm {
        0 => return C64::ZERO,
        1 => return c64(sign, 0.0),
        _ => {}
    }
    for _ in 2..=mm {
        let next = two_c * cur - prev;
        prev = cur;
        cur = next;
    }
    sign * cur
}

/// Wright's polynomials `Q_1(t) = t`, `Q_{m+1}(t) = Q_m(t) + m∫₀ᵗ Q_m(s) ds`,
/// with exact rational coefficients. `deg Q_m ≤ m`.
pub fn wright_q_poly(m: u32) -> ExactPoly {
    assert!(m >= 1, "Q_m defined for m >= 1");
    let mut q = ExactPoly::monomial(xone(), 1); // Q_1 = t
    for j in 1..m {
        q = q.add(&q.integral().scale(&xint(i64::from(j))));
    }
    q
}

/// Continuation polynomials `(A_n, B_n, C_n)`: `A_1 = B_1 ≡ 0`, `C_1 ≡ 1`,
/// then
///
/// ```text
/// A_n = −2(n−1) A_{n−1} + ζ A'_{n−1} + C_{n−1}
/// B_n = −2(n−1) B_{n−1} + ζ B'_{n−1} − ζ² C_{n−1}
/// C_n = −2(n−1) C_{n−1} + B_{n−1} + ζ C'_{n−1}
/// ```
///
/// All coefficients stay integers; degrees never exceed `n`.
pub fn abc_polys(n: u32) -> (ExactPoly, ExactPoly, ExactPoly) {
    assert!(n >= 1, "A_n, B_n, C_n defined for n >= 1");
    let mut a = ExactPoly::zero();
    let mut b = ExactPoly::zero();
    let mut c = ExactPoly::constant(xone());
    for k in 2..=n {
        let f = xint(-2 * (i64::from(k) - 1));
        let a_next = a.scale(&f).add(&a.derivative().shift_up(1)).add(&c);
        let b_next = b
            .scale(&f)
            .add(&b.derivative().shift_up(1))
            .sub(&c.shift_up(2));
        let c_next = c.scale(&f).add(&b).add(&c.derivative().shift_up(1));
        a = a_next;
        b = b_next;
        c = c_next;
    }
    (a, b, c)
}

/// `D_n^±(ζ) = B_n(ζ) ± iζ C_n(ζ)`. At least one of the pair has degree
/// exactly `n`.
pub fn d_polys(n: u32) -> (ExactPoly, ExactPoly) {
    let (_, b, c) = abc_polys(n);
    let i_zeta_c = c.shift_up(1).scale(&ExactScalar::i());
    (b.add(&i_zeta_c), b.sub(&i_zeta_c))
}

/// Degenerate-Lommel coefficient `c_k = Π_{m=1}^k [(μ−2m+1)² − ν²]`, `c_0 = 1`.
/// Even in ν by construction.
pub fn lommel_ck(mu: C64, nu: C64, k: u32) -> C64 {
    let nu2 = nu * nu;
    let mut acc = c64(1.0, 0.0);
    for m in 1..=k {
        let t = mu - (2.0 * f64::from(m) - 1.0);
        acc *= t * t - nu2;
    }
    acc
}

/// Exact-arithmetic version of [`lommel_ck`].
pub fn lommel_ck_exact(mu: &ExactScalar, nu: &ExactScalar, k: u32) -> ExactScalar {
    let nu2 = nu.clone() * nu.clone();
    let mut acc = xone();
    for m in 1..=k {
        let t = mu.clone() - xint(2 * i64::from(m) - 1);
        acc = acc * (t.clone() * t - nu2.clone());
    }
    acc
}
