//! Exact polynomial arithmetic over Gaussian rationals.
//!
//! The recurrences in this crate (Wright's `Q_m`, the continuation
//! polynomials `A_n`, `B_n`, `C_n`, the degenerate Lommel coefficients `c_k`)
//! are all rational, so they are carried out exactly and converted to
//! floating point only at evaluation sites. This is also what makes the
//! "residual is exactly zero" checks meaningful: they are polynomial
//! identities over `ℚ(i)`, not float comparisons.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::poly::Poly;
use crate::{c64, C64};

/// Exact scalar: complex number with rational real and imaginary parts.
pub type ExactScalar = Complex<BigRational>;

/// Exact scalar from integers.
pub fn xint(n: i64) -> ExactScalar {
    Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

/// Exact scalar `p/q` (real).
pub fn xratio(p: i64, q: i64) -> ExactScalar {
    Complex::new(
        BigRational::new(BigInt::from(p), BigInt::from(q)),
        BigRational::zero(),
    )
}

/// Exact scalar `p/q + (r/s)·i`.
pub fn xcomplex(p: i64, q: i64, r: i64, s: i64) -> ExactScalar {
    Complex::new(
        BigRational::new(BigInt::from(p), BigInt::from(q)),
        BigRational::new(BigInt::from(r), BigInt::from(s)),
    )
}

/// Exact scalar from an `f64` pair, taking the exact dyadic value of each part.
pub fn xfrom_c64(z: C64) -> ExactScalar {
    Complex::new(
        BigRational::from_f64(z.re).expect("finite real part"),
        BigRational::from_f64(z.im).expect("finite imaginary part"),
    )
}

/// Convert an exact scalar to `f64` precision.
pub fn xto_c64(z: &ExactScalar) -> C64 {
    c64(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

/// Polynomial with exact Gaussian-rational coefficients, `coeffs[k]` the
/// coefficient of the k-th power. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactPoly {
    coeffs: Vec<ExactScalar>,
}

impl ExactPoly {
    /// Build from coefficients (constant term first); trailing zeros trimmed.
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: ExactScalar) -> Self {
        ExactPoly::new(vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(c: ExactScalar, k: usize) -> Self {
        let mut v = vec![ExactScalar::zero(); k + 1];
        v[k] = c;
        ExactPoly::new(v)
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero when beyond the stored degree).
    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum.
    pub fn add(&self, other: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) + other.coeff(k));
        }
        ExactPoly::new(v)
    }

    /// Difference.
    pub fn sub(&self, other: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) - other.coeff(k));
        }
        ExactPoly::new(v)
    }

    /// Product.
    pub fn mul(&self, other: &ExactPoly) -> ExactPoly {
        if self.is_zero() || other.is_zero() {
            return ExactPoly::zero();
        }
        let mut v = vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        ExactPoly::new(v)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &ExactScalar) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> ExactPoly {
        if self.is_zero() {
            return ExactPoly::zero();
        }
        let mut v = vec![ExactScalar::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        ExactPoly::new(v)
    }

    /// Derivative.
    pub fn derivative(&self) -> ExactPoly {
        if self.coeffs.len() <= 1 {
            return ExactPoly::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a.clone() * xint(k as i64))
            .collect();
        ExactPoly::new(v)
    }

    /// Antiderivative with zero constant term, `∫₀^t`.
    pub fn integral(&self) -> ExactPoly {
        if self.is_zero() {
            return ExactPoly::zero();
        }
        let mut v = vec![ExactScalar::zero()];
        for (k, a) in self.coeffs.iter().enumerate() {
            v.push(a.clone() / xint(k as i64 + 1));
        }
        ExactPoly::new(v)
    }

    /// The part of the polynomial with odd powers only.
    pub fn odd_part(&self) -> ExactPoly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| if k % 2 == 1 { a.clone() } else { ExactScalar::zero() })
            .collect();
        ExactPoly::new(v)
    }

    /// Exact evaluation.
    pub fn eval_exact(&self, t: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * t.clone() + a.clone();
        }
        acc
    }

    /// Floating-point copy of the polynomial.
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(xto_c64).collect())
    }

    /// Floating-point evaluation (coefficients converted, then Horner).
    pub fn eval(&self, t: C64) -> C64 {
        self.to_poly().eval(t)
    }
}

/// `1` as an exact scalar.
pub fn xone() -> ExactScalar {
    ExactScalar::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_degree() {
        let p = ExactPoly::new(vec![xint(1), xint(2), xint(1)]); // 1 + 2t + t²
        let q = ExactPoly::new(vec![xint(-1), xint(1)]); // t − 1
        let r = p.mul(&q); // t³ + t² − t − 1
        assert_eq!(r.degree(), Some(3));
        assert_eq!(r.coeff(0), xint(-1));
        assert_eq!(r.coeff(1), xint(-1));
        assert_eq!(r.coeff(2), xint(1));
        assert_eq!(r.coeff(3), xint(1));
        let s = p.sub(&p);
        assert!(s.is_zero());
        assert_eq!(s.degree(), None);
    }

    #[test]
    fn derivative_integral_inverse() {
        let p = ExactPoly::new(vec![xint(0), xint(3), xratio(1, 2)]);
        assert_eq!(p.derivative().integral(), p);
    }

    #[test]
    fn odd_part_extraction() {
        let p = ExactPoly::new(vec![xint(4), xint(3), xint(2), xint(1)]);
        let o = p.odd_part();
        assert_eq!(o.coeff(0), xint(0));
        assert_eq!(o.coeff(1), xint(3));
        assert_eq!(o.coeff(2), xint(0));
        assert_eq!(o.coeff(3), xint(1));
    }

    #[test]
    fn eval_matches_float() {
        let p = ExactPoly::new(vec![xratio(1, 3), xint(0), xcomplex(0, 1, 2, 1)]);
        let t = c64(0.7, -0.2);
        let exact = p.eval_exact(&xfrom_c64(t));
        assert!((xto_c64(&exact) - p.eval(t)).norm() < 1e-14);
    }
}
