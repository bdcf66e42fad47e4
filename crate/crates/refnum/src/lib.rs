//! Reference Bessel values from exact rational arithmetic.
//!
//! For rational order and rational argument, the Bessel power series has
//! rational terms; summing them exactly with `BigRational` and converting the
//! finished sum to `f64` eliminates the catastrophic cancellation that limits
//! a floating-point summation at moderate arguments (the largest term grows
//! like `e^x`). The results are reference-quality (relative error at the
//! `f64` conversion level, ~1e−16) up to desk-scale arguments, at the price
//! of speed.
//!
//! This crate is a test oracle. It shares no evaluation strategy with the
//! main crate: no asymptotic expansions, no regime switching, no error
//! estimates — just exact series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A rational number `p/q`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Real-argument gamma via Lanczos (g = 7); only used for non-cancelling
/// prefactors.
fn gamma_real(x: f64) -> f64 {
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma_real(1.0 - x))
    } else {
        let xm1 = x - 1.0;
        let mut acc = COEFFS[0];
        for (i, &c) in COEFFS.iter().enumerate().skip(1) {
            acc += c / (xm1 + i as f64);
        }
        let t = xm1 + 7.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(xm1 + 0.5) * (-t).exp() * acc
    }
}

/// Exact sum of `Σ_k (−x²/4)^k / (k! (ν+1)_k)`, truncated far below the
/// `f64` conversion level.
fn ratio_series(nu: &BigRational, x: &BigRational) -> f64 {
    let q = -(x * x) / ratio(4, 1);
    let mut term = ratio(1, 1);
    let mut sum = term.clone();
    let mut k: i64 = 0;
    let x_f = x.to_f64().unwrap();
    loop {
        k += 1;
        let denom = (nu + ratio(k, 1)) * ratio(k, 1);
        term = term * q.clone() / denom;
        sum += term.clone();
        if k as f64 > x_f {
            let t = term.abs().to_f64().unwrap_or(f64::INFINITY);
            let s = sum.abs().to_f64().unwrap_or(1.0).max(1e-30);
            if t < 1e-45 * s {
                break;
            }
        }
        assert!(k < 5000, "reference series failed to converge");
    }
    sum.to_f64().unwrap()
}

/// `J_ν(x)` for rational `ν` and rational `x > 0`.
pub fn bessel_j(nu: &BigRational, x: &BigRational) -> f64 {
    let s = ratio_series(nu, x);
    let nu_f = nu.to_f64().unwrap();
    let x_f = x.to_f64().unwrap();
    (x_f / 2.0).powf(nu_f) / gamma_real(nu_f + 1.0) * s
}

/// `Y_0(x)` through the logarithmic series
/// `(2/π)[(ln(x/2)+γ)J_0(x) + Σ_{k≥1} (−1)^{k+1} H_k (x²/4)^k/(k!)²]`.
pub fn bessel_y0(x: &BigRational) -> f64 {
    let q = (x * x) / ratio(4, 1);
    let mut pow = ratio(1, 1); // (x²/4)^k / (k!)²
    let mut harmonic = BigRational::zero();
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    let x_f = x.to_f64().unwrap();
    loop {
        k += 1;
        pow = pow * q.clone() / ratio(k * k, 1);
        harmonic += ratio(1, k);
        let term = pow.clone() * harmonic.clone();
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        if k as f64 > x_f {
            let t = (pow.clone() * harmonic.clone()).abs().to_f64().unwrap_or(f64::INFINITY);
            let s = sum.abs().to_f64().unwrap_or(1.0).max(1e-30);
            if t < 1e-45 * s {
                break;
            }
        }
        assert!(k < 5000, "reference series failed to converge");
    }
    let j0 = bessel_j(&BigRational::zero(), x);
    let ln_half_x = (x_f / 2.0).ln();
    (2.0 / std::f64::consts::PI) * ((ln_half_x + EULER_GAMMA) * j0 + sum.to_f64().unwrap())
}

/// `Y_ν(x)` for non-integer rational `ν` via the reflection formula.
pub fn bessel_y(nu: &BigRational, x: &BigRational) -> f64 {
    assert!(!nu.is_integer(), "use bessel_y0 (or the recurrence) at integer orders");
    let nu_f = nu.to_f64().unwrap();
    let jp = bessel_j(nu, x);
    let jm = bessel_j(&(-nu), x);
    let (s, c) = (std::f64::consts::PI * nu_f).sin_cos();
    (jp * c - jm) / s
}

/// `H^{(1)}_ν(x)` or `H^{(2)}_ν(x)` as `(re, im)`; integer ν only at 0.
pub fn hankel(kind: u8, nu: &BigRational, x: &BigRational) -> (f64, f64) {
    let j = bessel_j(nu, x);
    let y = if nu.is_zero() { bessel_y0(x) } else { bessel_y(nu, x) };
    match kind {
        1 => (j, y),
        2 => (j, -y),
        _ => panic!("hankel kind must be 1 or 2"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_known_values() {
        // J_0(2) and J_0(30), 16 digits
        assert!((bessel_j(&ratio(0, 1), &ratio(2, 1)) - 0.223_890_779_141_235_67).abs() < 1e-15);
        assert!((bessel_j(&ratio(0, 1), &ratio(30, 1)) - (-0.086_367_983_581_040_14)).abs() < 2e-15);
    }

    #[test]
    fn j_half_closed_form() {
        // J_{1/2}(x) = sqrt(2/(πx)) sin x
        for &x in &[2i64, 30, 60] {
            let xf = x as f64;
            let expect = (2.0 / (std::f64::consts::PI * xf)).sqrt() * xf.sin();
            let got = bessel_j(&ratio(1, 2), &ratio(x, 1));
            assert!((got - expect).abs() < 1e-14 * (1.0 + expect.abs()), "x = {x}");
        }
    }

    #[test]
    fn y0_known_value() {
        // Y_0(2) = 0.510375672649745...
        assert!((bessel_y0(&ratio(2, 1)) - 0.510_375_672_649_745_1).abs() < 1e-14);
    }

    #[test]
    fn y_half_closed_form() {
        // Y_{1/2}(x) = −sqrt(2/(πx)) cos x
        let x = 30.0;
        let expect = -(2.0 / (std::f64::consts::PI * x)).sqrt() * x.cos();
        let got = bessel_y(&ratio(1, 2), &ratio(30, 1));
        assert!((got - expect).abs() < 1e-14);
    }

    #[test]
    fn wronskian_identity() {
        // J_{ν+1} Y_ν − J_ν Y_{ν+1} = 2/(πx) — an all-rational-series check
        let nu = ratio(1, 3);
        let nup = ratio(4, 3);
        let x = ratio(17, 1);
        let lhs = bessel_j(&nup, &x) * bessel_y(&nu, &x) - bessel_j(&nu, &x) * bessel_y(&nup, &x);
        let rhs = 2.0 / (std::f64::consts::PI * 17.0);
        assert!((lhs - rhs).abs() < 1e-14);
    }
}
