//! The Lommel function `S_{μ,ν}` on the principal branch and on every sheet.
//!
//! `S_{μ,ν}` is the particular integral of
//!
//! ```text
//! ζ² y'' + ζ y' + (ζ² − ν²) y = ζ^{μ+1}
//! ```
//!
//! that decays algebraically like `ζ^{μ−1}` along rays of the principal
//! sector (no oscillatory `ζ^{−1/2} e^{±iζ}` component).
//!
//! Parameter regimes:
//!
//! * `μ ± ν` an odd **positive** integer `2p+1`: the function degenerates to
//!   `ζ^{μ−1} Σ_{k≤p} (−1)^k c_k ζ^{−2k}` with
//!   `c_k = Π_{m=1}^k [(μ−2m+1)² − ν²]` — a closed polynomial form, exact on
//!   every sheet;
//! * `μ ± ν` an odd **negative** integer `−2p−1`: the power-series
//!   construction breaks down (vanishing denominators) and the principal
//!   value comes from a variation-of-parameters quadrature; continuation uses
//!   dedicated formulae with the `K'`/`K''` constants;
//! * otherwise (generic): the principal value is
//!   `s_{μ,ν} + 2^{μ−1}Γ(χ₊)Γ(χ₋)[sin((μ−ν)π/2)·J_ν − cos((μ−ν)π/2)·Y_ν]`
//!   (small modulus) or the descending asymptotic series (large modulus), and
//!   continuation multiplies in Hankel corrections through the coefficient
//!   `P_m`.
//!
//! All continuation formulae reduce to the identity at `m = 0` exactly.

use std::f64::consts::PI;

use crate::bessel::{
    bessel_j, bessel_j_prime, bessel_jy, bessel_y, bessel_y_prime, hankel, EvalResult, Method,
};
use crate::branch::BranchPoint;
use crate::error::{Error, Result};
use crate::exact::{xint, ExactPoly, ExactScalar};
use crate::gamma::{gamma_complex, pochhammer};
use crate::poly::{abc_polys, chebyshev_u, lommel_ck, lommel_ck_exact, Poly};
use crate::quad::gl16_adaptive;
use crate::{c64, C64};

/// Default tolerance for recognizing `μ ± ν` as an odd integer.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Largest degenerate index searched for; beyond this the polynomial path
/// overflows doubles at desk-scale moduli anyway.
pub const MAX_DEGENERATE_P: u32 = 64;

/// Series denominators smaller than this route evaluation to the quadrature
/// oracle instead of the power series.
pub const NEAR_DEGENERATE_DENOM: f64 = 1e-8;

/// Subscript pair `(μ, ν)` of a Lommel function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LommelParams {
    pub mu: C64,
    pub nu: C64,
}

impl LommelParams {
    pub fn new(mu: C64, nu: C64) -> Self {
        LommelParams { mu, nu }
    }

    /// The same function with ν negated (`S_{μ,ν}` is even in ν).
    pub fn flip_nu(&self) -> Self {
        LommelParams { mu: self.mu, nu: -self.nu }
    }
}

/// Which Lemma-3.2-style case applies when `μ ± ν` is an odd negative
/// integer. `nu_flipped` records that evenness in ν was used to bring the
/// parameters into the `μ − ν = −2p−1` form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegOddCase {
    /// ν not an integer (case a).
    NonInteger { p: u32, nu_flipped: bool },
    /// ν = 0 (case b); here μ = −2p−1.
    ZeroNu { p: u32 },
    /// Effective ν = −n for a positive integer n (case c).
    NegativeInteger { p: u32, n: u32, nu_flipped: bool },
}

/// Degeneracy classification of a parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegeneracyClass {
    /// `μ + ν = 2p + 1`.
    PlusOdd(u32),
    /// `μ − ν = 2p + 1`.
    MinusOdd(u32),
    /// Both sums are odd positive integers.
    BothOdd(u32, u32),
    /// `μ ± ν` an odd negative integer (continuation per the K′/K″ formulae).
    NegativeOdd(NegOddCase),
    /// None of the special regimes.
    Generic,
}

impl DegeneracyClass {
    /// Degenerate in the polynomial sense (finitely many zeros per branch).
    pub fn is_polynomial(&self) -> bool {
        matches!(
            self,
            DegeneracyClass::PlusOdd(_) | DegeneracyClass::MinusOdd(_) | DegeneracyClass::BothOdd(_, _)
        )
    }

    /// The truncation index of the polynomial form, when degenerate.
    pub fn polynomial_p(&self) -> Option<u32> {
        match *self {
            DegeneracyClass::PlusOdd(p) | DegeneracyClass::MinusOdd(p) => Some(p),
            DegeneracyClass::BothOdd(pp, pm) => Some(pp.min(pm)),
            _ => None,
        }
    }
}

/// `w ≈ 2p+1` for a non-negative integer `p ≤ MAX_DEGENERATE_P`?
fn odd_positive_index(w: C64, tol: f64) -> Option<u32> {
    if w.im.abs() > tol {
        return None;
    }
    let p = ((w.re - 1.0) / 2.0).round();
    if p < 0.0 || p > f64::from(MAX_DEGENERATE_P) {
        return None;
    }
    if (w.re - (2.0 * p + 1.0)).abs() <= tol {
        Some(p as u32)
    } else {
        None
    }
}

/// `w ≈ −2p−1` for a non-negative integer `p ≤ MAX_DEGENERATE_P`?
fn odd_negative_index(w: C64, tol: f64) -> Option<u32> {
    odd_positive_index(-w, tol)
}

fn near_integer(w: C64, tol: f64) -> Option<i64> {
    let n = w.re.round();
    if (w - n).norm() <= tol {
        Some(n as i64)
    } else {
        None
    }
}

/// Classify the parameter pair per the degeneracy dichotomy.
pub fn classify_degeneracy(params: &LommelParams, tol: f64) -> DegeneracyClass {
    let plus = odd_positive_index(params.mu + params.nu, tol);
    let minus = odd_positive_index(params.mu - params.nu, tol);
    match (plus, minus) {
        (Some(pp), Some(pm)) => return DegeneracyClass::BothOdd(pp, pm),
        (Some(pp), None) => return DegeneracyClass::PlusOdd(pp),
        (None, Some(pm)) => return DegeneracyClass::MinusOdd(pm),
        (None, None) => {}
    }
    let neg_minus = odd_negative_index(params.mu - params.nu, tol);
    let neg_plus = odd_negative_index(params.mu + params.nu, tol);
    if neg_minus.is_some() || neg_plus.is_some() {
        let nu_int = near_integer(params.nu, tol);
        if let Some(0) = nu_int {
            // μ = −2p−1; both negative conditions coincide
            let p = neg_minus.or(neg_plus).unwrap();
            return DegeneracyClass::NegativeOdd(NegOddCase::ZeroNu { p });
        }
        if let Some(n) = nu_int {
            // bring ν to the negative integer −|n| via evenness
            if n < 0 {
                if let Some(p) = neg_minus {
                    return DegeneracyClass::NegativeOdd(NegOddCase::NegativeInteger {
                        p,
                        n: (-n) as u32,
                        nu_flipped: false,
                    });
                }
            } else if let Some(p) = neg_plus {
                // μ − (−ν) = μ + ν = −2p−1
                return DegeneracyClass::NegativeOdd(NegOddCase::NegativeInteger {
                    p,
                    n: n as u32,
                    nu_flipped: true,
                });
            }
            // integer ν with only the "wrong" side odd negative cannot occur:
            // μ∓ν then differ by the even number 2ν
            return DegeneracyClass::Generic;
        }
        // non-integer ν: exactly one side can be odd negative
        if let Some(p) = neg_minus {
            return DegeneracyClass::NegativeOdd(NegOddCase::NonInteger { p, nu_flipped: false });
        }
        if let Some(p) = neg_plus {
            return DegeneracyClass::NegativeOdd(NegOddCase::NonInteger { p, nu_flipped: true });
        }
    }
    DegeneracyClass::Generic
}

// ---------------------------------------------------------------------------
// degenerate polynomial form
// ---------------------------------------------------------------------------

/// Degenerate polynomial form `S = ζ^{μ−1} P(ζ^{−2})` with
/// `P(w) = Σ_{k=0}^p (−1)^k c_k w^k`. Returns the exponent `μ−1` and `P`.
pub fn lommel_degenerate_poly(params: &LommelParams) -> Result<(C64, Poly)> {
    let class = classify_degeneracy(params, DEGENERACY_TOL);
    let p = class.polynomial_p().ok_or_else(|| {
        Error::NotDegenerate(format!(
            "μ ± ν not an odd positive integer for μ = {}, ν = {}",
            params.mu, params.nu
        ))
    })?;
    let coeffs = (0..=p)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * lommel_ck(params.mu, params.nu, k)
        })
        .collect();
    Ok((params.mu - 1.0, Poly::new(coeffs)))
}

/// Exact-coefficient version of the degenerate polynomial `P(w)`.
pub fn lommel_degenerate_poly_exact(mu: &ExactScalar, nu: &ExactScalar, p: u32) -> ExactPoly {
    let coeffs = (0..=p)
        .map(|k| {
            let c = lommel_ck_exact(mu, nu, k);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    ExactPoly::new(coeffs)
}

/// Degenerate `S` with first and second derivatives, valid on any sheet.
pub fn eval_degenerate_with_derivs(params: &LommelParams, z: &BranchPoint) -> Result<(C64, C64, C64)> {
    let (_, poly) = lommel_degenerate_poly(params)?;
    let zc = z.to_c64();
    let w = 1.0 / (zc * zc);
    let dp = poly.derivative();
    let ddp = dp.derivative();
    let mu = params.mu;
    let p0 = poly.eval(w);
    let p1 = dp.eval(w);
    let p2 = ddp.eval(w);
    let s = z.pow(mu - 1.0) * p0;
    // d/dζ [ζ^{μ−1} P(ζ^{−2})] = ζ^{μ−2}[(μ−1)P − 2wP′]
    let g0 = (mu - 1.0) * p0 - 2.0 * w * p1;
    let s1 = z.pow(mu - 2.0) * g0;
    // one more step of the same pattern
    let g1 = (mu - 2.0) * g0 - 2.0 * w * ((mu - 1.0) * p1 - 2.0 * p1 - 2.0 * w * p2);
    let s2 = z.pow(mu - 3.0) * g1;
    Ok((s, s1, s2))
}

/// Degenerate `S` value on any sheet.
pub fn eval_degenerate(params: &LommelParams, z: &BranchPoint) -> Result<C64> {
    let (_, poly) = lommel_degenerate_poly(params)?;
    let zc = z.to_c64();
    let w = 1.0 / (zc * zc);
    Ok(z.pow(params.mu - 1.0) * poly.eval(w))
}

// ---------------------------------------------------------------------------
// continuation constants
// ---------------------------------------------------------------------------

/// The constants of the continuation formulae at branch index `m`:
///
/// ```text
/// K    = 2^{μ−1} Γ(χ₊) Γ(χ₋),        χ± = (μ ± ν + 1)/2
/// K₊   = K·i·[1 + e^{(−μ+ν)πi}]·cos((μ+ν)π/2)
/// K′±  = π 2^{ν−2} i e^{−mνπi} Γ(ν) [U_{m−1}(cos νπ) e^{(m±1)νπi} − m]
/// K″±  = −mπ²(m±1)/4
/// ```
///
/// Fields that hit a Γ pole are reported as `None` (pole-limited) rather
/// than as an error, so callers can keep the finite ones.
#[derive(Debug, Clone)]
pub struct KConstants {
    pub k: Option<C64>,
    pub k_plus: Option<C64>,
    pub kp_plus: Option<C64>,
    pub kp_minus: Option<C64>,
    pub kpp_plus: C64,
    pub kpp_minus: C64,
    /// The branch index the `K′`/`K″` fields depend on.
    pub m: i32,
}

/// Compute all continuation constants at branch index `m`.
pub fn k_constants(params: &LommelParams, m: i32) -> KConstants {
    let mu = params.mu;
    let nu = params.nu;
    let chi_p = (mu + nu + 1.0) / 2.0;
    let chi_m = (mu - nu + 1.0) / 2.0;
    let k = match (gamma_complex(chi_p), gamma_complex(chi_m)) {
        (Ok(gp), Ok(gm)) => Some(((mu - 1.0) * c64(2.0f64.ln(), 0.0)).exp() * gp * gm),
        _ => None,
    };
    let class = classify_degeneracy(params, DEGENERACY_TOL);
    let k_plus = if class.is_polynomial() {
        // K₊ vanishes identically in the degenerate regimes
        Some(C64::ZERO)
    } else {
        k.map(|kv| {
            kv * C64::i()
                * (1.0 + ((-mu + nu) * PI * C64::i()).exp())
                * ((mu + nu) / 2.0 * PI).cos()
        })
    };
    let mf = f64::from(m);
    let (kp_plus, kp_minus) = match gamma_complex(nu) {
        Ok(gnu) => {
            let common = PI * ((nu - 2.0) * c64(2.0f64.ln(), 0.0)).exp() * C64::i()
                * (-C64::i() * mf * nu * PI).exp()
                * gnu;
            // U_{m−1}(cos νπ) in the classical indexing is sin(mνπ)/sin(νπ)
            let u = chebyshev_u(i64::from(m), nu);
            let plus = common * (u * (C64::i() * (mf + 1.0) * nu * PI).exp() - mf);
            let minus = common * (u * (C64::i() * (mf - 1.0) * nu * PI).exp() - mf);
            (Some(plus), Some(minus))
        }
        _ => (None, None),
    };
    let kpp_plus = c64(-mf * PI * PI * (mf + 1.0) / 4.0, 0.0);
    let kpp_minus = c64(-mf * PI * PI * (mf - 1.0) / 4.0, 0.0);
    KConstants { k, k_plus, kp_plus, kp_minus, kpp_plus, kpp_minus, m }
}

/// Continuation coefficient
///
/// ```text
///        U_{m−1}(cos νπ) + e^{−μπi} U_m(cos νπ) + (−1)^{m+1} e^{−(m+1)μπi}
/// P_m = ───────────────────────────────────────────────────────────────────
///               [1 + e^{−(μ+ν)πi}]·[1 + e^{−(μ−ν)πi}]
/// ```
///
/// in the classical Chebyshev indexing (`U_{m−1}(cos νπ) = sin(mνπ)/sin νπ`),
/// under which `P_0 = P_{−1} = 0` exactly and the `m = 0` continuation is the
/// identity.
pub fn continuation_coeff_p(m: i32, params: &LommelParams) -> Result<C64> {
    let mu = params.mu;
    let nu = params.nu;
    let denom = (1.0 + (-(mu + nu) * PI * C64::i()).exp())
        * (1.0 + (-(mu - nu) * PI * C64::i()).exp());
    if denom.norm() < 1e-12 {
        return Err(Error::DegenerateDenominator(format!(
            "P_{m} denominator {denom:e} vanishes for μ = {mu}, ν = {nu} (odd-integer μ±ν regime)"
        )));
    }
    let e_mu = (-mu * PI * C64::i()).exp();
    let sign = if (m + 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let tail = sign * (-(f64::from(m) + 1.0) * mu * PI * C64::i()).exp();
    let num = chebyshev_u(i64::from(m), nu) + e_mu * chebyshev_u(i64::from(m) + 1, nu) + tail;
    Ok(num / denom)
}

// ---------------------------------------------------------------------------
// principal-branch evaluation
// ---------------------------------------------------------------------------

const EPS: f64 = 2.2e-16;

/// Smallest series denominator `|(μ+2j+1)² − ν²|` over the first terms.
fn min_series_denominator(params: &LommelParams) -> f64 {
    let nu2 = params.nu * params.nu;
    let mut min = f64::INFINITY;
    for j in 0..=(2 * MAX_DEGENERATE_P) {
        let t = params.mu + (2.0 * f64::from(j) + 1.0);
        let d = (t * t - nu2).norm();
        min = min.min(d);
    }
    min
}

/// Power-series construction of the principal value:
/// `S = s_{μ,ν} + K·[sin((μ−ν)π/2)·J_ν − cos((μ−ν)π/2)·Y_ν]`.
fn lommel_s_series(params: &LommelParams, z: &BranchPoint) -> Result<(C64, f64)> {
    let mu = params.mu;
    let nu = params.nu;
    let zc = z.to_c64();
    let nu2 = nu * nu;
    let d0 = (mu + 1.0) * (mu + 1.0) - nu2;
    if d0.norm() < 1e-12 {
        return Err(Error::Pole(format!(
            "series denominator (μ+1)²−ν² vanishes for μ = {mu}, ν = {nu}"
        )));
    }
    let mut term = 1.0 / d0;
    let mut sum = term;
    let mut max_abs = term.norm();
    let z2 = zc * zc;
    let mut k = 0u32;
    loop {
        k += 1;
        let t = mu + (2.0 * f64::from(k) + 1.0);
        let d = t * t - nu2;
        if d.norm() < 1e-12 {
            return Err(Error::Pole(format!(
                "series denominator (μ+{}+1)²−ν² vanishes",
                2 * k
            )));
        }
        term *= -z2 / d;
        sum += term;
        max_abs = max_abs.max(sum.norm()).max(term.norm());
        if term.norm() < 1e-17 * sum.norm().max(1e-300) && f64::from(k) > zc.norm() {
            break;
        }
        if k > 700 {
            return Err(Error::Convergence(format!("s series did not converge at {zc}")));
        }
    }
    let pref = z.pow(mu + 1.0);
    let s_small = pref * sum;
    let est_s = max_abs * EPS * f64::from(k) * pref.norm();

    let kk = gamma_complex((mu + nu + 1.0) / 2.0)
        .and_then(|gp| gamma_complex((mu - nu + 1.0) / 2.0).map(|gm| (gp, gm)))
        .map(|(gp, gm)| ((mu - 1.0) * c64(2.0f64.ln(), 0.0)).exp() * gp * gm)
        .map_err(|_| {
            Error::Pole(format!("Γ(χ±) pole in the Lommel K constant for μ = {mu}, ν = {nu}"))
        })?;
    let (j, y) = bessel_jy(nu, z)?;
    let half_angle = (mu - nu) / 2.0 * PI;
    let combo = half_angle.sin() * j.value - half_angle.cos() * y.value;
    let est_b = kk.norm()
        * (half_angle.sin().norm() * j.abs_err_est
            + half_angle.cos().norm() * y.abs_err_est
            + (j.value.norm() + y.value.norm()) * EPS);
    Ok((s_small + kk * combo, est_s + est_b))
}

/// Descending asymptotic series `ζ^{μ−1} Σ (−1)^k c_k ζ^{−2k}`, truncated at
/// its smallest term.
///
/// Beyond `|arg ζ| = π/2` the truncation error also carries the
/// Stokes-switched recessive exponential (a Hankel-sized component of
/// magnitude `(2/(πζ))^{1/2} e^{−|Im ζ|}` times the `K` constant), which the
/// first-omitted-term estimate cannot see; the estimate accounts for it.
fn lommel_s_asymptotic(params: &LommelParams, z: &BranchPoint) -> (C64, f64) {
    let mu = params.mu;
    let nu2 = params.nu * params.nu;
    let zc = z.to_c64();
    let inv_z2 = 1.0 / (zc * zc);
    let mut term = c64(1.0, 0.0);
    let mut sum = term;
    let mut first_omitted;
    let mut k = 0u32;
    loop {
        let t = mu - (2.0 * f64::from(k) + 1.0);
        let next = -term * (t * t - nu2) * inv_z2;
        first_omitted = next.norm();
        if (next.norm() > term.norm() && k > 3) || k > 200 {
            break;
        }
        term = next;
        sum += term;
        k += 1;
        if term.norm() < 1e-18 * sum.norm().max(1e-300) {
            break;
        }
    }
    let pref = z.pow(mu - 1.0);
    let value = pref * sum;
    let mut est = pref.norm() * (first_omitted + sum.norm() * EPS * f64::from(k + 1));
    if z.arg.abs() > PI / 2.0 {
        let kscale = gamma_complex((mu + params.nu + 1.0) / 2.0)
            .and_then(|gp| gamma_complex((mu - params.nu + 1.0) / 2.0).map(|gm| (gp * gm).norm()))
            .unwrap_or(1.0)
            * ((mu.re - 1.0) * 2.0f64.ln()).exp();
        est += kscale.max(1.0) * (2.0 / (PI * z.modulus)).sqrt() * (-zc.im.abs()).exp();
    }
    (value, est)
}

/// Variation-of-parameters oracle for the principal value. Independent of the
/// series construction: anchors `S`, `S'` on the positive real axis with the
/// descending asymptotic expansion, then transports them to `ζ` through
///
/// ```text
/// S(ζ) = A(ζ) J_ν(ζ) + B(ζ) Y_ν(ζ),
/// A(ζ) = a₀ − (π/2)∫ Y_ν(t) t^μ dt,   B(ζ) = b₀ + (π/2)∫ J_ν(t) t^μ dt,
/// ```
///
/// integrating along the real axis from the anchor modulus and then along a
/// circular arc to `ζ` (keeping `|Im t|` bounded by `|Im ζ|`). Also returns
/// `S' = A J'_ν + B Y'_ν`.
pub fn lommel_s_oracle(params: &LommelParams, z: &BranchPoint) -> Result<(C64, C64, f64)> {
    if !z.is_principal() {
        return Err(Error::Branch(format!("oracle requires −π < arg < π, got {}", z.arg)));
    }
    let mu = params.mu;
    let nu = params.nu;
    let r = z.modulus;
    if r == 0.0 {
        return Err(Error::Param("oracle requires ζ ≠ 0".into()));
    }
    let anchor = 40.0f64.max(r + 5.0);
    let tb = BranchPoint::new(anchor, 0.0);
    let (s_t, est_t) = lommel_s_asymptotic(params, &tb);
    // term-wise derivative of the descending series
    let sp_t = {
        let h = 1e-6 * anchor;
        let (sa, _) = lommel_s_asymptotic(params, &BranchPoint::new(anchor + h, 0.0));
        let (sb, _) = lommel_s_asymptotic(params, &BranchPoint::new(anchor - h, 0.0));
        (sa - sb) / (2.0 * h)
    };
    let jt = bessel_j(nu, &tb)?.value;
    let yt = bessel_y(nu, &tb)?.value;
    let jpt = bessel_j_prime(nu, &tb)?.value;
    let ypt = bessel_y_prime(nu, &tb)?.value;
    let w = 2.0 / (PI * anchor);
    let a0 = (ypt * s_t - yt * sp_t) / w;
    let b0 = (jt * sp_t - jpt * s_t) / w;

    // leg 1: real axis from the anchor down to |ζ|
    let qtol = 1e-12;
    let mut worst_q = 0.0f64;
    let mut leg = |f: &dyn Fn(C64) -> Result<C64>, from: C64, to: C64, osc: f64| -> Result<C64> {
        let len = (to - from).norm();
        if len == 0.0 {
            return Ok(C64::ZERO);
        }
        let panels = ((len * (1.0 + osc) / 4.0).ceil() as usize).clamp(4, 512);
        let mut err: Option<Error> = None;
        let integrand = |s: f64| -> C64 {
            let t = from + (to - from) * s;
            match f(t) {
                Ok(v) => v * (to - from),
                Err(e) => {
                    err = Some(e);
                    C64::ZERO
                }
            }
        };
        let (v, q, _) = gl16_adaptive(integrand, panels, qtol, 1 << 14);
        if let Some(e) = err {
            return Err(e);
        }
        worst_q = worst_q.max(q);
        Ok(v)
    };
    let jf = |t: C64| -> Result<C64> {
        Ok(bessel_j(nu, &BranchPoint::from_c64(t))?.value * (mu * t.ln()).exp())
    };
    let yf = |t: C64| -> Result<C64> {
        Ok(bessel_y(nu, &BranchPoint::from_c64(t))?.value * (mu * t.ln()).exp())
    };
    let start = c64(anchor, 0.0);
    let mid = c64(r, 0.0);
    let int_j_real = leg(&jf, start, mid, 1.0)?;
    let int_y_real = leg(&yf, start, mid, 1.0)?;
    // leg 2: arc of radius |ζ| from the positive real axis to arg ζ
    let phi = z.arg;
    let arc_panels = ((r * phi.abs() / 3.0).ceil() as usize).clamp(4, 512);
    let mut arc_err: Option<Error> = None;
    let mut arc = |f: &dyn Fn(C64) -> Result<C64>| -> Result<C64> {
        let integrand = |s: f64| -> C64 {
            let ang = phi * s;
            let t = c64(r * ang.cos(), r * ang.sin());
            match f(t) {
                Ok(v) => v * C64::i() * t * phi,
                Err(e) => {
                    arc_err = Some(e);
                    C64::ZERO
                }
            }
        };
        let (v, q, _) = gl16_adaptive(integrand, arc_panels, qtol, 1 << 14);
        if let Some(e) = arc_err.take() {
            return Err(e);
        }
        worst_q = worst_q.max(q);
        Ok(v)
    };
    let int_j = int_j_real + arc(&jf)?;
    let int_y = int_y_real + arc(&yf)?;

    let a = a0 - (PI / 2.0) * int_y;
    let b = b0 + (PI / 2.0) * int_j;
    let jz = bessel_j(nu, z)?.value;
    let yz = bessel_y(nu, z)?.value;
    let jpz = bessel_j_prime(nu, z)?.value;
    let ypz = bessel_y_prime(nu, z)?.value;
    let s = a * jz + b * yz;
    let sp = a * jpz + b * ypz;
    let scale = (a * jz).norm() + (b * yz).norm();
    let est = est_t + scale * (1e-13 + worst_q);
    Ok((s, sp, est))
}

/// Principal-branch evaluation of `S_{μ,ν}`.
///
/// Degenerate parameters take the exact polynomial path; odd-negative and
/// near-degenerate parameters take the quadrature oracle; generic parameters
/// take the power series at small modulus and the descending asymptotic
/// expansion at large modulus (in the blend band, whichever carries the
/// smaller error estimate).
pub fn lommel_s_principal(params: &LommelParams, z: &BranchPoint) -> Result<EvalResult> {
    if !z.is_principal() {
        return Err(Error::Branch(format!(
            "principal evaluation requires −π < arg < π, got arg = {}",
            z.arg
        )));
    }
    let class = classify_degeneracy(params, DEGENERACY_TOL);
    if class.is_polynomial() {
        let value = eval_degenerate(params, z)?;
        // coefficients are exact products; evaluation is a short Horner sum
        let est = value.norm() * EPS * 8.0;
        return Ok(EvalResult { value, abs_err_est: est, method: Method::Polynomial });
    }
    if matches!(class, DegeneracyClass::NegativeOdd(_))
        || min_series_denominator(params) < NEAR_DEGENERATE_DENOM
    {
        let (s, _, est) = lommel_s_oracle(params, z)?;
        return Ok(EvalResult { value: s, abs_err_est: est.max(1e-12 * s.norm()), method: Method::Quadrature });
    }
    let r = z.modulus;
    if r < 14.0 {
        let (v, e) = lommel_s_series(params, z)?;
        Ok(EvalResult { value: v, abs_err_est: e, method: Method::Series })
    } else if r > 22.0 {
        let (v, e) = lommel_s_asymptotic(params, z);
        Ok(EvalResult { value: v, abs_err_est: e, method: Method::Asymptotic(0) })
    } else {
        let (va, ea) = lommel_s_asymptotic(params, z);
        match lommel_s_series(params, z) {
            Ok((vs, es)) if es < ea => Ok(EvalResult { value: vs, abs_err_est: es, method: Method::Series }),
            _ => Ok(EvalResult { value: va, abs_err_est: ea, method: Method::Asymptotic(0) }),
        }
    }
}

// ---------------------------------------------------------------------------
// analytic continuation
// ---------------------------------------------------------------------------

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn parity_sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `S_{μ,ν}(ζ e^{−mπi})` assembled from principal-branch values at `ζ`.
///
/// Dispatches on [`classify_degeneracy`]: polynomial degenerate forms rotate
/// exactly; generic parameters use the `P_m` coefficient formula; odd-negative
/// parameters use the dedicated `K'`/`K''` formulae (cases a, b, c), with
/// `S_{−1,0}` and its derivative supplied by the quadrature oracle in case c.
pub fn lommel_continued(params: &LommelParams, z_principal: &BranchPoint, m: i32) -> Result<C64> {
    if !z_principal.is_principal() {
        return Err(Error::Branch(format!(
            "continuation base point must be principal, got arg = {}",
            z_principal.arg
        )));
    }
    let class = classify_degeneracy(params, DEGENERACY_TOL);
    match class {
        DegeneracyClass::PlusOdd(_) | DegeneracyClass::MinusOdd(_) | DegeneracyClass::BothOdd(_, _) => {
            // ζ^{μ−1} carries the whole branch dependence
            eval_degenerate(params, &z_principal.rotate_half_turns(m))
        }
        DegeneracyClass::Generic => {
            let s = lommel_s_principal(params, z_principal)?.value;
            let mu = params.mu;
            let nu = params.nu;
            let rot = parity_sign(i64::from(m)) * (-C64::i() * f64::from(m) * mu * PI).exp();
            let kc = k_constants(params, m);
            let k_plus = kc.k_plus.ok_or_else(|| {
                Error::Pole(format!("K₊ pole-limited for μ = {}, ν = {}", mu, nu))
            })?;
            if m == 0 {
                return Ok(s);
            }
            let p_m = continuation_coeff_p(m, params)?;
            let p_m1 = continuation_coeff_p(m - 1, params)?;
            let h1 = hankel(1, nu, z_principal)?.value;
            let h2 = hankel(2, nu, z_principal)?.value;
            Ok(rot * s + k_plus * (p_m * h1 + (-C64::i() * nu * PI).exp() * p_m1 * h2))
        }
        DegeneracyClass::NegativeOdd(case) => continued_negative_odd(params, z_principal, m, case),
    }
}

fn continued_negative_odd(
    params: &LommelParams,
    z: &BranchPoint,
    m: i32,
    case: NegOddCase,
) -> Result<C64> {
    match case {
        NegOddCase::NonInteger { p, nu_flipped } => {
            // S_{ν−2p−1,ν}(ζe^{−mπi}) = e^{−mνπi} S(ζ) + (−1)^p/(2^{2p} p! (1−ν)_p)·[K′₊H¹_ν + K′₋H²_ν]
            let eff = if nu_flipped { params.flip_nu() } else { *params };
            let nu = eff.nu;
            let (s, _, _) = lommel_s_oracle(&eff, z)?;
            if m == 0 {
                return Ok(s);
            }
            let kc = k_constants(&eff, m);
            let (kp_p, kp_m) = match (kc.kp_plus, kc.kp_minus) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Error::UnsupportedCase(format!(
                        "K′ pole-limited at ν = {nu} (integer ν belongs to cases b/c)"
                    )))
                }
            };
            let coeff = parity_sign(i64::from(p))
                / (2.0f64.powi(2 * i32::try_from(p).unwrap()) * factorial(p))
                / pochhammer(1.0 - nu, p);
            let h1 = hankel(1, nu, z)?.value;
            let h2 = hankel(2, nu, z)?.value;
            let rot = (-C64::i() * f64::from(m) * nu * PI).exp();
            Ok(rot * s + coeff * (kp_p * h1 + kp_m * h2))
        }
        NegOddCase::ZeroNu { p } => {
            // S_{−2p−1,0}(ζe^{−mπi}) = S(ζ) + (−1)^p/(2^{2p}(p!)²)·[K″₊H¹₀ + K″₋H²₀]
            let (s, _, _) = lommel_s_oracle(params, z)?;
            if m == 0 {
                return Ok(s);
            }
            let kc = k_constants(params, m);
            let coeff = parity_sign(i64::from(p))
                / (2.0f64.powi(2 * i32::try_from(p).unwrap()) * factorial(p).powi(2));
            let h1 = hankel(1, C64::ZERO, z)?.value;
            let h2 = hankel(2, C64::ZERO, z)?.value;
            Ok(s + coeff * (kc.kpp_plus * h1 + kc.kpp_minus * h2))
        }
        NegOddCase::NegativeInteger { p, n, nu_flipped } => {
            // Lemma case (c): ν_eff = −n, μ = −n−2p−1
            let eff = if nu_flipped { params.flip_nu() } else { *params };
            let (s, _, _) = lommel_s_oracle(&eff, z)?;
            if m == 0 {
                return Ok(s);
            }
            let zc = z.to_c64();
            let (a_n, b_n, c_n) = abc_polys(n);
            let delta_m = 1.0 + parity_sign(i64::from(m) - 1);
            let split = |poly: &ExactPoly| -> (C64, C64) {
                let hat = poly.odd_part();
                let bar = poly.sub(&hat.scale(&xint(delta_m as i64)));
                (hat.eval(zc), bar.eval(zc))
            };
            let (a_hat, _) = split(&a_n);
            let (b_hat, b_bar) = split(&b_n);
            let (c_hat, c_bar) = split(&c_n);
            let s_m10 = LommelParams::new(c64(-1.0, 0.0), C64::ZERO);
            let (s10, s10p, _) = lommel_s_oracle(&s_m10, z)?;
            let kc = k_constants(&eff, m);
            let h10 = hankel(1, C64::ZERO, z)?.value;
            let h20 = hankel(2, C64::ZERO, z)?.value;
            let h11 = hankel(1, c64(1.0, 0.0), z)?.value;
            let h21 = hankel(2, c64(1.0, 0.0), z)?.value;
            let nf = i64::from(n);
            let rot = parity_sign(i64::from(m) * nf);
            let sign = parity_sign((i64::from(m) + 1) * nf + i64::from(p));
            let denom = 2.0f64.powi(i32::try_from(2 * p + n).unwrap())
                * factorial(n)
                * factorial(p).powi(2)
                * pochhammer(c64(1.0 + f64::from(n), 0.0), p).re;
            let zeta_pow = zc.powi(-i32::try_from(n).unwrap());
            let brace = -delta_m * (a_hat + b_hat * s10 + zc * c_hat * s10p)
                + b_bar * (kc.kpp_plus * h10 + kc.kpp_minus * h20)
                - zc * c_bar * (kc.kpp_plus * h11 + kc.kpp_minus * h21);
            Ok(rot * s + sign / denom * zeta_pow * brace)
        }
    }
}

/// `S_{μ,ν}` at an arbitrary surface point: decomposes into a principal base
/// point and a continuation index, then applies [`lommel_continued`].
pub fn lommel_s_surface(params: &LommelParams, z: &BranchPoint) -> Result<C64> {
    let class = classify_degeneracy(params, DEGENERACY_TOL);
    if class.is_polynomial() {
        return eval_degenerate(params, z);
    }
    let (zp, m) = z.interior_decomposition();
    // the surface point is ζ_p e^{−mπi}
    lommel_continued(params, &BranchPoint::from_c64(zp), m)
}
