//! Asymptotic location and Newton refinement of the zeros of `z·eᶻ = a`.
//!
//! For `a = A e^{iα}` (`A > 0`, `−π < α ≤ π`) and a non-zero integer `n`, set
//!
//! ```text
//! H_n = 2|n|π + sgn(n)·α − π/2,     β_n = log(A/H_n),
//! η_n = Σ_{j≥0} (−1)^j Q_{2j+1}(β_n) H_n^{−2j−1},
//! ```
//!
//! with the `Q_m` polynomials of [`crate::poly::wright_q_poly`]. When `|n|`
//! is large enough that
//!
//! ```text
//! 2 H_n |β_n| < (H_n − 1)²   and
//! (log A)² < (H_n − π/2)² + 2(1 + log A) log H_n + 1
//! ```
//!
//! hold, the n-th zero is `x(n) + i y(n)` with `x = (H_n+η_n) tan η_n`,
//! `y = sgn(n)(H_n+η_n)`, and it lies in an explicit axis-aligned box.
//! Newton iteration on `F(z) = z eᶻ − a` sharpens the seed to roundoff.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::poly::wright_q_poly;
use crate::{c64, C64};

/// The right-hand side `a` of `z·eᶻ = a`, with its polar data.
#[derive(Debug, Clone, Copy)]
pub struct WrightTarget {
    /// The non-zero right-hand side.
    pub a: C64,
    /// `A = |a|`.
    pub modulus: f64,
    /// `α = arg a ∈ (−π, π]`.
    pub alpha: f64,
}

impl WrightTarget {
    /// Build the target; fails when `a = 0`.
    pub fn new(a: C64) -> Result<Self> {
        let modulus = a.norm();
        if modulus == 0.0 || !modulus.is_finite() {
            return Err(Error::Param("wright target requires a != 0".into()));
        }
        Ok(WrightTarget { a, modulus, alpha: a.arg() })
    }

    /// `|z·eᶻ − a|` — the residual the refinement drives to zero.
    pub fn residual(&self, z: C64) -> f64 {
        (z * z.exp() - self.a).norm()
    }
}

/// Asymptotic seed for the n-th zero.
#[derive(Debug, Clone, Copy)]
pub struct ZeroSeed {
    /// Index of the zero (non-zero integer).
    pub n: i64,
    /// `H_n = 2|n|π + sgn(n)α − π/2`.
    pub h_n: f64,
    /// `β_n = log(A/H_n)`.
    pub beta_n: f64,
    /// Truncated series value of `η_n`.
    pub eta_n: f64,
    /// Real part of the seed, `(H_n+η_n) tan η_n`.
    pub x: f64,
    /// Imaginary part of the seed, `sgn(n)(H_n+η_n)`.
    pub y: f64,
    /// Whether both validity inequalities hold for this `n`.
    pub valid: bool,
    /// Truncation index of the η series.
    pub j_max: u32,
}

impl ZeroSeed {
    /// Seed as a complex point.
    pub fn point(&self) -> C64 {
        c64(self.x, self.y)
    }
}

/// Axis-aligned bound box for a zero.
#[derive(Debug, Clone, Copy)]
pub struct BoundBox {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl BoundBox {
    /// Strict interior membership.
    pub fn contains(&self, z: C64) -> bool {
        self.x_lo < z.re && z.re < self.x_hi && self.y_lo < z.im && z.im < self.y_hi
    }

    fn contains_padded(&self, z: C64, pad: f64) -> bool {
        self.x_lo - pad < z.re
            && z.re < self.x_hi + pad
            && self.y_lo - pad < z.im
            && z.im < self.y_hi + pad
    }
}

/// A refined zero with its seed and Newton statistics.
#[derive(Debug, Clone, Copy)]
pub struct RefinedZero {
    pub seed: ZeroSeed,
    /// The refined zero of `z·eᶻ = a`.
    pub z: C64,
    /// `|z·eᶻ − a|` at the refined point.
    pub residual: f64,
    /// Newton iterations used.
    pub iterations: u32,
}

fn h_beta(target: &WrightTarget, n: i64) -> (f64, f64) {
    let sgn = if n > 0 { 1.0 } else { -1.0 };
    let h = 2.0 * (n.unsigned_abs() as f64) * PI + sgn * target.alpha - PI / 2.0;
    let beta = (target.modulus / h).ln();
    (h, beta)
}

/// The two validity inequalities, checked exactly as written.
pub fn wright_validity(target: &WrightTarget, n: i64) -> bool {
    let (h, beta) = h_beta(target, n);
    if h <= 0.0 {
        return false;
    }
    let log_a = target.modulus.ln();
    let first = 2.0 * h * beta.abs() < (h - 1.0) * (h - 1.0);
    let second =
        log_a * log_a < (h - PI / 2.0) * (h - PI / 2.0) + 2.0 * (1.0 + log_a) * h.ln() + 1.0;
    first && second
}

/// Asymptotic seed for the n-th zero, with the η series truncated at `j_max`
/// (`η ≈ Σ_{j=0}^{j_max} (−1)^j Q_{2j+1}(β) H^{−2j−1}`). Invalid indices are
/// returned with `valid = false`, not as errors.
pub fn wright_seed(target: &WrightTarget, n: i64, j_max: u32) -> ZeroSeed {
    assert!(n != 0, "wright seeds exist for non-zero n only");
    let (h, beta) = h_beta(target, n);
    let mut eta = 0.0;
    let betac = c64(beta, 0.0);
    for j in 0..=j_max {
        let q = wright_q_poly(2 * j + 1).eval(betac).re;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        eta += sign * q / h.powi(2 * i32::try_from(j).unwrap() + 1);
    }
    let sgn = if n > 0 { 1.0 } else { -1.0 };
    let x = (h + eta) * eta.tan();
    let y = sgn * (h + eta);
    ZeroSeed {
        n,
        h_n: h,
        beta_n: beta,
        eta_n: eta,
        x,
        y,
        valid: wright_validity(target, n),
        j_max,
    }
}

/// Bound box for the n-th zero:
/// `x ∈ (2 log(A/((2|n|+1)π)) − 1,  log(A/(2(|n|−1)π)) + 1)` and
/// `y ∈ ((2n−1)π+α, 2nπ+α)` for positive `n`, `y ∈ (2nπ+α, (2n+1)π+α)` for
/// negative `n`. Fails with [`Error::Validity`] when the validity
/// inequalities do not hold.
pub fn wright_bounds(target: &WrightTarget, n: i64) -> Result<BoundBox> {
    if n == 0 {
        return Err(Error::Param("no bound box for n = 0".into()));
    }
    if !wright_validity(target, n) {
        return Err(Error::Validity(format!("validity inequalities fail for n = {n}")));
    }
    let na = n.unsigned_abs() as f64;
    let a = target.modulus;
    let x_lo = 2.0 * (a / ((2.0 * na + 1.0) * PI)).ln() - 1.0;
    let x_hi = if n.unsigned_abs() == 1 {
        // log(A/(2(|n|−1)π)) degenerates at |n| = 1
        f64::INFINITY
    } else {
        (a / (2.0 * (na - 1.0) * PI)).ln() + 1.0
    };
    let nf = n as f64;
    let (y_lo, y_hi) = if n > 0 {
        ((2.0 * nf - 1.0) * PI + target.alpha, 2.0 * nf * PI + target.alpha)
    } else {
        (2.0 * nf * PI + target.alpha, (2.0 * nf + 1.0) * PI + target.alpha)
    };
    Ok(BoundBox { x_lo, x_hi, y_lo, y_hi })
}

/// `d_r = 2mπr² − α − π` from the subsequence bounds.
pub fn subseq_d(target: &WrightTarget, m: u32, r: f64) -> f64 {
    2.0 * f64::from(m) * PI * r * r - target.alpha - PI
}

/// Seed at the subsequence index `n_k = −m k²`; requires the hypothesis
/// `log A − log(mπ) + 1 < −3` and the validity inequalities for `n_k`.
/// The seed then satisfies `x(n_k) ∈ (−5 log k, −2 log k − 2)` and
/// `y(n_k) ∈ (−d_{k+1}, −d_k)`.
pub fn wright_subseq_seed(target: &WrightTarget, m: u32, k: u32) -> Result<ZeroSeed> {
    if m == 0 {
        return Err(Error::Param("subsequence parameter m must be positive".into()));
    }
    let hyp = target.modulus.ln() - (f64::from(m) * PI).ln() + 1.0;
    if !(hyp < -3.0) {
        return Err(Error::Hypothesis(format!(
            "log A − log(mπ) + 1 = {hyp:.4} is not < −3 (A = {}, m = {m})",
            target.modulus
        )));
    }
    let n_k = -i64::from(m) * i64::from(k) * i64::from(k);
    let seed = wright_seed(target, n_k, 3);
    if !seed.valid {
        return Err(Error::Validity(format!("validity inequalities fail at n_k = {n_k}")));
    }
    Ok(seed)
}

/// Newton refinement of a valid seed on `F(z) = z·eᶻ − a`. The step is halved
/// when the residual would increase; the iterate must stay near the bound box
/// of its seed and the final point must lie inside it.
pub fn wright_refine(target: &WrightTarget, seed: &ZeroSeed, tol: f64) -> Result<RefinedZero> {
    if !seed.valid {
        return Err(Error::Validity(format!("seed n = {} is not valid", seed.n)));
    }
    let tol = tol.max(1e-14);
    let boxx = wright_bounds(target, seed.n).ok();
    let mut z = seed.point();
    let mut res = target.residual(z);
    let mut iterations = 0u32;
    while res > tol {
        if iterations >= 50 {
            return Err(Error::Divergence(format!(
                "Newton did not reach {tol:e} in 50 iterations at n = {}",
                seed.n
            )));
        }
        let f = z * z.exp() - target.a;
        let fp = (1.0 + z) * z.exp();
        if fp.norm() == 0.0 {
            return Err(Error::Divergence("vanishing derivative".into()));
        }
        let mut step = f / fp;
        let mut z_new = z - step;
        let mut res_new = target.residual(z_new);
        let mut halvings = 0;
        while res_new > res && halvings < 20 {
            step /= 2.0;
            z_new = z - step;
            res_new = target.residual(z_new);
            halvings += 1;
        }
        z = z_new;
        res = res_new;
        iterations += 1;
        if let Some(b) = &boxx {
            if !b.contains_padded(z, 1.0) {
                return Err(Error::BoxEscape(format!(
                    "iterate {z} left the bound box of seed n = {}",
                    seed.n
                )));
            }
        }
    }
    if let Some(b) = &boxx {
        if !b.contains(z) {
            return Err(Error::BoxEscape(format!(
                "refined zero {z} outside the bound box of seed n = {}",
                seed.n
            )));
        }
    }
    Ok(RefinedZero { seed: *seed, z, residual: res, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn target(re: f64, im: f64) -> WrightTarget {
        WrightTarget::new(c64(re, im)).unwrap()
    }

    #[test]
    fn rejects_zero_target() {
        assert!(WrightTarget::new(C64::ZERO).is_err());
    }

    #[test]
    fn residual_smoke_exact_zero() {
        // 1·e¹ = e
        let t = target(std::f64::consts::E, 0.0);
        assert_eq!(t.residual(c64(1.0, 0.0)), 0.0);
    }

    #[test]
    fn seed_a1_n5() {
        let t = target(1.0, 0.0);
        let s = wright_seed(&t, 5, 3);
        assert!((s.h_n - 9.5 * PI).abs() < 1e-14);
        assert!((s.beta_n - (1.0 / (9.5 * PI)).ln()).abs() < 1e-14);
        assert!(s.valid);
        assert!(s.y > 9.0 * PI && s.y < 10.0 * PI);
        let sm = wright_seed(&t, -5, 3);
        assert!(sm.y > -10.0 * PI && sm.y < -9.0 * PI);
    }

    #[test]
    fn eta_negative_and_decreasing() {
        let t = target(1.0, 0.0);
        let mut last = f64::NEG_INFINITY;
        for &n in &[10i64, 30, 100, 300] {
            let s = wright_seed(&t, n, 3);
            assert!(s.eta_n < 0.0, "η_{n} = {}", s.eta_n);
            assert!(s.eta_n > last, "|η| decreasing in n");
            last = s.eta_n;
        }
    }

    #[test]
    fn beta_to_minus_infinity() {
        let t = target(2.0, 1.0);
        let mut last = 0.0;
        for &n in &[10i64, 100, 1000, 10000] {
            let s = wright_seed(&t, n, 3);
            assert!(s.beta_n < last);
            last = s.beta_n;
        }
    }

    #[test]
    fn bounds_contain_seed() {
        let t = target(1.0, 0.0);
        for &n in &[10i64, -10, 37, -200] {
            let s = wright_seed(&t, n, 3);
            let b = wright_bounds(&t, n).unwrap();
            assert!(b.contains(s.point()), "seed n={n} outside its box");
        }
        // explicit y-interval check for n = 10, a = 1
        let b = wright_bounds(&t, 10).unwrap();
        assert!((b.y_lo - 19.0 * PI).abs() < 1e-12);
        assert!((b.y_hi - 20.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn refine_converges_quickly() {
        let t = target(1.0, 0.0);
        let s = wright_seed(&t, 20, 3);
        let r = wright_refine(&t, &s, 1e-12).unwrap();
        assert!(r.residual <= 1e-12);
        assert!(r.iterations <= 8, "took {} iterations", r.iterations);
        let b = wright_bounds(&t, 20).unwrap();
        assert!(b.contains(r.z));
    }

    #[test]
    fn refined_zeros_distinct_and_ordered() {
        let t = target(1.0, 0.0);
        let mut prev: Option<C64> = None;
        for n in 10..=16 {
            let r = wright_refine(&t, &wright_seed(&t, n, 3), 1e-12).unwrap();
            if let Some(p) = prev {
                assert!(r.z.im > p.im, "imaginary parts ordered in n");
                assert!((r.z - p).norm() > 1.0);
            }
            prev = Some(r.z);
        }
    }

    #[test]
    fn increasing_j_max_helps() {
        let t = target(1.0, 0.0);
        let refined = wright_refine(&t, &wright_seed(&t, 50, 5), 1e-13).unwrap().z;
        let e1 = (wright_seed(&t, 50, 1).point() - refined).norm();
        let e3 = (wright_seed(&t, 50, 3).point() - refined).norm();
        assert!(e3 < e1, "j_max 3 ({e3:e}) should beat j_max 1 ({e1:e})");
    }

    #[test]
    fn subseq_hypothesis_gate() {
        // A = 1, m = 1: log 1 − log π + 1 ≈ −0.14, not < −3
        let t = target(1.0, 0.0);
        assert!(matches!(wright_subseq_seed(&t, 1, 20), Err(Error::Hypothesis(_))));
        // A = 1e−3, m = 1 passes
        let t = target(1e-3, 0.0);
        let s = wright_subseq_seed(&t, 1, 20).unwrap();
        assert_eq!(s.n, -400);
        assert!(s.valid);
    }

    #[test]
    fn subseq_membership() {
        let t = target(1e-3, 0.0);
        for k in 20..=40u32 {
            let s = wright_subseq_seed(&t, 1, k).unwrap();
            let kf = f64::from(k);
            assert!(s.x > -5.0 * kf.ln() && s.x < -2.0 * kf.ln() - 2.0, "x at k={k}: {}", s.x);
            let d_k = subseq_d(&t, 1, kf);
            let d_k1 = subseq_d(&t, 1, kf + 1.0);
            assert!(s.y > -d_k1 && s.y < -d_k, "y at k={k}: {}", s.y);
        }
    }
}
