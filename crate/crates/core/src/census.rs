//! Auxiliary functions with exponential–power competition, the contours that
//! corral their zeros, and numerical argument-principle machinery.
//!
//! Two function families appear:
//!
//! * `g(ζ) = Ĉ e^{iζ} + σ̂ ζ^{μ−1/2}` (`Ĉ ≠ 0`, `μ ≠ 1/2`): the substitution
//!   `z = iζ/(1/2−μ)`, `a = i/(1/2−μ)·(−σ̂/Ĉ)^{1/(1/2−μ)}` turns `g = 0` into
//!   `z·eᶻ = a`, so the zeros follow the Wright subsequence seeds; the
//!   contour `Ω(g,k)` is assembled from two log-curves and two vertical
//!   segments and contains at least `k` zeros.
//! * `ĝ(ζ) = Ĉ e^{iζ} + D̂ e^{−iζ} + σ̂` (`Ĉ ≠ 0`): zeros in closed form from
//!   the quadratic `Ĉx² + σ̂x + D̂` in `x = e^{iζ}`; the rectangular contour
//!   `Ω(ĝ,k)` encloses exactly `k+1` of them when `|Δ₊| ≠ |Δ₋|`, and the
//!   modified variant `Ω′(ĝ,k)` encloses `2k+1` when the two root moduli
//!   coincide.
//!
//! Winding numbers come from `(1/2πi)∮ f'/f dζ` by composite Gauss–Legendre
//! quadrature with dyadic refinement; a raw winding that does not settle
//! within `1e−6` of an integer is an error, never rounded silently.

use std::f64::consts::PI;

use crate::branch::BranchPoint;
use crate::error::{Error, Result};
use crate::quad::gl16_unit;
use crate::wright::{subseq_d, wright_refine, wright_subseq_seed, WrightTarget};
use crate::{c64, C64};

/// Parameters of the auxiliary functions; `b` and `φ` are always derived from
/// `μ` (`1/2 − μ = b e^{iφ}`).
#[derive(Debug, Clone, Copy)]
pub struct AuxParams {
    pub c_hat: C64,
    pub d_hat: C64,
    pub sigma_hat: C64,
    pub mu: C64,
    /// `b = |1/2 − μ| > 0`.
    pub b: f64,
    /// `φ = arg(1/2 − μ) ∈ (−π, π]`.
    pub phi: f64,
}

impl AuxParams {
    /// Build parameters; requires `Ĉ ≠ 0` and `μ ≠ 1/2`.
    pub fn new(c_hat: C64, d_hat: C64, sigma_hat: C64, mu: C64) -> Result<Self> {
        if c_hat.norm() == 0.0 {
            return Err(Error::Param("auxiliary functions require Ĉ ≠ 0".into()));
        }
        let half_minus_mu = 0.5 - mu;
        if half_minus_mu.norm() < 1e-12 {
            return Err(Error::Param("g is undefined at μ = 1/2 (use ĝ instead)".into()));
        }
        Ok(AuxParams {
            c_hat,
            d_hat,
            sigma_hat,
            mu,
            b: half_minus_mu.norm(),
            phi: half_minus_mu.arg(),
        })
    }
}

/// `g(ζ) = Ĉ e^{iζ} + σ̂ ζ^{μ−1/2}`, with the power taken on the caller's
/// sheet (unreduced argument).
pub fn aux_g(params: &AuxParams, z: &BranchPoint) -> C64 {
    let zc = z.to_c64();
    params.c_hat * (C64::i() * zc).exp() + params.sigma_hat * z.pow(params.mu - 0.5)
}

/// `g'(ζ) = iĈ e^{iζ} + (μ−1/2) σ̂ ζ^{μ−3/2}`.
pub fn aux_g_prime(params: &AuxParams, z: &BranchPoint) -> C64 {
    let zc = z.to_c64();
    params.c_hat * C64::i() * (C64::i() * zc).exp()
        + params.sigma_hat * (params.mu - 0.5) * z.pow(params.mu - 1.5)
}

/// The Wright target of `g`: `a = i/(1/2−μ)·(−σ̂ Ĉ^{−1})^{1/(1/2−μ)}`, with
/// the principal branch of the fractional power.
pub fn g_to_wright(params: &AuxParams) -> Result<WrightTarget> {
    let half_minus_mu = 0.5 - params.mu;
    let w = -params.sigma_hat / params.c_hat;
    if w.norm() == 0.0 {
        return Err(Error::Param("g needs σ̂ ≠ 0 to have exponential–power balance".into()));
    }
    let pw = (w.ln() / half_minus_mu).exp();
    WrightTarget::new(C64::i() / half_minus_mu * pw)
}

/// Map a zero `z` of `z·eᶻ = a` back to the ζ-plane: `ζ = (1/2−μ)·z/i`.
pub fn wright_zero_to_zeta(params: &AuxParams, z: C64) -> C64 {
    (0.5 - params.mu) * z / C64::i()
}

/// A zero of `g` near the mapped Wright subsequence zero at index `n_k = −mk²`,
/// Newton-polished on `g` itself (branch tracked through the rotation sheet).
pub fn g_zero_near_subseq(params: &AuxParams, m: u32, k: u32) -> Result<C64> {
    let target = g_to_wright(params)?;
    let seed = wright_subseq_seed(&target, m, k)?;
    let refined = wright_refine(&target, &seed, 1e-12)?;
    let zeta = wright_zero_to_zeta(params, refined.z);
    // polish on g with the argument tracked around the rotation sheet
    let shift = params.phi - PI;
    let mut z = zeta;
    for _ in 0..30 {
        let bp = branch_on_sheet(z, shift);
        let f = aux_g(params, &bp);
        let fp = aux_g_prime(params, &bp);
        if fp.norm() == 0.0 {
            break;
        }
        let step = f / fp;
        z -= step;
        if step.norm() < 1e-13 * (1.0 + z.norm()) {
            break;
        }
    }
    Ok(z)
}

/// Branch point over `z` whose argument is chosen in `(shift−π, shift+π]`.
pub fn branch_on_sheet(z: C64, shift: f64) -> BranchPoint {
    let rotated = z * (-C64::i() * shift).exp();
    BranchPoint::new(z.norm(), rotated.arg() + shift)
}

// ---------------------------------------------------------------------------
// contours
// ---------------------------------------------------------------------------

/// One parametric piece of a contour, as a map `[0,1] → ℂ`.
#[derive(Debug, Clone)]
pub enum Segment {
    /// Straight segment.
    Line { from: C64, to: C64 },
    /// Rotated log-curve `t ↦ scale·(d_{r(t)} − depth·i·log r(t))` with
    /// `d_r = 2mπ r² − α − π` and `r` affine from `r0` to `r1`.
    LogCurve { scale: C64, two_m_pi: f64, alpha: f64, depth: f64, r0: f64, r1: f64 },
}

impl Segment {
    /// Point at parameter `t ∈ [0, 1]`.
    pub fn point(&self, t: f64) -> C64 {
        match self {
            Segment::Line { from, to } => from + (to - from) * t,
            Segment::LogCurve { scale, two_m_pi, alpha, depth, r0, r1 } => {
                let r = r0 + (r1 - r0) * t;
                let d = two_m_pi * r * r - alpha - PI;
                scale * c64(d, -depth * r.ln())
            }
        }
    }

    /// Derivative `dζ/dt`.
    pub fn derivative(&self, t: f64) -> C64 {
        match self {
            Segment::Line { from, to } => to - from,
            Segment::LogCurve { scale, two_m_pi, depth, r0, r1, .. } => {
                let r = r0 + (r1 - r0) * t;
                scale * c64(2.0 * two_m_pi * r, -depth / r) * (r1 - r0)
            }
        }
    }
}

/// Piecewise parametric closed path, positively oriented.
#[derive(Debug, Clone)]
pub struct Contour {
    pub segments: Vec<Segment>,
    /// Initial sampling density used by the counting quadrature.
    pub samples_per_segment: usize,
}

impl Contour {
    /// Closed polygon through the given vertices (counterclockwise input).
    pub fn polygon(vertices: &[C64], samples_per_segment: usize) -> Self {
        let segments = vertices
            .iter()
            .zip(vertices.iter().cycle().skip(1))
            .map(|(&a, &b)| Segment::Line { from: a, to: b })
            .collect();
        Contour { segments, samples_per_segment }
    }

    /// Largest gap between consecutive segment endpoints (including last to
    /// first); a built contour must close to `1e−12` relative.
    pub fn closure_defect(&self) -> f64 {
        let n = self.segments.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            let end = self.segments[i].point(1.0);
            let start = self.segments[(i + 1) % n].point(0.0);
            worst = worst.max((end - start).norm());
        }
        worst
    }

    /// Closed polyline sampling (`first == last`).
    pub fn polyline(&self, per_segment: usize) -> Vec<C64> {
        let mut pts = Vec::with_capacity(self.segments.len() * per_segment + 1);
        for seg in &self.segments {
            for i in 0..per_segment {
                pts.push(seg.point(i as f64 / per_segment as f64));
            }
        }
        if let Some(&first) = pts.first() {
            pts.push(first);
        }
        pts
    }

    /// Point-in-polygon test against the sampled polyline (ray casting).
    pub fn contains(&self, z: C64) -> bool {
        let pts = self.polyline(256.max(self.samples_per_segment));
        let mut inside = false;
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if (a.im > z.im) != (b.im > z.im) {
                let x = a.re + (z.im - a.im) / (b.im - a.im) * (b.re - a.re);
                if x > z.re {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Minimum distance from `z` to the sampled contour.
    pub fn distance(&self, z: C64) -> f64 {
        let pts = self.polyline(512.max(self.samples_per_segment));
        let mut best = f64::INFINITY;
        for w in pts.windows(2) {
            best = best.min(point_segment_distance(z, w[0], w[1]));
        }
        best
    }
}

fn point_segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Check the hypotheses of the `Ω(g,k)` construction at subsequence parameter
/// `m`: the Wright subsequence hypothesis for the mapped target and the
/// dominance inequality `(bmπ)^{|Re μ − 1/2|}·|σ̂| > 2|Ĉ|·e^{|Im μ|π}`.
pub fn check_omega_g_hypotheses(params: &AuxParams, m: u32) -> Result<()> {
    let target = g_to_wright(params)?;
    let admissible = |mm: u32| -> bool {
        let mf = f64::from(mm);
        let hyp = target.modulus.ln() - (mf * PI).ln() + 1.0 < -3.0;
        let dom = (params.b * mf * PI).powf((params.mu.re - 0.5).abs()) * params.sigma_hat.norm()
            > 2.0 * params.c_hat.norm() * (params.mu.im.abs() * PI).exp();
        hyp && dom
    };
    if admissible(m) {
        return Ok(());
    }
    let smallest = (1..=1_000_000u32).find(|&mm| admissible(mm));
    Err(Error::Hypothesis(match smallest {
        Some(mm) => format!("m = {m} fails the Ω(g,k) hypotheses; smallest admissible m is {mm}"),
        None => format!("m = {m} fails the Ω(g,k) hypotheses; no admissible m ≤ 10^6"),
    }))
}

/// The contour `Ω(g,k)`: log-curves `Γ₁`, `Γ₂` at depths 2 and 6 joined by
/// the vertical segments `ℓ₁`, `ℓ₂` over `r ∈ [k, 2k]`, built in the plane
/// where the zeros sit in the fourth quadrant and rotated back to the
/// ζ-plane of `g` (rotation `e^{i(φ−π)}`; the identity when `φ = π`).
pub fn build_contour_omega_g(params: &AuxParams, m: u32, k: u32) -> Result<Contour> {
    if k < 2 {
        return Err(Error::Param("Ω(g,k) requires k ≥ 2".into()));
    }
    check_omega_g_hypotheses(params, m)?;
    let target = g_to_wright(params)?;
    let rot = (C64::i() * (params.phi - PI)).exp();
    let scale = rot * params.b;
    let a = target.alpha;
    let two_m_pi = 2.0 * f64::from(m) * PI;
    let kf = f64::from(k);
    let d = |r: f64| two_m_pi * r * r - a - PI;
    let corner = |r: f64, depth: f64| scale * c64(d(r), -depth * r.ln());
    let segments = vec![
        // Γ₂ (lower edge, depth 6), left to right
        Segment::LogCurve { scale, two_m_pi, alpha: a, depth: 6.0, r0: kf, r1: 2.0 * kf },
        // ℓ₂ (right edge), upward
        Segment::Line { from: corner(2.0 * kf, 6.0), to: corner(2.0 * kf, 2.0) },
        // Γ₁ (upper edge, depth 2), right to left
        Segment::LogCurve { scale, two_m_pi, alpha: a, depth: 2.0, r0: 2.0 * kf, r1: kf },
        // ℓ₁ (left edge), downward
        Segment::Line { from: corner(kf, 2.0), to: corner(kf, 6.0) },
    ];
    Ok(Contour { segments, samples_per_segment: (64 * k as usize).max(256) })
}

/// Vertices of the Lemma rectangles `R_{k+j}`, `j = 0..k−1`, rotated like the
/// contour; each contains one mapped subsequence zero.
pub fn lemma_rectangles(params: &AuxParams, m: u32, k: u32) -> Result<Vec<[C64; 4]>> {
    check_omega_g_hypotheses(params, m)?;
    let target = g_to_wright(params)?;
    let rot = (C64::i() * (params.phi - PI)).exp();
    let scale = rot * params.b;
    let mut rects = Vec::new();
    for j in 0..k {
        let r = f64::from(k + j);
        let d0 = subseq_d(&target, m, r);
        let d1 = subseq_d(&target, m, r + 1.0);
        let v_lo = -5.0 * r.ln();
        let v_hi = -2.0 * r.ln() - 2.0;
        rects.push([
            scale * c64(d0, v_lo),
            scale * c64(d1, v_lo),
            scale * c64(d1, v_hi),
            scale * c64(d0, v_hi),
        ]);
    }
    Ok(rects)
}

// ---------------------------------------------------------------------------
// ĝ and its closed-form zeros
// ---------------------------------------------------------------------------

/// `ĝ(ζ) = Ĉ e^{iζ} + D̂ e^{−iζ} + σ̂`.
pub fn aux_ghat(params: &AuxParams, z: C64) -> C64 {
    let e = (C64::i() * z).exp();
    params.c_hat * e + params.d_hat / e + params.sigma_hat
}

/// `ĝ'(ζ) = iĈ e^{iζ} − iD̂ e^{−iζ}`.
pub fn aux_ghat_prime(params: &AuxParams, z: C64) -> C64 {
    let e = (C64::i() * z).exp();
    C64::i() * (params.c_hat * e - params.d_hat / e)
}

/// Root data of the quadratic `Ĉ x² + σ̂ x + D̂` in `x = e^{iζ}`.
#[derive(Debug, Clone, Copy)]
pub enum GhatRoots {
    /// `D̂ ≠ 0`: two root families `ζ±(k) = 2kπ + θ± + i log|Δ±|`.
    Two {
        delta_plus_inv: C64,
        theta_plus: f64,
        delta_minus_inv: C64,
        theta_minus: f64,
        /// `d = |log|Δ₊| − log|Δ₋||` when the moduli differ, else 1.
        d: f64,
    },
    /// `D̂ = 0`: one family `ζ₀(k) = 2kπ + θ₀ + i log|Δ₀|`.
    One { delta_zero_inv: C64, theta_zero: f64, d: f64 },
}

impl GhatRoots {
    /// Height `log|Δ₊|` (resp. `log|Δ₀|`) of the primary zero line.
    pub fn primary_height(&self) -> f64 {
        match *self {
            GhatRoots::Two { delta_plus_inv, .. } => -delta_plus_inv.norm().ln(),
            GhatRoots::One { delta_zero_inv, .. } => -delta_zero_inv.norm().ln(),
        }
    }

    /// Primary phase `θ₊` (resp. `θ₀`).
    pub fn primary_theta(&self) -> f64 {
        match *self {
            GhatRoots::Two { theta_plus, .. } => theta_plus,
            GhatRoots::One { theta_zero, .. } => theta_zero,
        }
    }

    /// The band half-width parameter `d`.
    pub fn d(&self) -> f64 {
        match *self {
            GhatRoots::Two { d, .. } | GhatRoots::One { d, .. } => d,
        }
    }
}

/// Solve the ĝ quadratic; errors with [`Error::DegenerateQuadratic`] when a
/// root vanishes (that would force `Ĉ = 0` or `D̂ = 0` inconsistently).
pub fn ghat_root_data(params: &AuxParams) -> Result<GhatRoots> {
    let c = params.c_hat;
    let d = params.d_hat;
    let s = params.sigma_hat;
    if d.norm() == 0.0 {
        let x = -s / c;
        if x.norm() == 0.0 {
            return Err(Error::DegenerateQuadratic(
                "D̂ = σ̂ = 0 leaves ĝ = Ĉe^{iζ} without zeros".into(),
            ));
        }
        return Ok(GhatRoots::One { delta_zero_inv: x, theta_zero: x.arg(), d: 1.0 });
    }
    let disc = (s * s - 4.0 * c * d).sqrt();
    // stable quadratic: avoid cancellation in −σ̂ ± √disc
    let (x_plus, x_minus) = {
        let xp = (-s + disc) / (2.0 * c);
        let xm = (-s - disc) / (2.0 * c);
        (xp, xm)
    };
    let (x_plus, x_minus) = if x_plus.norm() >= x_minus.norm() {
        (x_plus, (d / c) / x_plus)
    } else {
        ((d / c) / x_minus, x_minus)
    };
    // restore the paper's ± assignment: Δ±^{-1} = (−σ̂ ± √disc)/(2Ĉ)
    let assign_plus = ((-s + disc) / (2.0 * c) - x_plus).norm() <= ((-s + disc) / (2.0 * c) - x_minus).norm();
    let (xp, xm) = if assign_plus { (x_plus, x_minus) } else { (x_minus, x_plus) };
    if xp.norm() == 0.0 || xm.norm() == 0.0 {
        return Err(Error::DegenerateQuadratic("the ĝ quadratic has a zero root".into()));
    }
    let lp = -xp.norm().ln(); // log|Δ₊|
    let lm = -xm.norm().ln();
    let dd = if (lp - lm).abs() > 1e-12 { (lp - lm).abs() } else { 1.0 };
    Ok(GhatRoots::Two {
        delta_plus_inv: xp,
        theta_plus: xp.arg(),
        delta_minus_inv: xm,
        theta_minus: xm.arg(),
        d: dd,
    })
}

/// One closed-form zero of ĝ.
#[derive(Debug, Clone, Copy)]
pub struct GhatZero {
    /// Index along the zero line.
    pub k: i64,
    /// `+1`, `−1` or `0` for the ζ₊/ζ₋/ζ₀ family.
    pub family: i8,
    /// The zero itself.
    pub zeta: C64,
}

/// Closed-form zeros for every index in `k_lo ..= k_hi`, each verified to
/// residual `|ĝ| ≤ 1e−12` relative to the coefficient scale.
pub fn ghat_zeros(params: &AuxParams, k_lo: i64, k_hi: i64) -> Result<Vec<GhatZero>> {
    let roots = ghat_root_data(params)?;
    let scale =
        params.c_hat.norm().max(params.d_hat.norm()).max(params.sigma_hat.norm()).max(1e-300);
    let mut out = Vec::new();
    let mut push = |k: i64, family: i8, x: C64| -> Result<()> {
        let zeta = c64(2.0 * (k as f64) * PI + x.arg(), -x.norm().ln());
        let residual = aux_ghat(params, zeta).norm();
        if residual > 1e-12 * scale * (1.0 + x.norm() + 1.0 / x.norm()) {
            return Err(Error::Evaluation(format!(
                "closed-form ĝ zero at k={k} has residual {residual:e}"
            )));
        }
        out.push(GhatZero { k, family, zeta });
        Ok(())
    };
    match roots {
        GhatRoots::Two { delta_plus_inv, delta_minus_inv, .. } => {
            for k in k_lo..=k_hi {
                push(k, 1, delta_plus_inv)?;
                push(k, -1, delta_minus_inv)?;
            }
        }
        GhatRoots::One { delta_zero_inv, .. } => {
            for k in k_lo..=k_hi {
                push(k, 0, delta_zero_inv)?;
            }
        }
    }
    Ok(out)
}

/// The rectangular contour `Ω(ĝ,k)` (or the modified `Ω′(ĝ,k)`).
///
/// Unmodified, the vertical edges sit at `(2k−1)π + θ₊` and `(4k+1)π + θ₊`
/// and the horizontal edges at `log|Δ₊| ± d/2`, which boxes in exactly `k+1`
/// zeros of the ζ₊ family. The modified variant (required when
/// `|Δ₊| = |Δ₋|` with `θ₊ ≠ θ₋`) moves the edges to
/// `2kπ − (θ₊−θ₋)/2` and `(4k+1)π − (θ₊−θ₋)/2`, which keeps every zero of
/// both interleaved families strictly off the contour and encloses `2k+1`
/// of them.
pub fn build_contour_omega_ghat(params: &AuxParams, k: u32, modified: bool) -> Result<Contour> {
    let roots = ghat_root_data(params)?;
    build_ghat_contour_with_d(params, k, modified, &roots, roots.d())
}

fn build_ghat_contour_with_d(
    params: &AuxParams,
    k: u32,
    modified: bool,
    roots: &GhatRoots,
    d: f64,
) -> Result<Contour> {
    if k == 0 {
        return Err(Error::Param("Ω(ĝ,k) requires k ≥ 1".into()));
    }
    let kf = f64::from(k);
    let theta_p = roots.primary_theta();
    let y_mid = roots.primary_height();
    let (x_lo, x_hi) = if modified {
        let half_gap = match roots {
            GhatRoots::Two { theta_plus, theta_minus, .. } => (theta_plus - theta_minus) / 2.0,
            GhatRoots::One { .. } => 0.0,
        };
        (2.0 * kf * PI - half_gap + theta_p, (4.0 * kf + 1.0) * PI - half_gap + theta_p)
    } else {
        ((2.0 * kf - 1.0) * PI + theta_p, (4.0 * kf + 1.0) * PI + theta_p)
    };
    let (y_lo, y_hi) = (y_mid - d / 2.0, y_mid + d / 2.0);
    let contour = Contour::polygon(
        &[c64(x_lo, y_lo), c64(x_hi, y_lo), c64(x_hi, y_hi), c64(x_lo, y_hi)],
        (32 * k as usize).max(128),
    );
    // the construction must stay clear of every closed-form zero
    let span = (x_hi / (2.0 * PI)).ceil() as i64 + 2;
    let zeros = ghat_zeros(params, -2 - span, span)?;
    let min_dist =
        zeros.iter().map(|z| contour.distance(z.zeta)).fold(f64::INFINITY, f64::min);
    if min_dist < 1e-9 {
        // one retry with the band offset perturbed by 1%
        let contour2 = build_ghat_contour_with_d_raw(params, k, modified, roots, d * 1.01)?;
        let min2 =
            zeros.iter().map(|z| contour2.distance(z.zeta)).fold(f64::INFINITY, f64::min);
        if min2 < 1e-9 {
            return Err(Error::ZeroOnContour(format!(
                "a closed-form ĝ zero lies within {min2:e} of Ω(ĝ,{k})"
            )));
        }
        return Ok(contour2);
    }
    Ok(contour)
}

fn build_ghat_contour_with_d_raw(
    params: &AuxParams,
    k: u32,
    modified: bool,
    roots: &GhatRoots,
    d: f64,
) -> Result<Contour> {
    let _ = params;
    let kf = f64::from(k);
    let theta_p = roots.primary_theta();
    let y_mid = roots.primary_height();
    let (x_lo, x_hi) = if modified {
        let half_gap = match roots {
            GhatRoots::Two { theta_plus, theta_minus, .. } => (theta_plus - theta_minus) / 2.0,
            GhatRoots::One { .. } => 0.0,
        };
        (2.0 * kf * PI - half_gap + theta_p, (4.0 * kf + 1.0) * PI - half_gap + theta_p)
    } else {
        ((2.0 * kf - 1.0) * PI + theta_p, (4.0 * kf + 1.0) * PI + theta_p)
    };
    let (y_lo, y_hi) = (y_mid - d / 2.0, y_mid + d / 2.0);
    Ok(Contour::polygon(
        &[c64(x_lo, y_lo), c64(x_hi, y_lo), c64(x_hi, y_hi), c64(x_lo, y_hi)],
        (32 * k as usize).max(128),
    ))
}

// ---------------------------------------------------------------------------
// argument principle
// ---------------------------------------------------------------------------

/// A function the counting machinery can evaluate together with its
/// derivative.
pub trait Analytic {
    fn value(&self, z: C64) -> Result<C64>;
    fn derivative(&self, z: C64) -> Result<C64>;
}

/// `g` as an [`Analytic`], with the power branch tracked on the rotation
/// sheet `arg ∈ (shift−π, shift+π]`.
pub struct GFunction {
    pub params: AuxParams,
    pub arg_shift: f64,
}

impl GFunction {
    pub fn new(params: AuxParams) -> Self {
        let shift = params.phi - PI;
        GFunction { params, arg_shift: shift }
    }
}

impl Analytic for GFunction {
    fn value(&self, z: C64) -> Result<C64> {
        Ok(aux_g(&self.params, &branch_on_sheet(z, self.arg_shift)))
    }
    fn derivative(&self, z: C64) -> Result<C64> {
        Ok(aux_g_prime(&self.params, &branch_on_sheet(z, self.arg_shift)))
    }
}

/// ĝ as an [`Analytic`] (entire, no branch bookkeeping).
pub struct GhatFunction(pub AuxParams);

impl Analytic for GhatFunction {
    fn value(&self, z: C64) -> Result<C64> {
        Ok(aux_ghat(&self.0, z))
    }
    fn derivative(&self, z: C64) -> Result<C64> {
        Ok(aux_ghat_prime(&self.0, z))
    }
}

/// Closure adapter for [`Analytic`].
pub struct ClosurePair<F, G>(pub F, pub G);

impl<F, G> Analytic for ClosurePair<F, G>
where
    F: Fn(C64) -> Result<C64>,
    G: Fn(C64) -> Result<C64>,
{
    fn value(&self, z: C64) -> Result<C64> {
        (self.0)(z)
    }
    fn derivative(&self, z: C64) -> Result<C64> {
        (self.1)(z)
    }
}

/// Output of the argument-principle count.
#[derive(Debug, Clone, Copy)]
pub struct CountResult {
    /// The integer winding number (zeros inside, with multiplicity).
    pub winding: i64,
    /// The raw quadrature value before snapping.
    pub raw_winding: f64,
    /// Smallest `|f|` seen on the contour samples.
    pub min_abs_on_contour: f64,
    /// Total integrand samples used.
    pub samples: usize,
}

/// Count zeros of `f` inside the contour by `(1/2πi)∮ f'/f dζ`, composite
/// 16-point Gauss–Legendre per segment with dyadic refinement until the
/// winding stabilizes. Errors with [`Error::ZeroOnContour`] when a zero sits
/// within `1e−9` of the path (detected through the Newton distance `|f/f'|`)
/// and with [`Error::Quadrature`] if refinement exhausts its sample budget
/// before the raw winding settles within `1e−6` of an integer.
pub fn count_zeros<A: Analytic + ?Sized>(f: &A, contour: &Contour) -> Result<CountResult> {
    let mut total = C64::ZERO;
    let mut min_abs = f64::INFINITY;
    let mut samples = 0usize;
    let budget_per_segment = (1usize << 20) / contour.segments.len().max(1);
    for seg in &contour.segments {
        let zero_hit = std::cell::Cell::new(None::<f64>);
        let eval_err = std::cell::RefCell::new(None::<Error>);
        let seg_min = std::cell::Cell::new(f64::INFINITY);
        let seg_samples = std::cell::Cell::new(0usize);
        let mut integrand = |t: f64| -> C64 {
            let z = seg.point(t);
            let dz = seg.derivative(t);
            let (v, dv) = match (f.value(z), f.derivative(z)) {
                (Ok(v), Ok(dv)) => (v, dv),
                (Err(e), _) | (_, Err(e)) => {
                    *eval_err.borrow_mut() = Some(e);
                    return C64::ZERO;
                }
            };
            let av = v.norm();
            seg_min.set(seg_min.get().min(av));
            if dv.norm() > 0.0 && av / dv.norm() < 1e-9 {
                zero_hit.set(Some(av));
            }
            seg_samples.set(seg_samples.get() + 1);
            dv / v * dz
        };
        let mut panels = (contour.samples_per_segment / 16).max(4);
        let mut last = gl16_unit(&mut integrand, panels);
        loop {
            let next = gl16_unit(&mut integrand, panels * 2);
            if let Some(e) = eval_err.borrow_mut().take() {
                return Err(e);
            }
            if let Some(av) = zero_hit.get() {
                return Err(Error::ZeroOnContour(format!(
                    "integrand has a zero within 1e-9 of the contour (|f| = {av:e})"
                )));
            }
            let diff = (next - last).norm();
            if diff < 1e-9 * (1.0 + next.norm()) {
                total += next;
                break;
            }
            panels *= 2;
            last = next;
            if panels * 16 > budget_per_segment {
                return Err(Error::Quadrature(format!(
                    "winding did not stabilize within {budget_per_segment} samples per segment"
                )));
            }
        }
        min_abs = min_abs.min(seg_min.get());
        samples += seg_samples.get();
    }
    let raw = total / (2.0 * PI * C64::i());
    let nearest = raw.re.round();
    let defect = (raw - nearest).norm();
    if defect > 1e-6 {
        return Err(Error::Quadrature(format!(
            "raw winding {raw} is {defect:e} away from an integer"
        )));
    }
    Ok(CountResult {
        winding: nearest as i64,
        raw_winding: raw.re,
        min_abs_on_contour: min_abs,
        samples,
    })
}

/// Rouché margin `min(|g| − |f − g|)` over contour samples (with one round of
/// refinement). A strictly positive value certifies that `f` and `g` enclose
/// equally many zeros.
pub fn rouche_margin<A: Analytic + ?Sized, B: Analytic + ?Sized>(
    f: &A,
    g: &B,
    contour: &Contour,
) -> Result<f64> {
    let mut margin = f64::INFINITY;
    for per_segment in [contour.samples_per_segment.max(64), 4 * contour.samples_per_segment.max(64)]
    {
        margin = f64::INFINITY;
        for seg in &contour.segments {
            for i in 0..=per_segment {
                let t = i as f64 / per_segment as f64;
                let z = seg.point(t);
                let fv = f.value(z)?;
                let gv = g.value(z)?;
                margin = margin.min(gv.norm() - (fv - gv).norm());
            }
        }
    }
    Ok(margin)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ghat_params(c: C64, d: C64, s: C64) -> AuxParams {
        AuxParams::new(c, d, s, c64(2.0, 0.0)).unwrap()
    }

    #[test]
    fn aux_params_gates() {
        assert!(AuxParams::new(C64::ZERO, C64::ZERO, c64(1.0, 0.0), c64(2.0, 0.0)).is_err());
        assert!(AuxParams::new(c64(1.0, 0.0), C64::ZERO, c64(1.0, 0.0), c64(0.5, 0.0)).is_err());
        let p = AuxParams::new(c64(1.0, 0.0), C64::ZERO, c64(1.0, 0.0), c64(2.0, 0.0)).unwrap();
        assert!((p.b - 1.5).abs() < 1e-15);
        assert!((p.phi - PI).abs() < 1e-15);
    }

    #[test]
    fn aux_g_constructed_root_and_derivative() {
        // choose σ̂ so that ζ₀ is a zero
        let mu = c64(1.7, 0.3);
        let zeta0 = BranchPoint::new(3.0, 0.8);
        let c_hat = c64(1.0, 0.0);
        let sigma = -c_hat * (C64::i() * zeta0.to_c64()).exp() / zeta0.pow(mu - 0.5);
        let p = AuxParams::new(c_hat, C64::ZERO, sigma, mu).unwrap();
        assert!(aux_g(&p, &zeta0).norm() < 1e-14);
        // finite-difference check of the analytic derivative
        let z = BranchPoint::new(2.0, -0.4);
        let h = 1e-6;
        let zp = BranchPoint::new((z.to_c64() + h).norm(), (z.to_c64() + h).arg());
        let zm = BranchPoint::new((z.to_c64() - h).norm(), (z.to_c64() - h).arg());
        let fd = (aux_g(&p, &zp) - aux_g(&p, &zm)) / (2.0 * h);
        let an = aux_g_prime(&p, &z);
        assert!((fd - an).norm() < 1e-7 * (1.0 + an.norm()));
    }

    #[test]
    fn g_dominated_by_power_on_positive_axis() {
        let p = AuxParams::new(c64(1.0, 0.0), C64::ZERO, c64(1.0, 0.0), c64(2.0, 0.0)).unwrap();
        let z = BranchPoint::new(400.0, 0.0);
        let g = aux_g(&p, &z);
        assert!((g.norm() - 400.0f64.powf(1.5)).abs() / g.norm() < 0.01);
    }

    #[test]
    fn wright_roundtrip_at_mapped_zeros() {
        // μ = 2 (φ = π), σ̂ = 60, m = 1: hypotheses hold
        let p = AuxParams::new(c64(1.0, 0.0), C64::ZERO, c64(60.0, 0.0), c64(2.0, 0.0)).unwrap();
        let target = g_to_wright(&p).unwrap();
        let shift = p.phi - PI;
        // the z ↦ ζ substitution raises to the power 1/(1/2−μ) = −2/3, so the
        // single principal-branch target `a` captures the zero families whose
        // log-branch index is compatible; for these parameters that is odd
        // n_k = −k², i.e. odd k
        let mut arg_prev = f64::NEG_INFINITY;
        for k in (5..=23u32).step_by(2) {
            let seed = wright_subseq_seed(&target, 1, k).unwrap();
            let refined = wright_refine(&target, &seed, 1e-13).unwrap();
            let zeta = wright_zero_to_zeta(&p, refined.z);
            let res = aux_g(&p, &branch_on_sheet(zeta, shift)).norm();
            // |g| scales with the σ̂ζ^{3/2} term here
            let scale = p.sigma_hat.norm() * zeta.norm().powf(1.5);
            assert!(res / scale < 1e-8, "k={k}: residual {res:e} vs scale {scale:e}");
            // fourth quadrant, argument negative and tending to 0 from below
            assert!(zeta.re > 0.0 && zeta.im < 0.0, "k={k}: {zeta}");
            assert!(zeta.arg() > arg_prev, "arg ζ(n_k) increases toward 0⁻");
            arg_prev = zeta.arg();
        }
    }

    #[test]
    fn mapped_zero_relation_phi_pi() {
        // for φ = π the mapped zero is b(−y + ix)
        let p = AuxParams::new(c64(1.0, 0.0), C64::ZERO, c64(60.0, 0.0), c64(2.0, 0.0)).unwrap();
        let z = c64(-3.0, -170.0);
        let zeta = wright_zero_to_zeta(&p, z);
        let expect = p.b * c64(-z.im, z.re);
        assert!((zeta - expect).norm() < 1e-12);
    }

    #[test]
    fn omega_g_hypothesis_gate_reports_smallest_m() {
        // σ̂ = 1 fails the subsequence hypothesis at m = 1
        let p = AuxParams::new(c64(1.0, 0.0), C64::ZERO, c64(1.0, 0.0), c64(2.0, 0.0)).unwrap();
        match build_contour_omega_g(&p, 1, 3) {
            Err(Error::Hypothesis(msg)) => assert!(msg.contains("smallest admissible")),
            other => panic!("expected hypothesis error, got {other:?}"),
        }
    }

    #[test]
    fn omega_g_closes_and_contains_rectangles() {
        let p = AuxParams::new(c64(1.0, 0.0), C64::ZERO, c64(60.0, 0.0), c64(2.0, 0.0)).unwrap();
        for k in [2u32, 4] {
            let c = build_contour_omega_g(&p, 1, k).unwrap();
            assert!(c.closure_defect() < 1e-12);
            for rect in lemma_rectangles(&p, 1, k).unwrap() {
                // the outermost rectangles share their vertical edges with
                // ℓ₁/ℓ₂, so test the vertices nudged toward the center
                let center = (rect[0] + rect[1] + rect[2] + rect[3]) / 4.0;
                for v in rect {
                    let v_in = v + (center - v) * 1e-9;
                    assert!(c.contains(v_in), "rectangle vertex {v} outside Ω(g,{k})");
                }
            }
        }
    }

    #[test]
    fn omega_g_endpoint_matches_formula() {
        let p = AuxParams::new(c64(1.0, 0.0), C64::ZERO, c64(60.0, 0.0), c64(2.0, 0.0)).unwrap();
        let k = 3u32;
        let c = build_contour_omega_g(&p, 1, k).unwrap();
        let target = g_to_wright(&p).unwrap();
        // Γ₁ endpoint at r = k is b(d_k − 2i log k) (φ = π, no rotation)
        let expect = p.b * c64(subseq_d(&target, 1, 3.0), -2.0 * 3.0f64.ln());
        let got = c.segments[2].point(1.0);
        assert!((got - expect).norm() < 1e-12);
    }

    #[test]
    fn ghat_zero_examples() {
        // Ĉ=1, D̂=0, σ̂=1: ζ₀(k) = (2k+1)π
        let p = ghat_params(c64(1.0, 0.0), C64::ZERO, c64(1.0, 0.0));
        let zs = ghat_zeros(&p, 0, 2).unwrap();
        assert_eq!(zs.len(), 3);
        for (i, z) in zs.iter().enumerate() {
            let expect = (2.0 * i as f64 + 1.0) * PI;
            assert!((z.zeta - c64(expect, 0.0)).norm() < 1e-12);
        }
        // σ̂ = −1: ζ₀(k) = 2kπ
        let p = ghat_params(c64(1.0, 0.0), C64::ZERO, c64(-1.0, 0.0));
        let zs = ghat_zeros(&p, 1, 1).unwrap();
        assert!((zs[0].zeta - c64(2.0 * PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn ghat_degenerate_quadratic() {
        let p = ghat_params(c64(1.0, 0.0), C64::ZERO, C64::ZERO);
        assert!(matches!(ghat_root_data(&p), Err(Error::DegenerateQuadratic(_))));
    }

    #[test]
    fn ghat_zero_residuals_random() {
        let mut state = 0xdeadbeefcafef00du64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..100 {
            let p = ghat_params(
                c64(next() * 4.0, next() * 4.0),
                c64(next() * 4.0, next() * 4.0),
                c64(next() * 4.0, next() * 4.0),
            );
            if p.c_hat.norm() < 0.05 || p.d_hat.norm() < 1e-3 {
                continue;
            }
            ghat_zeros(&p, -3, 3).unwrap();
        }
    }

    #[test]
    fn winding_single_zero_unit_circle() {
        let f = ClosurePair(|z: C64| Ok(z), |_z: C64| Ok(c64(1.0, 0.0)));
        let circle = Contour::polygon(
            &(0..64)
                .map(|i| {
                    let t = 2.0 * PI * i as f64 / 64.0;
                    c64(t.cos(), t.sin())
                })
                .collect::<Vec<_>>(),
            64,
        );
        let r = count_zeros(&f, &circle).unwrap();
        assert_eq!(r.winding, 1);
        assert!((r.raw_winding - 1.0).abs() < 1e-6);
    }

    #[test]
    fn ghat_counts_unmodified_and_modified() {
        // D̂ = 0 example: k+1 zeros inside Ω(ĝ,3)
        let p = ghat_params(c64(1.0, 0.0), C64::ZERO, c64(1.0, 0.0));
        let contour = build_contour_omega_ghat(&p, 3, false).unwrap();
        assert!(contour.closure_defect() < 1e-12);
        let r = count_zeros(&GhatFunction(p), &contour).unwrap();
        assert_eq!(r.winding, 4);
        // distinct moduli |Δ₊| ≠ |Δ₋|
        let p = ghat_params(c64(1.0, 0.0), c64(0.3, 0.1), c64(2.0, 0.4));
        for k in 2..=4u32 {
            let contour = build_contour_omega_ghat(&p, k, false).unwrap();
            let r = count_zeros(&GhatFunction(p), &contour).unwrap();
            assert_eq!(r.winding, i64::from(k) + 1, "k = {k}");
            // cross-check against the membership count of closed-form zeros
            let inside = ghat_zeros(&p, -2, 4 * i64::from(k) + 4)
                .unwrap()
                .into_iter()
                .filter(|z| contour.contains(z.zeta))
                .count();
            assert_eq!(inside as i64, r.winding);
        }
        // equal moduli, distinct phases: modified contour holds 2k+1
        let x1 = c64(0.9, 0.6); // |x1| = |x2|, different args
        let x2 = c64(0.9, -0.6) * c64(0.6, 0.8);
        let p = ghat_params(c64(1.0, 0.0), x1 * x2, -(x1 + x2));
        for k in 2..=4u32 {
            let contour = build_contour_omega_ghat(&p, k, true).unwrap();
            let r = count_zeros(&GhatFunction(p), &contour).unwrap();
            assert_eq!(r.winding, 2 * i64::from(k) + 1, "modified k = {k}");
        }
    }

    #[test]
    fn omega_g_count_at_least_k() {
        let p = AuxParams::new(c64(1.0, 0.0), C64::ZERO, c64(60.0, 0.0), c64(2.0, 0.0)).unwrap();
        let g = GFunction::new(p);
        for k in [3u32, 5] {
            let contour = build_contour_omega_g(&p, 1, k).unwrap();
            let r = count_zeros(&g, &contour).unwrap();
            assert!(r.winding >= i64::from(k), "k={k}: winding {}", r.winding);
        }
    }

    #[test]
    fn rouche_margin_signs() {
        let p = ghat_params(c64(1.0, 0.0), C64::ZERO, c64(1.0, 0.0));
        let contour = build_contour_omega_ghat(&p, 2, false).unwrap();
        let gf = GhatFunction(p);
        // f = g: margin is min |g| > 0
        let m = rouche_margin(&gf, &gf, &contour).unwrap();
        assert!(m > 0.0);
        // f = 2g: margin is −min|g| < 0
        let doubled = ClosurePair(
            |z: C64| Ok(2.0 * aux_ghat(&p, z)),
            |z: C64| Ok(2.0 * aux_ghat_prime(&p, z)),
        );
        // |f − g| = |g| pointwise, so the margin is non-positive (zero up to
        // rounding); strict sampling never certifies this pair
        let m2 = rouche_margin(&doubled, &gf, &contour).unwrap();
        assert!(m2 <= 1e-12 && m2.abs() < 1e-9);
    }
}
