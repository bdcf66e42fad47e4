//! Composite Gauss–Legendre quadrature on parametric paths.

use crate::C64;

/// 16-point Gauss–Legendre nodes on [−1, 1] (positive half; mirror for the rest).
const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_440_185,
    0.281_603_550_779_258_913_230,
    0.458_016_777_657_227_386_342,
    0.617_876_244_402_643_748_447,
    0.755_404_408_355_003_033_895,
    0.865_631_202_387_831_743_880,
    0.944_575_023_073_232_576_078,
    0.989_400_934_991_649_932_596,
];
const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_496_285,
    0.182_603_415_044_923_588_867,
    0.169_156_519_395_002_538_189,
    0.149_595_988_816_576_732_081,
    0.124_628_971_255_533_872_052,
    0.095_158_511_682_492_784_810,
    0.062_253_523_938_647_892_863,
    0.027_152_459_411_754_094_852,
];

/// ∫₀¹ f(s) ds by composite 16-point Gauss–Legendre on `panels` equal panels.
pub(crate) fn gl16_unit<F: FnMut(f64) -> C64>(mut f: F, panels: usize) -> C64 {
    let h = 1.0 / panels as f64;
    let mut acc = C64::ZERO;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        for i in 0..8 {
            acc += GL16_W[i] * (f(mid + half * GL16_X[i]) + f(mid - half * GL16_X[i]));
        }
    }
    acc * (h / 2.0)
}

/// Adaptive wrapper: doubles the panel count until two successive composite
/// rules agree to `tol` (absolute, relative to the magnitude of the result).
/// Returns the integral and the last observed difference.
pub(crate) fn gl16_adaptive<F: FnMut(f64) -> C64>(
    mut f: F,
    initial_panels: usize,
    tol: f64,
    max_panels: usize,
) -> (C64, f64, usize) {
    let mut panels = initial_panels.max(1);
    let mut last = gl16_unit(&mut f, panels);
    loop {
        let next_panels = panels * 2;
        let next = gl16_unit(&mut f, next_panels);
        let diff = (next - last).norm();
        if diff <= tol * (1.0 + next.norm()) || next_panels >= max_panels {
            return (next, diff, next_panels);
        }
        panels = next_panels;
        last = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn exact_on_high_degree_polynomials() {
        // GL16 integrates degree ≤ 31 exactly on one panel
        let f = |s: f64| c64(s.powi(17) - 3.0 * s.powi(8) + 2.0, s.powi(31));
        let got = gl16_unit(f, 1);
        let expect = c64(1.0 / 18.0 - 3.0 / 9.0 + 2.0, 1.0 / 32.0);
        assert!((got - expect).norm() < 1e-15);
    }

    #[test]
    fn adaptive_oscillatory() {
        let f = |s: f64| c64((40.0 * s).cos(), 0.0);
        let (v, _, _) = gl16_adaptive(f, 2, 1e-13, 1 << 16);
        assert!((v.re - 40.0f64.sin() / 40.0).abs() < 1e-12);
    }
}
