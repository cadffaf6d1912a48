//! Adaptive Gauss-Kronrod (7/15) quadrature with explicit breakpoints.

// Kronrod nodes and weights as tabulated
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod abscissae on [-1, 1]; the odd entries are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integration interval, tolerance and subdivision budget.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub lo: f64,
    pub hi: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Interior points where the integrand has kinks; the interval is split there first.
    pub breakpoints: Vec<f64>,
}

impl QuadratureSpec {
    pub const DEFAULT_TOL: f64 = 1e-10;
    pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;

    pub fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            abs_tol: Self::DEFAULT_TOL,
            max_subdivisions: Self::DEFAULT_MAX_SUBDIVISIONS,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_tolerance(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self
    }
}

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `spec.lo..spec.hi`, bisecting the worst panel until the summed
/// error estimate drops below `spec.abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    if !(spec.abs_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrature tolerance must be positive, got {}",
            spec.abs_tol
        )));
    }
    if !spec.lo.is_finite() || !spec.hi.is_finite() {
        return Err(Error::InvalidParameter("integration bounds must be finite".into()));
    }
    if spec.lo == spec.hi {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if spec.lo < spec.hi {
        (spec.lo, spec.hi, 1.0)
    } else {
        (spec.hi, spec.lo, -1.0)
    };

    let mut cuts: Vec<f64> = spec
        .breakpoints
        .iter()
        .copied()
        .filter(|&p| p > lo && p < hi)
        .collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap: BinaryHeap<Panel> = cuts.windows(2).map(|w| kronrod(&f, w[0], w[1])).collect();
    let mut panels = heap.len();
    loop {
        let (total, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if !total.is_finite() {
            return Err(Error::InvalidParameter("integrand is not finite".into()));
        }
        if error <= spec.abs_tol {
            return Ok(sign * total);
        }
        if panels >= spec.max_subdivisions {
            return Err(Error::MaxSubdivisionsExceeded(spec.max_subdivisions));
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // panel cannot be split further in floating point; accept its estimate
            heap.push(Panel { error: 0.0, ..worst });
            continue;
        }
        heap.push(kronrod(&f, worst.lo, mid));
        heap.push(kronrod(&f, mid, worst.hi));
        panels += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| x * x, &QuadratureSpec::new(0.0, 1.0)).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn box_second_moment() {
        let v = integrate(
            |x| 2.0 * x * x * (PI * x).sin().powi(2),
            &QuadratureSpec::new(0.0, 1.0),
        )
        .unwrap();
        assert!((v - 0.282_672_741_512_164_4).abs() < 1e-12);
    }

    #[test]
    fn normalization_of_ground_state() {
        let v = integrate(|x| 2.0 * (PI * x).sin().powi(2), &QuadratureSpec::new(0.0, 1.0)).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let v = integrate(|x| x, &QuadratureSpec::new(1.0, 0.0)).unwrap();
        assert!((v + 0.5).abs() < 1e-15);
    }

    #[test]
    fn kink_handled_with_breakpoint() {
        let spec = QuadratureSpec::new(-1.0, 2.0).with_breakpoints([0.3]);
        let v = integrate(|x: f64| (x - 0.3).abs(), &spec).unwrap();
        let exact = 0.5 * 1.3 * 1.3 + 0.5 * 1.7 * 1.7;
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn subdivision_budget_is_enforced() {
        let spec = QuadratureSpec::new(0.0, 1.0)
            .with_tolerance(1e-14)
            .with_max_subdivisions(3);
        let err = integrate(|x| (1.0 / (x + 1e-6)).sin(), &spec).unwrap_err();
        assert_eq!(err, Error::MaxSubdivisionsExceeded(3));
    }

    #[test]
    fn nonpositive_tolerance_rejected() {
        let spec = QuadratureSpec::new(0.0, 1.0).with_tolerance(0.0);
        assert!(integrate(|x| x, &spec).is_err());
    }
}
