//! Rulers cut into segments.
//!
//! A ruler of `N/2` unit cells holding `N` electrons is cut into `R` equal segments,
//! each keeping its own electrons. The segments' quantum lengths add up to less than
//! the uncut ruler, so the finer the ruling the more the ruler underestimates itself.
//! Balancing that shortfall against the resolution `1/R` gives the optimal ruling
//! `R = sqrt(N)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::manybody::{DensityProfile, MIN_GRID_POINTS};
use crate::moments::{box_variance, Density1D};
use crate::oracle::{integrate, partial_zeta2, steffensen, QuadratureSpec};
use crate::Statistics;

/// Planck's constant in natural units (`hbar = 1`).
const H: f64 = 2.0 * PI;

/// Convergence tolerance and iteration cap for the self-consistent segment length.
pub const FIXED_POINT_TOL: f64 = 1e-10;
pub const FIXED_POINT_MAX_ITER: usize = 100;

/// A ruler of `particles` particles in cells of length `lattice`, cut into `segments` pieces.
///
/// Fermions pack two per cell (`N/2` cells); bosons are spinless, one per cell (`N` cells).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RulerSpec {
    pub lattice: f64,
    pub particles: u64,
    pub segments: u64,
    pub statistics: Statistics,
}

impl RulerSpec {
    pub fn fermion(lattice: f64, particles: u64, segments: u64) -> Self {
        Self {
            lattice,
            particles,
            segments,
            statistics: Statistics::Fermion,
        }
    }

    pub fn boson(lattice: f64, particles: u64, segments: u64) -> Self {
        Self {
            lattice,
            particles,
            segments,
            statistics: Statistics::Boson,
        }
    }

    /// Number of unit cells.
    pub fn cells(&self) -> u64 {
        match self.statistics {
            Statistics::Fermion => self.particles / 2,
            Statistics::Boson => self.particles,
        }
    }

    /// Cells per segment, after checking that segments hold whole cells.
    pub fn cells_per_segment(&self) -> Result<u64> {
        if !(self.lattice > 0.0) || !self.lattice.is_finite() {
            return Err(Error::InvalidParameter(format!("lattice must be positive, got {}", self.lattice)));
        }
        if self.particles == 0 {
            return Err(Error::EmptyFilling);
        }
        if self.statistics == Statistics::Fermion && self.particles % 2 == 1 {
            return Err(Error::OddElectronCount(self.particles));
        }
        let cells = self.cells();
        if self.segments == 0 || self.segments > cells || !cells.is_multiple_of(self.segments) {
            return Err(Error::IndivisibleSegmentation {
                particles: self.particles,
                segments: self.segments,
            });
        }
        Ok(cells / self.segments)
    }

    /// The same ruler left in one piece.
    pub fn uncut(&self) -> Self {
        Self { segments: 1, ..*self }
    }
}

/// Length of a segmented ruler compared to the uncut one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentedLengthResult {
    pub per_segment: f64,
    pub total: f64,
    pub monolithic: f64,
    /// `monolithic - total`.
    pub overestimate: f64,
}

/// Ground-state energies of the uncut and the cut ruler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuttingEnergy {
    pub monolithic: f64,
    pub segmented: f64,
    /// `segmented / monolithic`, from the reduced closed form.
    pub ratio: f64,
}

fn segment_lengths_only(spec: &RulerSpec) -> Result<(f64, f64)> {
    let cells = spec.cells_per_segment()? as f64;
    let r = spec.segments as f64;
    let per_segment = match spec.statistics {
        Statistics::Fermion => {
            let n = spec.particles as f64;
            let pairs = spec.particles / (2 * spec.segments);
            let width = n * spec.lattice / (2.0 * r);
            width * (1.0 - 12.0 / (PI * PI) * (r / n) * partial_zeta2(pairs)).sqrt()
        }
        Statistics::Boson => cells * spec.lattice * (1.0 - 6.0 / (PI * PI)).sqrt(),
    };
    Ok((per_segment, r * per_segment))
}

/// `Delta L_R` and `L_R = R Delta L_R`, with the uncut length for comparison.
pub fn segment_length(spec: &RulerSpec) -> Result<SegmentedLengthResult> {
    let (per_segment, total) = segment_lengths_only(spec)?;
    let (_, monolithic) = segment_lengths_only(&spec.uncut())?;
    Ok(SegmentedLengthResult {
        per_segment,
        total,
        monolithic,
        overestimate: monolithic - total,
    })
}

/// Ground-state energy before and after cutting (`hbar = m = 1`).
///
/// Fermions: `E_G = h^2 (N+2)(N+1) N / (24 N^2 a0^2)` and
/// `E'_G = h^2 (N+2R)(N+R) N / (24 N^2 a0^2)`.
/// Bosons: `E_G = h^2 / (8 N a0^2)` and `E'_G = h^2 R^2 / (8 N a0^2)`.
pub fn cutting_energy(spec: &RulerSpec) -> Result<CuttingEnergy> {
    spec.cells_per_segment()?;
    let n = spec.particles as f64;
    let r = spec.segments as f64;
    let a0 = spec.lattice;
    Ok(match spec.statistics {
        Statistics::Fermion => {
            let scale = H * H * n / (24.0 * n * n * a0 * a0);
            CuttingEnergy {
                monolithic: scale * (n + 2.0) * (n + 1.0),
                segmented: scale * (n + 2.0 * r) * (n + r),
                ratio: ((n + 2.0 * r) / (n + 2.0)) * ((n + r) / (n + 1.0)),
            }
        }
        Statistics::Boson => {
            let scale = H * H / (8.0 * n * a0 * a0);
            CuttingEnergy {
                monolithic: scale,
                segmented: scale * r * r,
                ratio: r * r,
            }
        }
    })
}

/// Ruling counts that cut a fermion ruler of `particles` electrons into whole cells:
/// the divisors of `N/2`, ascending.
pub fn admissible_rulings(particles: u64) -> Vec<u64> {
    let cells = particles / 2;
    if cells == 0 {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= cells {
        if cells.is_multiple_of(d) {
            small.push(d);
            if d * d != cells {
                large.push(cells / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `[1 - sqrt(1 - (12/pi^2)(R/N) sum_{n<=N/2R} 1/n^2)] - 1/R`: relative shortfall of the
/// cut ruler minus its resolution. Negative when resolution dominates.
pub fn precision_condition_residual(particles: u64, segments: u64) -> Result<f64> {
    let spec = RulerSpec::fermion(1.0, particles, segments);
    let pairs = spec.cells_per_segment()?;
    let (n, r) = (particles as f64, segments as f64);
    let x = 12.0 / (PI * PI) * (r / n) * partial_zeta2(pairs);
    // 1 - sqrt(1 - x) without cancellation
    Ok(x / (1.0 + (1.0 - x).sqrt()) - 1.0 / r)
}

/// Closed-form and swept optimal ruling of an `N`-electron ruler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalRuling {
    /// `sqrt(N)`.
    pub closed_form: f64,
    /// `sqrt(N)` rounded to the nearest integer.
    pub r_star: u64,
    /// Ruling spacing `sqrt(a0 L / 2)` with `L = N a0 / 2`, in lattice units.
    pub spacing: f64,
    /// Admissible ruling count with the smallest `|residual|`.
    pub sweep_r: u64,
    pub sweep_residual: f64,
}

pub fn optimal_ruling(particles: u64) -> Result<OptimalRuling> {
    if particles < 4 {
        return Err(Error::InvalidParameter(format!("optimal ruling needs N >= 4, got {particles}")));
    }
    if particles % 2 == 1 {
        return Err(Error::OddElectronCount(particles));
    }
    let n = particles as f64;
    let closed_form = n.sqrt();
    let ruler_length = n / 2.0;
    let mut best: Option<(u64, f64)> = None;
    for r in admissible_rulings(particles) {
        let res = precision_condition_residual(particles, r)?;
        if best.is_none_or(|(_, b)| res.abs() < b.abs()) {
            best = Some((r, res));
        }
    }
    let (sweep_r, sweep_residual) = best.expect("N >= 4 has admissible rulings");
    Ok(OptimalRuling {
        closed_form,
        r_star: closed_form.round() as u64,
        spacing: (ruler_length / 2.0).sqrt(),
        sweep_r,
        sweep_residual,
    })
}

/// Outcome of the self-consistent stacking of `N` one-particle wells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfConsistencyReport {
    pub width: f64,
    pub particles: u64,
    /// Fixed point of `L1 = L2(mixture(L1)) / N` with the mixture integrated numerically.
    pub l1_solved: f64,
    /// Positive root of the quadratic assembled from the per-well moment sums.
    pub l1_symbolic: f64,
    /// `a sqrt(1/3 - 1/(2 pi^2))`, the value obtained with `<1|x^2|1>` in place of the
    /// ground-state variance term.
    pub l1_raw_moment_coefficient: f64,
    /// Set when the solved length disagrees with `l1_raw_moment_coefficient`.
    pub coefficient_discrepancy_flag: bool,
    /// `L2` of the mixture density at `l1_solved`, by quadrature.
    pub total_length_direct: f64,
    pub iterations: usize,
}

/// `L2` of the mixture of `count` ground-state wells spaced by `shift`, by adaptive quadrature.
pub fn mixture_length_by_quadrature(width: f64, shift: f64, count: u32) -> Result<f64> {
    let d = Density1D::shifted_wells(width, shift, count);
    d.validate()?;
    let (lo, hi) = d.support();
    let spec = QuadratureSpec::new(lo, hi)
        .with_breakpoints(d.kinks())
        .with_tolerance(1e-13 * width.max(1.0));
    let norm = integrate(|x| d.eval(x), &spec)?;
    let mean = integrate(|x| x * d.eval(x), &spec)? / norm;
    let var = integrate(|x| (x - mean).powi(2) * d.eval(x), &spec)? / norm;
    Ok((12.0 * var).sqrt())
}

/// Coefficients `(alpha, beta, gamma)` of `L^2 = alpha a^2 + beta a L1 + gamma L1^2`
/// for `N` stacked wells, assembled term by term from
/// `L^2 = (12/N) sum_i I_i - 3((N-1) L1 + a)^2` with
/// `I_i = <1|x^2|1> + a (i-1) L1 + (i-1)^2 L1^2` (well of unit width).
pub fn stacked_length_quadratic(particles: u64) -> Result<(f64, f64, f64)> {
    let n = particles as f64;
    let x2_ground = box_variance(1.0, 1)? + 0.25;
    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    for i in 1..=particles {
        let k = (i - 1) as f64;
        s0 += 1.0;
        s1 += k;
        s2 += k * k;
    }
    // (12/N) sum_i I_i
    let alpha_sum = 12.0 * x2_ground * s0 / n;
    let beta_sum = 12.0 * s1 / n;
    let gamma_sum = 12.0 * s2 / n;
    // 3((N-1) L1 + a)^2
    let m = n - 1.0;
    Ok((alpha_sum - 3.0, beta_sum - 6.0 * m, gamma_sum - 3.0 * m * m))
}

/// Solves for the well spacing `L1` that makes `N` stacked wells exactly `N L1` long.
pub fn self_consistent_segment_length(width: f64, particles: u64) -> Result<SelfConsistencyReport> {
    if !(width > 0.0) || !width.is_finite() {
        return Err(Error::InvalidParameter(format!("width must be positive, got {width}")));
    }
    if particles < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 wells, got {particles}")));
    }
    let count = u32::try_from(particles)
        .map_err(|_| Error::InvalidParameter(format!("{particles} wells exceed the supported count")))?;
    let n = particles as f64;

    // N^2 L1^2 = alpha a^2 + beta a L1 + gamma L1^2
    let (alpha, beta, gamma) = stacked_length_quadratic(particles)?;
    let qa = n * n - gamma;
    let disc = beta * beta + 4.0 * qa * alpha;
    let l1_symbolic = width * (beta + disc.sqrt()) / (2.0 * qa);

    let l1_raw_moment_coefficient = width * (1.0 / 3.0 - 1.0 / (2.0 * PI * PI)).sqrt();

    let map = |l1: f64| -> Result<f64> {
        if !(l1 > 0.0) {
            return Err(Error::NoConvergence {
                iterations: 0,
                last_step: f64::NAN,
            });
        }
        Ok(mixture_length_by_quadrature(width, l1, count)? / n)
    };
    let (l1_solved, iterations) = steffensen(map, l1_raw_moment_coefficient, FIXED_POINT_TOL * width, FIXED_POINT_MAX_ITER)?;
    let total_length_direct = mixture_length_by_quadrature(width, l1_solved, count)?;

    Ok(SelfConsistencyReport {
        width,
        particles,
        l1_solved,
        l1_symbolic,
        l1_raw_moment_coefficient,
        coefficient_discrepancy_flag: (l1_solved - l1_raw_moment_coefficient).abs() > 1e-6 * width,
        total_length_direct,
        iterations,
    })
}

/// Density of one particle in each of `N` ground-state wells of width `a`, spaced by `L1`:
/// `rho(x) = (1/N) sum_i rho_1(x - (i-1) L1)`.
pub fn entangled_segment_density(
    particles: u64,
    width: f64,
    shift: f64,
    grid_points: usize,
) -> Result<DensityProfile> {
    if !(shift > 0.0) || !shift.is_finite() {
        return Err(Error::InvalidParameter(format!("well spacing must be positive, got {shift}")));
    }
    if particles >= 2 && width - shift >= shift {
        return Err(Error::ExcessiveOverlap {
            overlap: width - shift,
            shift,
        });
    }
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::InvalidParameter(format!(
            "density grid needs at least {MIN_GRID_POINTS} points, got {grid_points}"
        )));
    }
    let count = u32::try_from(particles)
        .map_err(|_| Error::InvalidParameter(format!("{particles} wells exceed the supported count")))?;
    let d = Density1D::shifted_wells(width, shift, count);
    d.validate()?;
    let (lo, hi) = d.support();
    let last = (grid_points - 1) as f64;
    let grid: Vec<f64> = (0..grid_points).map(|j| lo + (hi - lo) * j as f64 / last).collect();
    let values = grid.iter().map(|&x| d.eval(x)).collect();
    Ok(DensityProfile {
        grid,
        values,
        particles,
        highest_level: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manybody::{fermion_length, BoxSystem};
    use crate::moments::length_l2;
    use approx::assert_relative_eq;

    const GROUND: f64 = 0.626_157_247_140_024_2;

    #[test]
    fn uncut_hundred_electron_ruler() {
        let r = segment_length(&RulerSpec::fermion(1.0, 100, 1)).unwrap();
        // 50 * sqrt(1 - 12/(100 pi^2) S(50)), direct partial sum
        assert_relative_eq!(r.total, 49.503_554_300_232_5, max_relative = 1e-13);
        assert_eq!(r.total, r.monolithic);
        assert_eq!(r.overestimate, 0.0);
        let direct = fermion_length(&BoxSystem::unit_cells(1.0, 50).unwrap(), 100).unwrap();
        assert_relative_eq!(r.total, direct, max_relative = 1e-14);
    }

    #[test]
    fn finest_ruling_is_over_a_third_short() {
        let r = segment_length(&RulerSpec::fermion(1.0, 100, 50)).unwrap();
        assert_relative_eq!(r.total, 50.0 * GROUND, max_relative = 1e-14);
        assert_relative_eq!(r.per_segment, GROUND, max_relative = 1e-14);
        assert_relative_eq!(r.total / 50.0, GROUND, epsilon = 1e-9);
    }

    #[test]
    fn boson_ruler_is_cut_invariant() {
        let base = segment_length(&RulerSpec::boson(1.0, 100, 1)).unwrap().total;
        assert_relative_eq!(base, 100.0 * GROUND, max_relative = 1e-14);
        for r in [2, 4, 5, 10, 20, 25, 50, 100] {
            let s = segment_length(&RulerSpec::boson(1.0, 100, r)).unwrap();
            assert_relative_eq!(s.total, base, max_relative = 1e-15);
        }
    }

    #[test]
    fn fermion_length_decreases_with_ruling() {
        let mut last = f64::INFINITY;
        for r in admissible_rulings(1000) {
            let s = segment_length(&RulerSpec::fermion(1.0, 1000, r)).unwrap();
            assert!(s.total < last);
            assert!(s.total > 0.0 && s.total <= s.monolithic);
            last = s.total;
        }
    }

    #[test]
    fn indivisible_rulings_rejected() {
        let err = segment_length(&RulerSpec::fermion(1.0, 100, 3)).unwrap_err();
        assert_eq!(err, Error::IndivisibleSegmentation { particles: 100, segments: 3 });
        assert!(segment_length(&RulerSpec::fermion(1.0, 100, 51)).is_err());
        assert!(segment_length(&RulerSpec::boson(1.0, 10, 3)).is_err());
        assert!(cutting_energy(&RulerSpec::fermion(1.0, 10, 0)).is_err());
    }

    #[test]
    fn cutting_energy_closed_forms_match_level_sums() {
        for (n, r) in [(10u64, 1u64), (10, 5), (100, 10), (24, 4)] {
            let e = cutting_energy(&RulerSpec::fermion(0.7, n, r)).unwrap();
            // 2 R sum_{k <= N/2R} h^2 R^2 k^2 / (2 N^2 a0^2)
            let level = |k: u64, segs: u64| {
                H * H * (segs * segs) as f64 * (k * k) as f64 / (2.0 * (n * n) as f64 * 0.49)
            };
            let whole: f64 = 2.0 * (1..=n / 2).map(|k| level(k, 1)).sum::<f64>();
            let cut: f64 = 2.0 * r as f64 * (1..=n / (2 * r)).map(|k| level(k, r)).sum::<f64>();
            assert_relative_eq!(e.monolithic, whole, max_relative = 1e-13);
            assert_relative_eq!(e.segmented, cut, max_relative = 1e-13);
            assert_relative_eq!(e.ratio, cut / whole, max_relative = 1e-13);
        }
    }

    #[test]
    fn cutting_energy_limits() {
        let e = cutting_energy(&RulerSpec::fermion(1.0, 64, 1)).unwrap();
        assert_eq!(e.monolithic, e.segmented);
        assert_eq!(e.ratio, 1.0);
        let e = cutting_energy(&RulerSpec::fermion(1.0, 1_000_000, 500_000)).unwrap();
        assert!((e.ratio - 3.0).abs() < 1e-5);
        for r in [1, 2, 10] {
            let e = cutting_energy(&RulerSpec::boson(1.0, 100, r)).unwrap();
            assert_eq!(e.ratio, (r * r) as f64);
            assert_relative_eq!(e.segmented / e.monolithic, (r * r) as f64, max_relative = 1e-15);
        }
    }

    #[test]
    fn residual_signs() {
        assert!(precision_condition_residual(10_000, 100).unwrap().abs() < 2e-3);
        assert!(precision_condition_residual(10_000, 2).unwrap() < 0.0);
        assert!(precision_condition_residual(10_000, 5000).unwrap() > 0.0);
        assert_relative_eq!(
            precision_condition_residual(10_000, 100).unwrap(),
            -7.108_600_464_998_96e-5,
            max_relative = 1e-8
        );
        assert!(precision_condition_residual(10_000, 3).is_err());
    }

    #[test]
    fn admissible_rulings_are_divisors() {
        assert_eq!(admissible_rulings(100), vec![1, 2, 5, 10, 25, 50]);
        assert_eq!(admissible_rulings(4), vec![1, 2]);
        assert_eq!(admissible_rulings(2_000_000_000).len(), 100);
    }

    #[test]
    fn optimal_ruling_examples() {
        let o = optimal_ruling(2_000_000_000).unwrap();
        assert_eq!(o.r_star, 44_721);
        assert_relative_eq!(o.spacing * 1e-10, 2.236_067_977e-6, max_relative = 1e-9);
        let o = optimal_ruling(10_000).unwrap();
        assert_eq!(o.r_star, 100);
        assert!(o.sweep_r.abs_diff(100) <= 2);
        let o = optimal_ruling(4).unwrap();
        assert_eq!(o.r_star, 2);
        assert!(optimal_ruling(2).is_err());
    }

    #[test]
    fn stacked_quadratic_has_rederived_coefficients() {
        for n in [2u64, 3, 7, 40] {
            let (alpha, beta, gamma) = stacked_length_quadratic(n).unwrap();
            let nf = n as f64;
            assert_relative_eq!(alpha, 1.0 - 6.0 / (PI * PI), max_relative = 1e-13);
            assert!(beta.abs() < 1e-12 * nf);
            assert_relative_eq!(gamma, nf * nf - 1.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn self_consistency_adjudicates_coefficient() {
        for n in [2u64, 3, 5, 10] {
            let rep = self_consistent_segment_length(1.0, n).unwrap();
            assert!((rep.l1_solved - GROUND).abs() < 1e-6, "N={n}: {}", rep.l1_solved);
            assert!((rep.l1_symbolic - GROUND).abs() < 1e-12);
            assert_relative_eq!(rep.l1_raw_moment_coefficient, 0.531_669_767_348_270_8, max_relative = 1e-14);
            assert!(rep.coefficient_discrepancy_flag);
            assert!((n as f64 * rep.l1_solved - rep.total_length_direct).abs() < 1e-6);
        }
    }

    #[test]
    fn two_well_mixture_length() {
        // mpmath quadrature oracle: 1.252314494280048
        let l = mixture_length_by_quadrature(1.0, GROUND, 2).unwrap();
        assert_relative_eq!(l, 1.252_314_494_280_048_4, max_relative = 1e-11);
    }

    #[test]
    fn entangled_density_examples() {
        let single = entangled_segment_density(1, 1.0, 0.3, 101).unwrap();
        for (x, v) in single.grid.iter().zip(&single.values) {
            assert!((v - 2.0 * (PI * x).sin().powi(2)).abs() < 1e-14);
        }
        let pair = entangled_segment_density(2, 1.0, GROUND, 20_001).unwrap();
        assert!((pair.integral() - 1.0).abs() < 1e-7);
        let l = length_l2(&pair.to_density().unwrap()).unwrap().l2;
        assert!((l - 1.252_314_494).abs() < 1e-6);
        for n in [3, 7] {
            assert!((entangled_segment_density(n, 1.0, 0.6, 8001).unwrap().integral() - 1.0).abs() < 1e-7);
        }
        assert!(matches!(
            entangled_segment_density(2, 1.0, 0.4, 101),
            Err(Error::ExcessiveOverlap { .. })
        ));
    }
}
