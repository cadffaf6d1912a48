//! Explicit (anti)symmetrized product wavefunctions of 2 or 3 particles in a box,
//! tabulated on a uniform grid.
//!
//! Expectation values of particle 1 are obtained by brute-force summation over
//! the full P-dimensional grid, independently of any single-particle reduction.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::Statistics;

/// Smallest grid accepted by [`brute_force_spread`].
pub const MIN_SPREAD_INTERVALS: usize = 256;

#[derive(Debug, Clone)]
pub struct GridWavefunction {
    particles: usize,
    intervals: usize,
    width: f64,
    statistics: Statistics,
    /// Amplitudes at the interior grid points, particle 1 on the slowest axis.
    amplitudes: Vec<f64>,
}

fn permutations(p: usize) -> Vec<(Vec<usize>, f64)> {
    match p {
        2 => vec![(vec![0, 1], 1.0), (vec![1, 0], -1.0)],
        3 => vec![
            (vec![0, 1, 2], 1.0),
            (vec![1, 2, 0], 1.0),
            (vec![2, 0, 1], 1.0),
            (vec![0, 2, 1], -1.0),
            (vec![2, 1, 0], -1.0),
            (vec![1, 0, 2], -1.0),
        ],
        _ => unreachable!("particle count validated by caller"),
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

impl GridWavefunction {
    /// Builds the normalized state with one particle in each of `levels`
    /// on a grid of `intervals` equal steps across a box of width `width`.
    pub fn build(levels: &[u32], width: f64, statistics: Statistics, intervals: usize) -> Result<Self> {
        let particles = levels.len();
        if !(2..=3).contains(&particles) {
            return Err(Error::InvalidParameter(format!(
                "grid oracle supports 2 or 3 particles, got {particles}"
            )));
        }
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidParameter(format!("box width must be positive, got {width}")));
        }
        if intervals < 4 {
            return Err(Error::InvalidParameter(format!("grid needs at least 4 intervals, got {intervals}")));
        }
        if let Some(&bad) = levels.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidIndex(bad as i64));
        }

        let mut sorted = levels.to_vec();
        sorted.sort_unstable();
        let mut multiplicity_factor = 1.0;
        let mut run = 1;
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                if statistics == Statistics::Fermion {
                    return Err(Error::DuplicateLevelForFermions(w[0]));
                }
                run += 1;
                multiplicity_factor *= run as f64;
            } else {
                run = 1;
            }
        }
        let norm = 1.0 / (factorial(particles) * multiplicity_factor).sqrt();

        let m = intervals - 1;
        let h = width / intervals as f64;
        let amp = (2.0 / width).sqrt();
        // phi[k][j]: level levels[k] at interior point j+1
        let phi: Vec<Vec<f64>> = levels
            .iter()
            .map(|&n| {
                (1..=m)
                    .map(|j| amp * (n as f64 * PI * j as f64 * h / width).sin())
                    .collect()
            })
            .collect();
        let perms = permutations(particles);
        let fermion = statistics == Statistics::Fermion;

        let slab = m.pow(particles as u32 - 1);
        let mut amplitudes = vec![0.0; slab * m];
        amplitudes
            .par_chunks_mut(slab)
            .enumerate()
            .for_each(|(i1, chunk)| {
                for (rest, value) in chunk.iter_mut().enumerate() {
                    let idx = [i1, rest / m % m, rest % m];
                    let coords: [usize; 3] = if particles == 2 { [i1, rest, 0] } else { idx };
                    let mut sum = 0.0;
                    for (perm, sign) in &perms {
                        let mut term = if fermion { *sign } else { 1.0 };
                        for (particle, &state) in perm.iter().enumerate() {
                            term *= phi[state][coords[particle]];
                        }
                        sum += term;
                    }
                    *value = norm * sum;
                }
            });

        Ok(Self {
            particles,
            intervals,
            width,
            statistics,
            amplitudes,
        })
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    fn points_per_axis(&self) -> usize {
        self.intervals - 1
    }

    fn step(&self) -> f64 {
        self.width / self.intervals as f64
    }

    /// Amplitude at interior grid indices (0-based, one per particle).
    pub fn amplitude(&self, index: &[usize]) -> f64 {
        let m = self.points_per_axis();
        let flat = index.iter().fold(0, |acc, &i| acc * m + i);
        self.amplitudes[flat]
    }

    /// Marginal `sum |psi|^2` over all particles except particle 1, per grid point of particle 1.
    fn marginal(&self) -> Vec<f64> {
        let m = self.points_per_axis();
        let slab = m.pow(self.particles as u32 - 1);
        self.amplitudes
            .par_chunks(slab)
            .map(|chunk| chunk.iter().map(|v| v * v).sum())
            .collect()
    }

    /// `sum |psi|^2 dx^P` (trapezoid rule; the wavefunction vanishes at the walls).
    pub fn norm(&self) -> f64 {
        self.marginal().iter().sum::<f64>() * self.step().powi(self.particles as i32)
    }

    /// `<x_1>` and `<x_1^2>` by direct summation.
    pub fn particle_one_moments(&self) -> (f64, f64) {
        let h = self.step();
        let marginal = self.marginal();
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for (j, w) in marginal.iter().enumerate() {
            let x = (j + 1) as f64 * h;
            s0 += w;
            s1 += w * x;
            s2 += w * x * x;
        }
        (s1 / s0, s2 / s0)
    }

    /// `<x_1^2> - <x_1>^2`.
    pub fn particle_one_spread(&self) -> f64 {
        let (m1, m2) = self.particle_one_moments();
        m2 - m1 * m1
    }

    /// Largest `|psi(..x_p..x_q..) - s psi(..x_q..x_p..)|` over the grid, with
    /// `s = -1` for fermions and `+1` for bosons.
    pub fn exchange_defect(&self, p: usize, q: usize) -> f64 {
        assert!(p < self.particles && q < self.particles);
        let m = self.points_per_axis();
        let sign = match self.statistics {
            Statistics::Fermion => -1.0,
            Statistics::Boson => 1.0,
        };
        let total = self.amplitudes.len();
        (0..total)
            .into_par_iter()
            .map(|flat| {
                let mut index = vec![0; self.particles];
                let mut rem = flat;
                for slot in index.iter_mut().rev() {
                    *slot = rem % m;
                    rem /= m;
                }
                let direct = self.amplitudes[flat];
                index.swap(p, q);
                (direct - sign * self.amplitude(&index)).abs()
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// Brute-force `Delta x_1^2` for particles in `levels` of a box of width `width`,
/// summed over the full grid with `intervals` steps per axis.
pub fn brute_force_spread(levels: &[u32], width: f64, statistics: Statistics, intervals: usize) -> Result<f64> {
    if intervals < MIN_SPREAD_INTERVALS {
        return Err(Error::InvalidParameter(format!(
            "brute-force spread needs at least {MIN_SPREAD_INTERVALS} intervals, got {intervals}"
        )));
    }
    Ok(GridWavefunction::build(levels, width, statistics, intervals)?.particle_one_spread())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermion_pair_is_normalized_and_antisymmetric() {
        let psi = GridWavefunction::build(&[1, 2], 1.0, Statistics::Fermion, 64).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        assert!(psi.exchange_defect(0, 1) < 1e-12);
    }

    #[test]
    fn fermion_triple_antisymmetric_under_every_swap() {
        let psi = GridWavefunction::build(&[1, 2, 3], 1.0, Statistics::Fermion, 32).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            assert!(psi.exchange_defect(p, q) < 1e-12, "swap {p}{q}");
        }
    }

    #[test]
    fn boson_states_symmetric_and_normalized() {
        for levels in [[1, 1, 2], [1, 2, 3], [2, 2, 2]] {
            let psi = GridWavefunction::build(&levels, 1.0, Statistics::Boson, 32).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-12, "{levels:?}");
            assert!(psi.exchange_defect(0, 2) < 1e-12);
        }
    }

    #[test]
    fn duplicate_fermion_level_rejected() {
        let err = GridWavefunction::build(&[1, 1], 1.0, Statistics::Fermion, 32).unwrap_err();
        assert_eq!(err, Error::DuplicateLevelForFermions(1));
    }

    #[test]
    fn unsupported_particle_counts_rejected() {
        assert!(GridWavefunction::build(&[1], 1.0, Statistics::Fermion, 32).is_err());
        assert!(GridWavefunction::build(&[1, 2, 3, 4], 1.0, Statistics::Fermion, 32).is_err());
        assert!(brute_force_spread(&[1, 2], 1.0, Statistics::Fermion, 64).is_err());
    }
}
