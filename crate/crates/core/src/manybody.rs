//! Noninteracting identical particles in an infinite well.
//!
//! For a centrosymmetric well every eigenstate has `<n|x|n> = a/2`, so the spread
//! of any one particle is the occupancy-weighted average of the single-level
//! variances and the length of `N` paired electrons is
//! `L_N = a sqrt(1 - 12/(pi^2 N) sum_{n<=N/2} 1/n^2)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::moments::{box_density, box_variance, Density1D, SampledDensity};
use crate::oracle::partial_zeta2;
use crate::Statistics;

/// Default number of grid points for sampled densities.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Smallest grid accepted by [`electron_density`].
pub const MIN_GRID_POINTS: usize = 16;

/// A one-dimensional infinite well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoxSystem {
    FixedWidth { width: f64 },
    /// `cells` unit cells of length `lattice`, two electrons per cell.
    UnitCells { lattice: f64, cells: u64 },
}

impl BoxSystem {
    pub fn fixed(width: f64) -> Result<Self> {
        let b = BoxSystem::FixedWidth { width };
        b.validate()?;
        Ok(b)
    }

    pub fn unit_cells(lattice: f64, cells: u64) -> Result<Self> {
        let b = BoxSystem::UnitCells { lattice, cells };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            BoxSystem::FixedWidth { width } if width > 0.0 && width.is_finite() => Ok(()),
            BoxSystem::UnitCells { lattice, cells } if lattice > 0.0 && lattice.is_finite() && cells >= 1 => Ok(()),
            other => Err(Error::InvalidParameter(format!("invalid box {other:?}"))),
        }
    }

    pub fn width(&self) -> f64 {
        match *self {
            BoxSystem::FixedWidth { width } => width,
            BoxSystem::UnitCells { lattice, cells } => lattice * cells as f64,
        }
    }

    /// Centre of symmetry.
    pub fn center(&self) -> f64 {
        0.5 * self.width()
    }
}

/// Occupation of single-particle levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillingPlan {
    statistics: Statistics,
    /// `(level, occupancy)`, ascending in level, occupancy >= 1.
    levels: Vec<(u32, u32)>,
}

impl FillingPlan {
    /// Validates and normalizes an explicit occupation list. Zero occupancies are dropped.
    pub fn new(statistics: Statistics, levels: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut levels: Vec<(u32, u32)> = levels.into_iter().filter(|&(_, occ)| occ > 0).collect();
        levels.sort_unstable();
        for w in levels.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidFilling(format!("level {} listed twice", w[0].0)));
            }
        }
        for &(level, occ) in &levels {
            if level == 0 {
                return Err(Error::InvalidIndex(0));
            }
            if statistics == Statistics::Fermion && occ > 2 {
                return Err(Error::InvalidFilling(format!(
                    "level {level} holds {occ} fermions; at most 2 (spin up and down)"
                )));
            }
        }
        if levels.is_empty() {
            return Err(Error::EmptyFilling);
        }
        Ok(Self { statistics, levels })
    }

    /// Lowest-energy fermion filling: two per level, the top level singly occupied for odd `n`.
    pub fn fermion_ground_state(particles: u64) -> Result<Self> {
        if particles == 0 {
            return Err(Error::EmptyFilling);
        }
        let pairs = (particles / 2) as u32;
        let mut levels: Vec<(u32, u32)> = (1..=pairs).map(|n| (n, 2)).collect();
        if particles % 2 == 1 {
            levels.push((pairs + 1, 1));
        }
        Self::new(Statistics::Fermion, levels)
    }

    /// All bosons condensed in the single-particle ground state.
    pub fn boson_ground_state(particles: u64) -> Result<Self> {
        if particles == 0 {
            return Err(Error::EmptyFilling);
        }
        let occ = u32::try_from(particles)
            .map_err(|_| Error::InvalidParameter(format!("{particles} bosons exceed the supported count")))?;
        Self::new(Statistics::Boson, [(1, occ)])
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn levels(&self) -> &[(u32, u32)] {
        &self.levels
    }

    pub fn particle_count(&self) -> u64 {
        self.levels.iter().map(|&(_, occ)| occ as u64).sum()
    }

    pub fn highest_level(&self) -> u32 {
        self.levels.last().map(|&(n, _)| n).unwrap_or(0)
    }
}

/// Single-particle density of a filled box on a uniform grid spanning the well.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub particles: u64,
    pub highest_level: u32,
}

impl DensityProfile {
    /// Trapezoid-rule integral of the profile.
    pub fn integral(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, v)| 0.5 * (x[1] - x[0]) * (v[0] + v[1]))
            .sum()
    }

    /// Largest `|rho(x) - rho(mirror(x))|` for a profile on a symmetric grid.
    pub fn asymmetry(&self) -> f64 {
        self.values
            .iter()
            .zip(self.values.iter().rev())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// The profile as a sampled density for the moment estimators.
    pub fn to_density(&self) -> Result<Density1D> {
        Ok(Density1D::Sampled(SampledDensity::new(self.grid.clone(), self.values.clone())?))
    }
}

/// `a sqrt(1 - 12/(pi^2 N) sum_{n=1}^{N/2} 1/n^2)` for an even number `N` of electrons
/// paired in the lowest levels.
pub fn fermion_length(system: &BoxSystem, electrons: u64) -> Result<f64> {
    system.validate()?;
    if electrons == 0 {
        return Err(Error::EmptyFilling);
    }
    if electrons % 2 == 1 {
        return Err(Error::OddElectronCount(electrons));
    }
    let n = electrons as f64;
    let shortfall = 12.0 / (PI * PI * n) * partial_zeta2(electrons / 2);
    Ok(system.width() * (1.0 - shortfall).sqrt())
}

/// Length of one particle in level `n`: `a sqrt(1 - 6/(pi^2 n^2))`.
pub fn excited_state_length(width: f64, level: u32) -> Result<f64> {
    BoxSystem::fixed(width)?;
    if level == 0 {
        return Err(Error::InvalidIndex(0));
    }
    let n = level as f64;
    Ok(width * (1.0 - 6.0 / (PI * PI * n * n)).sqrt())
}

/// Length of `N` condensed bosons, `a sqrt(1 - 6/pi^2)` for every `N`.
pub fn boson_length(width: f64, particles: u64) -> Result<f64> {
    BoxSystem::fixed(width)?;
    if particles == 0 {
        return Err(Error::EmptyFilling);
    }
    Ok(width * (1.0 - 6.0 / (PI * PI)).sqrt())
}

/// `Delta x_1^2` of a filled box from single-particle matrix elements:
/// `(1/N) sum_n occ_n <n|x^2|n> - [(1/N) sum_n occ_n <n|x|n>]^2`.
///
/// Evaluated as the occupancy-weighted level variances plus the spread of the level
/// centres, which is the same quantity without the cancellation.
pub fn many_body_spread(plan: &FillingPlan, system: &BoxSystem) -> Result<f64> {
    system.validate()?;
    let width = system.width();
    let n = plan.particle_count() as f64;
    // every level of the well is centred at a/2
    let centers: Vec<f64> = plan.levels().iter().map(|_| system.center()).collect();
    let mean = plan
        .levels()
        .iter()
        .zip(&centers)
        .map(|(&(_, occ), c)| occ as f64 * c)
        .sum::<f64>()
        / n;
    let mut spread = 0.0;
    for (&(level, occ), c) in plan.levels().iter().zip(&centers) {
        spread += occ as f64 * (box_variance(width, level)? + (c - mean).powi(2));
    }
    Ok(spread / n)
}

/// `sqrt(12 Delta x_1^2)` for an arbitrary filling plan.
pub fn plan_length(plan: &FillingPlan, system: &BoxSystem) -> Result<f64> {
    Ok((12.0 * many_body_spread(plan, system)?).sqrt())
}

/// `rho(x) = (1/N) sum_n occ_n (2/a) sin^2(n pi x / a)` on `grid_points` equally spaced
/// points from wall to wall.
pub fn electron_density(system: &BoxSystem, plan: &FillingPlan, grid_points: usize) -> Result<DensityProfile> {
    system.validate()?;
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::InvalidParameter(format!(
            "density grid needs at least {MIN_GRID_POINTS} points, got {grid_points}"
        )));
    }
    let width = system.width();
    let n = plan.particle_count() as f64;
    let last = (grid_points - 1) as f64;
    let grid: Vec<f64> = (0..grid_points).map(|j| width * j as f64 / last).collect();
    let values = grid
        .iter()
        .map(|&x| {
            plan.levels()
                .iter()
                .map(|&(level, occ)| occ as f64 * box_density(x, width, level))
                .sum::<f64>()
                / n
        })
        .collect();
    Ok(DensityProfile {
        grid,
        values,
        particles: plan.particle_count(),
        highest_level: plan.highest_level(),
    })
}
