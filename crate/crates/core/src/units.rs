//! Conversion of natural-unit results (`hbar = m = 1`, lengths in lattice constants) to SI.

use crate::error::{Error, Result};

/// Reduced Planck constant in J s (CODATA 2018).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Electron mass in kg (CODATA 2018).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnitSystem {
    Natural,
    /// SI, with the lattice constant given in meters and the particle mass in kg.
    Si { a0_meters: f64, mass_kg: f64 },
}

impl UnitSystem {
    /// SI units for electrons on a lattice of `a0_meters`.
    pub fn si(a0_meters: f64) -> Result<Self> {
        if !(a0_meters > 0.0) || !a0_meters.is_finite() {
            return Err(Error::InvalidParameter(format!("a0 must be a positive length in meters, got {a0_meters}")));
        }
        Ok(UnitSystem::Si {
            a0_meters,
            mass_kg: ELECTRON_MASS,
        })
    }

    pub fn length(&self, natural: f64) -> f64 {
        match *self {
            UnitSystem::Natural => natural,
            UnitSystem::Si { a0_meters, .. } => natural * a0_meters,
        }
    }

    /// Energies scale by `hbar^2 / (m a0^2)`, giving joules.
    pub fn energy(&self, natural: f64) -> f64 {
        match *self {
            UnitSystem::Natural => natural,
            UnitSystem::Si { a0_meters, mass_kg } => natural * HBAR * HBAR / (mass_kg * a0_meters * a0_meters),
        }
    }

    pub fn length_unit(&self) -> &'static str {
        match self {
            UnitSystem::Natural => "a0",
            UnitSystem::Si { .. } => "m",
        }
    }

    pub fn energy_unit(&self) -> &'static str {
        match self {
            UnitSystem::Natural => "hbar^2/(m a0^2)",
            UnitSystem::Si { .. } => "J",
        }
    }
}
