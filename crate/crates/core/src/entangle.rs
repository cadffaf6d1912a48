//! An object and a ruler that share electrons.
//!
//! Both are boxes whose widths are fixed by their nuclei (`cells * lattice`). When the
//! ruler's occupied levels lie above vacant levels of the object, electrons hop across,
//! each hop emitting a photon of the level difference. Both quantum lengths are then
//! recomputed with the new occupations while the widths stay put.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::manybody::{electron_density, plan_length, BoxSystem, DensityProfile, FillingPlan};
use crate::Statistics;

/// Relative tolerance used when comparing the relaxed energy with the global minimum.
const ENERGY_RTOL: f64 = 1e-12;

/// A box of `cells` unit cells whose width never changes, with explicit occupations.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialBox {
    lattice: f64,
    cells: u64,
    /// Electrons in level `i + 1`; at most 2.
    occupations: Vec<u8>,
}

impl MaterialBox {
    /// Neutral box in its ground state: two electrons in each of the lowest `cells` levels.
    pub fn new(lattice: f64, cells: u64) -> Result<Self> {
        if !(lattice > 0.0) || !lattice.is_finite() {
            return Err(Error::InvalidParameter(format!("lattice must be positive, got {lattice}")));
        }
        if cells == 0 {
            return Err(Error::InvalidParameter("a box needs at least one cell".into()));
        }
        let cells_usize = usize::try_from(cells)
            .map_err(|_| Error::InvalidParameter(format!("{cells} cells exceed the supported count")))?;
        Ok(Self {
            lattice,
            cells,
            occupations: vec![2; cells_usize],
        })
    }

    pub fn lattice(&self) -> f64 {
        self.lattice
    }

    pub fn cells(&self) -> u64 {
        self.cells
    }

    pub fn width(&self) -> f64 {
        self.lattice * self.cells as f64
    }

    /// Electron count that defines the width (two per cell).
    pub fn nominal_electrons(&self) -> u64 {
        2 * self.cells
    }

    pub fn electrons(&self) -> u64 {
        self.occupations.iter().map(|&o| o as u64).sum()
    }

    pub fn occupation(&self, level: u32) -> u8 {
        level
            .checked_sub(1)
            .and_then(|i| self.occupations.get(i as usize).copied())
            .unwrap_or(0)
    }

    /// Occupied `(level, occupancy)` pairs, ascending.
    pub fn occupied_levels(&self) -> Vec<(u32, u32)> {
        self.occupations
            .iter()
            .enumerate()
            .filter(|(_, &o)| o > 0)
            .map(|(i, &o)| (i as u32 + 1, o as u32))
            .collect()
    }

    fn energy(&self, level: u32) -> f64 {
        let n = level as f64;
        let nominal = self.nominal_electrons() as f64;
        2.0 * PI * PI * n * n / (self.lattice * self.lattice * nominal * nominal)
    }

    pub fn total_energy(&self) -> f64 {
        self.occupied_levels()
            .iter()
            .map(|&(n, occ)| occ as f64 * self.energy(n))
            .sum()
    }

    fn lowest_vacancy(&self) -> u32 {
        self.occupations
            .iter()
            .position(|&o| o < 2)
            .unwrap_or(self.occupations.len()) as u32
            + 1
    }

    fn add(&mut self, level: u32, count: u8) {
        let idx = level as usize - 1;
        if idx >= self.occupations.len() {
            self.occupations.resize(idx + 1, 0);
        }
        self.occupations[idx] += count;
    }

    fn remove(&mut self, level: u32, count: u8) {
        self.occupations[level as usize - 1] -= count;
    }

    fn filling_plan(&self) -> Result<FillingPlan> {
        FillingPlan::new(Statistics::Fermion, self.occupied_levels())
    }

    /// Quantum length of the electron cloud, `None` when the box is empty.
    pub fn quantum_length(&self) -> Result<Option<f64>> {
        if self.electrons() == 0 {
            return Ok(None);
        }
        let system = BoxSystem::fixed(self.width())?;
        Ok(Some(plan_length(&self.filling_plan()?, &system)?))
    }
}

/// `E_n = 2 pi^2 n^2 / (a0^2 N^2)` for a box of `N/2` cells of length `a0` (`hbar = m = 1`).
pub fn level_energy(material: &MaterialBox, level: u32) -> Result<f64> {
    if level == 0 {
        return Err(Error::InvalidIndex(0));
    }
    Ok(material.energy(level))
}

fn check_even(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 electrons, got {n}")));
    }
    if n % 2 == 1 {
        return Err(Error::OddElectronCount(n));
    }
    Ok(())
}

/// Lattice ratio `a0/b0` at which level `ruler_level` of an `N_r`-electron ruler (lattice
/// `b0`) is degenerate with level `object_level` of an `N_o`-electron object (lattice `a0`).
pub fn crossing_ratio(object_electrons: u64, object_level: u32, ruler_electrons: u64, ruler_level: u32) -> Result<f64> {
    check_even(object_electrons)?;
    check_even(ruler_electrons)?;
    if object_level == 0 || ruler_level == 0 {
        return Err(Error::InvalidIndex(0));
    }
    Ok((object_level as f64 * ruler_electrons as f64) / (ruler_level as f64 * object_electrons as f64))
}

/// `a0/b0` above which the ruler's Fermi level lies above the object's lowest vacant level.
/// `(10, 4)` gives `6/5`.
pub fn fermi_matching_ratio(object_electrons: u64, ruler_electrons: u64) -> Result<f64> {
    crossing_ratio(
        object_electrons,
        (object_electrons / 2 + 1) as u32,
        ruler_electrons,
        (ruler_electrons / 2) as u32,
    )
}

/// `a0/b0` above which even the ruler's lowest level lies above the object's lowest
/// vacant level. `(10, 4)` gives `12/5`.
pub fn lowest_level_matching_ratio(object_electrons: u64, ruler_electrons: u64) -> Result<f64> {
    crossing_ratio(object_electrons, (object_electrons / 2 + 1) as u32, ruler_electrons, 1)
}

/// `a0/b0` above which the global ground state has an empty ruler: the ruler's lowest
/// level must clear the object level that its last pair would fill. `(10, 4)` gives `14/5`.
pub fn ground_state_evacuation_ratio(object_electrons: u64, ruler_electrons: u64) -> Result<f64> {
    crossing_ratio(
        object_electrons,
        ((object_electrons + ruler_electrons) / 2) as u32,
        ruler_electrons,
        1,
    )
}

/// How electrons move between ruler and object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransferPolicy {
    /// Keep the initial occupations.
    None,
    /// Move electrons two at a time while some hop lowers the energy.
    #[default]
    PairwiseGreedy,
    /// Move exactly one electron if a hop lowers the energy.
    SingleElectron,
}

/// Which half of a scenario to look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Object,
    Ruler,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementScenario {
    pub object: MaterialBox,
    pub ruler: MaterialBox,
    pub policy: TransferPolicy,
}

impl MeasurementScenario {
    pub fn new(object: MaterialBox, ruler: MaterialBox, policy: TransferPolicy) -> Self {
        Self { object, ruler, policy }
    }

    pub fn electrons(&self) -> u64 {
        self.object.electrons() + self.ruler.electrons()
    }

    pub fn total_energy(&self) -> f64 {
        self.object.total_energy() + self.ruler.total_energy()
    }

    /// `N_o a0 / (N_r b0)`: ratio of the box widths, unaffected by electron transfer.
    pub fn classical_ratio(&self) -> f64 {
        self.object.width() / self.ruler.width()
    }

    /// Ratio of the object's quantum length to the ruler's.
    pub fn quantum_ratio(&self) -> Result<QuantumRatio> {
        Ok(match (self.object.quantum_length()?, self.ruler.quantum_length()?) {
            (Some(o), Some(r)) => QuantumRatio::Defined(o / r),
            _ => QuantumRatio::NotDefined,
        })
    }

    pub fn subsystem(&self, which: Subsystem) -> &MaterialBox {
        match which {
            Subsystem::Object => &self.object,
            Subsystem::Ruler => &self.ruler,
        }
    }

    /// Lowest total energy reachable by any distribution of the electrons over both boxes.
    pub fn ground_state_energy(&self) -> f64 {
        let total = self.electrons() as usize;
        let depth = total / 2 + 1;
        let mut orbitals: Vec<f64> = (1..=depth as u32)
            .flat_map(|n| {
                let o = self.object.energy(n);
                let r = self.ruler.energy(n);
                [o, o, r, r]
            })
            .collect();
        orbitals.sort_by(f64::total_cmp);
        orbitals.iter().take(total).sum()
    }

    /// Lowest donor level of `from` lying strictly above the lowest vacancy of `to`.
    fn favourable_hop(from: &MaterialBox, to: &MaterialBox) -> Option<(u32, u32, f64)> {
        let acceptor = to.lowest_vacancy();
        let target = to.energy(acceptor);
        from.occupied_levels()
            .into_iter()
            .map(|(n, _)| n)
            .find(|&n| from.energy(n) > target)
            .map(|donor| (donor, acceptor, from.energy(donor) - target))
    }
}

/// Quantum length ratio, undefined once a box has lost all its electrons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuantumRatio {
    Defined(f64),
    NotDefined,
}

impl QuantumRatio {
    pub fn value(&self) -> Option<f64> {
        match self {
            QuantumRatio::Defined(v) => Some(*v),
            QuantumRatio::NotDefined => None,
        }
    }
}

impl fmt::Display for QuantumRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumRatio::Defined(v) => write!(f, "{v}"),
            QuantumRatio::NotDefined => f.write_str("N.D."),
        }
    }
}

/// Direction of a recorded electron hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    RulerToObject,
    ObjectToRuler,
}

/// One electron moving between the boxes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transfer {
    pub direction: Direction,
    pub donor_level: u32,
    pub acceptor_level: u32,
    /// Donor minus acceptor level energy.
    pub photon_energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub classical_ratio: f64,
    pub initial_quantum_ratio: QuantumRatio,
    pub quantum_ratio: QuantumRatio,
    /// Individual electrons moved, in order.
    pub transfers: Vec<Transfer>,
    pub relaxed: MeasurementScenario,
    pub initial_energy: f64,
    pub final_energy: f64,
    /// Whether the relaxed occupations reach the lowest energy available to the electrons.
    pub global_minimum: bool,
}

impl ScenarioReport {
    pub fn photon_energies(&self) -> Vec<f64> {
        self.transfers.iter().map(|t| t.photon_energy).collect()
    }

    pub fn object_electrons(&self) -> u64 {
        self.relaxed.object.electrons()
    }

    pub fn ruler_electrons(&self) -> u64 {
        self.relaxed.ruler.electrons()
    }
}

/// Lets electrons hop between ruler and object according to the scenario's policy.
///
/// Electrons leave the ruler if any ruler level lies above the object's lowest vacancy,
/// otherwise they leave the object. Each hop takes the lowest occupied donor level lying
/// strictly above the lowest vacant acceptor level, so every hop lowers the total energy
/// and the loop terminates. Hops back, or within one box, are not considered.
pub fn relax(scenario: &MeasurementScenario) -> Result<ScenarioReport> {
    let initial_quantum_ratio = scenario.quantum_ratio()?;
    let initial_energy = scenario.total_energy();
    let mut state = scenario.clone();
    let mut transfers = Vec::new();

    let batch: u8 = match scenario.policy {
        TransferPolicy::None => 0,
        TransferPolicy::PairwiseGreedy => 2,
        TransferPolicy::SingleElectron => 1,
    };
    // electrons flow one way only, out of whichever box first offers a favourable hop
    let direction = if MeasurementScenario::favourable_hop(&state.ruler, &state.object).is_some() {
        Direction::RulerToObject
    } else {
        Direction::ObjectToRuler
    };
    loop {
        if batch == 0 {
            break;
        }
        let hop = match direction {
            Direction::RulerToObject => MeasurementScenario::favourable_hop(&state.ruler, &state.object),
            Direction::ObjectToRuler => MeasurementScenario::favourable_hop(&state.object, &state.ruler),
        };
        let Some((donor, acceptor, photon_energy)) = hop else {
            break;
        };
        let (from, to) = match direction {
            Direction::RulerToObject => (&mut state.ruler, &mut state.object),
            Direction::ObjectToRuler => (&mut state.object, &mut state.ruler),
        };
        let moved = batch.min(from.occupation(donor)).min(2 - to.occupation(acceptor));
        from.remove(donor, moved);
        to.add(acceptor, moved);
        for _ in 0..moved {
            transfers.push(Transfer {
                direction,
                donor_level: donor,
                acceptor_level: acceptor,
                photon_energy,
            });
        }
        if scenario.policy == TransferPolicy::SingleElectron {
            break;
        }
    }

    let final_energy = state.total_energy();
    let minimum = state.ground_state_energy();
    Ok(ScenarioReport {
        classical_ratio: scenario.classical_ratio(),
        initial_quantum_ratio,
        quantum_ratio: state.quantum_ratio()?,
        transfers,
        global_minimum: (final_energy - minimum).abs() <= ENERGY_RTOL * minimum.abs(),
        relaxed: state,
        initial_energy,
        final_energy,
    })
}

/// Renormalized density of one subsystem: `(1/N_sub) sum occ_n |<x|n>|^2` across its box.
pub fn subsystem_density(scenario: &MeasurementScenario, which: Subsystem, grid_points: usize) -> Result<DensityProfile> {
    let part = scenario.subsystem(which);
    if part.electrons() == 0 {
        return Err(Error::EmptySubsystem);
    }
    electron_density(&BoxSystem::fixed(part.width())?, &part.filling_plan()?, grid_points)
}
