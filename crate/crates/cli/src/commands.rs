use std::f64::consts::PI;

use qlength::entangle::{self, MaterialBox, MeasurementScenario, QuantumRatio, TransferPolicy};
use qlength::manybody::{self, BoxSystem, FillingPlan};
use qlength::moments::{self, Density1D, RodSegment};
use qlength::oracle;
use qlength::ruler::{self, RulerSpec};
use qlength::units::UnitSystem;
use qlength::Statistics;

use crate::args::*;
use crate::output::{Cell, Table};

type Res<T> = qlength::Result<T>;

const RAW_MOMENT_NOTE: &str = "l1_raw_moment_coefficient = a*sqrt(1/3 - 1/(2 pi^2)) uses <1|x^2|1> where the \
ground-state variance belongs; it does not solve the self-consistency condition, which gives a*sqrt(1 - 6/pi^2)";

fn stats(s: Stats) -> Statistics {
    match s {
        Stats::Fermion => Statistics::Fermion,
        Stats::Boson => Statistics::Boson,
    }
}

fn policy(p: Policy) -> TransferPolicy {
    match p {
        Policy::None => TransferPolicy::None,
        Policy::Pairwise => TransferPolicy::PairwiseGreedy,
        Policy::Single => TransferPolicy::SingleElectron,
    }
}

fn ratio_cell(r: QuantumRatio) -> Cell {
    match r {
        QuantumRatio::Defined(v) => Cell::Num(v),
        QuantumRatio::NotDefined => Cell::Text("N.D.".into()),
    }
}

fn parse_segment(s: &str) -> Res<RodSegment> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| qlength::Error::InvalidParameter(format!("bad segment bound `{t}` in `{s}`")))
    };
    match parts.as_slice() {
        [a, b] => Ok(RodSegment::new(num(a)?, num(b)?, true)),
        [a, b, "empty"] => Ok(RodSegment::new(num(a)?, num(b)?, false)),
        _ => Err(qlength::Error::InvalidParameter(format!(
            "segment `{s}` is not `start:end` or `start:end:empty`"
        ))),
    }
}

pub fn length(a: &LengthArgs, u: &UnitSystem) -> Res<Table> {
    if a.system == LengthSystem::Segments {
        let segments = a.segments.iter().map(|s| parse_segment(s)).collect::<Res<Vec<_>>>()?;
        let lengths = moments::segment_lengths(&segments)?;
        let total = moments::nonuniform_rod_length(&segments)?;
        let mut t = Table::new(&["segment", "start", "end", "occupied", "length"]);
        for (i, (s, l)) in segments.iter().zip(&lengths).enumerate() {
            t.push(vec![
                (i as u64 + 1).into(),
                u.length(s.start).into(),
                u.length(s.end).into(),
                s.occupied.into(),
                u.length(*l).into(),
            ]);
        }
        t.push(vec!["total".into(), Cell::Empty, Cell::Empty, Cell::Empty, u.length(total).into()]);
        return Ok(t);
    }

    let densities: Vec<(Cell, f64, Density1D)> = match a.system {
        LengthSystem::Rod => vec![(Cell::Empty, a.x_hi - a.x_lo, Density1D::uniform_rod(a.x_lo, a.x_hi))],
        _ => a
            .n
            .iter()
            .map(|&n| (Cell::from(n), a.width, Density1D::box_eigenstate(a.width, n)))
            .collect(),
    };
    let mut t = Table::new(&["n", "method", "l2", "l4", "l2_over_width", "l4_over_width", "deficit_ratio"]);
    for (n, width, d) in densities {
        let mut reports = Vec::new();
        if a.method != LengthMethod::Quadrature {
            reports.push(("analytic", moments::length_l4(&d)?));
        }
        if a.method != LengthMethod::Analytic {
            reports.push(("quadrature", oracle::quadrature_lengths(&d)?));
        }
        for (method, r) in reports {
            let l4 = r.l4.expect("fourth-order report");
            let deficit = if (width - r.l2).abs() > 0.0 {
                Cell::Num((width - l4) / (width - r.l2))
            } else {
                Cell::Empty
            };
            t.push(vec![
                n.clone(),
                method.into(),
                u.length(r.l2).into(),
                u.length(l4).into(),
                (r.l2 / width).into(),
                (l4 / width).into(),
                deficit,
            ]);
            for note in r.notes {
                t.note(note);
            }
        }
    }
    Ok(t)
}

pub fn density(a: &DensityArgs, grid: usize, u: &UnitSystem) -> Res<Table> {
    let mut t = Table::new(&["series", "x", "x_over_a", "rho_a"]);
    let push_profile = |t: &mut Table, series: Cell, p: &manybody::DensityProfile| {
        for (x, v) in p.grid.iter().zip(&p.values) {
            t.push(vec![series.clone(), u.length(*x).into(), (x / a.width).into(), (v * a.width).into()]);
        }
    };
    let system = BoxSystem::fixed(a.width)?;
    match a.kind {
        DensityKind::Fermion => {
            for &n_max in &a.n_max {
                let plan = FillingPlan::fermion_ground_state(2 * n_max as u64)?;
                let p = manybody::electron_density(&system, &plan, grid)?;
                push_profile(&mut t, Cell::from(format!("n_max={n_max}")), &p);
            }
        }
        DensityKind::Boson => {
            let plan = FillingPlan::boson_ground_state(a.particles)?;
            let p = manybody::electron_density(&system, &plan, grid)?;
            push_profile(&mut t, Cell::from(format!("bosons={}", a.particles)), &p);
        }
        DensityKind::Mixture => {
            let shift = match a.shift {
                Some(s) => s,
                None => {
                    t.note("well spacing is the self-consistent L1");
                    ruler::self_consistent_segment_length(a.width, a.particles)?.l1_solved
                }
            };
            let p = ruler::entangled_segment_density(a.particles, a.width, shift, grid)?;
            push_profile(&mut t, Cell::from(format!("wells={}", a.particles)), &p);
        }
    }
    Ok(t)
}

pub fn fill(a: &FillArgs, u: &UnitSystem) -> Res<Table> {
    let system = BoxSystem::fixed(a.width)?;
    let mut t = Table::new(&["n", "length", "length_over_a", "asymptote", "deviation"]);
    for &n in &a.n {
        let (l, asym) = match a.statistics {
            Stats::Fermion => (
                manybody::fermion_length(&system, n)?,
                a.width * (1.0 - 2.0 / n as f64).max(0.0).sqrt(),
            ),
            Stats::Boson => (manybody::boson_length(a.width, n)?, a.width * (1.0 - 6.0 / (PI * PI)).sqrt()),
        };
        t.push(vec![
            n.into(),
            u.length(l).into(),
            (l / a.width).into(),
            u.length(asym).into(),
            u.length(l - asym).into(),
        ]);
    }
    if a.statistics == Stats::Fermion {
        t.note("asymptote = a*sqrt(1 - 2/N)");
    }
    Ok(t)
}

pub fn ruler(a: &RulerArgs, u: &UnitSystem) -> Res<Table> {
    if a.optimal {
        let o = ruler::optimal_ruling(a.n)?;
        let mut t = Table::new(&[
            "n",
            "closed_form",
            "r_star",
            "spacing",
            "ruler_length",
            "sweep_r",
            "sweep_residual",
        ]);
        t.push(vec![
            a.n.into(),
            o.closed_form.into(),
            o.r_star.into(),
            u.length(o.spacing * a.lattice).into(),
            u.length(a.n as f64 * a.lattice / 2.0).into(),
            o.sweep_r.into(),
            o.sweep_residual.into(),
        ]);
        t.note("r_star = round(sqrt(N)); sweep_r is the admissible ruling with the smallest |residual|");
        return Ok(t);
    }
    if a.sweep {
        if a.statistics == Stats::Boson {
            return Err(qlength::Error::InvalidParameter(
                "the precision residual is defined for fermion rulers".into(),
            ));
        }
        let mut t = Table::new(&["r", "residual"]);
        for r in ruler::admissible_rulings(a.n) {
            t.push(vec![r.into(), ruler::precision_condition_residual(a.n, r)?.into()]);
        }
        return Ok(t);
    }

    let segments = if a.segments.is_empty() {
        match a.statistics {
            Stats::Fermion => ruler::admissible_rulings(a.n),
            Stats::Boson => ruler::admissible_rulings(2 * a.n),
        }
    } else {
        a.segments.clone()
    };
    let mut t = Table::new(&[
        "r",
        "cells_per_segment",
        "per_segment",
        "total",
        "monolithic",
        "overestimate",
        "energy_monolithic",
        "energy_segmented",
        "energy_ratio",
        "residual",
    ]);
    for r in segments {
        let spec = RulerSpec {
            lattice: a.lattice,
            particles: a.n,
            segments: r,
            statistics: stats(a.statistics),
        };
        let l = ruler::segment_length(&spec)?;
        let e = ruler::cutting_energy(&spec)?;
        let residual = match a.statistics {
            Stats::Fermion => Some(ruler::precision_condition_residual(a.n, r)?),
            Stats::Boson => None,
        };
        t.push(vec![
            r.into(),
            spec.cells_per_segment()?.into(),
            u.length(l.per_segment).into(),
            u.length(l.total).into(),
            u.length(l.monolithic).into(),
            u.length(l.overestimate).into(),
            u.energy(e.monolithic).into(),
            u.energy(e.segmented).into(),
            e.ratio.into(),
            residual.into(),
        ]);
    }
    Ok(t)
}

pub fn parse_check(a: &ParseCheckArgs, u: &UnitSystem) -> Res<Table> {
    let mut t = Table::new(&[
        "n",
        "l1_solved",
        "l1_symbolic",
        "l1_raw_moment_coefficient",
        "coefficient_discrepancy",
        "n_times_l1",
        "total_length_direct",
        "iterations",
    ]);
    for &n in &a.n {
        let r = ruler::self_consistent_segment_length(a.width, n)?;
        if r.coefficient_discrepancy_flag {
            t.note(RAW_MOMENT_NOTE);
        }
        t.push(vec![
            n.into(),
            u.length(r.l1_solved).into(),
            u.length(r.l1_symbolic).into(),
            u.length(r.l1_raw_moment_coefficient).into(),
            r.coefficient_discrepancy_flag.into(),
            u.length(n as f64 * r.l1_solved).into(),
            u.length(r.total_length_direct).into(),
            r.iterations.into(),
        ]);
    }
    Ok(t)
}

const SCENARIO_COLUMNS: [&str; 12] = [
    "case",
    "lattice_ratio",
    "policy",
    "classical_ratio",
    "quantum_ratio_pre",
    "quantum_ratio_post",
    "object_electrons",
    "ruler_electrons",
    "transfers",
    "emitted_energy",
    "global_minimum",
    "energy_drop",
];

fn policy_name(p: TransferPolicy) -> &'static str {
    match p {
        TransferPolicy::None => "none",
        TransferPolicy::PairwiseGreedy => "pairwise",
        TransferPolicy::SingleElectron => "single",
    }
}

fn scenario_row(case: &str, s: &MeasurementScenario, u: &UnitSystem) -> Res<Vec<Cell>> {
    let r = entangle::relax(s)?;
    Ok(vec![
        case.into(),
        (s.object.lattice() / s.ruler.lattice()).into(),
        policy_name(s.policy).into(),
        r.classical_ratio.into(),
        ratio_cell(r.initial_quantum_ratio),
        ratio_cell(r.quantum_ratio),
        r.object_electrons().into(),
        r.ruler_electrons().into(),
        r.transfers.len().into(),
        u.energy(r.photon_energies().iter().sum()).into(),
        r.global_minimum.into(),
        u.energy(r.initial_energy - r.final_energy).into(),
    ])
}

pub fn entangle(a: &EntangleArgs, p: Policy, u: &UnitSystem) -> Res<Table> {
    let scenario = |object_lattice: f64, policy: TransferPolicy| -> Res<MeasurementScenario> {
        Ok(MeasurementScenario::new(
            MaterialBox::new(object_lattice, a.object_cells)?,
            MaterialBox::new(a.ruler_lattice, a.ruler_cells)?,
            policy,
        ))
    };
    if a.table {
        let no = 2 * a.object_cells;
        let nr = 2 * a.ruler_cells;
        let first = entangle::fermi_matching_ratio(no, nr)? * (1.0 + a.epsilon) * a.ruler_lattice;
        let second = entangle::lowest_level_matching_ratio(no, nr)? * (1.0 + a.epsilon) * a.ruler_lattice;
        let mut t = Table::new(&SCENARIO_COLUMNS);
        for (case, lattice, pol) in [
            ("a", first, TransferPolicy::None),
            ("b", first, TransferPolicy::PairwiseGreedy),
            ("c", second, TransferPolicy::None),
            ("d", second, TransferPolicy::PairwiseGreedy),
        ] {
            t.push(scenario_row(case, &scenario(lattice, pol)?, u)?);
        }
        t.note("cases a and c keep the initial occupations; b and d let ruler electrons fall into the object");
        t.note("case d empties the ruler, leaving its quantum length and the ratio undefined");
        return Ok(t);
    }
    let s = scenario(a.object_lattice, policy(p))?;
    if a.log {
        let r = entangle::relax(&s)?;
        let mut t = Table::new(&["step", "direction", "donor_level", "acceptor_level", "photon_energy"]);
        for (i, tr) in r.transfers.iter().enumerate() {
            let dir = match tr.direction {
                entangle::Direction::RulerToObject => "ruler_to_object",
                entangle::Direction::ObjectToRuler => "object_to_ruler",
            };
            t.push(vec![
                (i + 1).into(),
                dir.into(),
                tr.donor_level.into(),
                tr.acceptor_level.into(),
                u.energy(tr.photon_energy).into(),
            ]);
        }
        return Ok(t);
    }
    let mut t = Table::new(&SCENARIO_COLUMNS);
    let row = scenario_row("custom", &s, u)?;
    if row[10] == Cell::Bool(false) {
        t.note("the relaxed occupations are not the lowest-energy distribution of the electrons");
    }
    t.push(row);
    Ok(t)
}

pub fn oracle(c: &OracleCommand, u: &UnitSystem) -> Res<Table> {
    match c {
        OracleCommand::Zeta(a) => {
            let mut t = Table::new(&["m", "partial_sum", "tail"]);
            for &m in &a.m {
                t.push(vec![m.into(), oracle::partial_zeta2(m).into(), oracle::series::zeta2_tail(m).into()]);
            }
            Ok(t)
        }
        OracleCommand::Quadrature(a) => {
            let d = match a.system {
                QuadratureSystem::Box => Density1D::box_eigenstate(a.width, a.n),
                QuadratureSystem::Rod => Density1D::uniform_rod(0.0, a.width),
                QuadratureSystem::Mixture => Density1D::shifted_wells(a.width, a.shift, a.count),
            };
            let q = oracle::quadrature_lengths(&d)?;
            let c = moments::length_l4(&d)?;
            let mut t = Table::new(&["quantity", "quadrature", "closed_form", "difference"]);
            for (name, x, y) in [
                ("l2", q.l2, c.l2),
                ("l4", q.l4.unwrap_or(f64::NAN), c.l4.unwrap_or(f64::NAN)),
            ] {
                t.push(vec![name.into(), u.length(x).into(), u.length(y).into(), u.length(x - y).into()]);
            }
            Ok(t)
        }
        OracleCommand::Grid(a) => {
            let s = stats(a.statistics);
            let spread = oracle::brute_force_spread(&a.levels, a.width, s, a.intervals)?;
            let mut levels: Vec<(u32, u32)> = Vec::new();
            for &l in &a.levels {
                match levels.iter_mut().find(|(n, _)| *n == l) {
                    Some((_, occ)) => *occ += 1,
                    None => levels.push((l, 1)),
                }
            }
            // the closed form needs the plan the grid state describes
            let plan = FillingPlan::new(s, levels)?;
            let closed = manybody::many_body_spread(&plan, &BoxSystem::fixed(a.width)?)?;
            let mut t = Table::new(&["levels", "intervals", "grid_spread", "closed_form", "difference"]);
            let label = a.levels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
            t.push(vec![
                label.into(),
                a.intervals.into(),
                (spread * u.length(1.0).powi(2)).into(),
                (closed * u.length(1.0).powi(2)).into(),
                ((spread - closed) * u.length(1.0).powi(2)).into(),
            ]);
            t.note("spreads are <x^2> - <x>^2 of particle one, in length units squared");
            Ok(t)
        }
        OracleCommand::SignChange(a) => {
            let rulings = ruler::admissible_rulings(a.n);
            let r = oracle::find_sign_change_among(
                |r| ruler::precision_condition_residual(a.n, r).unwrap_or(f64::NAN),
                rulings,
            )?;
            let mut t = Table::new(&["n", "r", "residual", "sqrt_n"]);
            t.push(vec![
                a.n.into(),
                r.into(),
                ruler::precision_condition_residual(a.n, r)?.into(),
                (a.n as f64).sqrt().into(),
            ]);
            Ok(t)
        }
    }
}
