mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use qlength::units::UnitSystem;
use serde_json::{json, Value};

use args::{Cli, Command, OracleCommand, Units};
use output::{OutputEnvelope, UnitsEcho};

fn unit_system(cli: &Cli) -> UnitSystem {
    match (cli.global.units, cli.global.a0_meters) {
        (Units::Natural, _) => UnitSystem::Natural,
        (Units::Si, Some(a0)) => UnitSystem::si(a0).unwrap_or_else(|e| {
            Cli::command()
                .error(clap::error::ErrorKind::InvalidValue, e.to_string())
                .exit()
        }),
        (Units::Si, None) => Cli::command()
            .error(
                clap::error::ErrorKind::MissingRequiredArgument,
                "--units si needs --a0-meters",
            )
            .exit(),
    }
}

fn echo<T: serde::Serialize>(cli: &Cli, args: &T) -> Value {
    json!({ "global": cli.global, "command": args })
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let u = unit_system(cli);
    let g = &cli.global;
    let (name, params, table) = match &cli.command {
        Command::Length(a) => ("length", echo(cli, a), commands::length(a, &u)?),
        Command::Density(a) => ("density", echo(cli, a), commands::density(a, g.grid, &u)?),
        Command::Fill(a) => ("fill", echo(cli, a), commands::fill(a, &u)?),
        Command::Ruler(a) => ("ruler", echo(cli, a), commands::ruler(a, &u)?),
        Command::ParseCheck(a) => ("parse-check", echo(cli, a), commands::parse_check(a, &u)?),
        Command::Entangle(a) => ("entangle", echo(cli, a), commands::entangle(a, g.policy, &u)?),
        Command::Oracle(c) => {
            let (name, params) = match c {
                OracleCommand::Zeta(a) => ("oracle zeta", echo(cli, a)),
                OracleCommand::Quadrature(a) => ("oracle quadrature", echo(cli, a)),
                OracleCommand::Grid(a) => ("oracle grid", echo(cli, a)),
                OracleCommand::SignChange(a) => ("oracle sign-change", echo(cli, a)),
            };
            (name, params, commands::oracle(c, &u)?)
        }
    };
    let units = UnitsEcho {
        system: match u {
            UnitSystem::Natural => "natural".into(),
            UnitSystem::Si { .. } => "si".into(),
        },
        a0_meters: match u {
            UnitSystem::Natural => None,
            UnitSystem::Si { a0_meters, .. } => Some(a0_meters),
        },
        length: u.length_unit().into(),
        energy: u.energy_unit().into(),
    };
    let envelope = OutputEnvelope::new(name, params, units, &table);
    let bytes = output::render(g.format, &envelope, &table)?;
    output::emit(&bytes, g.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = match e.downcast_ref::<qlength::Error>() {
                Some(err) => err.code(),
                None if e.downcast_ref::<std::io::Error>().is_some() => "Io",
                None => "Internal",
            };
            eprintln!("{}", json!({ "error": { "code": code, "message": e.to_string() } }));
            ExitCode::from(1)
        }
    }
}
