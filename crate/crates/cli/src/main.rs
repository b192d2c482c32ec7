mod args;
mod commands;
mod report;

use std::ffi::OsString;
use std::process::ExitCode;

use bernstein_core::prelude::{DoubleDouble, Octuple, Real};
use bernstein_core::{Error, PrecisionConfig};
use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Map, Value};

use args::Cli;
use report::{Report, Table};

const INVALID: u8 = 1;
const NUMERICAL: u8 = 2;

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

fn run(argv: impl IntoIterator<Item = OsString>) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => INVALID,
            };
        }
    };
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return INVALID;
    }
    let cfg = match PrecisionConfig::new(cli.bits) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return INVALID;
        }
    };
    if cli.bits <= DoubleDouble::MANTISSA_BITS {
        execute::<DoubleDouble>(&cli, &cfg)
    } else {
        if cli.bits > Octuple::MANTISSA_BITS {
            eprintln!(
                "note: {} bits requested, computing with the {}-bit octuple significand",
                cli.bits,
                Octuple::MANTISSA_BITS
            );
        }
        execute::<Octuple>(&cli, &cfg)
    }
}

fn code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) | Error::Pole(_) | Error::CutViolation { .. } | Error::PrecisionBudget { .. } => INVALID,
        _ => NUMERICAL,
    }
}

fn input_echo(cli: &Cli) -> Map<String, Value> {
    let mut m = match serde_json::to_value(&cli.command) {
        Ok(Value::Object(m)) => m,
        _ => Map::new(),
    };
    m.insert("bits".into(), json!(cli.bits));
    m.insert("jobs".into(), json!(cli.jobs));
    m
}

fn execute<T: Real>(cli: &Cli, cfg: &PrecisionConfig) -> u8 {
    let command = cli.command.name();
    let (report, status) = match commands::run::<T>(&cli.command, cfg, cli.jobs) {
        Ok(body) => {
            let status = if body.failure.is_some() { NUMERICAL } else { 0 };
            let rep =
                Report { command, input: input_echo(cli), result: body.result, table: body.table, error: body.failure };
            (rep, status)
        }
        Err(e) if code(&e) == INVALID => {
            eprintln!("error: {e}");
            if let Error::PrecisionBudget { required_bits, .. } = e {
                eprintln!("hint: rerun with --bits {}", (2 * required_bits).max(cfg.mantissa_bits + 1));
            }
            return INVALID;
        }
        Err(e) => {
            let mut table = Table::new(&["error"]);
            table.push(vec![e.to_string()]);
            let rep =
                Report { command, input: input_echo(cli), result: Value::Null, table, error: Some(e.to_string()) };
            (rep, NUMERICAL)
        }
    };
    if let Some(msg) = &report.error {
        eprintln!("error: {msg}");
    }
    let dest = report::destination(cli.output.as_deref(), &cli.out_dir, command, cli.format);
    match report::write(&report, T::NAME, cfg.bits::<T>(), cli.format, &dest) {
        Ok(Some(path)) => println!("{}", path.display()),
        Ok(None) => {}
        Err(msg) => {
            eprintln!("error: {msg}");
            return INVALID;
        }
    }
    status
}
