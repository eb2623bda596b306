//! Command-line front end: argument types, dispatch and exit codes.

pub mod commands;
pub mod report;

use clap::{Parser, Subcommand, ValueEnum};
use report::Report;
use std::path::PathBuf;
use toric_gw::{parse_class, BaseTable, Error, GwQuery};

#[derive(Parser, Debug)]
#[command(name = "toric-gw", version, about = "Permutohedral toric models and GW class reduction")]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random classes per randomized check.
    #[arg(long, global = true, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct a fan and print rays, cones and f-vector.
    Build {
        #[arg(value_enum)]
        model: BuildModel,
    },
    /// Run a named consistency check.
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
    /// Apply a coefficient map to a class.
    Transform {
        #[arg(value_enum)]
        rule: TransformRule,
        /// Class spec, e.g. "P3(k=6): d=3; a=1,1,1,1,1,1".
        class: String,
    },
    /// Reduce a stationary query to the base table.
    Reduce {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Number of point insertions.
        #[arg(long, default_value_t = 0)]
        points: usize,
        /// Base table file; the built-in table when omitted.
        #[arg(long)]
        table: Option<PathBuf>,
        class: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildModel {
    P3,
    Cube,
    PermP3,
    PermCube,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Iso,
    CubeCremona,
    BasisChange,
    Nef,
    Involutions,
    VdimTransport,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformRule {
    CremonaP3,
    CremonaCube,
    BasisChange,
    P3ToCube,
    CubePointInvolution,
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

/// Exit status for a library error: 2 for input problems, 1 otherwise.
pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Table { .. } | Error::BasisModelMismatch(_) | Error::InvalidModel(_) => 2,
        _ => 1,
    }
}

fn verify(check: Check, seed: u64, trials: usize) -> toric_gw::Result<Report> {
    use commands::*;
    match check {
        Check::Iso => verify_iso(),
        Check::CubeCremona => verify_cube_cremona(),
        Check::BasisChange => verify_basis_change(seed, trials),
        Check::Nef => verify_nef(),
        Check::Involutions => verify_involutions(seed, trials),
        Check::VdimTransport => verify_vdim_transport(seed, trials),
        Check::All => {
            let mut r = Report::new("verify all");
            for c in [Check::Iso, Check::CubeCremona, Check::BasisChange, Check::Nef, Check::Involutions, Check::VdimTransport] {
                let sub = verify(c, seed, trials)?;
                r.passed &= sub.passed;
                r.set(&value_name(c), serde_json::Value::Object(sub.body));
            }
            Ok(r.finish())
        }
    }
}

/// Runs `cli` and returns the report.
pub fn execute(cli: &Cli) -> toric_gw::Result<Report> {
    match &cli.command {
        Command::Build { model } => Ok(commands::build(&value_name(*model))),
        Command::Verify { check } => verify(*check, cli.seed, cli.trials),
        Command::Transform { rule, class } => commands::transform(&value_name(*rule), &parse_class(class)?),
        Command::Reduce { genus, points, table, class } => {
            let table = match table {
                Some(p) => BaseTable::from_file(p)?,
                None => BaseTable::builtin(),
            };
            let q = GwQuery::new(*genus, parse_class(class)?, *points);
            commands::reduce(&q, &table)
        }
    }
}

/// Rendered output (stdout or stderr text) and exit status.
pub fn run(cli: &Cli) -> (String, u8, bool) {
    match execute(cli) {
        Ok(r) => {
            let text = match cli.format {
                Format::Text => r.to_text(),
                Format::Json => r.to_json(),
            };
            (text, if r.passed { 0 } else { 1 }, true)
        }
        Err(e) => (format!("error: {e}\n"), error_code(&e), false),
    }
}
