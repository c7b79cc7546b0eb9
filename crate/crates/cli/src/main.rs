use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use leibniz_core::inner::{inner_bider_pairs_in, inner_derivation_space, Convention, InnerSpaces};
use leibniz_core::parse::parse_algebra_named;
use leibniz_core::report::{render, Format, InnerReport};
use leibniz_core::solver::{solve, SpaceKind};
use leibniz_core::table::cmd_table;
use leibniz_core::{catalog, Algebra, Error, Rational};

/// Derivations, antiderivations and biderivations of algebras given by structure constants.
///
/// Every <SRC> is either a bracket-table file or a catalog entry such as
/// `catalog:L7` or `catalog:L20(2/3)`.
#[derive(Parser, Debug)]
#[command(name = "leibniz", version)]
struct Cli {
    /// Output format: text, json or latex.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Leibniz identity on every basis triple.
    Check { src: String },
    /// Compute a derivation-type space and its general element.
    Solve {
        #[arg(long, value_parser = parse_space)]
        space: SpaceKind,
        src: String,
    },
    /// Descending series L^1, L^2, ... and nilpotency.
    Series { src: String },
    /// Inner derivations and inner-biderivation candidates.
    Inner {
        src: String,
        /// Only report this convention (default: all four).
        #[arg(long, value_parser = parse_convention)]
        convention: Option<Convention>,
    },
    /// Recompute one of the three classification tables and compare.
    Table {
        /// 1 = Der, 2 = AntiDer, 3 = BiDer.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Comma-separated parameter samples for the α families.
        #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
        alpha_samples: Vec<Rational>,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_space(s: &str) -> Result<SpaceKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

const EXIT_INVALID: u8 = 1;
const EXIT_TABLE_MISMATCH: u8 = 2;

fn load(src: &str) -> Result<Algebra, String> {
    if let Some(spec) = src.strip_prefix("catalog:") {
        return catalog::get_spec(spec).map_err(|e| e.to_string());
    }
    let text = fs::read_to_string(src).map_err(|e| format!("{src}: {e}"))?;
    let name = std::path::Path::new(src)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(src);
    parse_algebra_named(&text, name).map_err(|e| format!("{src}: {e}"))
}

fn run(cli: Cli) -> Result<u8, String> {
    let format = cli.format;
    match cli.command {
        Command::Check { src } => {
            let report = load(&src)?.check_leibniz();
            print!("{}", render(&report, format));
            Ok(if report.holds { 0 } else { EXIT_INVALID })
        }
        Command::Solve { space, src } => {
            let a = load(&src)?;
            print!("{}", render(&solve(&a, space), format));
            Ok(0)
        }
        Command::Series { src } => {
            print!("{}", render(&load(&src)?.lower_central_series(), format));
            Ok(0)
        }
        Command::Inner { src, convention } => {
            let a = load(&src)?;
            if !a.check_leibniz().holds {
                return Err(format!("{src}: not a Leibniz algebra"));
            }
            let spaces = InnerSpaces::compute(&a);
            let conventions = match convention {
                Some(c) => vec![c],
                None => Convention::ALL.to_vec(),
            };
            let report = InnerReport {
                derivations: inner_derivation_space(&a),
                pairs: conventions
                    .into_iter()
                    .map(|c| inner_bider_pairs_in(&a, c, &spaces))
                    .collect(),
            };
            print!("{}", render(&report, format));
            Ok(0)
        }
        Command::Table {
            which,
            alpha_samples,
        } => {
            let report = cmd_table(which, &alpha_samples).map_err(|e| e.to_string())?;
            print!("{}", render(&report, format));
            if report.all_accepted() {
                Ok(0)
            } else {
                for r in report.undocumented() {
                    eprintln!(
                        "undocumented mismatch: {} computed {} (cross-check {}), printed {}",
                        r.name(),
                        r.computed_dim,
                        r.oracle_dim,
                        r.printed_dim
                    );
                }
                Ok(EXIT_TABLE_MISMATCH)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INVALID);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
