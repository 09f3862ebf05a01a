use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qsk_core::acms::AlmostContactMetricStructure;
use qsk_core::calculus::Orientation;
use qsk_core::catalog::{catalog_entries, find_entry, run_catalog_verification};
use qsk_core::classify::{Monodromy, SeifertData};
use qsk_core::report::{
    betti_report, catalog_run_report, cohomology_report, deform_report, monodromy_report,
    seifert_report, verify_report, Report,
};
use qsk_core::structure_file::{parse_structure_file, StructureFile};

mod render;

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "qsk", version, about = "Exact checks for invariant almost contact metric structures")]
struct Cli {
    /// Print the full JSON report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a structure and check Reeb invariance and the anti-quasi-Sasakian condition.
    Verify { file: PathBuf },
    /// Decompose d eta = r Omega + d alpha and deform eta.
    Deform {
        file: PathBuf,
        /// Orientation used by the Hodge star.
        #[arg(long, default_value = "+", value_parser = parse_orientation)]
        orientation: Orientation,
    },
    /// Invariant basic cohomology of the Reeb foliation.
    Cohomology { file: PathBuf },
    /// Decide which closed 3-manifolds admit quasi-Sasakian structures.
    Classify {
        #[command(subcommand)]
        what: ClassifyCommand,
    },
    /// Model structures with hand-derived expectations.
    Catalog {
        #[command(subcommand)]
        action: Option<CatalogCommand>,
    },
}

#[derive(Subcommand)]
enum ClassifyCommand {
    /// Torus-bundle monodromy [[a, b], [c, d]] in SL(2, Z).
    #[command(allow_negative_numbers = true)]
    Monodromy { a: i64, b: i64, c: i64, d: i64 },
    /// Seifert data as inline JSON or a file (Seifert data or an annotated structure file).
    Seifert {
        input: String,
        /// First Betti number, checked against the Seifert verdict.
        #[arg(long)]
        b1: Option<u64>,
    },
    /// Decide the branch from the first Betti number.
    Betti { n: u64 },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Run,
    Show { name: String },
}

fn parse_orientation(s: &str) -> Result<Orientation, String> {
    match s {
        "+" | "positive" => Ok(Orientation::Positive),
        "-" | "negative" => Ok(Orientation::Negative),
        _ => Err(format!("expected + or -, found `{s}`")),
    }
}

struct Failure(String);

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(StructureFile, AlmostContactMetricStructure), Failure> {
    let text = read(path)?;
    let file = parse_structure_file(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let s = file.structure().map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Ok((file, s))
}

fn load_seifert(input: &str, b1: Option<u64>) -> Result<(SeifertData, Option<u64>), Failure> {
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        read(Path::new(input))?
    };
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure(format!("Seifert input: {e}")))?;
    if value.get("seifert").is_some() {
        let file = parse_structure_file(&text).map_err(|e| Failure(format!("Seifert input: {e}")))?;
        let data = file.seifert.expect("checked above");
        Ok((data, b1.or(file.b1)))
    } else {
        let data = serde_json::from_value(value).map_err(|e| Failure(format!("Seifert input: {e}")))?;
        Ok((data, b1))
    }
}

/// Output text and exit code for a parsed command line.
fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let emit = |report: &Report, ok: bool| {
        let text = if cli.json {
            report.to_json()
        } else {
            render::summary(report)
        };
        (text, if ok { EXIT_OK } else { EXIT_FAILED })
    };
    Ok(match cli.command {
        Command::Verify { file } => {
            let (f, s) = load(&file)?;
            let (report, ok) = verify_report(f.name, &s);
            emit(&report, ok)
        }
        Command::Deform { file, orientation } => {
            let (f, s) = load(&file)?;
            let (report, ok) = deform_report(f.name, &s, orientation);
            emit(&report, ok)
        }
        Command::Cohomology { file } => {
            let (f, s) = load(&file)?;
            let (report, ok) = cohomology_report(f.name, &s);
            emit(&report, ok)
        }
        Command::Classify { what } => match what {
            ClassifyCommand::Monodromy { a, b, c, d } => {
                let m = Monodromy::new(a, b, c, d).map_err(|e| Failure(e.to_string()))?;
                emit(&monodromy_report(&m), true)
            }
            ClassifyCommand::Seifert { input, b1 } => {
                let (data, b1) = load_seifert(&input, b1)?;
                let report = seifert_report(&data, b1).map_err(|e| Failure(e.to_string()))?;
                emit(&report, true)
            }
            ClassifyCommand::Betti { n } => emit(&betti_report(n), true),
        },
        Command::Catalog { action } => match action.unwrap_or(CatalogCommand::List) {
            CatalogCommand::List => {
                let entries = catalog_entries();
                let text = if cli.json {
                    let names: Vec<&str> = entries.iter().map(|e| e.name).collect();
                    serde_json::to_string_pretty(&names).expect("names serialize") + "\n"
                } else {
                    render::catalog_list(&entries)
                };
                (text, EXIT_OK)
            }
            CatalogCommand::Run => {
                let (report, ok) = catalog_run_report(run_catalog_verification());
                emit(&report, ok)
            }
            CatalogCommand::Show { name } => {
                let entry =
                    find_entry(&name).ok_or_else(|| Failure(format!("no catalog entry named `{name}`")))?;
                let text = if cli.json {
                    entry.source.to_string()
                } else {
                    render::catalog_entry(&entry)
                };
                (text, EXIT_OK)
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::from(code)
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
