use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use frobcell::algebra::{dual_bases, validate_algebra};
use frobcell::builtin;
use frobcell::cellular::{cell_module, validate_cellular, CellularAlgebra, Flavor};
use frobcell::io::{parse_spec, to_json, LoadedSpec};
use frobcell::projectivity::{gaschutz_oracle, splitting_oracle};
use frobcell::report::{render_human, render_identities, run_report, ReportOptions, EXIT_PARSE, EXIT_VALIDATION};
use frobcell::{Field, FieldKind, Fp, Rational};

#[derive(Parser)]
#[command(name = "frobcell", version, about = "Exact checks for Frobenius cellular algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra and cellular axioms.
    Validate { file: PathBuf },
    /// Run the full pipeline and print the report.
    Report {
        file: PathBuf,
        /// JSON output.
        #[arg(long, conflicts_with = "human")]
        machine: bool,
        /// Text output (default).
        #[arg(long)]
        human: bool,
    },
    /// Print the identity suites.
    Identities { file: PathBuf },
    /// Emit a built-in fixture: koenig-xi, dual-numbers or matrix.
    Builtin {
        name: String,
        /// `lambda=<scalar>`, `n=<size>`, `p=<prime>` (default field Q).
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, String)>,
        /// Write to a file instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run both projectivity oracles on one cell module.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        cell: String,
        #[arg(long, value_enum, default_value = "C")]
        flavor: FlavorArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    #[value(name = "C")]
    C,
    #[value(name = "d")]
    D,
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush());
}

fn fail(code: i32, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code as u8)
}

fn load(path: &Path) -> Result<LoadedSpec, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn validate<F: Field>(ca: &CellularAlgebra<F>) -> ExitCode {
    let alg = validate_algebra(&ca.algebra);
    let mut passed = alg.passed();
    let mut lines = vec![("algebra", alg)];
    if passed {
        let cell = validate_cellular(&ca.algebra, &ca.datum);
        passed = cell.passed();
        lines.push(("cellular", cell));
    }
    for (name, r) in &lines {
        let checked: Vec<String> = r.checked.iter().map(|a| a.to_string()).collect();
        out(&format!("{name}: {} [{}]\n", if r.passed() { "pass" } else { "FAIL" }, checked.join(", ")));
        for f in &r.failures {
            out(&format!("  {}: {} ({})\n", f.axiom, f.witness, f.detail));
        }
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VALIDATION as u8)
    }
}

fn oracle<F: Field>(ca: &CellularAlgebra<F>, label: &str, flavor: Flavor) -> ExitCode {
    let Some(cell) = ca.datum.find(label) else {
        return fail(EXIT_PARSE, format!("unknown cell {label:?}"));
    };
    let report = validate_algebra(&ca.algebra);
    let cellular = validate_cellular(&ca.algebra, &ca.datum);
    if let Some(f) = report.failures.first().or(cellular.failures.first()) {
        return fail(EXIT_VALIDATION, format!("{}: {} ({})", f.axiom, f.witness, f.detail));
    }
    let db = match dual_bases(&ca.algebra) {
        Ok(db) => db,
        Err(e) => return fail(EXIT_VALIDATION, e),
    };
    let module = match cell_module(&ca.algebra, &ca.datum, cell, flavor) {
        Ok(m) => m,
        Err(e) => return fail(3, e),
    };
    let g = gaschutz_oracle(&ca.algebra, &db, &module.rep);
    let s = splitting_oracle(&ca.algebra, &module.rep);
    out(&format!("W_{flavor}({label}) of dimension {}\n", module.dim()));
    out(&format!("averaging oracle: {}\n", if g { "projective" } else { "not projective" }));
    out(&format!("splitting oracle: {}\n", if s { "projective" } else { "not projective" }));
    if g == s {
        ExitCode::SUCCESS
    } else {
        fail(3, "oracles disagree")
    }
}

fn report_code(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

macro_rules! with_spec {
    ($spec:expr, $ca:ident => $body:expr) => {
        match $spec {
            LoadedSpec::Rational($ca) => $body,
            LoadedSpec::Prime($ca) => $body,
        }
    };
}

fn builtin_json(name: &str, params: &[(String, String)]) -> Result<String, String> {
    let prime = params.iter().rev().find(|(k, _)| k == "p").map(|(_, v)| v.clone());
    let rest: Vec<_> = params.iter().filter(|(k, _)| k != "p").cloned().collect();
    match prime {
        None => builtin::by_name::<Rational>(&FieldKind::Rational, name, &rest).map(|ca| to_json(&ca)),
        Some(p) => {
            let p: u64 = p.parse().map_err(|e| format!("p = {p:?}: {e}"))?;
            let kind = FieldKind::prime(p).map_err(|e| e.to_string())?;
            builtin::by_name::<Fp>(&kind, name, &rest).map(|ca| to_json(&ca))
        }
    }
    .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { file } => match load(&file) {
            Ok(spec) => with_spec!(spec, ca => validate(&ca)),
            Err(code) => code,
        },
        Command::Report { file, machine, .. } => match load(&file) {
            Ok(spec) => with_spec!(spec, ca => {
                let report = run_report(&ca, &ReportOptions::default());
                if machine {
                    out(&(report.to_json() + "\n"));
                } else {
                    out(&render_human(&report));
                }
                report_code(report.exit_code)
            }),
            Err(code) => code,
        },
        Command::Identities { file } => match load(&file) {
            Ok(spec) => with_spec!(spec, ca => {
                let report = run_report(&ca, &ReportOptions::default());
                out(&render_identities(&report));
                if let Some(e) = &report.error {
                    out(&format!("error [{}]: {}\n", e.class, e.message));
                }
                report_code(report.exit_code)
            }),
            Err(code) => code,
        },
        Command::Builtin { name, params, emit } => match builtin_json(&name, &params) {
            Ok(json) => match emit {
                Some(path) => match std::fs::write(&path, json + "\n") {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => fail(EXIT_PARSE, format!("{}: {e}", path.display())),
                },
                None => {
                    out(&format!("{json}\n"));
                    ExitCode::SUCCESS
                }
            },
            Err(e) => fail(EXIT_PARSE, e),
        },
        Command::Oracle { file, cell, flavor } => match load(&file) {
            Ok(spec) => {
                let flavor = match flavor {
                    FlavorArg::C => Flavor::Cell,
                    FlavorArg::D => Flavor::Dual,
                };
                with_spec!(spec, ca => oracle(&ca, &cell, flavor))
            }
            Err(code) => code,
        },
    }
}
