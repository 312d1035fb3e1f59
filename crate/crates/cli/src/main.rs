use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use infocausal::composition::{is_effect, is_state, popt_membership, CompositionRule, PoptVerdict};
use infocausal::game::{play_ic_game, Composite, GameReport, Polytope};
use infocausal::scenarios::{builtin_registry, find_scenario, run_all, ScenarioReport};
use infocausal::schema::{parse_check_document, parse_game_document, GameDocument};
use infocausal::{Error, Settings, DEFAULT_GRID_DENSITY, DEFAULT_TOL};

// A closed stdout (e.g. piped into `head`) is not an error.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "infocausal", version, about = "Information-causality games over composite and polygon systems")]
struct Cli {
    /// Absolute tolerance for every approximate comparison.
    #[arg(long, global = true, env = "INFOCAUSAL_TOLERANCE", default_value_t = DEFAULT_TOL)]
    tolerance: f64,

    /// Grid points per angle on each Bloch sphere for POPT searches.
    #[arg(long, global = true, env = "INFOCAUSAL_GRID_DENSITY", default_value_t = DEFAULT_GRID_DENSITY)]
    grid_density: usize,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, env = "INFOCAUSAL_SEED", default_value_t = Settings::default().seed)]
    seed: u64,

    #[arg(long, global = true, env = "INFOCAUSAL_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Include wall-clock times in scenario reports.
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List registered scenarios.
    List,
    /// Run one scenario, or all of them.
    Run {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Check an operator or play a strategy read from a JSON file.
    Check {
        #[arg(value_enum)]
        mode: CheckMode,
        file: PathBuf,
        /// Composition rule for effect and state checks; overrides the file.
        #[arg(long, value_parser = parse_rule)]
        rule: Option<CompositionRule>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Popt,
    Effect,
    State,
    Game,
}

fn parse_rule(s: &str) -> Result<CompositionRule, String> {
    s.parse::<CompositionRule>().map_err(|e| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    let settings = Settings {
        tol: cli.tolerance,
        grid_density: cli.grid_density,
        seed: cli.seed,
    };
    settings.validate()?;
    match &cli.command {
        Command::List => {
            for s in builtin_registry() {
                out!("{:<22} {}", s.name, s.anchor);
            }
            Ok(())
        }
        Command::Run { name: Some(name), .. } => {
            let report = find_scenario(name)?.run(&settings)?;
            emit_reports(cli, vec![report], false)
        }
        Command::Run { name: None, .. } => {
            let mut reports = Vec::new();
            for (_, r) in run_all(&settings) {
                reports.push(r?);
            }
            emit_reports(cli, reports, true)
        }
        Command::Check { mode, file, rule } => {
            let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            check(cli, &settings, *mode, &text, *rule)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn emit_reports(cli: &Cli, mut reports: Vec<ScenarioReport>, as_array: bool) -> Result<(), Failure> {
    if !cli.timings {
        for r in &mut reports {
            r.wall_time_ms = None;
        }
    }
    match cli.format {
        Format::Json if as_array => out!("{}", to_json(&reports)),
        Format::Json => out!("{}", to_json(&reports[0])),
        Format::Csv => {
            out!("{}", ScenarioReport::CSV_HEADER);
            for r in &reports {
                out!("{}", r.csv_row());
            }
        }
    }
    let mut failed = false;
    for r in &reports {
        for c in r.failures() {
            failed = true;
            eprintln!(
                "{}: {} expected {:?} {} (tolerance {}), got {}",
                r.scenario, c.name, c.relation, c.expected, c.tolerance, c.actual
            );
        }
    }
    if failed {
        Err(Failure {
            code: EXIT_FAIL,
            message: String::new(),
        })
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct PoptReport<'a> {
    mode: &'static str,
    #[serde(flatten)]
    verdict: &'a PoptVerdict,
}

#[derive(Serialize)]
struct MembershipReport {
    mode: &'static str,
    rule: CompositionRule,
    valid: bool,
    trace: f64,
    min_eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    complement_min_eigenvalue: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    popt_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complement_popt_min: Option<f64>,
    certificate: bool,
}

#[derive(Serialize)]
struct GameOutput<'a> {
    mode: &'static str,
    theory: String,
    #[serde(flatten)]
    report: &'a GameReport,
}

fn check(cli: &Cli, settings: &Settings, mode: CheckMode, text: &str, rule: Option<CompositionRule>) -> Result<(), Failure> {
    match mode {
        CheckMode::Popt => {
            let doc = parse_check_document(text)?;
            let v = popt_membership(&doc.operator, settings.grid_density, settings.tol)?;
            match cli.format {
                Format::Json => out!("{}", to_json(&PoptReport { mode: "popt", verdict: &v })),
                Format::Csv => out!("mode,member,min_value\npopt,{},{:e}", v.member, v.min_value),
            }
        }
        CheckMode::Effect | CheckMode::State => {
            let doc = parse_check_document(text)?;
            let rule = rule.or(doc.rule).unwrap_or(CompositionRule::Quantum);
            let op = doc.certified();
            let is_eff = mode == CheckMode::Effect;
            let valid = if is_eff {
                is_effect(&op, rule, settings)?
            } else {
                is_state(&op, rule, settings)?
            };
            let w = &op.operator;
            let popt = |x| -> Result<f64, Error> { Ok(popt_membership(x, settings.grid_density, settings.tol)?.min_value) };
            let needs_popt = w.dim() == 4 && (is_eff && rule == CompositionRule::Minimal || !is_eff && rule == CompositionRule::Maximal);
            let report = MembershipReport {
                mode: if is_eff { "effect" } else { "state" },
                rule,
                valid,
                trace: w.trace(),
                min_eigenvalue: w.min_eigenvalue(),
                complement_min_eigenvalue: is_eff.then(|| w.complement().min_eigenvalue()),
                popt_min: if needs_popt { Some(popt(w)?) } else { None },
                complement_popt_min: if needs_popt && is_eff { Some(popt(&w.complement())?) } else { None },
                certificate: op.certificate.is_some(),
            };
            match cli.format {
                Format::Json => out!("{}", to_json(&report)),
                Format::Csv => out!(
                    "mode,rule,valid,min_eigenvalue\n{},{},{},{:e}",
                    report.mode,
                    rule.name(),
                    valid,
                    report.min_eigenvalue
                ),
            }
        }
        CheckMode::Game => {
            let (theory, report) = match parse_game_document(text)? {
                GameDocument::Composite { rule, strategy } => {
                    let t = Composite::new(rule, *settings);
                    (format!("{} composition", rule.name()), play_ic_game(&strategy, &t)?)
                }
                GameDocument::Polytope { system, strategy } => {
                    let name = system.name().to_string();
                    (name, play_ic_game(&strategy, &Polytope::new(system, settings.tol))?)
                }
            };
            match cli.format {
                Format::Json => out!(
                    "{}",
                    to_json(&GameOutput {
                        mode: "game",
                        theory,
                        report: &report
                    })
                ),
                Format::Csv => out!("{}\n{}", GameReport::CSV_HEADER, report.csv_row()),
            }
        }
    }
    Ok(())
}
