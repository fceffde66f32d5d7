//! Scenario runner CLI: executes scenario files, parameter sweeps, and
//! one-off valuation queries, printing exact arithmetic only.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 internal invariant
//! violation (oracle disagreement or sweep counterexample).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ramtower::parse::{parse_element, ParsedExpr};
use ramtower::scenario::{self, ScenarioError, SweepConfig};
use ramtower::tower::{value_of_polynomial, value_of_rational_function, BaseField, Tower};

#[derive(Parser)]
#[command(
    name = "ramtower",
    version,
    about = "Exact ramification data for radical extension towers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and print its report.
    Run {
        /// Path to the scenario JSON file.
        file: PathBuf,
        /// Output format.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Cross-check reported data against the brute-force oracles.
        #[arg(long)]
        self_check: bool,
    },
    /// Enumerate tame/other tower pairs and confront the elimination
    /// criterion with the direct value-group verdict.
    Sweep {
        /// Residue characteristics to sweep (1 means characteristic zero).
        #[arg(long, value_delimiter = ',', default_values_t = vec![1u64, 3, 5, 7])]
        residue_chars: Vec<u64>,
        /// Largest order for the tame tower's generator.
        #[arg(long, default_value_t = 4)]
        max_order_tame: u64,
        /// Largest order for the second tower's generator.
        #[arg(long, default_value_t = 6)]
        max_order_other: u64,
        /// Monomial exponents for the tame tower's generator.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1i64, 2])]
        exponents_tame: Vec<i64>,
        /// Monomial exponents for the second tower's generator.
        #[arg(long, value_delimiter = ',', default_values_t = vec![-2i64, -1, 1, 2], allow_hyphen_values = true)]
        exponents_other: Vec<i64>,
        /// Output format.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate the valuation of an expression over a bare base field.
    /// The base is written residue:variables, e.g. "Q:X,Y" or "GF(3):t".
    Value {
        /// Base field, e.g. "GF(3):t".
        base_spec: String,
        /// Expression: an element, a polynomial, or a polynomial quotient.
        expr: String,
    },
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            file,
            format,
            self_check,
        } => {
            let report = match scenario::run_scenario_path(&file, self_check) {
                Ok(r) => r,
                Err(ScenarioError::SelfCheck(msg)) => {
                    eprintln!("self-check failed: {msg}");
                    return Ok(ExitCode::from(2));
                }
                Err(e) => return Err(e.to_string()),
            };
            match format {
                Format::Text => print!("{}", report.text),
                Format::Structured => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report.structured).expect("serializable")
                    )
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            residue_chars,
            max_order_tame,
            max_order_other,
            exponents_tame,
            exponents_other,
            format,
        } => {
            if let Some(bad) = residue_chars
                .iter()
                .find(|&&p| p != 1 && !ramtower::residue::is_prime(p))
            {
                return Err(format!(
                    "residue characteristic {bad} is neither 1 nor prime"
                ));
            }
            let config = SweepConfig {
                residue_chars,
                max_order_tame,
                max_order_other,
                exponents_tame,
                exponents_other,
            };
            let summary = scenario::run_sweep(&config);
            match format {
                Format::Text => print!("{}", summary.text()),
                Format::Structured => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&summary.structured()).expect("serializable")
                    )
                }
            }
            if summary.clean() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
        Command::Value { base_spec, expr } => {
            let (residue_spec, vars) = base_spec.split_once(':').ok_or_else(|| {
                format!("base spec {base_spec:?} must look like \"GF(3):t\" or \"Q:X,Y\"")
            })?;
            let residue = scenario::parse_residue_spec(residue_spec).map_err(|e| e.to_string())?;
            let variables: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).collect();
            let base = BaseField::new(residue, variables).map_err(|e| e.to_string())?;
            let tower = Tower::new(base.clone());
            let parsed = parse_element(&expr, &tower).map_err(|e| e.to_string())?;
            let rendered = match parsed {
                ParsedExpr::Element(e) => {
                    let v = tower.value_of(&e).map_err(|e| e.to_string())?;
                    ramtower::tower::vector_string(&v)
                }
                ParsedExpr::Polynomial(p) => value_of_polynomial(&base, &p)
                    .map_err(|e| e.to_string())?
                    .to_string(),
                ParsedExpr::Quotient(n, d) => value_of_rational_function(&base, &n, &d)
                    .map_err(|e| e.to_string())?
                    .to_string(),
            };
            println!("value={rendered}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
