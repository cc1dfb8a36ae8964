//! Command-line front end: validate definition files, run the full check
//! pipeline, print bundled examples, and show the computation conventions.
//!
//! Exit codes: 0 success/pass, 2 definition parse error, 3 structure axiom
//! or normality failure, 4 theorem failure, 1 anything else.

use clap::{Parser, Subcommand, ValueEnum};
use paracurv::manifest::{self, ManifestError, ManifoldDefinition};
use paracurv::pipeline::{self, RunOptions, CONVENTIONS};
use paracurv::theorems::Verdict;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "paracurv", version, about = "Curvature and structure checks for almost paracontact metric 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a definition file without running checks
    Validate {
        /// Path to a definition file, or a bundled example name
        input: String,
    },
    /// Run the full check pipeline on a definition
    Run {
        /// Path to a definition file, or a bundled example name
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Sampling seed (defaults to PARACURV_SEED, then the file's seed)
        #[arg(long)]
        seed: Option<u64>,
        /// Sample points per run
        #[arg(long)]
        samples: Option<usize>,
        /// Residual tolerance for structure checks
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Print a bundled example definition
    Example {
        /// One of the bundled names; omit to list them
        name: Option<String>,
    },
    /// Print the sign and trace conventions used by every computation
    Conventions,
}

fn load_input(input: &str) -> Result<ManifoldDefinition, ManifestError> {
    if let Some(text) = manifest::bundled(input) {
        return manifest::parse_str(text);
    }
    manifest::load(input)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { input } => match load_input(&input) {
            Ok(d) => {
                println!(
                    "{}: valid ({}-dimensional chart [{}], structure {})",
                    d.name,
                    d.chart.dim(),
                    d.chart.names().join(", "),
                    if d.has_structure() { "present" } else { "absent" }
                );
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Run {
            input,
            format,
            seed,
            samples,
            tol,
        } => {
            let defn = match load_input(&input) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let env_seed = std::env::var("PARACURV_SEED")
                .ok()
                .and_then(|s| s.parse::<u64>().ok());
            let options = RunOptions {
                seed: seed.or(env_seed),
                samples,
                tol,
            };
            let report = match pipeline::run(&defn, &options) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error running {}: {e}", defn.name);
                    return ExitCode::FAILURE;
                }
            };
            match format {
                Format::Text => print!("{}", pipeline::render_text(&report)),
                Format::Json => println!("{}", pipeline::render_json(&report)),
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                let structure_failed = report
                    .axioms
                    .as_ref()
                    .is_some_and(|v| v.iter().any(|c| !c.passed))
                    || report.normality.as_ref().is_some_and(|c| !c.passed);
                if structure_failed {
                    ExitCode::from(3)
                } else if report.theorems.iter().any(|t| t.verdict == Verdict::Failed) {
                    ExitCode::from(4)
                } else {
                    ExitCode::FAILURE
                }
            }
        }
        Command::Example { name } => match name {
            None => {
                for n in manifest::bundled_names() {
                    println!("{n}");
                }
                ExitCode::SUCCESS
            }
            Some(name) => match manifest::bundled(&name) {
                Some(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                None => {
                    eprintln!(
                        "error: no bundled example {name:?}; available: {}",
                        manifest::bundled_names().join(", ")
                    );
                    ExitCode::from(2)
                }
            },
        },
        Command::Conventions => {
            println!("curvature:   {}", CONVENTIONS.curvature_sign);
            println!("ricci:       {}", CONVENTIONS.ricci_trace);
            println!("d_eta:       {}", CONVENTIONS.d_eta);
            println!("alpha/beta:  {}", CONVENTIONS.structure_functions);
            ExitCode::SUCCESS
        }
    }
}
