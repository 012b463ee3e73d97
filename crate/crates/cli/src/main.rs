use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use schouten_cli::commands::{self, exit, CliError, Options};
use schouten_cli::input::InputDocument;
use schouten_core::classify::MetricVariant;
use schouten_core::constraints::{FamilyParams, Strategy};
use schouten_core::scalar::FieldScalar;

#[derive(Parser)]
#[command(name = "schouten", version, about = "Exact curvature and Segre classification of metric Lie algebras")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Tolerance of the floating-point Segre cross-check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Reduction-step budget for Groebner computations.
    #[arg(long, global = true, default_value_t = 100_000)]
    gb_budget: usize,
    /// Include wall-clock time in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    SignFlipped,
    SameSign,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solve {
    LinearThenGb,
    GbOnly,
}

#[derive(Subcommand)]
enum Command {
    /// Full curvature report for an input file (`-` reads stdin).
    Analyze { file: String },
    /// The four-parameter family with a complex Ricci pair.
    Family {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        delta: i8,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        eps1: i8,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        eps2: i8,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        eps3: i8,
        #[arg(long, value_enum, default_value_t = Variant::SignFlipped)]
        metric_variant: Variant,
    },
    /// Dump the constraint system of a canonical (g, r) pair.
    GenSystem {
        #[arg(long)]
        segre: String,
        /// Four signs, comma separated.
        #[arg(long, default_value = "1,1,1,1", allow_hyphen_values = true)]
        signs: String,
        #[arg(long, value_enum, default_value_t = Variant::SignFlipped)]
        metric_variant: Variant,
        /// Also run the solver.
        #[arg(long, value_enum)]
        solve: Option<Solve>,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<String>,
    },
    /// Check SW = -(n-3) div W and the SW = 0 criterion.
    CheckIdentities { file: String },
}

fn parse_error(message: impl Into<String>) -> CliError {
    CliError { code: exit::PARSE, message: message.into() }
}

fn read_doc(path: &str) -> Result<InputDocument, CliError> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| parse_error(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| parse_error(format!("{path}: {e}")))?
    };
    Ok(InputDocument::parse(&text)?)
}

fn variant(v: Variant) -> MetricVariant {
    match v {
        Variant::SignFlipped => MetricVariant::SignFlipped,
        Variant::SameSign => MetricVariant::SameSign,
    }
}

fn run(cli: Cli) -> Result<(String, i32), CliError> {
    let opts = Options { tolerance: cli.tolerance, gb_budget: cli.gb_budget, timing: cli.timing };
    let render = |r: schouten_cli::report::AnalysisReport| match cli.format {
        Format::Text => r.to_text(),
        Format::Json => r.to_json(),
    };
    match cli.command {
        Command::Analyze { file } => Ok((render(commands::analyze(&read_doc(&file)?, &opts)?), exit::OK)),
        Command::Family { a, delta, eps1, eps2, eps3, metric_variant } => {
            let a: FieldScalar = a.parse().map_err(|e| parse_error(format!("--a: {e}")))?;
            if !a.is_rational() {
                return Err(parse_error("--a must be rational"));
            }
            let p = FamilyParams { a, delta, eps1, eps2, eps3, variant: variant(metric_variant) };
            Ok((render(commands::family(&p, &opts)?), exit::OK))
        }
        Command::GenSystem { segre, signs, metric_variant, solve, output } => {
            let parsed: Vec<i8> = signs
                .split(',')
                .map(|s| s.trim().parse::<i8>())
                .collect::<Result<_, _>>()
                .map_err(|_| parse_error(format!("--signs: cannot parse `{signs}`")))?;
            let signs: [i8; 4] = parsed.try_into().map_err(|_| parse_error("--signs needs four entries"))?;
            let strategy = solve.map(|s| match s {
                Solve::LinearThenGb => Strategy::LinearThenGb,
                Solve::GbOnly => Strategy::GbOnly,
            });
            let dump = commands::gen_system(&segre, signs, variant(metric_variant), strategy, &opts)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, dump).map_err(|e| parse_error(format!("{path}: {e}")))?;
                    Ok((String::new(), exit::OK))
                }
                None => Ok((dump, exit::OK)),
            }
        }
        Command::CheckIdentities { file } => {
            let doc = read_doc(&file)?;
            let rep = commands::analyze(&doc, &opts)?;
            let ok = rep.identities.pass();
            let text = match cli.format {
                Format::Text => schouten_cli::report::identity_lines(&rep.identities),
                Format::Json => {
                    let v = json!({
                        "schema": schouten_cli::report::SCHEMA,
                        "sw_div_weyl": rep.identities.sw_div_weyl,
                        "sw_zero_iff_symmetric_nabla_ricci": rep.identities.sw_zero_iff_symmetric_nabla_ricci,
                        "pass": ok,
                    });
                    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
                }
            };
            Ok((text, if ok { exit::OK } else { exit::CHECK_FAILED }))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
