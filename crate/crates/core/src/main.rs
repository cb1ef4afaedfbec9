use clap::{Parser, Subcommand};
use monoid_rep::error::MonoidError;
use monoid_rep::io::{self, InputFormat};
use monoid_rep::monoid_core::DEFAULT_CAP;
use monoid_rep::quiver::{quiver, Analysis, QuiverMode};
use monoid_rep::report;
use serde_json::Value;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

/// Representation-theoretic invariants of finite monoids.
#[derive(Parser)]
#[command(name = "monoid-rep", version, about)]
struct Cli {
    /// Input format: cayley | gens | dfa
    #[arg(long, global = true, default_value = "cayley")]
    format: String,
    /// Run oracle cross-checks and include their verdicts in the report
    #[arg(long, global = true)]
    verify: bool,
    /// Seed for the randomized cross-checks (recorded in the report)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Enumeration cap for generator and DFA inputs
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Green's relations, classification flags and sandwich verdicts
    Check {
        /// Input path; stdin when omitted or `-`
        input: Option<PathBuf>,
    },
    /// Quiver of the rational monoid algebra
    Quiver {
        input: Option<PathBuf>,
        /// auto | aperiodic-er | block-group | general-er
        #[arg(long, default_value = "auto")]
        mode: String,
        /// Write DOT here (`-` for stdout) in addition to the JSON report
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Encode multiplicities by repeating edges in the DOT output
        #[arg(long)]
        repeat_edges: bool,
    },
    /// Sandwich matrices of regular J-classes
    Sandwich {
        input: Option<PathBuf>,
        /// Restrict to one J-class id
        #[arg(long)]
        jclass: Option<usize>,
    },
    /// Projective indecomposable modules
    Projectives {
        input: Option<PathBuf>,
        /// Restrict to one idempotent
        #[arg(long)]
        idempotent: Option<usize>,
    },
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn exit_code_for(e: &MonoidError) -> u8 {
    match e {
        MonoidError::ParseError { .. }
        | MonoidError::NotAssociative { .. }
        | MonoidError::NotIdentity { .. }
        | MonoidError::IndexOutOfRange { .. }
        | MonoidError::DegreeMismatch { .. }
        | MonoidError::SizeCapExceeded { .. } => 1,
        _ => 2,
    }
}

type RunOk = (Value, Option<(Option<PathBuf>, String)>);
type RunErr = (MonoidError, Option<Value>);

fn run(cli: &Cli) -> Result<RunOk, RunErr> {
    let format = InputFormat::parse(&cli.format).ok_or_else(|| {
        (
            MonoidError::ParseError {
                line: 0,
                col: 0,
                msg: format!("unknown format `{}`", cli.format),
            },
            None,
        )
    })?;
    let input_path = match &cli.command {
        Command::Check { input }
        | Command::Quiver { input, .. }
        | Command::Sandwich { input, .. }
        | Command::Projectives { input, .. } => input,
    };
    let text = read_input(input_path).map_err(|e| {
        (
            MonoidError::ParseError {
                line: 0,
                col: 0,
                msg: format!("cannot read input: {e}"),
            },
            None,
        )
    })?;
    let digest = report::input_digest(&text);
    let m = io::parse_input(&text, format, cli.cap).map_err(|e| (e, None))?;
    let an = Analysis::new(m).map_err(|e| (e, None))?;
    let mut base = report::base_report(&an, &digest, cli.seed).map_err(|e| (e, None))?;
    if cli.verify {
        base["oracle"] = report::oracle_section(&an, cli.seed.unwrap_or(0));
    }
    let with_base = |e: MonoidError, base: &Value| (e, Some(base.clone()));
    let mut dot_out = None;
    match &cli.command {
        Command::Check { .. } => {}
        Command::Quiver {
            mode,
            dot,
            repeat_edges,
            ..
        } => {
            let mode = QuiverMode::parse(mode).ok_or_else(|| {
                (
                    MonoidError::ParseError {
                        line: 0,
                        col: 0,
                        msg: format!("unknown quiver mode `{mode}`"),
                    },
                    None,
                )
            })?;
            let q = quiver(&an, mode).map_err(|e| with_base(e, &base))?;
            base["quiver"] = report::quiver_value(&q);
            if let Some(path) = dot {
                let text = report::quiver_dot_with(&q, *repeat_edges);
                dot_out = Some((
                    if path.as_os_str() == "-" {
                        None
                    } else {
                        Some(path.clone())
                    },
                    text,
                ));
            }
        }
        Command::Sandwich { jclass, .. } => {
            let s = report::sandwich_section(&an, *jclass).map_err(|e| with_base(e, &base))?;
            base["sandwich"] = s;
        }
        Command::Projectives { idempotent, .. } => {
            let p =
                report::projectives_section(&an, *idempotent).map_err(|e| with_base(e, &base))?;
            base["projectives"] = p;
        }
    }
    Ok((base, dot_out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, dot_out)) => {
            print!("{}", report::to_json_string(&value));
            if let Some((path, text)) = dot_out {
                match path {
                    Some(p) => {
                        if let Err(e) = std::fs::write(&p, text) {
                            eprintln!("error: cannot write DOT to {}: {e}", p.display());
                            return ExitCode::from(1);
                        }
                    }
                    None => print!("{text}"),
                }
            }
            ExitCode::SUCCESS
        }
        Err((err, partial)) => {
            let code = exit_code_for(&err);
            if let Some(mut value) = partial {
                // hypothesis failures still emit the base report
                value["error"] = Value::String(err.to_string());
                print!("{}", report::to_json_string(&value));
            }
            eprintln!("error: {err}");
            ExitCode::from(code)
        }
    }
}
