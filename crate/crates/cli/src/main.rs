//! Command line front end: typecheck, evaluate, verify, and draw process
//! terms.
//!
//! Exit codes: 0 on success (and all laws or verifications passing), 1 when
//! a law, function, or verification check fails, 2 on usage, parse, or type
//! errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use causal_core::laws::{report, run_law_suite, LawConfig};
use causal_core::{
    build_self_confirming, eval, function_check, parse_probes, parse_rational, parse_term,
    render, serialize, specialize, steer, verify_self_confirming, Code, Error, Event,
    Fuel, ParamModel, SteeringMap, Term,
};

#[derive(Parser)]
#[command(name = "causal", about = "Causal process calculus tool")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Interpreter unfolding budget.
    #[arg(long, global = true, value_name = "N",
          default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,

    /// Verification tolerance, an exact rational such as 1/1024.
    #[arg(long, global = true, value_name = "P/Q", default_value = "0")]
    epsilon: String,

    /// Probe events, a parenthesized list such as "(0 (pair 1 0) unit)".
    #[arg(long, global = true, value_name = "EVENTS")]
    probes: Option<String>,

    /// Seed for the law suite RNG.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the signature of a term.
    Typecheck { file: PathBuf },
    /// Print the kernel of a term as a transition table.
    Eval { file: PathBuf },
    /// Run the algebraic law suite over seeded random terms.
    CheckLaws,
    /// Decide whether a term denotes a total deterministic function.
    IsFunction { file: PathBuf },
    /// Fix the leading input of a program to the single probe event.
    Specialize { file: PathBuf },
    /// Reparametrize a model by a steering function.
    Steer { model: PathBuf, map: PathBuf },
    /// Build and verify the self-confirming model of a process.
    Fixpoint { file: PathBuf },
    /// Draw a term as an ASCII string diagram.
    Render { file: PathBuf },
}

/// Output text plus process exit code.
type Outcome = Result<(String, u8), (String, u8)>;

fn fail(e: Error) -> (String, u8) {
    let code = match e {
        Error::NotAFunction(_) => 1,
        _ => 2,
    };
    (e.to_string(), code)
}

fn read(path: &PathBuf) -> Result<String, (String, u8)> {
    fs::read_to_string(path).map_err(|e| (format!("cannot read {}: {e}", path.display()), 2))
}

fn read_term(path: &PathBuf) -> Result<Term, (String, u8)> {
    parse_term(&read(path)?).map_err(fail)
}

fn probes(cli: &Cli) -> Result<Option<Vec<Event>>, (String, u8)> {
    match &cli.probes {
        None => Ok(None),
        Some(text) => parse_probes(text).map(Some).map_err(fail),
    }
}

fn run(cli: &Cli) -> Outcome {
    let fuel = Fuel(cli.fuel);
    match &cli.command {
        Command::Typecheck { file } => {
            let (dom, cod) = read_term(file)?.typecheck().map_err(fail)?;
            Ok((format!("dom: {dom}\ncod: {cod}\n"), 0))
        }
        Command::Eval { file } => {
            let term = read_term(file)?;
            let kernel = eval(&term, fuel).map_err(fail)?;
            let probes = probes(cli)?;
            let dump = kernel.dump(probes.as_deref()).map_err(fail)?;
            Ok((dump, 0))
        }
        Command::CheckLaws => {
            let cfg = LawConfig { seed: cli.seed, fuel, samples: 40 };
            let run = run_law_suite(&cfg);
            let text = report(&cfg, &run);
            Ok((text, if run.all_pass() { 0 } else { 1 }))
        }
        Command::IsFunction { file } => {
            let term = read_term(file)?;
            let kernel = eval(&term, fuel).map_err(fail)?;
            let probes = probes(cli)?;
            let check = function_check(&kernel, probes.as_deref()).map_err(fail)?;
            let text = if check.is_function() {
                "function: yes\n".to_string()
            } else {
                let mut failed = Vec::new();
                if !check.total {
                    failed.push("not total");
                }
                if !check.single_valued {
                    failed.push("not single-valued");
                }
                format!("function: no ({})\n", failed.join(", "))
            };
            Ok((text, if check.is_function() { 0 } else { 1 }))
        }
        Command::Specialize { file } => {
            let text = read(file)?;
            let probes = probes(cli)?.unwrap_or_default();
            let [x] = probes.as_slice() else {
                return Err((
                    "specialize needs exactly one probe event, e.g. --probes \"(1)\"".into(),
                    2,
                ));
            };
            let residual = specialize(&Code::new(text), x).map_err(fail)?;
            Ok((format!("{residual}\n"), 0))
        }
        Command::Steer { model, map } => {
            let model = ParamModel::new(read_term(model)?).map_err(fail)?;
            let map = SteeringMap::new(read_term(map)?, fuel).map_err(fail)?;
            let steered = steer(&model, &map).map_err(fail)?;
            let code = serialize(steered.term()).map_err(fail)?;
            Ok((format!("{code}\n"), 0))
        }
        Command::Fixpoint { file } => {
            let text = read(file)?;
            let epsilon = parse_rational(&cli.epsilon).map_err(fail)?;
            let fx = build_self_confirming(&Code::new(text)).map_err(fail)?;
            let report = verify_self_confirming(&fx, fuel, &epsilon).map_err(fail)?;
            let verdict = if report.pass { "PASS" } else { "FAIL" };
            let text = format!(
                "q: {}\nG: {}\ngamma: {}\n{}verification: {verdict} (fuel {}, epsilon {epsilon})\n",
                fx.q,
                fx.g,
                fx.gamma,
                report.table(),
                cli.fuel,
            );
            Ok((text, if report.pass { 0 } else { 1 }))
        }
        Command::Render { file } => {
            let term = read_term(file)?;
            Ok((render(&term).map_err(fail)?, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err((message, code)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
