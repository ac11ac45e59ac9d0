use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use circle_torsion::report::{run_suite, sweep, sweep_csv, sweep_json, t2_report, Suite};
use circle_torsion::torsion::QuadratureSpec;
use circle_torsion::Error;

const EXIT_USAGE: u8 = 2;
const EXIT_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "circle-torsion",
    version,
    about = "Torsion forms of flat circle bundles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct QuadArgs {
    /// k-space truncation radius K and number of dual terms M
    #[arg(long, default_value_t = 64)]
    modes: usize,
    /// crossover between the k-space and dual branches
    #[arg(long, default_value_t = 1.0 / (2.0 * std::f64::consts::PI))]
    t_star: f64,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[arg(long, default_value_t = 257)]
    quad_nodes: usize,
}

impl QuadArgs {
    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            t_star: self.t_star,
            nodes: self.quad_nodes,
            rel_tol: self.rel_tol,
            modes: self.modes,
            dual_terms: self.modes,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate t_alpha(a) and T0(a)
    T2 {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 1)]
        alpha: i64,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tabulate the torsion invariants over a range of holonomies
    Sweep {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        alpha: i64,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidHolonomy(_)
            | Error::InvalidArgument(_)
            | Error::DimensionMismatch { .. }
            | Error::ModeOutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

fn write(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::T2 {
            a,
            alpha,
            quad,
            json,
        } => {
            if alpha < 1 {
                return Err(Failure::Usage(format!(
                    "alpha must be at least 1, got {alpha}"
                )));
            }
            let spec = quad.spec();
            let report = t2_report(a, alpha, &spec)?;
            let values = &report["values"];
            println!("t_alpha = {}i", values["t_alpha_im"]);
            println!("T0      = {}", values["T0"]);
            if let Some(p) = json {
                write(&p, &pretty(&report))?;
            }
            let failed: Vec<String> = report["checks"]
                .as_array()
                .into_iter()
                .flatten()
                .filter(|c| c["pass"] != json!(true))
                .map(|c| c["name"].as_str().unwrap_or("?").to_string())
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Failed(format!(
                    "failing checks: {}",
                    failed.join(", ")
                )))
            }
        }
        Command::Verify { suite, seed, json } => {
            let suite: Suite = suite
                .parse()
                .map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let report = run_suite(suite, seed)?;
            for c in &report.checks {
                println!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            }
            if let Some(p) = json {
                write(&p, &report.to_canonical_string())?;
            }
            let failed = report.failures();
            if failed.is_empty() {
                println!("{} checks passed", report.checks.len());
                Ok(())
            } else {
                Err(Failure::Failed(format!(
                    "failing checks: {}",
                    failed.join(", ")
                )))
            }
        }
        Command::Sweep {
            from,
            to,
            steps,
            alpha,
            quad,
            csv,
            json,
        } => {
            let spec = quad.spec();
            let rows = sweep(from, to, steps, alpha, &spec)?;
            let text = sweep_csv(&rows);
            match &csv {
                Some(p) => write(p, &text)?,
                None => print!("{text}"),
            }
            if let Some(p) = json {
                write(&p, &pretty(&sweep_json(&rows, alpha, &spec)))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Ok(n) = std::env::var("CIRCLE_TORSION_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("error: CIRCLE_TORSION_THREADS must be a positive integer");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Failed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}
