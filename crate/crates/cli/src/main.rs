use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use scx::compute::{compute, ComputeOptions, ComputeReport, Method};
use scx::spec::{parse_spec, parse_spec_file, ManifoldSpec};
use scx::suites::{self, Suite, VerifyConfig};
use scx::table::{comparison_table, write_csv};
use scx::{exit, sig6, CliError};
use scx_core::spectral::{SolveOptions, DEFAULT_GRID, DEFAULT_TOL};

#[derive(Parser)]
#[command(name = "scx", version, about = "Stabilized scalar curvature of model manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Full-precision JSON instead of text
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// RFC 4180 CSV instead of text
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sc⋊ of one or more manifolds, e.g. `ball:n=8,r=1`
    Compute {
        specs: Vec<String>,
        /// One spec per line, `#` starts a comment
        #[arg(long)]
        file: Option<String>,
        #[arg(long, value_enum, default_value = "eigensolve")]
        method: Method,
        #[arg(long, env = "SCX_GRID", default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = 0.25)]
        beta: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Trial count for the variational method
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Balls against hemispheres for n = 2, 3, 4, 8 (CSV unless --json)
    Table {
        #[arg(long, env = "SCX_GRID", default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Run a verification suite; exit code 4 if any check fails
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, env = "SCX_GRID", default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[command(flatten)]
        out: Output,
    },
}

fn load_specs(specs: &[String], file: Option<&str>) -> Result<Vec<ManifoldSpec>, CliError> {
    let mut out = Vec::new();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        })?;
        out.extend(parse_spec_file(&text).map_err(|(line, source)| CliError::SpecFile { line, source })?);
    }
    for s in specs {
        out.push(parse_spec(s)?);
    }
    if out.is_empty() {
        return Err(CliError::Usage("no manifold given; pass a spec or --file".into()));
    }
    Ok(out)
}

fn print_reports(reports: &[ComputeReport], out: Output) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    if out.json {
        serde_json::to_writer_pretty(stdout.lock(), reports)?;
        println!();
    } else if out.csv {
        let mut w = csv::Writer::from_writer(stdout.lock());
        w.write_record(["manifold", "method", "sc_stab", "lambda1", "beta", "grid", "certificate"])?;
        for r in reports {
            let opt = |v: Option<String>| v.unwrap_or_default();
            w.write_record([
                r.manifold.clone(),
                r.method.name().to_string(),
                r.sc_stab.to_string(),
                r.lambda1.to_string(),
                r.beta.to_string(),
                opt(r.grid.map(|g| g.to_string())),
                opt(r.certificate.map(|c| c.to_string())),
            ])?;
        }
        w.flush().map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?;
    } else {
        for r in reports {
            println!("{}", r.text());
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Compute {
            specs,
            file,
            method,
            grid,
            beta,
            tol,
            trials,
            seed,
            out,
        } => {
            let opts = ComputeOptions {
                grid,
                beta,
                tol,
                trials,
                seed,
            };
            let reports = load_specs(&specs, file.as_deref())?
                .iter()
                .map(|s| compute(s, method, &opts))
                .collect::<Result<Vec<_>, _>>()?;
            print_reports(&reports, out)?;
            Ok(exit::OK)
        }
        Command::Table { grid, tol, out } => {
            let rows = comparison_table(&SolveOptions { grid, tol })?;
            if out.json {
                serde_json::to_writer_pretty(std::io::stdout().lock(), &rows)?;
                println!();
            } else if out.csv {
                write_csv(&rows, std::io::stdout().lock())?;
            } else {
                let opt = |v: Option<f64>| v.map(sig6).unwrap_or_else(|| "-".into());
                println!("n  ball_closed  ball_eig  ball_printed  ball_dev  hemi_closed  hemi_eig  hemi_printed  hemi_dev");
                for r in &rows {
                    println!(
                        "{}  {}  {}  {}  {}  {}  {}  {}  {}",
                        r.n,
                        sig6(r.ball_closed_form),
                        sig6(r.ball_eigensolve),
                        opt(r.ball_printed),
                        opt(r.ball_deviation),
                        sig6(r.hemisphere_closed_form),
                        sig6(r.hemisphere_eigensolve),
                        sig6(r.hemisphere_printed),
                        sig6(r.hemisphere_deviation)
                    );
                }
            }
            Ok(exit::OK)
        }
        Command::Verify { suite, seed, grid, out } => {
            let checks = suites::run(suite, &VerifyConfig { seed, grid })?;
            if out.json {
                serde_json::to_writer_pretty(std::io::stdout().lock(), &checks)?;
                println!();
            } else if out.csv {
                let mut w = csv::Writer::from_writer(std::io::stdout().lock());
                for c in &checks {
                    w.serialize(c)?;
                }
                w.flush().map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
            } else {
                for c in &checks {
                    println!("{}", c.text());
                }
                let failed = checks.iter().filter(|c| !c.passed).count();
                println!("{} checks, {failed} failed", checks.len());
            }
            Ok(if checks.iter().all(|c| c.passed) {
                exit::OK
            } else {
                exit::VERIFICATION
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
