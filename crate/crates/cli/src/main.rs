//! `mlsep`: reproduce the zero study of `E_{alpha,beta}(-z^alpha)`, run
//! sweeps, and check separation envelopes on the problem registry.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod figures;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mlsep::bounds::Condition;
use mlsep::fode::{self, linear_closed_form, SolverOptions};
use mlsep::ml::MlAccuracy;
use mlsep::registry;
use mlsep::reproduce;
use mlsep::zeros::{alpha_grid, sweep, Beta, NewtonOptions};

use crate::config::{DemoConfig, RhsSpec, SolveConfig};
use crate::figures::Figure;
use crate::output::{num, Table};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, configuration or output location (exit 2).
    Usage(String),
    /// Computation failed or a tolerance check did not pass (exit 1).
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 1,
        }
    }
}

const AFTER_HELP: &str = "\
Output files go to $MLSEP_OUT if set, else to the config's out_dir, else ./out.
CSV files have a header row and 17 significant digits.
Exit codes: 0 success, 1 numerical or tolerance failure, 2 usage error.";

#[derive(Parser)]
#[command(name = "mlsep", version, about = "Zeros of Mittag-Leffler functions and separation of fractional ODE solutions", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write <name>.csv and a gnuplot script <name>.gp for one figure
    Figure {
        #[arg(value_enum)]
        name: Figure,
    },
    /// Recompute the headline constants and compare with reference values
    Constants {
        /// Multiply every tolerance by this factor
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
    },
    /// Sweep Z_beta(alpha) over an alpha grid and write zeros.csv
    Zeros {
        /// A number, or "alpha" for beta = alpha
        #[arg(long, value_parser = parse_beta)]
        beta: Beta,
        #[arg(long, default_value_t = 1.001)]
        alpha_min: f64,
        #[arg(long, default_value_t = 2.0)]
        alpha_max: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
    /// Solve a registry pair, compare envelopes and write demo.csv
    #[command(long_about = "Solve a registry pair, compare envelopes and write demo.csv.\n\n\
        Config (JSON): {\"problem\": <key>, \"n_steps\": 1024, \"stride\": 32, \"out_dir\": null}\n\
        Keys: example1, equal_values, identical, linear_varying, sine, sine_shifted, arctan, forced.\n\
        n_steps is the coarse resolution; the reported solution uses 2 n_steps and the\n\
        difference between the two sets the tolerance band. stride thins the envelope grid.")]
    Demo {
        #[arg(long)]
        config: PathBuf,
    },
    /// Solve one initial value problem and write solve.csv
    #[command(
        long_about = "Solve one initial value problem and write solve.csv (columns t, y).\n\n\
        Config (JSON), either a registry problem:\n  {\"problem\": <key>, \"side\": \"upper\" | \"lower\"}\n\
        or an explicit one:\n  {\"alpha\": 1.5, \"rhs\": {\"kind\": \"linear\", \"lambda\": -1}, \"y0\": 1, \"y1\": 0, \"horizon\": 3}\n\
        rhs kinds: linear {lambda}, sine {k} (-k sin y), arctan {k} (-k atan y),\n  forced {lambda, amplitude} (lambda y + amplitude sin t).\n\
        Optional: n_steps (1024), correctors (1, at most 3), out_dir."
    )]
    Solve {
        #[arg(long)]
        config: PathBuf,
    },
}

fn parse_beta(s: &str) -> Result<Beta, String> {
    if s == "alpha" {
        return Ok(Beta::Alpha);
    }
    let b: f64 = s
        .parse()
        .map_err(|_| format!("'{s}' is neither a number nor 'alpha'"))?;
    if b > 0.0 && b.is_finite() {
        Ok(Beta::Fixed(b))
    } else {
        Err(format!("beta = {s} must be positive"))
    }
}

fn numeric<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Numeric(e.to_string())
}

fn cmd_constants(tol_scale: f64) -> Result<(), CliError> {
    if !(tol_scale > 0.0) {
        return Err(CliError::Usage(format!("--tol-scale {tol_scale} must be positive")));
    }
    let rows = reproduce::constants(&NewtonOptions::default()).map_err(numeric)?;
    println!(
        "{:<24} {:>20} {:>20} {:>10} {:>10}  status",
        "quantity", "reference", "computed", "|diff|", "tol"
    );
    let mut all_ok = true;
    for r in &rows {
        let ok = r.ok(tol_scale);
        all_ok &= ok;
        println!(
            "{:<24} {:>20.12} {:>20.12} {:>10.2e} {:>10.1e}  {}",
            r.name,
            r.reference,
            r.computed,
            r.diff(),
            r.tol * tol_scale,
            if ok { "ok" } else { "FAIL" }
        );
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Numeric("some constants are outside tolerance".into()))
    }
}

fn cmd_zeros(beta: Beta, lo: f64, hi: f64, step: f64) -> Result<(), CliError> {
    if !(lo > 1.0 && hi <= 2.0 && lo <= hi && step > 0.0) {
        return Err(CliError::Usage(format!(
            "need 1 < alpha-min <= alpha-max <= 2 and step > 0, got {lo}, {hi}, {step}"
        )));
    }
    let records = sweep(beta, &alpha_grid(lo, hi, step), &NewtonOptions::default());
    let mut t = Table::new(&[
        "alpha",
        "beta",
        "z_min",
        "iterations",
        "converged",
        "residual",
        "no_zero",
    ]);
    for r in &records {
        t.push(vec![
            num(r.alpha),
            num(r.beta),
            num(r.z_min),
            r.iterations.to_string(),
            r.converged.to_string(),
            num(r.residual),
            r.no_zero.to_string(),
        ]);
    }
    let path = output::out_dir(None)?.join("zeros.csv");
    t.write(&path)?;
    let failed = records.iter().filter(|r| !r.converged && !r.no_zero).count();
    let no_zero = records.iter().filter(|r| r.no_zero).count();
    println!(
        "wrote {} ({} records, {} without a zero, {} failed)",
        path.display(),
        records.len(),
        no_zero,
        failed
    );
    if failed > 0 {
        return Err(CliError::Numeric(format!("{failed} sweep points failed")));
    }
    Ok(())
}

fn cmd_demo(cfg: DemoConfig) -> Result<(), CliError> {
    let entry =
        registry::lookup(&cfg.problem).ok_or_else(|| CliError::Usage(format!("unknown problem '{}'", cfg.problem)))?;
    if cfg.n_steps == 0 || cfg.stride == 0 {
        return Err(CliError::Usage("n_steps and stride must be positive".into()));
    }
    let a = registry::analyze(&entry, cfg.n_steps, cfg.stride).map_err(numeric)?;
    let s = &a.separation;
    let h = &s.horizon;

    println!("problem: {}", entry.key);
    println!("description: {}", entry.description);
    println!("alpha: {}", h.alpha);
    println!("L: {}", h.lipschitz);
    for (c, z) in &h.zero_inputs {
        let z = z.map(|r| r.z_min.to_string()).unwrap_or_else(|| "none".into());
        println!("zero[{}]: {}", c, z);
    }
    println!("t_star: {}", h.t_star);
    println!("binding: {}", h.binding.map(Condition::name).unwrap_or("none"));
    println!("t_star_used: {}", s.t_star);
    println!("band: {:e}", s.band);
    println!("separated: {}", s.separated);
    match s.first_crossing {
        Some(t) if s.crossing_after_horizon().is_some() => println!("first_crossing: {t} (beyond t_star)"),
        Some(t) => println!("first_crossing: {t} (inside the horizon)"),
        None => println!("first_crossing: none"),
    }
    println!("envelope: {}", a.envelope.kind.name());
    println!("sandwich: {}", if a.sandwich_ok { "pass" } else { "FAIL" });
    println!(
        "gronwall_dominance: {}",
        if a.gronwall_dominance_ok { "pass" } else { "FAIL" }
    );

    let mut t = Table::new(&["t", "abs_diff", "gronwall", "lower", "upper", "a_lower", "a_upper"]);
    for i in 0..a.distance.len() {
        let c = &a.envelope.coeffs[i];
        t.push_nums(&[
            a.envelope.times[i],
            a.distance[i],
            a.gronwall[i],
            a.envelope.lower[i],
            a.envelope.upper[i],
            c.a_lower,
            c.a_upper,
        ]);
    }
    let path = output::out_dir(cfg.out_dir.as_deref())?.join("demo.csv");
    t.write(&path)?;
    println!("wrote {}", path.display());
    if a.sandwich_ok && a.gronwall_dominance_ok && s.separated {
        Ok(())
    } else {
        Err(CliError::Numeric("envelope or separation check failed".into()))
    }
}

fn cmd_solve(cfg: SolveConfig) -> Result<(), CliError> {
    let p = cfg.problem()?;
    if cfg.n_steps == 0 {
        return Err(CliError::Usage("n_steps must be positive".into()));
    }
    let sol = fode::solve_ivp_with(
        &p,
        cfg.n_steps,
        &SolverOptions {
            correctors: cfg.correctors,
        },
    )
    .map_err(|e| match e {
        fode::FodeError::Problem(m) => CliError::Usage(m),
        e => numeric(e),
    })?;
    let mut t = Table::new(&["t", "y"]);
    for (x, y) in sol.times.iter().zip(&sol.values) {
        t.push_nums(&[*x, *y]);
    }
    let path = output::out_dir(cfg.out_dir.as_deref())?.join("solve.csv");
    t.write(&path)?;
    println!("wrote {} ({} points, step {})", path.display(), sol.len(), sol.step);
    if let Some(RhsSpec::Linear { lambda }) = cfg.rhs.filter(|_| cfg.problem.is_none()) {
        let acc = MlAccuracy::default();
        let mut dev = 0.0_f64;
        for (x, y) in sol.times.iter().zip(&sol.values) {
            let exact = linear_closed_form(p.alpha, lambda, p.y0, p.y1, *x, &acc).map_err(numeric)?;
            dev = dev.max((y - exact).abs());
        }
        println!("max deviation from closed form: {dev:e}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Figure { name } => figures::run(name, &output::out_dir(None)?),
        Command::Constants { tol_scale } => cmd_constants(tol_scale),
        Command::Zeros {
            beta,
            alpha_min,
            alpha_max,
            step,
        } => cmd_zeros(beta, alpha_min, alpha_max, step),
        Command::Demo { config } => cmd_demo(config::load(&config)?),
        Command::Solve { config } => cmd_solve(config::load(&config)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Numeric(m) => eprintln!("numerical failure: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
