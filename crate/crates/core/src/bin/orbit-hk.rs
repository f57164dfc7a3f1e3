use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use orbit_hk::cli::{self, AlgebraSpec, CliError, Command, RunConfig, TripleSpec};

/// Verify the hyperKähler structure on minimal nilpotent orbits.
#[derive(Parser, Debug)]
#[command(name = "orbit-hk", version)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Exact algebra checks, orbit geometry and the quaternionic identities.
    Verify(Common),
    /// lambda^2 = kappa(e_theta, f_theta) for each type, against the listed values.
    LambdaTable(Common),
    /// The sl(2) ODE, frame diagonal and Eguchi-Hanson form.
    EguchiHanson(Common),
    /// Decomposition of the algebra under an sl(2)-triple.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// `theta`, `principal`, or a JSON file with Chevalley coefficients.
        #[arg(long, default_value = "theta")]
        triple: String,
    },
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Type such as A2, G2, E8, or `all`.
    #[arg(long, default_value = "all")]
    algebra: String,
    /// Potential parameter c >= 0.
    #[arg(long, default_value_t = 0.0)]
    c: f64,
    /// Point X = t e_theta.
    #[arg(long, conflicts_with = "eta")]
    t: Option<f64>,
    /// Point on the orbit with this value of eta (>= 1e-6).
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = cli::DEFAULT_SEED)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Structure-constant cache directory (default: $ORBIT_HK_CACHE).
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Override a tolerance, e.g. --tol g_j_invariant=1e-8.
    #[arg(long, value_parser = cli::parse_tolerance)]
    tol: Vec<(String, f64)>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Output {
    Text,
    Json,
    Quiet,
}

fn config(command: Command, c: Common, triple: Option<&str>) -> Result<(RunConfig, Output), CliError> {
    let algebra: AlgebraSpec = c.algebra.parse()?;
    let mut cfg = RunConfig::new(command);
    cfg.algebra = algebra;
    cfg.c = c.c;
    cfg.t = c.t;
    cfg.eta = c.eta;
    cfg.trials = c.trials;
    cfg.seed = c.seed;
    cfg.json = c.json;
    cfg.cache = c.cache;
    cfg.tol = c.tol.into_iter().collect::<BTreeMap<_, _>>();
    if let Some(t) = triple {
        cfg.triple = TripleSpec::parse(t)?;
    }
    Ok((cfg, c.output))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let built = match args.command {
        Cmd::Verify(c) => config(Command::Verify, c, None),
        Cmd::LambdaTable(c) => config(Command::LambdaTable, c, None),
        Cmd::EguchiHanson(c) => config(Command::EguchiHanson, c, None),
        Cmd::Spectrum { common, triple } => config(Command::Spectrum, common, Some(&triple)),
    };
    let (cfg, output) = match built {
        Ok(x) => x,
        Err(e) => {
            eprintln!("orbit-hk: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match cli::run(&cfg) {
        Ok(report) => {
            match output {
                Output::Text => print!("{}", report.summary()),
                Output::Json => println!("{}", report.to_json()),
                Output::Quiet => {}
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("orbit-hk: {e}");
            if let Output::Json = output {
                println!("{}", cli::error_json(Some(&cfg), &e));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
