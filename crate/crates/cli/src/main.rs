//! `dp4`: command line laboratory for curve counts on split quartic del Pezzo
//! surfaces over finite fields.

mod config;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "dp4", version, about = "Rational curves on split quartic del Pezzo surfaces over finite fields")]
pub struct Cli {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emission format on standard output.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Also write the table as CSV to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FieldArgs {
    /// Field order.
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CapArgs {
    #[arg(long)]
    naive_budget: Option<u64>,
    #[arg(long)]
    fiber_budget: Option<u64>,
    #[arg(long)]
    lattice_cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Naive,
    Fibered,
    Sieve,
    Virtual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZetaWhat {
    Tamagawa,
    Residue,
    Factor,
    Coefficient,
    Predictor,
    Betti,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Poset,
    Strata,
    Zeta,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlphaModeArg {
    Exact,
    Lattice,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The 16 lines and the ordered triples of pairwise disjoint lines.
    Lines {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Rays of the nef cone and the nef classes of bounded height.
    Nef {
        #[arg(long, default_value_t = 4)]
        hmax: i64,
    },
    /// Alpha constant of the nef cone or of a shrunk cone.
    Alpha {
        /// Shrinking parameter as a rational, 0 for the full nef cone.
        #[arg(long, default_value = "0")]
        eps: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: AlphaModeArg,
        #[arg(long, default_value_t = 30)]
        dilation: i64,
    },
    /// Count curves of one class.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        /// `a,a',k1,k2,k3,k4` or `h,a,a',k1,k2,k3,k4`.
        #[arg(long)]
        class: String,
        #[arg(long, value_enum, default_value = "fibered")]
        method: Method,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long)]
        gamma_max: Option<u32>,
        #[arg(long)]
        deg_max: Option<u32>,
    },
    /// Euler products, local factors and coefficients of the height zeta function.
    Zeta {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        what: ZetaWhat,
        #[arg(long)]
        truncation: Option<u32>,
        /// Point degree, for `factor`; curve degree, for `predictor`.
        #[arg(long)]
        d: Option<u32>,
        /// `t1,t2,t3,t4` as rationals, for `factor`.
        #[arg(long)]
        t: Option<String>,
        /// `k1,k2,k3,k4`, for `coefficient`.
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        deg_max: Option<u32>,
        #[arg(long, default_value = "0")]
        eps: String,
        /// Ambient dimension, for `betti`.
        #[arg(long)]
        n: Option<u32>,
        /// Comma-separated degrees, for `betti`.
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Built-in consistency checks.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Count every nef class up to a height and compare with `τ q^h`.
    Sweep {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        hmax: i64,
        /// Comma-separated counting methods.
        #[arg(long, default_value = "fibered")]
        methods: String,
        #[command(flatten)]
        caps: CapArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(run::Failure::Dp4(e)) => {
            eprintln!("dp4: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(run::Failure::ChecksFailed) => ExitCode::from(1),
    }
}

impl Cli {
    /// The configuration file merged with the command-line flags.
    fn config(&self) -> dp4::Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if self.format.is_some() {
            cfg.format = self.format;
        }
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        if self.jobs.is_some() {
            cfg.jobs = self.jobs;
        }
        if self.seed.is_some() {
            cfg.seed = self.seed;
        }
        let (field, caps) = match &self.command {
            Command::Lines { field } | Command::Zeta { field, .. } => (Some(field), None),
            Command::Count { field, caps, .. } | Command::Sweep { field, caps, .. } => (Some(field), Some(caps)),
            _ => (None, None),
        };
        if let Some(q) = field.and_then(|f| f.q) {
            cfg.q = Some(q);
        }
        if let Some(c) = caps {
            cfg.caps.naive_budget = c.naive_budget.or(cfg.caps.naive_budget);
            cfg.caps.fiber_budget = c.fiber_budget.or(cfg.caps.fiber_budget);
            cfg.caps.lattice_cap = c.lattice_cap.or(cfg.caps.lattice_cap);
        }
        match &self.command {
            Command::Count { gamma_max, deg_max, .. } => {
                cfg.gamma_max = gamma_max.or(cfg.gamma_max);
                cfg.deg_max = deg_max.or(cfg.deg_max);
            }
            Command::Zeta { truncation, deg_max, .. } => {
                cfg.truncation = truncation.or(cfg.truncation);
                cfg.deg_max = deg_max.or(cfg.deg_max);
            }
            _ => {}
        }
        Ok(cfg)
    }
}
