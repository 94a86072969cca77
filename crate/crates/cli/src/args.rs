use std::path::PathBuf;

use bgc_core::{LogBase, Tolerances};
use bgc_fock::{OracleConfig, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bgc", version, about = "Bosonic Gaussian channels: validation, entropies, capacities and oracle checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON input file (`-` for stdin).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; stdout if absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Base::Nats)]
    pub log_base: Base,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub tol: ToleranceFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    Nats,
    Bits,
}

impl From<Base> for LogBase {
    fn from(b: Base) -> Self {
        match b {
            Base::Nats => LogBase::Nats,
            Base::Bits => LogBase::Bits,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Thermal,
    Additive,
    Amplifier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Core,
    Oracle,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Core => Suite::Core,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    General,
    Waterfilling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepAxis {
    Energy,
    Noise,
    Param,
}

/// Point of a one-mode family. `--param` is `η` for thermal, `κ` for
/// amplifier and ignored for additive noise.
#[derive(Debug, Clone, Args)]
pub struct FamilyPoint {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 1.0)]
    pub param: f64,
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 1.0)]
    pub energy: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a channel against the validity inequality.
    Validate,
    /// Kind, attenuator/amplifier tag, quantum-limitedness, entanglement breaking.
    Classify,
    /// Split a channel into a quantum-limited attenuator and a second stage.
    Decompose,
    /// Apply a channel to a Gaussian state: input `{"channel": …, "state": …}`.
    Apply,
    /// Entropy of a Gaussian state.
    Entropy,
    /// Minimal output entropy of a channel.
    MinEntropy,
    /// Energy-constrained classical capacity: input `{"channel": …, "constraint": …}`.
    Capacity {
        #[arg(long, value_enum, default_value_t = Method::General)]
        method: Method,
    },
    /// Closed-form capacity of a one-mode family with the Shannon baseline.
    ClosedForm {
        #[command(flatten)]
        point: FamilyPoint,
    },
    /// Run a verification suite; exits with code 4 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fock cutoff for the random-state scans.
        #[arg(long, default_value_t = 40)]
        dim: usize,
        #[arg(long, default_value_t = 64)]
        grid_points: usize,
        /// Random states per gain in the minimum-output-entropy scan.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Capacities of a one-mode family along one parameter, as CSV.
    Sweep {
        #[command(flatten)]
        point: FamilyPoint,
        #[arg(long, value_enum, default_value_t = SweepAxis::Energy)]
        over: SweepAxis,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 10.0)]
        to: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
    },
}

#[derive(Debug, Default, Args)]
pub struct ToleranceFlags {
    #[arg(long, global = true)]
    pub tol_herm: Option<f64>,
    #[arg(long, global = true)]
    pub tol_eq: Option<f64>,
    #[arg(long, global = true)]
    pub tol_psd: Option<f64>,
    #[arg(long, global = true)]
    pub tol_sigma_cut: Option<f64>,
    #[arg(long, global = true)]
    pub tol_constraint: Option<f64>,
    #[arg(long, global = true)]
    pub tol_opt: Option<f64>,
    /// Allowed trace deficit of oracle states.
    #[arg(long, global = true)]
    pub tol_deficit: Option<f64>,
    #[arg(long, global = true)]
    pub tol_trunc: Option<f64>,
    /// Husimi mass allowed outside the phase-space grid.
    #[arg(long, global = true)]
    pub tol_grid_tail: Option<f64>,
    #[arg(long, global = true)]
    pub tol_eig_floor: Option<f64>,
}

impl ToleranceFlags {
    pub fn core(&self) -> Tolerances {
        let mut t = Tolerances::default();
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut t.herm, self.tol_herm);
        set(&mut t.eq, self.tol_eq);
        set(&mut t.psd, self.tol_psd);
        set(&mut t.sigma_cut, self.tol_sigma_cut);
        set(&mut t.constraint, self.tol_constraint);
        set(&mut t.opt, self.tol_opt);
        t
    }

    pub fn oracle(&self) -> OracleConfig {
        let mut c = OracleConfig::default();
        if let Some(v) = self.tol_herm {
            c.herm_tol = v;
        }
        if let Some(v) = self.tol_psd {
            c.psd_tol = v;
        }
        if let Some(v) = self.tol_deficit {
            c.deficit_budget = v;
        }
        if let Some(v) = self.tol_trunc {
            c.trunc_tol = v;
        }
        if let Some(v) = self.tol_grid_tail {
            c.tail_budget = v;
        }
        if let Some(v) = self.tol_eig_floor {
            c.eig_floor = v;
        }
        c
    }
}
