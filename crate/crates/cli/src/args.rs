use crate::config::FieldSpec;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "lrkitaev", version, about = "Entanglement entropies of the long-range Kitaev chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quasiparticle spectrum: one row per mode.
    Spectrum(CommonArgs),
    /// Renyi entropies of the first L sites, with N = 2L unless --n-sites is given.
    EntropyScan(CommonArgs),
    /// Logarithmic coefficients from the jump formulas.
    FhCoeff(CommonArgs),
    /// Compare correlation-matrix entropies with the exact many-body state (N <= 14).
    Verify(CommonArgs),
    /// Data table and plot script for one figure: 3a 3b 3c 4a 4b 4c 5a 5b 6a 6b 7.
    Reproduce {
        figure: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the task named by --task or by the config file.
    Run(CommonArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON configuration; flags override its keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Task for `run`: spectrum, entropy-scan, fh-coeff, verify, reproduce.
    #[arg(long)]
    pub task: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha2: Option<f64>,
    /// Comma-separated exponents, each used for both hopping and pairing.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,
    /// Comma-separated fields: numbers, crit0 (k = 0 line) or critpi (k = pi line).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub h: Option<Vec<FieldSpec>>,
    #[arg(long)]
    pub n_sites: Option<usize>,
    /// Comma-separated subsystem sizes L.
    #[arg(long, value_delimiter = ',')]
    pub subsystem: Option<Vec<usize>>,
    /// Comma-separated Renyi orders.
    #[arg(long, value_delimiter = ',')]
    pub nu: Option<Vec<f64>>,
    /// Use infinite-chain couplings sampled on the N modes.
    #[arg(long)]
    pub thermodynamic: bool,
    /// Output file (directory for `reproduce`); standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// fh-coeff: also write the per-jump contributions to this file.
    #[arg(long)]
    pub breakdown: Option<PathBuf>,
    /// entropy-scan: add analytic coefficient and prediction columns.
    #[arg(long)]
    pub with_prediction: bool,
    /// verify: perturb one correlation-matrix entry (negative control).
    #[arg(long, hide = true)]
    pub corrupt_entry: bool,
}
