use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = orbitlab_core::rng::DEFAULT_SEED;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 8;
pub const SEED_ENV: &str = "ORBITLAB_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Cartan/Iwasawa decomposition of a semisimple algebra
    Decompose,
    /// Weighted volume densities of an inner product
    Volume,
    /// Ricci curvature and nilsoliton certificate
    Certify,
    /// Structural checks on Borel nilradicals plus the volume property batch
    Verify,
    /// Structural summary of an algebra
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Decompose => "decompose",
            Command::Volume => "volume",
            Command::Certify => "certify",
            Command::Verify => "verify",
            Command::Report => "report",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "orbitlab", version, about = "Lie-theoretic checks and weighted volume densities")]
pub struct Cli {
    pub command: Command,

    /// Builtin algebra, e.g. `sl:3`, `so:2,3`, `heisenberg:3`, `sl:2+so:3,0`
    #[arg(long = "builtin", value_name = "NAME")]
    pub builtins: Vec<String>,

    /// JSON input (algebra, inner product, weights, stratum label or involution)
    #[arg(long = "input", value_name = "PATH")]
    pub inputs: Vec<PathBuf>,

    #[arg(long, value_name = "PATH")]
    pub output: PathBuf,

    #[arg(long)]
    pub seed: Option<u64>,

    #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_negative_numbers = true)]
    pub tolerance: f64,

    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub builtins: Vec<String>,
    pub input_paths: Vec<PathBuf>,
    pub output_path: PathBuf,
    pub seed: u64,
    pub tolerance: f64,
    pub samples: usize,
}

impl RunConfig {
    /// `env_seed` is the value of `ORBITLAB_SEED`, consulted only when
    /// `--seed` is absent.
    pub fn from_cli(cli: Cli, env_seed: Option<String>) -> Result<Self, CliError> {
        let seed = match (cli.seed, env_seed) {
            (Some(s), _) => s,
            (None, Some(v)) => v
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("{SEED_ENV}={v:?} is not an unsigned integer")))?,
            (None, None) => DEFAULT_SEED,
        };
        if !(cli.tolerance > 0.0 && cli.tolerance.is_finite()) {
            return Err(CliError::usage(format!("tolerance must be positive, got {}", cli.tolerance)));
        }
        if cli.samples == 0 {
            return Err(CliError::usage("samples must be at least 1"));
        }
        for p in &cli.inputs {
            if !p.is_file() {
                return Err(CliError::usage(format!("input {} does not exist", p.display())));
            }
        }
        Ok(RunConfig {
            command: cli.command,
            builtins: cli.builtins,
            input_paths: cli.inputs,
            output_path: cli.output,
            seed,
            tolerance: cli.tolerance,
            samples: cli.samples,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("orbitlab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn env_seed_only_without_flag() {
        let c = RunConfig::from_cli(cli(&["verify", "--output", "x"]), Some("7".into())).unwrap();
        assert_eq!(c.seed, 7);
        let c = RunConfig::from_cli(cli(&["verify", "--output", "x", "--seed", "3"]), Some("7".into())).unwrap();
        assert_eq!(c.seed, 3);
        let c = RunConfig::from_cli(cli(&["verify", "--output", "x"]), None).unwrap();
        assert_eq!((c.seed, c.samples, c.tolerance), (42, 8, 1e-9));
    }

    #[test]
    fn invalid_values() {
        assert!(RunConfig::from_cli(cli(&["verify", "--output", "x", "--samples", "0"]), None).is_err());
        assert!(RunConfig::from_cli(cli(&["verify", "--output", "x", "--tolerance", "-1"]), None).is_err());
        assert!(RunConfig::from_cli(cli(&["verify", "--output", "x"]), Some("abc".into())).is_err());
        assert!(RunConfig::from_cli(cli(&["verify", "--output", "x", "--input", "/no/such/file"]), None).is_err());
    }
}
