use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cuspidal_core::genweight::Params;
use cuspidal_core::linalg::Scalar;
use cuspidal_core::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "cuspidal",
    version,
    about = "Exact verification of cuspidal generalized weight modules over sp(2n)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build N(a) or F(V) and check relations, cuspidality, weight spaces and U0.
    Verify(CommonArgs),
    /// Casimir, annihilator and G checks on V̄ for seeded commuting pairs.
    Sl2(CommonArgs),
    /// Strip F(V) to restriction data, rebuild it and compare.
    Reconstruct(CommonArgs),
    /// The n self-extensions of N(a) and the weight-module criterion.
    #[command(name = "ext-demo")]
    ExtDemo(CommonArgs),
    /// Emit a module as JSON.
    Gen(CommonArgs),
    /// Dimension of the hom-space between two module files.
    Hom(HomArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Rank.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Comma separated parameters such as 1/3,1/5; defaults to 1/3, 1/5, 1/7, ...
    #[arg(long)]
    pub a: Option<String>,
    /// Radius of the truncation box.
    #[arg(long = "R", alias = "radius", default_value_t = 4)]
    pub radius: i64,
    /// Dimension of a random nilpotent family; without it the zero family is used.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Longest root-vector word used by the U0 check.
    #[arg(long = "degree-cap", default_value_t = 3)]
    pub degree_cap: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Perturb one block: LABEL@b1,b2 for modules, an index for sl2.
    #[arg(long = "inject-fault", num_args = 0..=1, default_missing_value = "")]
    pub inject_fault: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct HomArgs {
    pub source: PathBuf,
    pub target: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Validated settings shared by the module and sl2 commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: Params,
    pub radius: i64,
    pub dim: Option<usize>,
    pub seed: u64,
    pub degree_cap: usize,
    pub fault: Option<String>,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<RunConfig> {
        if args.n < 2 {
            return Err(Error::Parameter(format!(
                "rank must be at least 2, got {}",
                args.n
            )));
        }
        if args.radius < 1 {
            return Err(Error::Parameter(format!(
                "radius must be positive, got {}",
                args.radius
            )));
        }
        if args.dim == Some(0) {
            return Err(Error::Parameter("family dimension must be positive".into()));
        }
        let params = match &args.a {
            None => Params::default_for(args.n)?,
            Some(text) => {
                let a = text
                    .split(',')
                    .map(|s| s.trim().parse::<Scalar>())
                    .collect::<Result<Vec<_>>>()?;
                if a.len() != args.n {
                    return Err(Error::Parameter(format!(
                        "expected {} parameters, got {}",
                        args.n,
                        a.len()
                    )));
                }
                Params::new(a)?
            }
        };
        Ok(RunConfig {
            params,
            radius: args.radius,
            dim: args.dim,
            seed: args.seed,
            degree_cap: args.degree_cap,
            fault: args.inject_fault.clone(),
        })
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }
}

/// Splits `LABEL@b1,b2`; an empty request selects `default_label` at the origin.
pub fn parse_fault(request: &str, n: usize, default_label: &str) -> Result<(String, Vec<i64>)> {
    if request.is_empty() {
        return Ok((default_label.to_string(), vec![0; n]));
    }
    let (label, point) = request.split_once('@').unwrap_or((request, ""));
    let b = if point.is_empty() {
        vec![0; n]
    } else {
        point
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parameter(format!("bad fault point {point:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    if b.len() != n {
        return Err(Error::Parameter(format!(
            "fault point {b:?} does not have {n} coordinates"
        )));
    }
    Ok((label.to_string(), b))
}
