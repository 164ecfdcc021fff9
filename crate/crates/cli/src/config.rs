use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mop_core::exact::{parse_rational, rat, Rational};
use mop_core::families::{Family, MultiIndex, WeightSystem};

use crate::error::CliError;
use crate::fault::FaultSpec;

#[derive(Parser, Debug)]
#[command(name = "mop", version, about = "Exact multiple orthogonal polynomials: generation and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub args: Args,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    /// Exact coefficients of one polynomial (type II) or vector (type I).
    Coeffs,
    /// Exact values at the points given with --x.
    Eval,
    /// Run the verification grid.
    Verify,
    /// Check one of the hypergeometric identities on random or given parameters.
    Identity,
    /// Coefficient table over all multi-indices up to --max-total-degree.
    Table,
    /// Floating-point samples for plotting.
    PlotData,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Coeffs => "coeffs",
            CommandKind::Eval => "eval",
            CommandKind::Verify => "verify",
            CommandKind::Identity => "identity",
            CommandKind::Table => "table",
            CommandKind::PlotData => "plot-data",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityName {
    ChuVandermonde,
    Kummer,
    RakhaRathie,
    KarpPrilepkina,
    HahnSummation,
    MellinInversion,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn family_arg(s: &str) -> Result<Family, String> {
    Family::from_str(s).map_err(|e| e.to_string())
}

fn type_arg(s: &str) -> Result<u8, String> {
    match s {
        "1" | "I" => Ok(1),
        "2" | "II" => Ok(2),
        _ => Err(format!("type must be 1 or 2, got {s:?}")),
    }
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct Args {
    /// laguerre, jacobi-pineiro or hahn.
    #[arg(long, global = true, value_parser = family_arg)]
    pub family: Option<Family>,
    /// Number of weights.
    #[arg(long, global = true)]
    pub p: Option<usize>,
    /// Weight parameter α_i as "num/den"; repeat once per weight.
    #[arg(long, global = true, value_parser = rational_arg)]
    pub alpha: Vec<Rational>,
    #[arg(long, global = true, value_parser = rational_arg)]
    pub beta: Option<Rational>,
    /// Hahn lattice size.
    #[arg(long = "N", global = true)]
    pub big_n: Option<u64>,
    /// Multi-index entry n_i; repeat once per weight.
    #[arg(long = "n", global = true)]
    pub n: Vec<u64>,
    /// 1 for type I vectors, 2 for type II polynomials.
    #[arg(long = "type", global = true, value_parser = type_arg)]
    pub poly_type: Option<u8>,
    #[arg(long, global = true)]
    pub max_total_degree: Option<u64>,
    #[arg(long = "max-N", global = true)]
    pub max_n: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 picks the number of CPUs.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Perturb one generated coefficient by +1: FAMILY:TYPE:COMPONENT:INDEX.
    #[arg(long, global = true)]
    pub inject_fault: Option<String>,
    /// Identity to check.
    #[arg(long, global = true, value_enum)]
    pub identity: Option<IdentityName>,
    /// Random draws for the identity command.
    #[arg(long, global = true)]
    pub draws: Option<usize>,
    /// Explicit identity parameters as "num/den", in signature order.
    #[arg(long = "param", global = true, value_parser = rational_arg)]
    pub params: Vec<Rational>,
    /// Evaluation point; repeatable.
    #[arg(long = "x", global = true, value_parser = rational_arg)]
    pub x: Vec<Rational>,
    /// Sample count for plot-data on continuous supports.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
}

/// Default parameter sets drawn from small-denominator rationals.
pub fn default_alpha_sets() -> Vec<Vec<Rational>> {
    vec![
        vec![rat(1, 2), rat(1, 3), rat(1, 5)],
        vec![rat(2, 7), rat(3, 11), rat(1, 2)],
    ]
}

pub const DEFAULT_MAX_TOTAL_DEGREE: u64 = 4;
pub const DEFAULT_MAX_N: u64 = 8;

pub fn default_beta() -> Rational {
    rat(1, 4)
}

/// Validated job description.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub command: CommandKind,
    pub family: Option<Family>,
    pub p: Option<usize>,
    pub alpha: Vec<Rational>,
    pub beta: Option<Rational>,
    pub big_n: Option<u64>,
    pub n: Vec<u64>,
    pub poly_type: u8,
    pub max_total_degree: u64,
    pub max_n: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub seed: u64,
    pub fault: Option<FaultSpec>,
    pub identity: Option<IdentityName>,
    pub draws: Option<usize>,
    pub params: Vec<Rational>,
    pub x: Vec<Rational>,
    pub samples: usize,
}

impl JobConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let a = cli.args;
        let command = cli.command;
        let default_format = match command {
            CommandKind::Table | CommandKind::PlotData => Format::Csv,
            _ => Format::Json,
        };
        let fault = a.inject_fault.as_deref().map(FaultSpec::parse).transpose()?;
        let cfg = JobConfig {
            command,
            family: a.family,
            p: a.p,
            alpha: a.alpha,
            beta: a.beta,
            big_n: a.big_n,
            n: a.n,
            poly_type: a.poly_type.unwrap_or(2),
            max_total_degree: a.max_total_degree.unwrap_or(DEFAULT_MAX_TOTAL_DEGREE),
            max_n: a.max_n.unwrap_or(DEFAULT_MAX_N),
            format: a.format.unwrap_or(default_format),
            out: a.out,
            jobs: a.jobs,
            seed: a.seed,
            fault,
            identity: a.identity,
            draws: a.draws,
            params: a.params,
            x: a.x,
            samples: a.samples.unwrap_or(20),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(p) = self.p {
            if p == 0 {
                return Err(CliError::Config("--p must be positive".into()));
            }
            if !self.alpha.is_empty() && self.alpha.len() != p {
                return Err(CliError::Config(format!(
                    "--p {p} but {} --alpha values",
                    self.alpha.len()
                )));
            }
        }
        match self.command {
            CommandKind::Coeffs | CommandKind::Eval | CommandKind::PlotData => {
                let ws = self.weight_system()?;
                self.multi_index(&ws)?;
                if self.command == CommandKind::Eval && self.x.is_empty() {
                    return Err(CliError::Config("eval needs at least one --x".into()));
                }
            }
            CommandKind::Table => {
                self.weight_system()?;
            }
            CommandKind::Verify => {
                if !self.alpha.is_empty() {
                    // every family must accept the given parameters
                    for family in self.families() {
                        self.weight_system_for(family, self.big_n.unwrap_or(self.max_n))?;
                    }
                }
            }
            CommandKind::Identity => {
                if self.identity.is_none() {
                    return Err(CliError::Config("identity needs --identity NAME".into()));
                }
            }
        }
        Ok(())
    }

    pub fn families(&self) -> Vec<Family> {
        match self.family {
            Some(f) => vec![f],
            None => Family::ALL.to_vec(),
        }
    }

    pub fn beta_or_default(&self) -> Rational {
        self.beta.clone().unwrap_or_else(default_beta)
    }

    /// The single weight system named by the flags.
    pub fn weight_system(&self) -> Result<WeightSystem, CliError> {
        let family = self
            .family
            .ok_or_else(|| CliError::Config("--family is required".into()))?;
        if self.alpha.is_empty() {
            return Err(CliError::Config("at least one --alpha is required".into()));
        }
        let big_n = match family {
            Family::Hahn => self
                .big_n
                .ok_or_else(|| CliError::Config("--N is required for hahn".into()))?,
            _ => 0,
        };
        self.weight_system_for(family, big_n)
    }

    pub fn weight_system_for(&self, family: Family, big_n: u64) -> Result<WeightSystem, CliError> {
        let alpha = self.alpha.clone();
        let ws = match family {
            Family::LaguerreFirstKind => WeightSystem::laguerre(alpha),
            Family::JacobiPineiro => WeightSystem::jacobi_pineiro(alpha, self.beta_or_default()),
            Family::Hahn => WeightSystem::hahn(alpha, self.beta_or_default(), big_n),
        }?;
        Ok(ws)
    }

    pub fn multi_index(&self, ws: &WeightSystem) -> Result<MultiIndex, CliError> {
        let n = MultiIndex::new(self.n.clone());
        n.check(ws)?;
        if self.poly_type == 1 && n.total() == 0 {
            return Err(CliError::Config("type I needs |n| >= 1".into()));
        }
        Ok(n)
    }
}

/// Rationals as "num/den" strings.
pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub family: Option<String>,
    pub p: Option<usize>,
    pub alpha: Vec<String>,
    pub beta: Option<String>,
    #[serde(rename = "N")]
    pub big_n: Option<u64>,
    pub n: Vec<u64>,
    #[serde(rename = "type")]
    pub poly_type: u8,
    pub max_total_degree: u64,
    #[serde(rename = "max_N")]
    pub max_n: u64,
    pub seed: u64,
    pub inject_fault: Option<String>,
    pub identity: Option<IdentityName>,
    pub draws: Option<usize>,
    pub params: Vec<String>,
    pub x: Vec<String>,
}

impl From<&JobConfig> for ConfigEcho {
    fn from(c: &JobConfig) -> Self {
        ConfigEcho {
            family: c.family.map(|f| f.name().to_string()),
            p: c.p,
            alpha: rational_strings(&c.alpha),
            beta: c.beta.as_ref().map(ToString::to_string),
            big_n: c.big_n,
            n: c.n.clone(),
            poly_type: c.poly_type,
            max_total_degree: c.max_total_degree,
            max_n: c.max_n,
            seed: c.seed,
            inject_fault: c.fault.as_ref().map(ToString::to_string),
            identity: c.identity,
            draws: c.draws,
            params: rational_strings(&c.params),
            x: rational_strings(&c.x),
        }
    }
}
