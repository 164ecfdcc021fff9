//! The commands other than `identity`.

use serde::Serialize;

use mop_core::exact::{gamma_product_approx, int, log_gamma_approx, rat, to_f64, Rational, MAX_PRECISION};
use mop_core::families::{type1, type2, Family, MultiIndex, ScaledPolynomial, TypeIVector, WeightSystem};

use crate::config::{rational_strings, JobConfig};
use crate::error::CliError;
use crate::grid::{run_grid, CheckRecord, GridSpec};
use crate::identity::run_identity;
use crate::output::{render, Rendered, Summary};

#[derive(Clone, Debug, Serialize)]
pub struct CoeffRecord {
    pub family: String,
    pub n: Vec<u64>,
    #[serde(rename = "type")]
    pub poly_type: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub basis: String,
    pub coefficients: Vec<String>,
    pub scale: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalRecord {
    pub x: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlotRecord {
    pub x: String,
    pub x_float: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub value: f64,
    pub weighted: f64,
}

/// Generated polynomials for one `(ws, n)`, with the configured fault
/// applied.
pub enum Generated {
    Type2(ScaledPolynomial),
    Type1(TypeIVector),
}

impl Generated {
    pub fn build(cfg: &JobConfig, ws: &WeightSystem, n: &MultiIndex) -> Result<Self, CliError> {
        let family = ws.family();
        Ok(if cfg.poly_type == 1 {
            let mut a = type1(ws, n)?;
            if let Some(f) = &cfg.fault {
                f.apply_type1(family, &mut a);
            }
            Generated::Type1(a)
        } else {
            let mut b = type2(ws, n)?;
            if let Some(f) = &cfg.fault {
                f.apply_type2(family, &mut b);
            }
            Generated::Type2(b)
        })
    }

    /// `(component, polynomial)` pairs; type II has no component index.
    pub fn parts(&self) -> Vec<(Option<usize>, &ScaledPolynomial)> {
        match self {
            Generated::Type2(b) => vec![(None, b)],
            Generated::Type1(a) => a.components.iter().enumerate().map(|(i, c)| (Some(i), c)).collect(),
        }
    }
}

fn coeff_records(cfg: &JobConfig, ws: &WeightSystem, n: &MultiIndex) -> Result<Vec<CoeffRecord>, CliError> {
    let generated = Generated::build(cfg, ws, n)?;
    Ok(generated
        .parts()
        .into_iter()
        .map(|(component, poly)| CoeffRecord {
            family: ws.family().name().to_string(),
            n: n.as_slice().to_vec(),
            poly_type: cfg.poly_type,
            component,
            basis: poly.basis.tag(),
            coefficients: rational_strings(&poly.coefficients),
            scale: poly.scale.to_string(),
        })
        .collect())
}

pub fn cmd_coeffs(cfg: &JobConfig) -> Result<Rendered, CliError> {
    let ws = cfg.weight_system()?;
    let n = cfg.multi_index(&ws)?;
    render(cfg, coeff_records(cfg, &ws, &n)?, None)
}

pub fn cmd_eval(cfg: &JobConfig) -> Result<Rendered, CliError> {
    let ws = cfg.weight_system()?;
    let n = cfg.multi_index(&ws)?;
    if cfg.x.is_empty() {
        return Err(CliError::Config("eval needs at least one --x".into()));
    }
    let generated = Generated::build(cfg, &ws, &n)?;
    let mut rows = Vec::new();
    for x in &cfg.x {
        for (component, poly) in generated.parts() {
            let value = poly.eval(x)?.normalized()?;
            rows.push(EvalRecord {
                x: x.to_string(),
                component,
                rational: value.as_rational().ok().map(|r| r.to_string()),
                value: value.to_string(),
            });
        }
    }
    render(cfg, rows, None)
}

/// All multi-indices with `|n| <= max_total` (entries may be zero).
fn all_indices(p: usize, max_total: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                let used: u64 = prefix.iter().sum();
                (0..=max_total - used).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

pub fn cmd_table(cfg: &JobConfig) -> Result<Rendered, CliError> {
    let ws = cfg.weight_system()?;
    let mut rows = Vec::new();
    for n in all_indices(ws.p(), cfg.max_total_degree) {
        let n = MultiIndex::new(n);
        if n.check(&ws).is_err() || (cfg.poly_type == 1 && n.total() == 0) {
            continue;
        }
        rows.extend(coeff_records(cfg, &ws, &n)?);
    }
    render(cfg, rows, None)
}

pub fn cmd_verify(cfg: &JobConfig) -> Result<Rendered, CliError> {
    let instances = GridSpec::from_config(cfg).instances();
    for inst in &instances {
        inst.weight_system()?;
        inst.n.check(&inst.weight_system()?)?;
    }
    let results: Vec<CheckRecord> = run_grid(&instances, cfg.fault.as_ref(), cfg.seed, cfg.jobs)?;
    let summary = Summary::from_statuses(results.iter().map(|r| &r.status));
    render(cfg, results, Some(summary))
}

pub fn cmd_identity(cfg: &JobConfig) -> Result<Rendered, CliError> {
    let results = run_identity(cfg)?;
    let summary = Summary::from_statuses(results.iter().map(|r| &r.status));
    render(cfg, results, Some(summary))
}

/// Sample points: `j/2` on the half-line, `j/(S+1)` inside `(0, 1)`, the
/// whole lattice for Hahn.
pub fn plot_points(ws: &WeightSystem, cfg: &JobConfig) -> Vec<Rational> {
    if ws.family() == Family::Hahn {
        return (0..=ws.big_n()).map(|x| int(x as i64)).collect();
    }
    if !cfg.x.is_empty() {
        return cfg.x.clone();
    }
    let s = cfg.samples as i64;
    (1..=s)
        .map(|j| match ws.family() {
            Family::LaguerreFirstKind => rat(j, 2),
            _ => rat(j, s + 1),
        })
        .collect()
}

fn ln_gamma(x: f64) -> Result<f64, CliError> {
    Ok(log_gamma_approx(x, MAX_PRECISION)?)
}

/// Type II weight factor multiplying `B(x)`: `e^{-x}`, `(1-x)^β`, or
/// `Γ(β+N-x+1)/(Γ(β+1)(N-x)!)` on the lattice.
fn type2_weight(ws: &WeightSystem, x: f64) -> Result<f64, CliError> {
    let beta = to_f64(&ws.beta());
    Ok(match ws.family() {
        Family::LaguerreFirstKind => (-x).exp(),
        Family::JacobiPineiro => (1.0 - x).powf(beta),
        Family::Hahn => {
            let rest = ws.big_n() as f64 - x;
            (ln_gamma(beta + rest + 1.0)? - ln_gamma(beta + 1.0)? - ln_gamma(rest + 1.0)?).exp()
        }
    })
}

/// The `i`-th weight at `x`.
fn weight(ws: &WeightSystem, i: usize, x: f64) -> Result<f64, CliError> {
    let a = to_f64(&ws.alpha()[i]);
    Ok(match ws.family() {
        Family::LaguerreFirstKind => x.powf(a) * (-x).exp(),
        Family::JacobiPineiro => x.powf(a) * (1.0 - x).powf(to_f64(&ws.beta())),
        Family::Hahn => {
            let lead = ln_gamma(a + 1.0 + x)? - ln_gamma(a + 1.0)? - ln_gamma(x + 1.0)?;
            (lead).exp() * type2_weight(ws, x)?
        }
    })
}

pub fn cmd_plot_data(cfg: &JobConfig) -> Result<Rendered, CliError> {
    let ws = cfg.weight_system()?;
    let n = cfg.multi_index(&ws)?;
    let generated = Generated::build(cfg, &ws, &n)?;
    let mut rows = Vec::new();
    for x in plot_points(&ws, cfg) {
        let xf = to_f64(&x);
        for (component, poly) in generated.parts() {
            let value = to_f64(&poly.eval_unscaled(&x)) * gamma_product_approx(&poly.scale)?;
            let w = match component {
                None => type2_weight(&ws, xf)?,
                Some(i) => weight(&ws, i, xf)?,
            };
            rows.push(PlotRecord {
                x: x.to_string(),
                x_float: xf,
                component,
                value,
                weighted: value * w,
            });
        }
    }
    render(cfg, rows, None)
}
