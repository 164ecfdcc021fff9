//! The `identity` command: random or explicit checks of the summation
//! formulas and of the discrete Mellin inversion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use mop_core::exact::{int, rat, Rational};
use mop_core::families::{Family, MultiIndex, WeightSystem};
use mop_core::hypergeo::{
    check_chu_vandermonde, check_karp_prilepkina, check_kummer, check_rakha_rathie,
    hahn_summation_kp_instance, KpParams,
};
use mop_core::oracle::{check_discrete_mellin_inversion, check_hahn_summation_identity, hahn_summation_lhs, hahn_summation_target};
use mop_core::Error;

use crate::config::{rational_strings, IdentityName, JobConfig};
use crate::error::CliError;
use crate::grid::GridSpec;
use crate::output::Status;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityRecord {
    pub identity: &'static str,
    /// `random`, `explicit` or `grid`.
    pub source: &'static str,
    pub draw: usize,
    pub params: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityName {
    pub fn name(self) -> &'static str {
        match self {
            IdentityName::ChuVandermonde => "chu-vandermonde",
            IdentityName::Kummer => "kummer",
            IdentityName::RakhaRathie => "rakha-rathie",
            IdentityName::KarpPrilepkina => "karp-prilepkina",
            IdentityName::HahnSummation => "hahn-summation",
            IdentityName::MellinInversion => "mellin-inversion",
        }
    }

    pub fn default_draws(self) -> usize {
        match self {
            IdentityName::ChuVandermonde => 200,
            IdentityName::MellinInversion => 50,
            IdentityName::HahnSummation => 0,
            _ => 100,
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

/// Outcome of one attempted check; `Redraw` means the draw hit a pole or a
/// hypothesis and does not count.
enum Attempt {
    Done(Status, Option<String>),
    Redraw,
}

fn classify(r: Result<bool, Error>, random: bool) -> Attempt {
    match r {
        Ok(true) => Attempt::Done(Status::Pass, None),
        Ok(false) => Attempt::Done(Status::Fail, Some("identity does not hold at these parameters".into())),
        Err(Error::Precondition(_) | Error::Pole(_) | Error::DivisionByZero(_) | Error::Domain(_)) if random => {
            Attempt::Redraw
        }
        Err(e @ (Error::Precondition(_) | Error::Admissibility(_))) => Attempt::Done(Status::Rejected, Some(e.to_string())),
        Err(e) => Attempt::Done(Status::Error, Some(e.to_string())),
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-30..=30), rng.gen_range(1..=9))
}

fn record(identity: IdentityName, source: &'static str, draw: usize, params: Vec<String>, status: Status, detail: Option<String>) -> IdentityRecord {
    IdentityRecord {
        identity: identity.name(),
        source,
        draw,
        params,
        status,
        detail,
    }
}

pub fn run_identity(cfg: &JobConfig) -> Result<Vec<IdentityRecord>, CliError> {
    let name = cfg
        .identity
        .ok_or_else(|| CliError::Config("the identity command needs --identity".into()))?;
    if !cfg.params.is_empty() {
        return explicit(cfg, name).map(|r| vec![r]);
    }
    let draws = cfg.draws.unwrap_or(name.default_draws());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(name.stream());
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < draws {
        attempts += 1;
        if attempts > 1000 * draws.max(1) {
            return Err(CliError::Config(format!("could not find {draws} admissible draws")));
        }
        let (params, result) = draw(name, &mut rng);
        if let Attempt::Done(status, detail) = classify(result, true) {
            out.push(record(name, "random", out.len(), params, status, detail));
        }
    }
    match name {
        IdentityName::KarpPrilepkina => out.extend(kp_grid_instances()?),
        IdentityName::HahnSummation => out.extend(hahn_summation_grid(cfg)?),
        _ => {}
    }
    Ok(out)
}

fn draw(name: IdentityName, rng: &mut ChaCha8Rng) -> (Vec<String>, Result<bool, Error>) {
    match name {
        IdentityName::ChuVandermonde => {
            let (a, b) = (small_rational(rng), small_rational(rng));
            let n = rng.gen_range(0..=8u64);
            let params = vec![a.to_string(), b.to_string(), n.to_string()];
            (params, Ok(check_chu_vandermonde(&a, &b, n)))
        }
        IdentityName::Kummer => {
            let a1 = int(-rng.gen_range(0..=4));
            let p: Vec<Rational> = (0..4).map(|_| small_rational(rng)).collect();
            let mut params = vec![a1.to_string()];
            params.extend(rational_strings(&p));
            (params, check_kummer(&a1, &p[0], &p[1], &p[2], &p[3]))
        }
        IdentityName::RakhaRathie => {
            let alpha = int(-rng.gen_range(0..=3));
            let p: Vec<Rational> = (0..6).map(|_| small_rational(rng)).collect();
            let mut params = vec![alpha.to_string()];
            params.extend(rational_strings(&p));
            (params, check_rakha_rathie(&alpha, &p[0], &p[1], &p[2], &p[3], &p[4], &p[5]))
        }
        IdentityName::KarpPrilepkina => {
            let r = rng.gen_range(0..=2);
            let l = rng.gen_range(1..=2);
            let kp = KpParams {
                a: -rng.gen_range(0..=4),
                f: (0..r).map(|_| small_rational(rng)).collect(),
                m: (0..r).map(|_| rng.gen_range(0..=2)).collect(),
                b: (0..l).map(|_| small_rational(rng)).collect(),
                k: (0..l).map(|_| rng.gen_range(1..=3)).collect(),
            };
            (kp_strings(&kp), check_karp_prilepkina(&kp))
        }
        IdentityName::MellinInversion => {
            let big_n = rng.gen_range(0..=8u64);
            let f: Vec<Rational> = (0..=big_n).map(|_| small_rational(rng)).collect();
            let result = WeightSystem::hahn(vec![rat(1, 2)], rat(1, 4), big_n)
                .and_then(|ws| check_discrete_mellin_inversion(&ws, &f));
            let mut params = vec![big_n.to_string()];
            params.extend(rational_strings(&f));
            (params, result)
        }
        IdentityName::HahnSummation => unreachable!("hahn-summation runs on the grid only"),
    }
}

fn kp_strings(kp: &KpParams) -> Vec<String> {
    let list = |v: Vec<String>| format!("[{}]", v.join(" "));
    vec![
        format!("a={}", kp.a),
        format!("f={}", list(rational_strings(&kp.f))),
        format!("m={}", list(kp.m.iter().map(ToString::to_string).collect())),
        format!("b={}", list(rational_strings(&kp.b))),
        format!("k={}", list(kp.k.iter().map(ToString::to_string).collect())),
    ]
}

fn hahn_grid() -> Vec<(WeightSystem, MultiIndex)> {
    let mut spec = GridSpec::standard();
    spec.families = vec![Family::Hahn];
    spec.instances()
        .into_iter()
        .filter_map(|inst| Some((inst.weight_system().ok()?, inst.n)))
        .collect()
}

/// The Karp–Prilepkina instantiations behind the Hahn type I summation, for
/// every Hahn grid instance and every `j <= |n|-1` that has a `b` parameter.
fn kp_grid_instances() -> Result<Vec<IdentityRecord>, CliError> {
    let mut out = Vec::new();
    for (ws, n) in hahn_grid() {
        for j in 0..n.total() {
            let kp = hahn_summation_kp_instance(ws.alpha(), &ws.beta(), ws.big_n(), n.as_slice(), j)?;
            if kp.b.is_empty() {
                // p = 1 below the top degree: a plain terminating sum, covered by hahn-summation
                continue;
            }
            let mut params = vec![format!("{ws}"), format!("n={n}"), format!("j={j}")];
            params.extend(kp_strings(&kp));
            let (status, detail) = match classify(check_karp_prilepkina(&kp), false) {
                Attempt::Done(s, d) => (s, d),
                Attempt::Redraw => unreachable!(),
            };
            out.push(record(IdentityName::KarpPrilepkina, "grid", out.len(), params, status, detail));
        }
    }
    Ok(out)
}

fn hahn_summation_grid(cfg: &JobConfig) -> Result<Vec<IdentityRecord>, CliError> {
    let cases = if cfg.alpha.is_empty() && cfg.n.is_empty() {
        hahn_grid()
    } else {
        let ws = cfg.weight_system_for(Family::Hahn, cfg.big_n.unwrap_or(cfg.max_n))?;
        let n = cfg.multi_index(&ws)?;
        vec![(ws, n)]
    };
    let mut out = Vec::new();
    for (ws, n) in cases {
        for j in 0..n.total() {
            out.push(hahn_summation_record(&ws, &n, j, "grid", out.len()));
        }
    }
    Ok(out)
}

fn hahn_summation_record(ws: &WeightSystem, n: &MultiIndex, j: u64, source: &'static str, draw: usize) -> IdentityRecord {
    let params = vec![format!("{ws}"), format!("n={n}"), format!("j={j}")];
    let (status, detail) = match check_hahn_summation_identity(ws, n, j) {
        Ok(true) => (Status::Pass, None),
        Ok(false) => {
            let lhs = hahn_summation_lhs(ws, n, j).map(|v| v.to_string()).unwrap_or_default();
            (Status::Fail, Some(format!("sum {lhs}, expected {}", hahn_summation_target(n, j))))
        }
        Err(e @ (Error::Precondition(_) | Error::Admissibility(_))) => (Status::Rejected, Some(e.to_string())),
        Err(e) => (Status::Error, Some(e.to_string())),
    };
    record(IdentityName::HahnSummation, source, draw, params, status, detail)
}

fn need(name: IdentityName, params: &[Rational], count: usize) -> Result<(), CliError> {
    if params.len() != count {
        return Err(CliError::Config(format!(
            "{} takes {count} --param values, got {}",
            name.name(),
            params.len()
        )));
    }
    Ok(())
}

fn as_u64(name: &str, r: &Rational) -> Result<u64, CliError> {
    if r.is_integer() && *r >= int(0) {
        r.to_integer()
            .try_into()
            .map_err(|_| CliError::Config(format!("{name} = {r} is too large")))
    } else {
        Err(CliError::Config(format!("{name} = {r} must be a nonnegative integer")))
    }
}

/// A single check at `--param` values. Hypothesis violations are recorded
/// as `rejected`.
fn explicit(cfg: &JobConfig, name: IdentityName) -> Result<IdentityRecord, CliError> {
    let p = &cfg.params;
    let params = rational_strings(p);
    let result = match name {
        IdentityName::ChuVandermonde => {
            need(name, p, 3)?;
            Ok(check_chu_vandermonde(&p[0], &p[1], as_u64("n", &p[2])?))
        }
        IdentityName::Kummer => {
            need(name, p, 5)?;
            check_kummer(&p[0], &p[1], &p[2], &p[3], &p[4])
        }
        IdentityName::RakhaRathie => {
            need(name, p, 7)?;
            check_rakha_rathie(&p[0], &p[1], &p[2], &p[3], &p[4], &p[5], &p[6])
        }
        IdentityName::KarpPrilepkina => {
            return Err(CliError::Config(
                "karp-prilepkina has no --param form; run it with random draws".into(),
            ))
        }
        IdentityName::HahnSummation => {
            need(name, p, 1)?;
            let ws = cfg.weight_system_for(Family::Hahn, cfg.big_n.unwrap_or(cfg.max_n))?;
            let n = cfg.multi_index(&ws)?;
            return Ok(hahn_summation_record(&ws, &n, as_u64("j", &p[0])?, "explicit", 0));
        }
        IdentityName::MellinInversion => {
            let ws = WeightSystem::hahn(vec![rat(1, 2)], rat(1, 4), p.len() as u64 - 1)?;
            check_discrete_mellin_inversion(&ws, p)
        }
    };
    let (status, detail) = match classify(result, false) {
        Attempt::Done(s, d) => (s, d),
        Attempt::Redraw => unreachable!(),
    };
    Ok(record(name, "explicit", 0, params, status, detail))
}
