//! Verification grid: instance enumeration and the per-instance checks.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use mop_core::contour::{
    hahn_type2_residue_sum, interpolation_recover_p, normalization_constant,
    type1_linear_form_residues, verify_ir_lemma, verify_type2_series_equivalence, LinearFormValue,
};
use mop_core::exact::{factorial, int, pochhammer, rat, Rational};
use mop_core::families::{
    hahn_jp_coefficient_relation, hahn_type1_p2_kdf, hahn_type2_weighted_series, type1, type2,
    Family, MultiIndex, ScaledPolynomial, TypeIVector, WeightSystem,
};
use mop_core::oracle::{
    check_type1_orthogonality, check_type2_orthogonality, mellin_type2_sides, oracle_solve_type1,
    oracle_solve_type2,
};

use crate::config::{default_alpha_sets, rational_strings, JobConfig};
use crate::error::CliError;
use crate::fault::FaultSpec;
use crate::output::Status;

/// One point of the grid.
#[derive(Clone, Debug)]
pub struct Instance {
    pub index: usize,
    pub family: Family,
    pub alpha: Vec<Rational>,
    pub beta: Rational,
    pub big_n: u64,
    pub n: MultiIndex,
}

impl Instance {
    pub fn weight_system(&self) -> Result<WeightSystem, mop_core::Error> {
        match self.family {
            Family::LaguerreFirstKind => WeightSystem::laguerre(self.alpha.clone()),
            Family::JacobiPineiro => WeightSystem::jacobi_pineiro(self.alpha.clone(), self.beta.clone()),
            Family::Hahn => WeightSystem::hahn(self.alpha.clone(), self.beta.clone(), self.big_n),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GridSpec {
    pub families: Vec<Family>,
    pub p_values: Vec<usize>,
    pub alpha_sets: Vec<Vec<Rational>>,
    pub beta: Rational,
    pub max_total_degree: u64,
    pub max_n: u64,
    pub fixed_n: Option<Vec<u64>>,
    pub fixed_big_n: Option<u64>,
}

impl GridSpec {
    /// The acceptance grid: p ≤ 3, n_i ≥ 1, |n| ≤ 4, N ≤ 8, β = 1/4.
    pub fn standard() -> Self {
        GridSpec {
            families: Family::ALL.to_vec(),
            p_values: vec![1, 2, 3],
            alpha_sets: default_alpha_sets(),
            beta: rat(1, 4),
            max_total_degree: 4,
            max_n: 8,
            fixed_n: None,
            fixed_big_n: None,
        }
    }

    pub fn from_config(cfg: &JobConfig) -> Self {
        let mut spec = GridSpec::standard();
        spec.families = cfg.families();
        spec.beta = cfg.beta_or_default();
        spec.max_total_degree = cfg.max_total_degree;
        spec.max_n = cfg.max_n;
        spec.fixed_big_n = cfg.big_n;
        if !cfg.alpha.is_empty() {
            spec.alpha_sets = vec![cfg.alpha.clone()];
            spec.p_values = vec![cfg.alpha.len()];
        } else if let Some(p) = cfg.p {
            spec.p_values = vec![p];
        }
        if !cfg.n.is_empty() {
            spec.p_values = vec![cfg.n.len()];
            spec.fixed_n = Some(cfg.n.clone());
        }
        spec
    }

    /// Every instance, in a fixed order.
    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for &family in &self.families {
            for &p in &self.p_values {
                let mut seen: Vec<Vec<Rational>> = Vec::new();
                for set in &self.alpha_sets {
                    if set.len() < p {
                        continue;
                    }
                    let alpha = set[..p].to_vec();
                    if seen.contains(&alpha) {
                        continue;
                    }
                    seen.push(alpha.clone());
                    let indices = match &self.fixed_n {
                        Some(n) => vec![n.clone()],
                        None => positive_indices(p, self.max_total_degree),
                    };
                    for n in indices {
                        let total: u64 = n.iter().sum();
                        if total > self.max_total_degree || total == 0 {
                            continue;
                        }
                        let lattice: Vec<u64> = match (family, self.fixed_big_n) {
                            (Family::Hahn, Some(big_n)) => vec![big_n],
                            (Family::Hahn, None) => (total..=self.max_n).collect(),
                            _ => vec![0],
                        };
                        for big_n in lattice {
                            if family == Family::Hahn && big_n < total {
                                continue;
                            }
                            out.push(Instance {
                                index: out.len(),
                                family,
                                alpha: alpha.clone(),
                                beta: self.beta.clone(),
                                big_n,
                                n: MultiIndex::new(n.clone()),
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Multi-indices with all entries ≥ 1 and total ≤ `max_total`, in
/// lexicographic order.
pub fn positive_indices(p: usize, max_total: u64) -> Vec<Vec<u64>> {
    fn rec(p: usize, budget: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == p {
            out.push(prefix.clone());
            return;
        }
        let remaining = (p - prefix.len() - 1) as u64;
        if budget < remaining + 1 {
            return;
        }
        for v in 1..=budget - remaining {
            prefix.push(v);
            rec(p, budget - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if p > 0 {
        rec(p, max_total, &mut Vec::new(), &mut out);
    }
    out
}

/// Outcome of one check on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub criterion: Option<u8>,
    pub check: &'static str,
    pub family: String,
    pub alpha: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<u64>,
    pub n: Vec<u64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

struct Recorder<'a> {
    inst: &'a Instance,
    records: Vec<CheckRecord>,
}

impl<'a> Recorder<'a> {
    fn push(&mut self, criterion: Option<u8>, check: &'static str, outcome: Result<Option<String>, String>) {
        let (status, detail) = match outcome {
            Ok(None) => (Status::Pass, None),
            Ok(Some(why)) => (Status::Fail, Some(why)),
            Err(e) => (Status::Error, Some(e)),
        };
        let inst = self.inst;
        self.records.push(CheckRecord {
            criterion,
            check,
            family: inst.family.name().to_string(),
            alpha: rational_strings(&inst.alpha),
            beta: (inst.family != Family::LaguerreFirstKind).then(|| inst.beta.to_string()),
            big_n: (inst.family == Family::Hahn).then_some(inst.big_n),
            n: inst.n.as_slice().to_vec(),
            status,
            detail,
        });
    }
}

type Outcome = Result<Option<String>, String>;

fn verdict(ok: bool, why: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(why())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Evaluation points for the linear-form comparison.
fn sample_points(ws: &WeightSystem) -> Vec<Rational> {
    match ws.family() {
        Family::Hahn => {
            let n = ws.big_n();
            let mut pts: Vec<u64> = (0..5).map(|j| (j * n + 2) / 4).collect();
            pts.dedup();
            pts.into_iter().map(|k| int(k as i64)).collect()
        }
        _ => vec![rat(1, 7), rat(1, 3), rat(1, 2), rat(2, 3), rat(9, 10)],
    }
}

fn random_s(rng: &mut ChaCha8Rng, ws: &WeightSystem) -> Rational {
    loop {
        let s = rat(rng.gen_range(-40..=40), rng.gen_range(1..=12));
        let nonpositive_int = |r: &Rational| r.is_integer() && *r <= Rational::zero();
        if nonpositive_int(&s) {
            continue;
        }
        if ws.family() == Family::JacobiPineiro && nonpositive_int(&(&s + ws.beta() + int(1))) {
            continue;
        }
        return s;
    }
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs every check on one instance.
pub fn run_instance(inst: &Instance, fault: Option<&FaultSpec>, seed: u64) -> Vec<CheckRecord> {
    let mut rec = Recorder {
        inst,
        records: Vec::new(),
    };
    let ws = match inst.weight_system() {
        Ok(ws) => ws,
        Err(e) => {
            rec.push(None, "admissibility", Err(err(e)));
            return rec.records;
        }
    };
    let n = &inst.n;
    let family = inst.family;

    let b = type2(&ws, n).map(|mut b| {
        if let Some(f) = fault {
            f.apply_type2(family, &mut b);
        }
        b
    });
    let a = type1(&ws, n).map(|mut a| {
        if let Some(f) = fault {
            f.apply_type1(family, &mut a);
        }
        a
    });

    match &a {
        Ok(a) => type1_checks(&mut rec, &ws, n, a),
        Err(e) => rec.push(Some(2), "type1-generation", Err(err(e))),
    }
    match &b {
        Ok(b) => type2_checks(&mut rec, &ws, n, b),
        Err(e) => rec.push(Some(2), "type2-generation", Err(err(e))),
    }
    rec.push(Some(3), "type2-series", type2_series(&ws, n));
    mellin_checks(&mut rec, &ws, n, &mut instance_rng(seed, inst.index));
    if family == Family::Hahn {
        rec.push(Some(8), "hahn-jp-relation", hahn_jp_coefficient_relation(&ws, n)
            .map(|ok| verdict(ok, || "coefficient relation violated".into()))
            .map_err(err));
    }
    rec.records
}

fn type1_checks(rec: &mut Recorder, ws: &WeightSystem, n: &MultiIndex, a: &TypeIVector) {
    let family = ws.family();
    let report = check_type1_orthogonality(ws, n, a).map_err(err).map(|r| {
        verdict(r.pass(), || {
            let failures: Vec<String> = r.failures().map(|f| format!("j={}: {}", f.j, f.value)).collect();
            let norm = r
                .normalization
                .as_ref()
                .map(|x| format!("normalization {} (target {})", x.value, x.target))
                .unwrap_or_default();
            format!("{} {}", failures.join(", "), norm)
        })
    });
    let criterion = (family == Family::Hahn).then_some(1);
    let name = if family == Family::Hahn { "hahn-type1-orthogonality" } else { "type1-orthogonality" };
    rec.push(criterion, name, report);

    rec.push(Some(2), "oracle-type1", oracle_solve_type1(ws, n)
        .and_then(|o| a.same_as(&o))
        .map(|ok| verdict(ok, || "type I vector differs from the linear-system solution".into()))
        .map_err(err));

    rec.push(Some(3), "type1-residues", type1_residue_check(ws, n, a));

    if n.total() >= 2 {
        rec.push(Some(4), "recovered-constant", recovered_constant(ws, n, a));
    }

    if family == Family::Hahn && ws.p() == 2 {
        rec.push(Some(8), "kdf-agreement", kdf_agreement(ws, n, a));
    }
}

fn type1_residue_check(ws: &WeightSystem, n: &MultiIndex, a: &TypeIVector) -> Outcome {
    for x in sample_points(ws) {
        let direct = LinearFormValue::from_type1(ws, a, &x).map_err(err)?;
        let residues = type1_linear_form_residues(ws, n, &x).map_err(err)?;
        if !residues.same_as(&direct).map_err(err)? {
            return Ok(Some(format!("residue sum {residues} vs direct {direct}")));
        }
    }
    Ok(None)
}

fn recovered_constant(ws: &WeightSystem, n: &MultiIndex, a: &TypeIVector) -> Outcome {
    let p = interpolation_recover_p(ws, n, a).map_err(err)?;
    let expected = normalization_constant(ws, n)
        .and_then(|c| c.value.as_rational())
        .map_err(err)?;
    if p.len() != 1 || !verify_ir_lemma(ws, n, &p) {
        return Ok(Some(format!("recovered polynomial has degree {}", p.len() - 1)));
    }
    Ok(verdict(p[0] == expected, || format!("recovered {} expected {expected}", p[0])))
}

fn kdf_agreement(ws: &WeightSystem, n: &MultiIndex, a: &TypeIVector) -> Outcome {
    for i in 0..2 {
        for x in 0..=ws.big_n() {
            let general = a.components[i]
                .eval(&int(x as i64))
                .and_then(|v| v.as_rational())
                .map_err(err)?;
            let kdf = hahn_type1_p2_kdf(ws, n, i, x).map_err(err)?;
            if kdf != general {
                return Ok(Some(format!("component {i} at x={x}: {kdf} vs {general}")));
            }
        }
    }
    Ok(None)
}

fn type2_checks(rec: &mut Recorder, ws: &WeightSystem, n: &MultiIndex, b: &ScaledPolynomial) {
    rec.push(None, "type2-orthogonality", check_type2_orthogonality(ws, n, b)
        .map(|r| verdict(r.pass(), || {
            let f: Vec<String> = r
                .failures()
                .map(|f| format!("w{} j={}: {}", f.weight.unwrap_or(0), f.j, f.value))
                .collect();
            f.join(", ")
        }))
        .map_err(err));

    rec.push(Some(2), "oracle-type2", oracle_solve_type2(ws, n)
        .and_then(|o| b.same_as(&o))
        .map(|ok| verdict(ok, || "type II polynomial differs from the linear-system solution".into()))
        .map_err(err));

    if ws.family() == Family::Hahn {
        rec.push(Some(3), "hahn-residue-sum", hahn_residue_sum(ws, n, b));
    }
}

fn hahn_residue_sum(ws: &WeightSystem, n: &MultiIndex, b: &ScaledPolynomial) -> Outcome {
    let big_n = ws.big_n();
    for x in 0..=big_n {
        let residues = hahn_type2_residue_sum(ws, n, x).map_err(err)?;
        let series = hahn_type2_weighted_series(ws, n, x).map_err(err)?;
        let direct = b.eval_unscaled(&int(x as i64))
            * pochhammer(&(ws.beta() + int(1)), (big_n - x) as i64).map_err(err)?
            / factorial(big_n - x);
        if residues != series || series != direct {
            return Ok(Some(format!("x={x}: residues {residues}, series {series}, direct {direct}")));
        }
    }
    Ok(None)
}

fn type2_series(ws: &WeightSystem, n: &MultiIndex) -> Outcome {
    let k_max = ws.big_n().max(6);
    verify_type2_series_equivalence(ws, n, k_max)
        .map(|ok| verdict(ok, || format!("residue and series coefficients differ for some k <= {k_max}")))
        .map_err(err)
}

fn mellin_checks(rec: &mut Recorder, ws: &WeightSystem, n: &MultiIndex, rng: &mut ChaCha8Rng) {
    let mut outcome: Outcome = Ok(None);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 5 && attempts < 100 {
        attempts += 1;
        let s = random_s(rng, ws);
        match mellin_type2_sides(ws, n, &s) {
            Ok((lhs, rhs)) => {
                checked += 1;
                if lhs != rhs {
                    outcome = Ok(Some(format!("s={s}: {lhs} vs {rhs}")));
                    break;
                }
            }
            Err(mop_core::Error::Pole(_)) => continue,
            Err(e) => {
                outcome = Err(err(e));
                break;
            }
        }
    }
    if outcome == Ok(None) && checked < 5 {
        outcome = Err(format!("only {checked} non-pole points found"));
    }
    rec.push(Some(5), "mellin", outcome);

    let mut zeros: Outcome = Ok(None);
    'outer: for (a, &ni) in ws.alpha().iter().zip(n.as_slice()) {
        for k in 1..=ni {
            let s = a + int(k as i64);
            match mellin_type2_sides(ws, n, &s) {
                Ok((lhs, rhs)) if lhs.is_zero() && rhs.is_zero() => {}
                Ok((lhs, rhs)) => {
                    zeros = Ok(Some(format!("s={s}: {lhs} vs {rhs}, expected 0")));
                    break 'outer;
                }
                Err(e) => {
                    zeros = Err(err(e));
                    break 'outer;
                }
            }
        }
    }
    rec.push(Some(5), "mellin-zeros", zeros);
}

/// Runs the whole grid on `jobs` threads (0 = automatic); the output order
/// depends only on the instance order.
pub fn run_grid(
    instances: &[Instance],
    fault: Option<&FaultSpec>,
    seed: u64,
    jobs: usize,
) -> Result<Vec<CheckRecord>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let nested: Vec<Vec<CheckRecord>> = pool.install(|| {
        instances
            .par_iter()
            .map(|inst| run_instance(inst, fault, seed))
            .collect()
    });
    Ok(nested.into_iter().flatten().collect())
}
