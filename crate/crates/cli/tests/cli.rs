use std::process::Command;

use clap::Parser;
use serde_json::Value;

use mop_cli::config::{Cli, JobConfig};
use mop_cli::fault::FaultSpec;
use mop_cli::grid::{run_instance, GridSpec};
use mop_cli::output::Status;
use mop_core::families::{type1, type2};

fn mop(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mop")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, body) = mop(args);
    (code, serde_json::from_str(&body).unwrap())
}

fn run(args: &[&str]) -> String {
    let mut argv = vec!["mop"];
    argv.extend_from_slice(args);
    let cfg = JobConfig::from_cli(Cli::try_parse_from(argv).unwrap()).unwrap();
    mop_cli::run(&cfg).unwrap().body
}

#[test]
fn hahn_type1_single_coefficient() {
    let (code, v) = json(&["coeffs", "--family", "hahn", "--alpha", "1/2", "--beta", "1/4", "--N", "2", "--n", "1", "--type", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["coefficients"], serde_json::json!(["32/165"]));
    assert_eq!(v["results"][0]["scale"], "1");
}

#[test]
fn laguerre_zero_index_is_one() {
    let body = run(&["coeffs", "--family", "laguerre", "--alpha", "1/2", "--n", "0"]);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["results"][0]["coefficients"], serde_json::json!(["1"]));
}

#[test]
fn jp_type2_matches_oracle_output() {
    let body = run(&["coeffs", "--family", "jp", "--alpha", "1/2", "--alpha", "1/3", "--n", "1", "--n", "1"]);
    let v: Value = serde_json::from_str(&body).unwrap();
    let ws = mop_core::families::WeightSystem::jacobi_pineiro(
        vec![mop_core::exact::rat(1, 2), mop_core::exact::rat(1, 3)],
        mop_core::exact::rat(1, 4),
    )
    .unwrap();
    let n = mop_core::families::MultiIndex::new(vec![1, 1]);
    let oracle = mop_core::oracle::oracle_solve_type2(&ws, &n).unwrap();
    let generated = type2(&ws, &n).unwrap();
    assert!(generated.same_as(&oracle).unwrap());
    let from_cli: Vec<String> = v["results"][0]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().to_string())
        .collect();
    let listed: Vec<String> = generated.coefficients.iter().map(ToString::to_string).collect();
    assert_eq!(from_cli, listed);
}

#[test]
fn admissibility_failure_exits_2_with_record() {
    let (code, v) = json(&["coeffs", "--family", "laguerre", "--alpha", "1/2", "--alpha", "3/2", "--n", "1", "--n", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "admissibility");
    let (code, v) = json(&["coeffs", "--family", "hahn", "--alpha", "1/2", "--N", "1", "--n", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "admissibility");
    let (code, _) = mop(&["verify", "--inject-fault", "nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn empty_grid_is_vacuous() {
    let (code, v) = json(&["verify", "--max-total-degree", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["vacuous"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 0);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let base = ["verify", "--family", "hahn", "--p", "2", "--max-total-degree", "3", "--max-N", "5"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat());
    let four = run(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one, four);
    let a = run(&["identity", "--identity", "kummer", "--draws", "20", "--seed", "7"]);
    let b = run(&["identity", "--identity", "kummer", "--draws", "20", "--seed", "7"]);
    assert_eq!(a, b);
    let c = run(&["identity", "--identity", "kummer", "--draws", "20", "--seed", "8"]);
    assert_ne!(a, c);
}

#[test]
fn kummer_precondition_is_rejected_not_failed() {
    let (code, v) = json(&["identity", "--identity", "kummer", "--param", "1/2", "--param", "1", "--param", "1", "--param", "2", "--param", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["status"], "rejected");
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn chu_vandermonde_draws_pass() {
    let (code, v) = json(&["identity", "--identity", "chu-vandermonde", "--draws", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["pass"], 100);
}

#[test]
fn hahn_summation_explicit() {
    let body = run(&["identity", "--identity", "hahn-summation", "--alpha", "1/2", "--alpha", "1/3", "--N", "5", "--n", "2", "--n", "1", "--param", "2"]);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["results"][0]["status"], "pass");
}

#[test]
fn hahn_plot_data_has_lattice_rows() {
    let body = run(&["plot-data", "--family", "hahn", "--alpha", "1/2", "--N", "6", "--n", "2"]);
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    assert_eq!(reader.records().count(), 7);
}

#[test]
fn jp_type2_constant_term() {
    let body = run(&["plot-data", "--family", "jp", "--alpha", "1/2", "--alpha", "1/3", "--n", "2", "--n", "1", "--x", "0", "--format", "json"]);
    let v: Value = serde_json::from_str(&body).unwrap();
    let value = v["results"][0]["value"].as_f64().unwrap();
    let ws = mop_core::families::WeightSystem::jacobi_pineiro(
        vec![mop_core::exact::rat(1, 2), mop_core::exact::rat(1, 3)],
        mop_core::exact::rat(1, 4),
    )
    .unwrap();
    let b = type2(&ws, &mop_core::families::MultiIndex::new(vec![2, 1])).unwrap();
    let exact = mop_core::exact::to_f64(&b.to_monomial().coefficients[0]);
    assert!(((value - exact) / exact).abs() < 1e-12, "{value} vs {exact}");
}

#[test]
fn laguerre_sign_changes_bounded_by_degree() {
    let body = run(&["plot-data", "--family", "laguerre", "--alpha", "1/2", "--alpha", "1/3", "--n", "2", "--n", "2", "--samples", "60", "--format", "json"]);
    let v: Value = serde_json::from_str(&body).unwrap();
    let values: Vec<f64> = v["results"].as_array().unwrap().iter().map(|r| r["value"].as_f64().unwrap()).collect();
    let changes = values.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    assert!(changes <= 4);
}

#[test]
fn table_and_eval_render() {
    let body = run(&["table", "--family", "laguerre", "--alpha", "1/2", "--alpha", "1/3", "--max-total-degree", "2"]);
    // header plus the six indices with |n| <= 2
    assert_eq!(body.lines().count(), 7);
    let body = run(&["eval", "--family", "laguerre", "--alpha", "1/2", "--n", "1", "--x", "3/2"]);
    let v: Value = serde_json::from_str(&body).unwrap();
    // L_1^{(1/2)} up to normalisation vanishes at x = α+1
    assert_eq!(v["results"][0]["rational"], "0");
}

/// Perturbing any single coefficient of any generated polynomial makes some
/// check among criteria 1-3 fail on that instance.
#[test]
fn every_single_coefficient_fault_is_caught() {
    let mut spec = GridSpec::standard();
    spec.max_total_degree = 3;
    spec.max_n = 4;
    let instances = spec.instances();
    let picks = instances.iter().filter(|i| i.n.len() >= 2 && i.n.total() == 3);
    for inst in picks.step_by(3) {
        let ws = inst.weight_system().unwrap();
        let mut faults = Vec::new();
        let b = type2(&ws, &inst.n).unwrap();
        for index in 0..b.coefficients.len() {
            faults.push(FaultSpec { family: inst.family, poly_type: 2, component: 0, index });
        }
        let a = type1(&ws, &inst.n).unwrap();
        for (component, c) in a.components.iter().enumerate() {
            for index in 0..c.coefficients.len() {
                faults.push(FaultSpec { family: inst.family, poly_type: 1, component, index });
            }
        }
        for fault in faults {
            let records = run_instance(inst, Some(&fault), 1);
            let caught = records
                .iter()
                .any(|r| matches!(r.criterion, Some(1..=3)) && r.status != Status::Pass);
            assert!(caught, "{fault} on {:?} n={} not caught", inst.family, inst.n);
        }
    }
}
