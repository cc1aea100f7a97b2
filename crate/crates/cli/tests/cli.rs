use std::process::{Command, Output};

use circsing::binomstats::rational;
use circsing::io::read_table_csv;
use circsing::singexact::ProbabilityReport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circsing"))
        .args(args)
        .env_remove("CIRCSING_ENUM_BUDGET")
        .env_remove("CIRCSING_BRUTE_BUDGET")
        .env_remove("CIRCSING_SAMPLES_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn exact_report_for_six() {
    let o = run(&["exact", "--n", "6", "--q", "1/2"]);
    let v = json(&o);
    assert_eq!(v["exact_union"]["num"], "7");
    assert_eq!(v["exact_union"]["den"], "16");
    assert_eq!(v["provenance"], "closed-form");
    let per: Vec<(u64, String)> = v["per_divisor"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            let r = &p["value"];
            (p["d"].as_u64().unwrap(), format!("{}/{}", r["num"].as_str().unwrap(), r["den"].as_str().unwrap()))
        })
        .collect();
    assert_eq!(
        per,
        vec![(1, "1/64".into()), (2, "5/16".into()), (3, "5/32".into()), (6, "5/32".into())]
    );
    let report = ProbabilityReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.exact_union, Some(rational(7, 16)));
}

#[test]
fn exact_report_for_two_and_signed() {
    let v = json(&run(&["exact", "--n", "2", "--q", "1/2"]));
    assert_eq!((v["exact_union"]["num"].as_str(), v["exact_union"]["den"].as_str()), (Some("1"), Some("2")));
    let v = json(&run(&["exact", "--n", "4", "--q", "1/2", "--signed"]));
    assert_eq!(v["model"], "signed");
    assert_eq!(v["exact_union"]["decimal"], "0.5");
}

#[test]
fn asym_closed_formula() {
    let v = json(&run(&["asym", "--n", "10000", "--q", "0.5", "--formula", "closed"]));
    let x = v["value"].as_f64().unwrap();
    assert!((x - 2.0 / (2.0 * std::f64::consts::PI * 1e4).sqrt()).abs() < 1e-15);
    assert!(format!("{x}").starts_with("0.0079788"));
    assert_eq!(v["formula"], "closed-form-corollary");
}

#[test]
fn divisor_and_bounds() {
    let v = json(&run(&["divisor", "--n", "6", "--d", "6", "--q", "1/2"]));
    assert_eq!(v["method"], "lattice-enumeration");
    assert_eq!(v["value"]["num"], "5");
    assert_eq!(v["value"]["den"], "32");
    assert!(v["enumeration"]["discard_ratio"].is_number());
    let v = json(&run(&["bounds", "--n", "9", "--d", "3", "--q", "1/2"]));
    assert_eq!(v[0]["lower"]["num"], "27");
    assert_eq!(v[0]["upper"]["den"], "64");
    let v = json(&run(&["bounds", "--n", "12", "--q", "1/3"]));
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn table_csv_round_trips() {
    let o = run(&["table", "--n-range", "4:16:4", "--q", "1/2", "--format", "csv"]);
    assert!(o.status.success());
    let rows = read_table_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![4, 8, 12, 16]);
    assert_eq!(rows[0].exact, Some(rational(1, 2)));
    assert_eq!(rows[2].exact, Some(rational(47, 128)));
    let text = stdout(&o);
    assert!(text.starts_with("n,exact_num,exact_den,exact_decimal,approx,ratio,formula\n"));
    assert_eq!(circsing::io::table_csv_string(&rows), text);
}

#[test]
fn table_json_and_output_file() {
    let dir = std::env::temp_dir().join(format!("circsing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let o = run(&["table", "--n-range", "5:7", "--q", "1/3", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["ratio"], 1.0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn monte_carlo_is_reproducible() {
    let args = ["mc", "--n", "4", "--q", "1/2", "--samples", "100000", "--seed", "7", "--shards", "3"];
    let a = json(&run(&args));
    let b = json(&run(&args));
    assert_eq!(a, b);
    assert_eq!(a["generator"], circsing::mcsim::GENERATOR);
    assert_eq!(a["q_source"], "1/2 -> 0.5");
    let p = a["p_hat"].as_f64().unwrap();
    assert!((p - 0.5).abs() <= 4.0 * a["stderr"].as_f64().unwrap());
}

#[test]
fn verify_prints_one_line_per_suite() {
    let o = run(&["verify", "--suite", "algebra", "--suite", "mc"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("algebra: ok"));
    assert!(lines[1].starts_with("mc: ok"));
    assert!(o.stderr.is_empty());
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["exact", "--n", "6", "--q", "0.5"]), 2);
    assert_eq!(code(&["exact", "--n", "6", "--q", "3/2"]), 2);
    assert_eq!(code(&["table", "--n-range", "9:4", "--q", "1/2"]), 2);
    assert_eq!(code(&["exact", "--n", "6", "--q", "1/2", "--format", "csv"]), 2);
    assert_eq!(code(&["verify", "--suite", "nope"]), 2);
    assert_eq!(code(&["divisor", "--n", "30", "--d", "30", "--q", "1/2", "--enum-budget", "100"]), 3);
    assert_eq!(code(&["mc", "--n", "4", "--q", "1/2", "--samples", "11", "--samples-cap", "10"]), 3);
    assert_eq!(code(&["--help"]), 0);
    let o = run(&["exact", "--n", "6", "--q", "0.5"]);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("a/b"));
}

#[test]
fn budget_env_overrides() {
    let o = Command::new(env!("CARGO_BIN_EXE_circsing"))
        .args(["exact", "--n", "12", "--q", "1/2"])
        .env("CIRCSING_BRUTE_BUDGET", "16")
        .output()
        .unwrap();
    let v = json(&o);
    assert_eq!(v["provenance"], "unavailable");
    assert!(v["exact_union"].is_null());
    assert!(String::from_utf8_lossy(&o.stderr).contains("brute-force budget"));
    let o = Command::new(env!("CARGO_BIN_EXE_circsing"))
        .args(["mc", "--n", "4", "--q", "1/2", "--samples", "100"])
        .env("CIRCSING_SAMPLES_CAP", "99")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
