use std::process::{Command, Output};

use u21zeta::exactmath::parse_rational;
use u21zeta::repparams::{CaseParams, CaseTag, DualPairCase};
use u21zeta::zetaeval::zeta_closed_form;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_u21zeta")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exited normally")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn classify_known_parameter() {
    let v = json(&["classify", "--lambda", "-1/2 -5/2 -3/2"]);
    assert_eq!(v["schema"], "u21zeta-cli/1");
    let row = &v["rows"][0];
    assert_eq!(row["chamber"], "III");
    assert_eq!(row["case"], "C1");
    assert_eq!(row["subcase"], "III");
    assert_eq!(row["params"], "mu1=2 mu2=0 alpha=2");
    assert_eq!(row["zeta_closed"], "1/18");
    assert_eq!(row["c_squared"], "1/9");
}

#[test]
fn classify_chamber_one() {
    let v = json(&["classify", "--lambda", "7/2,3/2,-1/2"]);
    assert_eq!(v["rows"][0]["chamber"], "I");
    assert_eq!(v["rows"][0]["case"], "B");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(code(&["classify", "--lambda", "1/2 1/2 -3/2"]), 2);
    assert_eq!(code(&["classify", "--lambda", "1 2"]), 2);
    assert_eq!(code(&["verify", "nonsense"]), 2);
    assert_eq!(code(&["zeta", "--case", "C1", "--mu1", "1", "--mu2", "0", "--alpha", "0", "--nu", "3"]), 2);
    assert_eq!(code(&["zeta", "--case", "C1", "--mu1", "1", "--mu2", "0", "--alpha", "0"]), 2);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", "theorem1", "--grid-max", "8"]), 0);
    assert_eq!(code(&["verify", "ode", "--grid-max", "4"]), 0);
    assert_eq!(code(&["verify", "zeta", "--grid-max", "2"]), 0);
    // The grid reaches a chamber-II C1 case with alpha > 0, where the
    // tabulated value disagrees with the integral.
    assert_eq!(code(&["verify", "zeta", "--grid-max", "4"]), 1);
}

#[test]
fn zeta_numeric_matches_closed_form() {
    let v = json(&["zeta", "--lambda", "-1/2 -5/2 -3/2"]);
    let row = &v["rows"][0];
    assert_eq!(row["zeta_closed"], "1/18");
    assert_eq!(row["within_tol"], true);
    assert!(row["rel_error"].as_f64().unwrap() < 1e-10);
}

#[test]
fn table_csv_round_trips_exact_values() {
    let text = stdout(&["table", "--case", "C1", "--mu1", "0..3", "--mu2", "0..3", "--alpha", "0..8", "--format", "csv"]);
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let head = rd.headers().unwrap().clone();
    let col = |name: &str| head.iter().position(|h| h == name).unwrap();
    let (mut ok, mut total) = (0, 0);
    for rec in rd.records() {
        let rec = rec.unwrap();
        total += 1;
        let v: [u32; 3] = [1, 2, 3].map(|k| rec[k].parse().unwrap());
        let case = CaseParams::from_values(CaseTag::C1, v).map(DualPairCase::from_params);
        match case {
            Some(Ok(case)) => {
                assert_eq!(&rec[col("status")], "ok");
                assert_eq!(parse_rational(&rec[col("zeta_closed")]).unwrap(), zeta_closed_form(&case).ratio);
                ok += 1;
            }
            _ => assert_ne!(&rec[col("status")], "ok", "{v:?}"),
        }
    }
    assert_eq!(total, 4 * 4 * 9);
    assert!(ok > 0 && ok < total);
}

#[test]
fn table_edges() {
    let empty = stdout(&["table", "--case", "C1", "--mu1", "5..3", "--mu2", "0", "--alpha", "0", "--format", "csv"]);
    assert_eq!(empty.lines().count(), 1);
    let boundary = stdout(&["table", "--case", "C1", "--mu1", "1", "--mu2", "0", "--alpha", "0..1", "--format", "csv"]);
    let rows: Vec<&str> = boundary.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.contains("BoundaryParameter")));
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--case", "D1", "--nu1", "0..3", "--nu2", "0..3", "--beta", "0..3", "--numeric", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let mc = ["zeta", "--lambda", "-1/2 -5/2 -3/2", "--monte-carlo", "2000", "--seed", "7", "--format", "json"];
    assert_eq!(stdout(&mc), stdout(&mc));
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "lambda = \"-1/2 -5/2 -3/2\"\nformat = \"json\"\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&["classify", "--config", cfg])).unwrap();
    assert_eq!(v["rows"][0]["case"], "C1");
    let csv = stdout(&["classify", "--config", cfg, "--format", "csv"]);
    assert!(csv.starts_with("lambda,"));

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "lamda = \"1/2 3/2 5/2\"\n").unwrap();
    assert_eq!(code(&["classify", "--config", bad.to_str().unwrap()]), 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&["classify", "--lambda", "-1/2 -5/2 -3/2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "classify");
}
