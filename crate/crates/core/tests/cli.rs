use std::process::{Command, Output};

use susy_riccati::darboux::{family_free_term, u_general, w_general};
use susy_riccati::dirac::{w2_closed_form, D2Options};
use susy_riccati::{Complex, Kappa, Params};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_susy-riccati")).args(args).output().unwrap()
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn verify_reports_all_checks_passing() {
    let out = run(&["verify", "--kappa", "1", "--c", "1", "--grid", "0:1.4:500"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["subcommand"], "verify");
    assert_eq!(report["pass"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["name", "sup_norm", "l2_norm", "tolerance", "pass"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn family_csv_round_trips_exactly() {
    let out = run(&["family", "--kappa", "-1", "--c", "1", "--lambda", "2", "--grid", "0:4:800", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(header, ["eta", "u_g", "c_family", "w_g"]);
    // eta = 0 is a pole of u_g and is excluded
    assert_eq!(rows.len(), 799);
    let p = Params::new(Kappa::Minus, 1.0).unwrap().with_lambda(2.0);
    for row in rows.iter().step_by(37) {
        let eta = row[0];
        assert_eq!(row[1], u_general(&p, eta).unwrap());
        assert_eq!(row[2], family_free_term(&p, eta).unwrap());
        assert_eq!(row[3], w_general(&p, eta).unwrap());
    }
}

#[test]
fn dirac2_trace_and_report() {
    let out =
        run(&["dirac2", "--kappa", "1", "--c", "1", "--K", "1", "--A", "1", "--B", "0", "--grid", "0.05:1.3:400"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(header, ["eta", "w2_re", "w2_im"]);
    let p = Params::new(Kappa::Plus, 1.0).unwrap().with_mass(1.0);
    let w = w2_closed_form(&p, rows[123][0], &D2Options::default()).unwrap();
    assert_eq!(Complex::new(rows[123][1], rows[123][2]), w);
    let report: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(report["checks"][0]["sup_norm"].as_f64().unwrap() < 1e-8);
}

#[test]
fn json_output_and_report_file() {
    let dir = std::env::temp_dir().join(format!("susy-riccati-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (trace, report) = (dir.join("t.json"), dir.join("r.json"));
    let out = run(&[
        "dirac1",
        "--kappa",
        "1",
        "--grid",
        "0:1.2:50",
        "--output",
        "json",
        "--out",
        trace.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty() && out.stderr.is_empty());
    let t: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t["columns"][1], "w1_re");
    assert_eq!(t["rows"].as_array().unwrap().len(), 50);
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["pass"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--grid", "0:1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--kappa", "3", "--grid", "0:1:5"]).status.code(), Some(2));
    assert_eq!(run(&["family", "--grid", "-1:1:5"]).status.code(), Some(2));
    // the as-printed bracket violates the first-order rows once K2 != 0
    let failed = run(&["dirac3", "--K1", "0.6", "--K2", "1.4", "--grid", "0.1:1.3:100"]);
    assert_eq!(failed.status.code(), Some(1));
    let ok = run(&["dirac3", "--K1", "0.6", "--K2", "1.4", "--grid", "0.1:1.3:100", "--d3-variant", "i-on-both"]);
    assert_eq!(ok.status.code(), Some(0));
    // K = 1.5 gives p = 2, so the first branch has lower parameter -1 and does not terminate
    let pole = run(&["dirac2", "--kappa", "1", "--K", "1.5", "--A", "1", "--grid", "0.1:1:5"]);
    assert_eq!(pole.status.code(), Some(3));
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["dirac3", "--K1", "0.3", "--grid", "0.1:1.2:120", "--d3-variant", "i-on-both"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}
