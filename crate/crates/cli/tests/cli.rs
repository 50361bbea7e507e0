use std::process::{Command, Output};

use serde_json::Value;

fn qflag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qflag")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is json")
}

#[test]
fn projective_line_passes_everything() {
    let out = qflag(&["--type", "A", "--rank", "1", "--node", "1", "--suites", "all", "--q", "1/2", "--mode", "symbolic"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["pass"], true);
    assert_eq!(r["suites"].as_array().unwrap().len(), 5);
    assert_eq!(r["certificate"]["verdict"], "pass");
    assert!(r["convention_stamp"].as_str().unwrap().contains("t=q^(1/m)"));
}

#[test]
fn invalid_node_is_a_usage_error() {
    let out = qflag(&["--type", "A", "--rank", "2", "--node", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_arguments_are_usage_errors() {
    for args in [
        vec!["--type", "A", "--rank", "1", "--node", "1", "--q", "0.5"],
        vec!["--type", "A", "--rank", "1", "--node", "1", "--q", "3/2"],
        vec!["--type", "A", "--rank", "1", "--node", "1", "--suites", "homology"],
        vec!["--type", "G", "--rank", "2", "--node", "1"],
        vec!["--type", "A", "--rank", "1"],
        vec!["--type", "E", "--rank", "6", "--node", "1"],
        vec!["--type", "A", "--rank", "1", "--node", "1", "--mode", "numeric"],
    ] {
        let out = qflag(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn quadric_in_sampled_mode() {
    let out = qflag(&["--type", "B", "--rank", "2", "--node", "1", "--mode", "sampled", "--q", "1/3,1/2,2/3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    let cert = &r["certificate"];
    assert_eq!(cert["M"], 3);
    assert_eq!(cert["dims"].as_array().unwrap()[..7], [1, 6, 15, 20, 15, 6, 1].map(Value::from));
    let values = cert["lefschetz"][0]["values"].as_array().unwrap();
    let qs: Vec<&str> = values.iter().map(|v| v["q"].as_str().unwrap()).collect();
    assert_eq!(qs, ["1/3", "1/2", "2/3", "1"]);
    assert_eq!(r["suites"][1]["facts"]["samples"], "3");
}

#[test]
fn catalog_rows() {
    let out = qflag(&["catalog", "--max-rank", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let find = |s: &str, r: u64, n: u64| {
        rows.as_array().unwrap().iter().find(|x| x["series"] == s && x["rank"] == r && x["node"] == n).cloned()
    };
    let a21 = find("A", 2, 1).unwrap();
    assert_eq!((a21["N"].as_u64(), a21["M"].as_u64(), a21["m"].as_u64()), (Some(3), Some(2), Some(3)));
    let a11 = find("A", 1, 1).unwrap();
    assert_eq!((a11["N"].as_u64(), a11["M"].as_u64(), a11["m"].as_u64()), (Some(2), Some(1), Some(2)));
    assert!(find("C", 3, 1).is_none());
    assert!(find("C", 3, 3).is_some());
}

#[test]
fn csv_flattens_the_lefschetz_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = qflag(&[
        "--type", "A", "--rank", "2", "--node", "1", "--q", "1/3,1/2", "--format", "csv", "--suites", "kahler", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    let lef: Vec<&csv::StringRecord> = rows.iter().filter(|r| &r[0] == "lefschetz").collect();
    // two determinants, each symbolic plus three points
    assert_eq!(lef.len(), 8);
    assert!(lef.iter().all(|r| &r[4] == "true"));
    assert!(rows.iter().any(|r| &r[0] == "overall" && &r[4] == "true"));
}
