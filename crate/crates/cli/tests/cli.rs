use std::process::{Command, Output};

use serde_json::Value;

fn dp4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dp4")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn lines_reports_sixteen() {
    let v = json(&dp4(&["lines", "--q", "3"]));
    assert_eq!(v["count"], 16);
    assert_eq!(v["disjoint_triples"], 960);
    assert_eq!(v["disjointness_degree"], 10);
}

#[test]
fn tamagawa_empty_product() {
    let v = json(&dp4(&["zeta", "--q", "3", "--what", "tamagawa", "--truncation", "0"]));
    assert_eq!(v["value_exact"], "6561/64");
    assert_eq!(v["value_num"], "6561");
    assert_eq!(v["value_den"], "64");
    assert_eq!(v["D"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(dp4(&["count", "--q", "3", "--class", "2,0,1,0,0,0,0?"]).status.code(), Some(2));
    assert_eq!(dp4(&["count", "--q", "3", "--class", "3,0,1,0,0,0,0"]).status.code(), Some(2));
    assert_eq!(dp4(&["count", "--q", "3", "--class", "0,0,-1,0,0,0"]).status.code(), Some(2));
    assert_eq!(dp4(&["count", "--q", "2", "--class", "0,1,0,0,0,0"]).status.code(), Some(2));
    assert_eq!(dp4(&["count", "--q", "6", "--class", "0,1,0,0,0,0"]).status.code(), Some(2));
    assert_eq!(dp4(&["frobnicate"]).status.code(), Some(2));
    let capped = dp4(&["count", "--q", "3", "--class", "2,2,1,1,1,1", "--method", "naive", "--naive-budget", "100"]);
    assert_eq!(capped.status.code(), Some(3));
    let lattice = dp4(&["count", "--q", "3", "--class", "2,2,1,1,1,1", "--method", "sieve", "--lattice-cap", "2"]);
    assert_eq!(lattice.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&lattice.stderr).contains("w = "));
}

#[test]
fn counts_and_methods() {
    let v = json(&dp4(&["count", "--q", "4", "--class", "2,0,1,0,0,0,0", "--method", "naive"]));
    assert_eq!(v["curve_count"], "60");
    assert_eq!(v["torsor_count"], "540");
    for m in ["fibered", "sieve"] {
        let w = json(&dp4(&["count", "--q", "4", "--class", "0,1,0,0,0,0", "--method", m]));
        assert_eq!(w["curve_count"], "60");
    }
    let virt = json(&dp4(&["count", "--q", "2", "--class", "0,0,0,0,0,0", "--method", "virtual", "--gamma-max", "2", "--deg-max", "1"]));
    assert_eq!(virt["main_term_sum"], "-7/2");
}

#[test]
fn json_is_reproducible() {
    let args = ["verify", "--suite", "all", "--seed", "11"];
    let a = without_timing(json(&dp4(&args)));
    let b = without_timing(json(&dp4(&args)));
    assert_eq!(a, b);
    assert_eq!(a["all_passed"], true);
    let s1 = json(&dp4(&["sweep", "--q", "3", "--hmax", "2"]));
    let s2 = json(&dp4(&["sweep", "--q", "3", "--hmax", "2"]));
    assert_eq!(serde_json::to_string(&without_timing(s1)).unwrap(), serde_json::to_string(&without_timing(s2)).unwrap());
}

#[test]
fn csv_matches_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let v = json(&dp4(&["sweep", "--q", "4", "--hmax", "2", "--methods", "naive,sieve", "--out", path.to_str().unwrap()]));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,a,aprime,k1,k2,k3,k4,h,method,torsor_count,curve_count,predicted,ratio,seconds"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let records = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), records.len());
    for (r, j) in rows.iter().zip(records) {
        assert_eq!(r[8], j["method"]);
        assert_eq!(r[9], j["torsor_count"]);
        assert_eq!(r[10], j["curve_count"]);
        assert_eq!(r[11].parse::<f64>().unwrap(), j["predicted"].as_f64().unwrap());
        assert_eq!(r[12].parse::<f64>().unwrap(), j["ratio"].as_f64().unwrap());
    }
    let csv_out = dp4(&["sweep", "--q", "4", "--hmax", "2", "--methods", "naive,sieve", "--format", "csv"]);
    let stdout = String::from_utf8(csv_out.stdout).unwrap();
    let strip = |s: &str| s.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&stdout), strip(&text));
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(
        &path,
        r#"{"q": 5, "points": {"p": [[0,1],[1,1],[2,1],[1,0]], "p_prime": [[0,1],[1,1],[3,1],[4,1]]},
            "caps": {"naive_budget": 1000000}}"#,
    )
    .unwrap();
    let cfg = path.to_str().unwrap();
    let v = json(&dp4(&["--config", cfg, "count", "--class", "0,1,0,0,0,0", "--method", "naive"]));
    assert_eq!(v["q"], 5);
    assert_eq!(v["caps"]["naive_budget"], 1000000);
    assert_eq!(v["degenerate_surface"], false);
    let fib = json(&dp4(&["--config", cfg, "count", "--class", "0,1,0,0,0,0", "--method", "sieve"]));
    assert_eq!(v["torsor_count"], fib["torsor_count"]);
    let over = json(&dp4(&["--config", cfg, "count", "--q", "7", "--class", "0,1,0,0,0,0"]));
    assert_eq!(over["q"], 7);
    std::fs::write(&path, r#"{"q": 5, "points": {"p": [[0,1],[0,1],[2,1],[1,0]], "p_prime": [[0,1],[1,1],[3,1],[4,1]]}}"#).unwrap();
    assert_eq!(dp4(&["--config", cfg, "count", "--class", "0,1,0,0,0,0"]).status.code(), Some(2));
    std::fs::write(&path, r#"{"q": 5, "unknown": 1}"#).unwrap();
    assert_eq!(dp4(&["--config", cfg, "lines"]).status.code(), Some(2));
}

#[test]
fn zeta_subcommands() {
    let r = json(&dp4(&["zeta", "--q", "2", "--what", "residue", "--truncation", "3"]));
    assert_eq!(r["difference"], "0");
    let c = json(&dp4(&["zeta", "--q", "3", "--what", "coefficient", "--k", "1,1,0,0", "--deg-max", "2"]));
    assert_eq!(c["difference"], "0");
    let f = json(&dp4(&["zeta", "--q", "2", "--what", "factor", "--d", "1", "--t", "0,0,0,0"]));
    // 1 - 6/4 + 8/8 - 3/16
    assert_eq!(f["value"], "5/16");
    let div = dp4(&["zeta", "--q", "2", "--what", "factor", "--d", "1", "--t", "3,0,0,0"]);
    assert_eq!(div.status.code(), Some(2));
    let s = json(&dp4(&["zeta", "--q", "3", "--what", "factor", "--d", "1", "--deg-max", "3"]));
    let mons = s["monomials"].as_array().unwrap();
    assert_eq!(mons[0][0], "1");
    assert_eq!(mons.len(), 1 + 4 * 3);
    let b = json(&dp4(&["zeta", "--what", "betti", "--n", "4", "--degrees", "2,2"]));
    assert_eq!(b["value"], "4294967296");
    let p = json(&dp4(&["zeta", "--q", "3", "--what", "predictor", "--d", "3"]));
    assert_eq!(p["alpha_exact"], "1/180");
}

#[test]
fn alpha_and_nef() {
    let a = json(&dp4(&["alpha"]));
    assert_eq!(a["exact"], "1/180");
    let n = json(&dp4(&["nef", "--hmax", "2"]));
    assert_eq!(n["ray_count"], 26);
    assert_eq!(n["class_count"].as_u64().unwrap() as usize, n["classes"].as_array().unwrap().len());
}
