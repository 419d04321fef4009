use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmckay")).args(args).output().expect("spawn dmckay")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn quiver_dot_is_a_star() {
    let o = run(&["quiver", "--n", "4", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("graph "));
    let edges: Vec<&str> = s.lines().filter(|l| l.contains(" -- ")).collect();
    let nodes = s.lines().filter(|l| l.trim_end().ends_with("\";")).count();
    assert_eq!((nodes, edges.len()), (5, 4));
    assert!(edges.iter().all(|e| e.contains("\"rho1\"") && e.contains("label=\"1\"")));
}

#[test]
fn fixed_points_json() {
    let v = json(&["fixed-points", "--n", "5", "--format", "json"]);
    assert_eq!(v["anchor"].as_str().map(str::is_empty), Some(false));
    assert_eq!(v["n"], 5);
    let p = v["payload"].as_array().unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(p[0]["point"], "I_2(0:1)");
    assert_eq!(p[0]["aliases"][0], "I_3(1:0)");
    let v = json(&["fixed-points", "--n-range", "3..6", "--format", "json"]);
    let counts: Vec<usize> = v.as_array().unwrap().iter().map(|s| s["payload"].as_array().unwrap().len()).collect();
    assert_eq!(counts, [1, 2, 1, 2]);
}

#[test]
fn verify_small_range() {
    let o = run(&["verify", "--n-range", "3..6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("criterion")).count(), 11);
    assert!(s.lines().last().unwrap().starts_with("11/11 criteria passed"));
    let v = json(&["verify", "--n-range", "3..5", "--format", "json"]);
    assert_eq!(v["payload"]["passed"], 11);
    assert_eq!(v["n"], serde_json::json!([3, 5]));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["quiver"][..],
        &["quiver", "--n", "2"],
        &["quiver", "--n", "4", "--n-range", "3..5"],
        &["chartable", "--n", "4", "--format", "dot"],
        &["chartable", "--n-range", "7..3"],
        &["socle-table", "--n", "5", "--theta", "1,2"],
        &["socle-table", "--n", "5", "--alpha", "x"],
        &["refdiv", "--n", "5", "--k", "3"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn failed_check_exits_2_with_report() {
    let o = run(&["taut-table", "--n", "5", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let r: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(r["failures"][0]["n"], 5);
    assert_eq!(run(&["taut-table", "--n", "5", "--k", "2"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [&["socle-table", "--n-range", "4..7", "--format", "json"][..], &["hilb-atlas", "--n", "6", "--flops"], &["fm-table", "--n", "8"]] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn out_file_and_seed_family() {
    let dir = std::env::temp_dir().join(format!("dmckay-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("fold.dot");
    let o = run(&["fold", "--n", "6", "--format", "dot", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"E3\""));

    // the socle vector of the n=4 witness on E2 ∩ B1
    let seeds = dir.join("seeds.txt");
    std::fs::write(&seeds, "# one seed set per line\ny^2*d1\n").unwrap();
    let v = json(&["socle-table", "--n", "4", "--theta", "3,1,-1,-1,-1", "--family", seeds.to_str().unwrap(), "--format", "json"]);
    let checks = v["payload"]["theta_checks"].as_array().unwrap();
    assert_eq!(checks.len(), v["payload"]["rows"].as_array().unwrap().len());
    assert!(checks.iter().any(|c| c["verdict"].get("DestabilizedBy").is_some()));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn every_subcommand_runs() {
    for cmd in ["chartable", "quiver", "hilb-atlas", "fixed-points", "strict-transforms", "fold", "chain", "socle-table", "taut-table", "fm-table", "refdiv"] {
        for n in ["5", "6"] {
            let v = json(&[cmd, "--n", n, "--format", "json"]);
            assert_eq!(v["n"].as_u64(), n.parse().ok(), "{cmd}");
            assert!(!v["payload"].is_null(), "{cmd}");
            let t = run(&[cmd, "--n", n]);
            assert_eq!(t.status.code(), Some(0), "{cmd}");
            assert!(!t.stdout.is_empty());
        }
    }
    let v = json(&["chartable", "--n", "3", "--group", "cyclic", "--format", "json"]);
    let irrs: Vec<&str> = v["payload"]["characters"].as_array().unwrap().iter().map(|c| c["irr"].as_str().unwrap()).collect();
    assert_eq!(irrs, ["eps0", "eps1", "eps2"]);
}
