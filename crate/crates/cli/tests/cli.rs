//! End-to-end tests of the `act` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn act(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_act"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("act-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn schur_interval_example() {
    let out = act(&["schur", "--A", "0", "--B", "0", "--D", "0", "--interval"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "(-1, 1)");

    let out = act(&["schur", "--A", "0", "--B", "0", "--D", "2", "--interval"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "empty");
}

#[test]
fn schur_full_report_is_json() {
    let out = act(&["schur", "--A", "0", "--B", "1", "--D", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["stable"], serde_json::Value::Bool(false));
    assert_eq!(v["alpha_hat"], serde_json::json!(0.0));
}

#[test]
fn region_raster_matches_library() {
    let path = tmp("region.csv");
    let out = act(&[
        "region", "--a", "0.6", "--b", "-0.8", "--d", "-1", "--k", "3", "--kind", "trivial",
        "--grid", "24", "--e-min", "-1.0", "--e-max", "1.0", "--c-min", "-2.0", "--c-max", "2.0",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# act region"));
    assert_eq!(lines.next().unwrap(), "e,c,member,kind");
    let mut members = 0usize;
    let mut rows = 0usize;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 4);
        let e: f64 = cols[0].parse().unwrap();
        let c: f64 = cols[1].parse().unwrap();
        let member = cols[2] == "1";
        let p = act_core::MapParams64 {
            a: 0.6,
            b: -0.8,
            c,
            d: -1.0,
            e,
            k: 3,
        };
        assert_eq!(
            member,
            act_core::equilibria::region_member(&p, act_core::equilibria::RegionKind::Trivial),
            "mismatch at ({e}, {c})"
        );
        members += usize::from(member);
        rows += 1;
    }
    assert_eq!(rows, 24 * 24);
    assert!(members > 0, "raster should contain stable cells");
    fs::remove_file(path).ok();
}

#[test]
fn horseshoe_counts_json() {
    let out = act(&[
        "horseshoe", "--b", "2", "--c", "5", "--d", "1", "--k", "2", "-n", "6",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case"]["case"], serde_json::json!("Ii1"));
    let counts = v["counts"].as_array().unwrap();
    let found: Vec<u64> = counts
        .iter()
        .map(|c| c["found"].as_u64().unwrap())
        .collect();
    assert_eq!(found, vec![2, 4, 8, 16, 32, 64]);
    assert!(counts.iter().all(|c| c["complete"] == serde_json::Value::Bool(true)));
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn ai_continue_single_word() {
    let out = act(&[
        "ai-continue", "--route", "c", "--ratio", "1", "--lambda", "0.01", "--k", "3",
        "--a", "0", "--b", "1", "--e", "0", "--word", "1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let x = v["window"][0].as_f64().unwrap();
    assert!((x - (0.98f64).sqrt()).abs() < 1e-9);
}

#[test]
fn usage_error_exits_2() {
    let out = act(&["schur", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = act(&["not-a-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_error_exits_1() {
    // Orbit that escapes before producing the demanded crossings.
    let out = act(&[
        "section", "--a", "0.6", "--b", "0.5", "--c", "5", "--d", "1", "--e", "1", "--k", "3",
        "--x0", "3", "--y0", "0", "--z0", "0", "--axis", "x", "--value", "0", "-n", "1000",
        "--transient", "0", "--min-crossings", "10",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // Missing required parameter.
    let out = act(&["box", "--a", "0.1", "--b", "1.0"]);
    assert_eq!(out.status.code(), Some(1));

    // b = 0 violates the standing assumption.
    let out = act(&[
        "box", "--a", "0.1", "--b", "0", "--c", "1", "--d", "1", "--e", "0.5", "--k", "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_file_with_flag_override() {
    let cfg = tmp("cfg.json");
    fs::write(
        &cfg,
        r#"{"command": "box", "a": 0.0, "b": 2.0, "c": 5.0, "d": 1.0, "e": 0.0, "k": 2}"#,
    )
    .unwrap();
    let out = act(&["box", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["x_max"], serde_json::json!(3.5));

    // Flags override file values: doubling d halves the box.
    let out = act(&["box", "--config", cfg.to_str().unwrap(), "--d", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["x_max"], serde_json::json!(1.75));

    // Unknown keys and wrong command tags are rejected.
    let bad = tmp("bad.json");
    fs::write(&bad, r#"{"command": "box", "bogus": 1}"#).unwrap();
    assert_eq!(act(&["box", "--config", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(act(&["orbit", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
    fs::remove_file(cfg).ok();
    fs::remove_file(bad).ok();
}

#[test]
fn deterministic_output() {
    let args = [
        "scan", "--a", "0.6", "--b", "-0.8", "--d", "1", "--e", "0", "--k", "3", "--sweep", "c",
        "--from", "-0.6", "--to", "-0.3", "--steps", "7", "--transient", "500", "--samples", "20",
    ];
    let first = act(&args);
    let second = act(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "outputs must be byte-identical");
}

#[test]
fn orbit_csv_shape() {
    let out = act(&[
        "orbit", "--a", "0.6", "--b", "0.5", "--c", "1", "--d", "1", "--e", "1", "--k", "3",
        "--x0", "0", "--y0", "0", "--z0", "0", "-n", "5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# act orbit"));
    assert!(header.contains("escaped=false"));
    assert_eq!(lines.next().unwrap(), "n,x,y,z");
    assert_eq!(lines.count(), 6);
}

#[test]
fn recipes_parse_and_run() {
    // Every shipped recipe must load; run two cheap ones end to end.
    let recipes = fs::read_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../../recipes")).unwrap();
    let mut n = 0;
    for entry in recipes {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v["command"].is_string(), "{path:?} must name its command");
        n += 1;
    }
    assert_eq!(n, 16);

    let out = act(&[
        "horseshoe",
        "--config",
        concat!(env!("CARGO_MANIFEST_DIR"), "/../../recipes/fig4.json"),
        "-n",
        "3",
    ]);
    assert!(out.status.success());
    let out = act(&[
        "region",
        "--config",
        concat!(env!("CARGO_MANIFEST_DIR"), "/../../recipes/fig1i.json"),
        "--grid",
        "8",
    ]);
    assert!(out.status.success());
}
