use std::path::Path;
use std::process::{Command, Output};

use orbit_hk::chevalley::{cache_path, LieAlgebra};
use serde_json::Value;

fn orbit_hk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit-hk"))
        .args(args)
        .env_remove("ORBIT_HK_CACHE")
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str], dir: &Path, name: &str) -> (i32, Value) {
    let path = dir.join(name);
    let mut all = args.to_vec();
    let p = path.to_str().unwrap();
    all.extend(["--json", p, "--output", "quiet"]);
    let out = orbit_hk(&all);
    let text = std::fs::read_to_string(&path).expect("report written");
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

fn check<'a>(report: &'a Value, section: &str, name: &str) -> &'a Value {
    let s = report["sections"].as_array().unwrap().iter().find(|s| s["name"] == section).expect("section");
    s["checks"]["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).expect("check")
}

#[test]
fn verify_a2_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = json_report(&["verify", "--algebra", "A2", "--c", "0"], dir.path(), "a2.json");
    assert_eq!(code, 0);
    assert_eq!(r["pass"], true);
    assert_eq!(r["schema"], "orbit-hk-report/1");
    assert_eq!(r["sections"][0]["constants"]["lambda_sq"], 6);
    assert_eq!(r["sections"][0]["constants"]["cohomogeneity"], 1);
}

#[test]
fn verify_a2_with_c_fails_with_recorded_deviation() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = json_report(&["verify", "--algebra", "A2", "--c", "6", "--eta", "1"], dir.path(), "a2c6.json");
    assert_eq!(code, 1);
    assert_eq!(r["pass"], false);
    assert_eq!(check(&r, "A2", "j_squared_operator")["pass"], false);
    let dev = r["sections"][0]["constants"]["uniqueness_deviation"].as_f64().unwrap();
    assert!((dev - 1.0).abs() < 1e-9);
    assert_eq!(check(&r, "A2", "uniqueness_deviation_matches_prediction")["pass"], true);
}

#[test]
fn verify_a1_family_survives() {
    let out = orbit_hk(&["verify", "--algebra", "A1", "--c", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).trim_end().ends_with("PASS"));
}

#[test]
fn usage_errors_have_their_own_status() {
    for args in [
        &["verify", "--algebra", "Q3"][..],
        &["verify", "--algebra", "A2", "--eta", "1e-7"],
        &["verify", "--algebra", "A2", "--c", "-1"],
        &["verify", "--algebra", "B1"],
        &["verify", "--trials", "0", "--algebra", "A1"],
        &["verify", "--tol", "nonsense"],
        &["frobnicate"],
    ] {
        assert_eq!(orbit_hk(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic_apart_from_timings() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--algebra", "G2", "--c", "1", "--trials", "40", "--seed", "9"];
    let (_, mut a) = json_report(&args, dir.path(), "a.json");
    let (_, mut b) = json_report(&args, dir.path(), "b.json");
    for r in [&mut a, &mut b] {
        let o = r.as_object_mut().unwrap();
        assert!(o.remove("timings").is_some());
        // the echoed --json path is the only config difference
        o.remove("config");
    }
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let (_, c) = json_report(&["verify", "--algebra", "G2", "--c", "1", "--trials", "40", "--seed", "10"], dir.path(), "c.json");
    assert_ne!(check(&a, "G2", "g_j_invariant")["max_residual"], check(&c, "G2", "g_j_invariant")["max_residual"]);
}

#[test]
fn lambda_table_surfaces_e8() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = json_report(&["lambda-table"], dir.path(), "l.json");
    assert_eq!(code, 1);
    let failures: Vec<&str> = r["sections"][0]["checks"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failures, ["lambda_sq_E8"]);
    assert!(r["warnings"][0].as_str().unwrap().contains("E8"));
    let rows = r["sections"][0]["constants"]["rows"].as_array().unwrap();
    let g2 = rows.iter().find(|x| x["algebra"] == "G2").unwrap();
    assert_eq!((g2["computed"].as_i64(), g2["published"].as_i64()), (Some(8), Some(8)));
    let e7 = rows.iter().find(|x| x["algebra"] == "E7").unwrap();
    assert_eq!(e7["computed"], 36);
    let (code, _) = json_report(&["lambda-table", "--algebra", "A3"], dir.path(), "a3.json");
    assert_eq!(code, 0);
}

#[test]
fn spectrum_commands() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = json_report(&["spectrum", "--algebra", "A2", "--triple", "principal"], dir.path(), "p.json");
    assert_eq!(code, 0);
    assert_eq!(r["sections"][0]["constants"]["minimal"], false);
    assert_eq!(r["sections"][0]["constants"]["highest_weights"]["4"], 1);
    let (_, r) = json_report(&["spectrum", "--algebra", "A2"], dir.path(), "t.json");
    assert_eq!(r["sections"][0]["constants"]["minimal"], true);
    let (_, r) = json_report(&["spectrum", "--algebra", "A1"], dir.path(), "a1.json");
    assert_eq!(r["sections"][0]["constants"]["minimal"], true);
}

#[test]
fn explicit_triples() {
    let dir = tempfile::tempdir().unwrap();
    let alg = LieAlgebra::of_type("A1".parse().unwrap()).unwrap();
    let unit = |i: usize| -> Vec<[f64; 2]> { (0..alg.dim()).map(|j| [if i == j { 1.0 } else { 0.0 }, 0.0]).collect() };
    let good = serde_json::json!({ "e": unit(alg.e_index(0)), "h": unit(alg.h_index(0)), "f": unit(alg.f_index(0)) });
    let path = dir.path().join("good.json");
    std::fs::write(&path, good.to_string()).unwrap();
    let out = orbit_hk(&["spectrum", "--algebra", "A1", "--triple", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let bad = serde_json::json!({ "e": unit(alg.e_index(0)), "h": unit(alg.e_index(0)), "f": unit(alg.f_index(0)) });
    let path = dir.path().join("bad.json");
    std::fs::write(&path, bad.to_string()).unwrap();
    let out = orbit_hk(&["spectrum", "--algebra", "A1", "--triple", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an sl(2)-triple"));
}

#[test]
fn eguchi_hanson_command() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = json_report(&["eguchi-hanson", "--c", "4", "--t", "0.7"], dir.path(), "eh.json");
    assert_eq!(code, 0);
    assert_eq!(r["sections"][0]["constants"]["c_sl2"], 1.0);
    assert_eq!(check(&r, "eguchi_hanson", "bolt_w_and_sigma3_vanish")["pass"], true);
}

#[test]
fn corrupt_cache_is_rebuilt_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let (code, r) = json_report(&["verify", "--algebra", "B2", "--trials", "5", "--cache", c], dir.path(), "1.json");
    assert_eq!(code, 0);
    assert!(r["warnings"].as_array().unwrap().is_empty());
    let file = cache_path(&cache, "B2".parse().unwrap());
    assert!(file.exists());

    let text = std::fs::read_to_string(&file).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let last = lines.len() - 1;
    lines[last] = lines[last].replace(' ', " 1");
    std::fs::write(&file, lines.join("\n")).unwrap();
    let (code, r) = json_report(&["verify", "--algebra", "B2", "--trials", "5", "--cache", c], dir.path(), "2.json");
    assert_eq!(code, 0);
    assert_eq!(r["warnings"].as_array().unwrap().len(), 1);

    let out = Command::new(env!("CARGO_BIN_EXE_orbit-hk"))
        .args(["verify", "--algebra", "B2", "--trials", "5", "--output", "quiet"])
        .env("ORBIT_HK_CACHE", dir.path().join("env-cache"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(cache_path(&dir.path().join("env-cache"), "B2".parse().unwrap()).exists());
}
