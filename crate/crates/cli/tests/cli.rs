use std::process::{Command, Output};

use serde_json::Value;

fn tjl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tjl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tjl_json(args: &[&str]) -> Value {
    let out = tjl(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn sorted_dims(v: &Value) -> Vec<u64> {
    let mut dims: Vec<u64> = v["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    dims.sort_unstable();
    dims
}

#[test]
fn irreps_census() {
    let v = tjl_json(&["irreps", "--q", "2", "--n", "2", "--N", "1"]);
    assert_eq!(sorted_dims(&v), vec![1, 1, 2]);
    assert_eq!(v["multiplicity_free"], true);
    assert!(v["multiplicities"]
        .as_array()
        .unwrap()
        .iter()
        .all(|m| m["max_multiplicity"].as_u64().unwrap() <= 1));

    let v = tjl_json(&["irreps", "--q", "3", "--n", "2", "--N", "1"]);
    assert_eq!(sorted_dims(&v), vec![1, 1, 1, 1, 2, 2, 2]);

    let v = tjl_json(&["irreps", "--q", "2", "--n", "1", "--level", "1"]);
    assert_eq!(sorted_dims(&v), vec![1]);
}

#[test]
fn tame_sums() {
    for (q, n, count, sum) in [("3", "2", 3, 2), ("2", "3", 2, 3), ("2", "1", 1, 1)] {
        let v = tjl_json(&["tame", "--q", q, "--n", n]);
        let params = v["parameters"].as_array().unwrap();
        assert_eq!(params.len(), count);
        assert!(params.iter().all(|p| p["sum"] == sum && p["r"] == sum));
        assert_eq!(v["all_ok"], true);
    }
    let v = tjl_json(&["tame", "--q", "2", "--n", "3"]);
    assert_eq!(v["parameters"][1]["rho0"]["orbit"], serde_json::json!([3, 5, 6]));
}

#[test]
fn orbits_listing() {
    let v = tjl_json(&["orbits", "--q", "3", "--n", "2"]);
    assert_eq!(v["orbits"], serde_json::json!([[0], [1, 3], [2, 6], [4], [5, 7]]));
    assert_eq!(v["ok"], true);
}

#[test]
fn verify_pipeline() {
    let v = tjl_json(&["verify", "--q", "3", "--N", "1"]);
    assert_eq!(v["all_ok"], true);
    let sigmas = v["report"]["sigmas"].as_array().unwrap();
    assert_eq!(sigmas.len(), 7);
    let s13 = sigmas
        .iter()
        .find(|s| s["sigma"]["orbit"] == serde_json::json!([1, 3]))
        .unwrap();
    assert_eq!(s13["blocks"][0]["infinity_orbit"], serde_json::json!([5, 7]));
    assert_eq!(s13["claim_ok"], true);
}

#[test]
fn verify_trivial_sigma() {
    let v = tjl_json(&["verify", "--q", "3", "--N", "1", "--sigma", "trivial"]);
    let s = &v["report"]["sigmas"][0];
    assert_eq!(s["claim_sum"], 1);
    let ev = s["blocks"][0]["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["place"] == "t+2")
        .unwrap();
    assert_eq!(ev["value"]["coeffs"][0], 4);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--q", "2", "--N", "1"][..],
        &["verify", "--q", "3", "--sigma", "1,2"],
        &["brandt", "--q", "3", "--place", "t"],
        &["brandt", "--q", "3", "--place", "t^2+2"],
        &["irreps", "--q", "6"],
        &["tame", "--q", "3", "--format", "tsv"],
        &["irreps"],
    ] {
        assert_eq!(tjl(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn brandt_tsv() {
    let out = tjl(&["brandt", "--q", "3", "--place", "t+2", "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# schema_version=1"));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 16);
    for r in rows {
        let cells: Vec<u32> = r.split('\t').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells.len(), 16);
        assert_eq!(cells.iter().sum::<u32>(), 4);
    }
}

#[test]
fn brandt_json_and_infinity() {
    let v = tjl_json(&["brandt", "--q", "3", "--place", "t^2+1"]);
    assert_eq!(v["report"]["expected_row_sum"], 10);
    assert_eq!(v["report"]["row_sums_ok"], true);
    let v = tjl_json(&["brandt", "--q", "3", "--place", "inf"]);
    assert_eq!(v["infinity_action"]["pi_shift"], serde_json::json!({"k": 1, "e": 0}));
}

#[test]
fn basis_lines() {
    let v = tjl_json(&["basis", "--q", "3", "--sigma", "{1,3}:0"]);
    let lines = v["bases"][0]["projective_basis"].as_array().unwrap();
    let mut chis: Vec<u64> = lines.iter().map(|l| l["chi"].as_u64().unwrap()).collect();
    chis.sort_unstable();
    assert_eq!(chis, vec![5, 7]);
}

#[test]
fn output_is_thread_independent() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_tjl"))
            .args(["verify", "--q", "3", "--N", "1"])
            .env("TJL_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn bad_thread_count() {
    let out = Command::new(env!("CARGO_BIN_EXE_tjl"))
        .args(["orbits", "--q", "3"])
        .env("TJL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn writes_output_file() {
    let dir = std::env::temp_dir().join(format!("tjl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tame.json");
    let out = tjl(&["tame", "--q", "3", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seeded_roundtrips() {
    let a = tjl_json(&["verify", "--q", "3", "--sigma", "trivial", "--roundtrips", "3", "--seed", "11"]);
    let b = tjl_json(&["verify", "--q", "3", "--sigma", "trivial", "--roundtrips", "3", "--seed", "11"]);
    assert_eq!(a["roundtrips"], b["roundtrips"]);
    assert_eq!(a["roundtrips"]["ok"], true);
}
