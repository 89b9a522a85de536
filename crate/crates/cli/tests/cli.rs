use std::process::{Command, Output};

use serde_json::Value;

fn loghilb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loghilb"))
        .args(args)
        .env_remove("LOGHILB_MAX_N")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = loghilb(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn csv_column(args: &[&str], col: usize) -> Vec<String> {
    let out = loghilb(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    text.lines()
        .skip(1)
        .map(|l| l.split(',').nth(col).unwrap().to_string())
        .collect()
}

#[test]
fn blow_up_of_the_plane() {
    let v = json(&["fan", "--n", "2", "--i", "1", "--markings", "0"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["census"], serde_json::json!([1, 4, 4]));
    let rays: Vec<&Value> = v["fan"]["rays"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| &r["vector"])
        .collect();
    assert!(rays.contains(&&serde_json::json!([1, 2])));
    assert_eq!(v["passed"], true);
}

#[test]
fn projective_space_and_census() {
    let v = json(&["fan", "--n", "3", "--i", "3"]);
    assert_eq!(v["fan"]["rays"].as_array().unwrap().len(), 4);
    assert_eq!(
        csv_column(
            &[
                "fan",
                "--n",
                "3",
                "--i",
                "1",
                "--markings",
                "0",
                "--census",
                "--format",
                "csv"
            ],
            1
        ),
        ["1", "6", "12", "8"]
    );
}

#[test]
fn two_markings_report_cross_checks() {
    let v = json(&["fan", "--n", "3", "--i", "1", "--markings", "0+inf"]);
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"euler") && names.contains(&"infinity side first"));
    assert_eq!(v["passed"], true);
}

#[test]
fn toric_groups() {
    let v = json(&["chow", "sr", "--n", "2", "--i", "1", "--groups"]);
    let ranks: Vec<u64> = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["rank"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, [1, 2, 1]);
}

#[test]
fn keel_presentation_matches_toric() {
    let v = json(&[
        "chow",
        "thmD",
        "--n",
        "3",
        "--i",
        "1",
        "--curve",
        "p1",
        "--compare-sr",
    ]);
    assert_eq!(v["comparison"]["groups_equal"], true);
    assert_eq!(v["passed"], true);
    let v = json(&["chow", "compare", "--n", "3", "--i", "1,2"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn symbolic_two_markings() {
    let v = json(&[
        "chow", "thmD", "--n", "3", "--i", "0", "--curve", "symbolic", "--ell", "2",
    ]);
    let gens: Vec<&str> = v["presentation"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["name"].as_str().unwrap())
        .collect();
    assert_eq!(gens, ["eps_1_3", "eps_1_2", "eps_2_3", "eps_2_2"]);
    let rels: Vec<&str> = v["presentation"]["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap())
        .collect();
    assert!(rels.contains(&"eps_1_3*kappa_1_0"));
    assert!(rels.contains(&"eps_1_2*eps_2_2"));
}

#[test]
fn motive_tables() {
    let cf = csv_column(
        &[
            "motive", "--mode", "euler", "--g", "1", "--ell", "1", "--N", "4", "--format", "csv",
        ],
        1,
    );
    assert_eq!(cf, ["1", "0", "1", "2", "4"]);
    let cf = csv_column(
        &[
            "motive", "--mode", "euler", "--g", "0", "--ell", "2", "--N", "3", "--format", "csv",
        ],
        1,
    );
    assert_eq!(cf, ["1", "2", "5", "12"]);
    let v = json(&["motive", "--mode", "motivic-p1", "--ell", "1", "--N", "6"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[2]["closed_form"], "L^2 + 2*L + 1");
    assert!(rows.iter().all(|r| r["verified"] == true));
}

#[test]
fn strata_listing() {
    let out = loghilb(&["strata", "--n", "2", "--ell", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[5].starts_with("total,L^2 + 2*L + 1"));
    let v = json(&["strata", "--n", "0", "--ell", "3"]);
    assert_eq!(v["strata"].as_array().unwrap().len(), 1);
    let v = json(&[
        "strata",
        "--n",
        "5",
        "--ell",
        "3",
        "--profile",
        "1;(1,2);();(1)",
    ]);
    assert_eq!(v["strata"][0]["cycle_class"], "eps_1_2*eps_1_3*eps_3_1");
    assert_eq!(v["strata"][0]["codimension"], 3);
}

#[test]
fn invalid_parameters_exit_two() {
    for args in [
        vec!["fan", "--n", "3", "--i", "4"],
        vec!["fan", "--n", "3", "--i", "0"],
        vec!["fan", "--n", "7"],
        vec!["chow", "sr", "--n", "3", "--curve", "symbolic"],
        vec!["chow", "thmD", "--n", "5", "--groups"],
        vec!["chow", "thmD", "--n", "3", "--i", "1,1,1", "--ell", "2"],
        vec!["motive", "--mode", "motivic-p1", "--g", "2"],
        vec!["motive", "--mode", "nope"],
        vec!["motive", "--N", "13"],
        vec![
            "strata",
            "--n",
            "4",
            "--ell",
            "3",
            "--profile",
            "1;(1,2);();(1)",
        ],
        vec!["strata", "--n", "1", "--profile", "1;(0)"],
    ] {
        assert_eq!(loghilb(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn caps_can_be_lifted() {
    let out = Command::new(env!("CARGO_BIN_EXE_loghilb"))
        .args(["motive", "--N", "13", "--format", "csv"])
        .env("LOGHILB_MAX_N", "13")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(loghilb(&["fan", "--n", "7", "--i", "6", "--force"])
        .status
        .success());
}

#[test]
fn output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2)
        .map(|k| dir.path().join(format!("out{k}.json")))
        .collect();
    for p in &paths {
        let out = loghilb(&[
            "chow",
            "keel",
            "--n",
            "3",
            "--i",
            "1",
            "--groups",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
}
