use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ilink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ilink")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ilink-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn cohomology_summary_and_exit_code() {
    let out = ilink(&["verify", "lemma21", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["summary"], "dim H^2 = 1, 18 top cells, rank 17");
    assert_eq!(v["evidence"]["coboundary_rank"], 17);
}

#[test]
fn parity_trials_through_the_binary() {
    let out = ilink(&["verify", "thm22", "--n", "2", "--trials", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["evidence"]["odd_trials"], 20);
    assert_eq!(v["parameters"]["trials"], 20);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ilink(&["verify", "thm12", "--n", "5"]).status.code(), Some(2));
    assert_eq!(ilink(&["verify", "suspension-claims", "--n", "3"]).status.code(), Some(2));
    assert_eq!(ilink(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ilink(&["lk", "--map", "/nonexistent/map.txt", "--gamma", "a", "--delta", "b"]).status.code(), Some(2));
    assert_eq!(ilink(&["--help"]).status.code(), Some(0));
}

#[test]
fn build_lists_a_face_closed_complex() {
    let out = ilink(&["build", "m", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let simplices: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    // 6 vertices, 6 edges a_i a / a_i b
    assert_eq!(simplices.len(), 12);
    assert!(simplices.contains(&"a_2 b"));
}

#[test]
fn embed_then_lk_finds_the_base_link() {
    let map = tmp("m2.txt");
    let out = ilink(&["embed", "m", "--n", "2", "--out", map.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // alternating split of the base: the one linked pair on the moment curve
    assert_eq!(lk_on(&map, ["a_1", "a_3"], ["a_0", "a_2", "a_4"]), 1);
    assert_eq!(lk_on(&map, ["a_3", "a_4"], ["a_0", "a_1", "a_2"]), 0);
}

fn lk_on(map: &std::path::Path, gamma: [&str; 2], delta: [&str; 3]) -> i64 {
    let mut args: Vec<String> = vec!["lk".into(), "--map".into(), map.to_str().unwrap().into()];
    for e in [format!("{} {}", gamma[0], gamma[1]), format!("{} c", gamma[0]), format!("{} c", gamma[1])] {
        args.extend(["--gamma".into(), e]);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for apex in ["a", "b"] {
            args.extend(["--delta".into(), format!("{} {} {apex}", delta[i], delta[j])]);
        }
    }
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let lk = ilink(&argv);
    assert_eq!(lk.status.code(), Some(0), "{}", String::from_utf8_lossy(&lk.stderr));
    report(&lk)["lk2"].as_i64().unwrap()
}

#[test]
fn certificate_embeddings_are_written() {
    for name in ["n1", "n2"] {
        let map = tmp(&format!("{name}.txt"));
        let out = ilink(&["embed", name, "--n", "1", "--out", map.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let text = std::fs::read_to_string(&map).unwrap();
        assert!(text.starts_with("# ambient: 2"));
    }
}

#[test]
fn schema_accepts_reports_and_rejects_truncated_ones() {
    let good = tmp("thm12.json");
    let out = ilink(&["verify", "thm12", "--n", "1", "--json", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(ilink(&["schema", "--validate", good.to_str().unwrap()]).status.code(), Some(0));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("rng");
    let bad = tmp("bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(ilink(&["schema", "--validate", bad.to_str().unwrap()]).status.code(), Some(1));

    let schema = report(&ilink(&["schema"]));
    assert_eq!(schema["additionalProperties"], false);
}
