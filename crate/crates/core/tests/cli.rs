use std::path::Path;
use std::process::{Command, Output};

fn bin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leech-borsuk"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn golay_check_reports_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(dir.path(), &["golay", "--check", "--dump", "words.txt"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("2576"));
    assert!(out.contains("729"));
    let words = std::fs::read_to_string(dir.path().join("words.txt")).unwrap();
    assert_eq!(words.lines().count(), 4096);
    assert!(dir.path().join("words.txt.manifest.json").exists());
}

#[test]
fn counts_table_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(dir.path(), &["counts", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(!out.contains("FAIL"));
    assert!(out.contains("4320 PASS"));
}

#[test]
fn stats_on_e8() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(dir.path(), &["stats", "--dim", "8", "--full-pairs"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("240 vectors"));
    assert!(out.contains("identical for every base"));
    assert!(out.contains("diameter² = 128"));
}

#[test]
fn enumerate_and_slice_agree() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bin(dir.path(), &["slice", "--dim", "6", "--out", "m6.txt"]).status.success());
    let text = std::fs::read_to_string(dir.path().join("m6.txt")).unwrap();
    assert_eq!(text.lines().count(), 72);
    let o = bin(dir.path(), &["enumerate", "--dim", "6"]);
    assert_eq!(stdout(&o), text);
}

#[test]
fn color_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(dir.path(), &["color", "--dim", "9", "-k", "9", "--seed", "5", "--out", "c.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("reached"));
    assert!(bin(dir.path(), &["verify", "--dim", "9", "--coloring", "c.json"]).status.success());
    // wrong dimension is a validation failure
    assert_eq!(bin(dir.path(), &["verify", "--dim", "8", "--coloring", "c.json"]).status.code(), Some(1));

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("c.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seeds"][0], 5);
    assert_eq!(manifest["outputs"]["c.json"].as_str().unwrap().len(), 64);
}

#[test]
fn verify_detects_conflicts() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bin(dir.path(), &["color", "--dim", "4", "-k", "5", "--seed", "1", "--out", "c.json"]).status.success());
    let mut file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    for c in file["assignment"].as_array_mut().unwrap() {
        *c = 0.into();
    }
    std::fs::write(dir.path().join("bad.json"), file.to_string()).unwrap();
    let o = bin(dir.path(), &["verify", "--dim", "4", "--coloring", "bad.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("conflict:"));
}

#[test]
fn dsatur_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(dir.path(), &["color", "--dim", "8", "-k", "20", "--seed", "0", "--strategy", "dsatur", "--out", "c.json"]);
    assert!(o.status.success());
    assert!(bin(dir.path(), &["verify", "--dim", "8", "--coloring", "c.json"]).status.success());
}

#[test]
fn export_dimacs_header() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bin(dir.path(), &["export", "--dim", "3", "--format", "dimacs", "--out", "g.col"]).status.success());
    let text = std::fs::read_to_string(dir.path().join("g.col")).unwrap();
    assert!(text.lines().any(|l| l.starts_with("p edge 12 ")));
    assert_eq!(bin(dir.path(), &["export", "--dim", "3", "--format", "gexf", "--out", "g.x"]).status.code(), Some(2));
}

#[test]
fn peel_writes_one_based_ids() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bin(dir.path(), &["peel", "--dim", "16", "-k", "2", "--out", "sets.txt"]).status.success());
    let text = std::fs::read_to_string(dir.path().join("sets.txt")).unwrap();
    let sets: Vec<Vec<u32>> = text.lines().map(|l| l.split(' ').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(sets.len(), 2);
    assert!(sets.iter().flatten().all(|&i| (1..=4320).contains(&i)));
}

#[test]
fn hset_make_encode_decode_validate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(bin(d, &["hset", "make", "--rule", "seed:3", "--out", "h.txt"]).status.success());
    assert!(bin(d, &["hset", "encode", "--in", "h.txt", "--out", "h.dat"]).status.success());
    assert_eq!(std::fs::metadata(d.join("h.dat")).unwrap().len(), 589_680);
    assert!(bin(d, &["hset", "decode", "--in", "h.dat", "--out", "h2.txt"]).status.success());
    assert!(bin(d, &["hset", "encode", "--in", "h2.txt", "--out", "h2.dat"]).status.success());
    assert_eq!(std::fs::read(d.join("h.dat")).unwrap(), std::fs::read(d.join("h2.dat")).unwrap());
    let o = bin(d, &["hset", "validate", "--in", "h.dat"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"diameter2\": 96"));
}

#[test]
fn hset_validate_rejects_doubled_pair() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(bin(d, &["hset", "make", "--dim", "8", "--out", "h.txt"]).status.success());
    let text = std::fs::read_to_string(d.join("h.txt")).unwrap();
    let first: Vec<i32> = text.lines().next().unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
    let neg: Vec<String> = first.iter().map(|x| (-x).to_string()).collect();
    std::fs::write(d.join("bad.txt"), format!("{text}{}\n", neg.join(" "))).unwrap();
    assert_eq!(bin(d, &["hset", "validate", "--dim", "8", "--in", "bad.txt"]).status.code(), Some(1));
}

#[test]
fn hset_coloring() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(bin(d, &["hset", "make", "--dim", "12", "--out", "h.txt"]).status.success());
    assert!(bin(d, &["color", "--dim", "12", "--hset", "h.txt", "-k", "5", "--seed", "2", "--out", "c.json"]).status.success());
    assert!(bin(d, &["verify", "--dim", "12", "--hset", "h.txt", "--coloring", "c.json"]).status.success());
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bin(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(dir.path(), &["slice", "--dim", "0"]).status.code(), Some(2));
    assert_eq!(bin(dir.path(), &["hset", "make", "--rule", "best", "--out", "x"]).status.code(), Some(2));
    assert_eq!(bin(dir.path(), &["color", "--dim", "4", "-k", "0", "--seed", "1", "--out", "c"]).status.code(), Some(2));
    assert_eq!(bin(dir.path(), &["--help"]).status.code(), Some(0));
}
