use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mta::formats::{read_motifs, to_canonical_json, MotifsDoc};

fn mta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn synth(dir: &Path, seed: &str) -> String {
    let out = dir.join("synth");
    let status = mta(&["synth", "--seed", seed, "--copies", "4", "--out", out.to_str().unwrap()]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    out.join("series.csv").to_str().unwrap().to_owned()
}

#[test]
fn run_writes_all_artifacts_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = synth(dir.path(), "3");
    let out = dir.path().join("run");
    let o = mta(&["run", &input, "--threshold", "0.05", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["motifs.json", "stats.json", "plot.gp", "series.csv"] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    let text = fs::read_to_string(out.join("motifs.json")).unwrap();
    let doc: MotifsDoc = serde_json::from_str(&text).unwrap();
    assert!(!doc.motifs.is_empty());
    assert_eq!(to_canonical_json(&doc).unwrap(), text);
    let pool = read_motifs(&out.join("motifs.json")).unwrap().pool().unwrap();
    assert_eq!(pool.len(), doc.motifs.len());
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = synth(dir.path(), "8");
    let read = |name: &str| {
        let out = dir.path().join(name);
        assert!(
            mta(&["run", &input, "--threshold", "0.05", "--out", out.to_str().unwrap()])
                .status
                .success()
        );
        fs::read(out.join("motifs.json")).unwrap()
    };
    assert_eq!(read("a"), read("b"));
}

#[test]
fn missing_input_is_a_data_error() {
    let o = mta(&["run", "/definitely/not/here.csv"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("file not found"));
}

#[test]
fn bad_flags_are_usage_errors() {
    let o = mta(&["run", "x.csv", "--threshold-mode", "sideways"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn noise_gives_an_empty_pool() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("noise.csv");
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut text = String::new();
    for _ in 0..600 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        text.push_str(&format!("{}\n", (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5));
    }
    fs::write(&input, text).unwrap();
    let out = dir.path().join("out");
    let o = mta(&[
        "run",
        input.to_str().unwrap(),
        "--threshold",
        "0.01",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let doc = read_motifs(&out.join("motifs.json")).unwrap();
    assert!(doc.motifs.is_empty());
}

#[test]
fn analyze_skips_short_motifs() {
    let dir = tempfile::tempdir().unwrap();
    let motifs = dir.path().join("motifs.json");
    fs::write(
        &motifs,
        r#"{
  "series": {"name": "toy", "length": 5000},
  "config": {"algorithm": "mta", "symbol_size": 10, "alphabet_size": 6, "threshold": 0.1,
             "threshold_mode": "per-point", "tme_policy": "ntme", "max_generations": null},
  "motifs": [
    {"word": "abc", "length_points": 598, "occurrences": [0, 666, 1338, 2010, 2681, 3449, 4025],
     "distances": [1, 1, 1, 1, 1, 1],
     "pairs": [[0, 666], [666, 1338], [1338, 2010], [2010, 2681], [2681, 3449], [3449, 4025]]},
    {"word": "ab", "length_points": 20, "occurrences": [5, 50], "distances": [1], "pairs": [[5, 50]]}
  ]
}"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    let o = mta(&[
        "analyze",
        motifs.to_str().unwrap(),
        "--points-per-day",
        "96",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped"));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("analysis.json")).unwrap()).unwrap();
    assert_eq!(report["skipped"].as_array().unwrap().len(), 1);
    let windows: Vec<_> = report["motifs"][0]["anomalies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| {
            (
                a["gap_window"][0].as_u64().unwrap(),
                a["gap_window"][1].as_u64().unwrap(),
            )
        })
        .collect();
    assert!(windows.contains(&(3352, 3949)));
}

#[test]
fn compare_tme_and_pool_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = synth(dir.path(), "4");
    let out = dir.path().join("cmp");
    let o = mta(&[
        "compare",
        &input,
        "--against",
        "tme",
        "--threshold",
        "0.05",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("comparison.txt").exists());

    let run = dir.path().join("run");
    assert!(
        mta(&["run", &input, "--threshold", "0.05", "--out", run.to_str().unwrap()])
            .status
            .success()
    );
    let pool = run.join("motifs.json");
    let same = dir.path().join("same");
    let o = mta(&[
        "compare",
        "--reference-pool",
        pool.to_str().unwrap(),
        "--candidate-pool",
        pool.to_str().unwrap(),
        "--out",
        same.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(same.join("comparison.json")).unwrap()).unwrap();
    assert_eq!(doc["totals"]["missing"], 0);
    assert_eq!(doc["totals"]["length_error"], 0);
}

#[test]
fn baseline_compare_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = synth(dir.path(), "6");
    let read = |name: &str| {
        let out = dir.path().join(name);
        let o = mta(&[
            "compare",
            &input,
            "--motif-length",
            "80,60",
            "--seed",
            "7",
            "--threshold",
            "0.05",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(out.join("baseline_motifs.json")).unwrap()
    };
    assert_eq!(read("a"), read("b"));
}
