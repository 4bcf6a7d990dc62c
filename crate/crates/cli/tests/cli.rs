// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::{Command, Output};

fn sample(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "samples", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scalemetric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn tiling_dist_prints_exact_rational() {
    let o = run(&["tiling-dist", &sample("ab.til"), &sample("ab_shift.til"), "--r", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("1/10\n"), "{}", stdout(&o));
}

#[test]
fn tiling_dist_reports_bounded_search() {
    let o = run(&[
        "tiling-dist",
        &sample("ab.til"),
        &sample("fibonacci.til"),
        "--r",
        "20",
        "--rho",
        "2",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("inf (search bounded)"), "{}", stdout(&o));
}

#[test]
fn orbit_dist_to_itself_is_zero() {
    let o = run(&["orbit-dist", &sample("fibonacci.til"), &sample("fibonacci.til")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("0\n"));
}

#[test]
fn axioms_pass_on_tiling_and_mapping() {
    for inst in ["ab.til", "hat.pl"] {
        let o = run(&["axioms", &sample(inst), "--samples", "12", "--triples", "40"]);
        assert!(o.status.success(), "{inst}: {}", stdout(&o));
        assert!(stdout(&o).contains("PASS"));
    }
}

#[test]
fn broken_fixture_exits_one_with_witness() {
    let o = run(&["axioms", &sample("broken_self_distance.txt"), "--samples", "4", "--triples", "8"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("self-distance") && s.contains("witness #0"), "{s}");
}

#[test]
fn metrize_rejects_small_nmax() {
    let o = run(&["metrize", &sample("ab.til"), "--nmax", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n_max"));
}

#[test]
fn metrize_singleton_is_zero_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = run(&[
        "metrize",
        &sample("ab.til"),
        "--samples",
        "1",
        "--nmax",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(out).unwrap()).unwrap();
    assert_eq!(doc["result"]["matrix"], serde_json::json!([["0/1"]]));
    assert_eq!(doc["seed"], 0);
    assert_eq!(doc["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn metrize_dumps_relation() {
    let dir = tempfile::tempdir().unwrap();
    let rel = dir.path().join("w.txt");
    let o = run(&[
        "metrize",
        &sample("fibonacci.til"),
        "--samples",
        "8",
        "--nmax",
        "3",
        "--dump-relation",
        rel.to_str().unwrap(),
        "--level",
        "1",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = std::fs::read_to_string(rel).unwrap();
    assert!(text.starts_with("relation size=8\n"));
    assert!(text.contains("\n0 0\n"));
}

#[test]
fn mapping_dist_is_exact() {
    // |hat - ramp| on [-1, 1] peaks at x = 0 with value 1
    let o = run(&["mapping-dist", &sample("hat.pl"), &sample("ramp.pl"), "--r", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("1\n"), "{}", stdout(&o));
}

#[test]
fn plot_check_verdicts() {
    let o = run(&["plot-check", &sample("translation_plot.toml"), "--t0", "0"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["plot-check", &sample("kinked_plot.toml"), "--t0", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    let o = run(&["plot-check", &sample("mapping_plot.toml"), "--t0", "1/10"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn plot_check_writes_u_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("u.csv");
    let o = run(&[
        "plot-check",
        &sample("translation_plot.toml"),
        "--t0",
        "-1/10",
        "--u-table",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("t,u\n"));
    for line in text.lines().skip(1) {
        let (t, u) = line.split_once(',').unwrap();
        let (tn, td) = t.split_once('/').unwrap();
        let (un, ud) = u.split_once('/').unwrap();
        let t: f64 = tn.parse::<f64>().unwrap() / td.parse::<f64>().unwrap();
        let u: f64 = un.parse::<f64>().unwrap() / ud.parse::<f64>().unwrap();
        assert!((u - (t + 0.1)).abs() < 1e-12, "{line}");
    }
}

#[test]
fn witness_runs_on_both_instances() {
    for inst in ["fibonacci.til", "hat.pl"] {
        let o = run(&["witness", &sample(inst), "--samples", "20"]);
        assert!(o.status.success(), "{inst}: {}", stdout(&o));
    }
}

#[test]
fn json_is_deterministic_and_seed_sensitive() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    let go = |seed: &str, out: &str| {
        let o = run(&[
            "axioms",
            &sample("hat.pl"),
            "--samples",
            "8",
            "--triples",
            "20",
            "--seed",
            seed,
            "--out",
            out,
        ]);
        assert!(o.status.success());
        std::fs::read(out).unwrap()
    };
    let a = go("5", &path("a.json"));
    let b = go("5", &path("b.json"));
    let c = go("6", &path("c.json"));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn malformed_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.til");
    std::fs::write(&bad, "a 1\nperiodic ax\n").unwrap();
    let o = run(&["axioms", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
