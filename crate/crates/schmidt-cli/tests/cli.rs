//! Black-box tests of the `schmidt` binary: exit codes, file outputs and the
//! verify path, driven through std::process.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use game_engine::json::{transcript_from_json, transcript_to_json};
use game_engine::{CombinatorDesc, GameConfig, Move, Mover, Transcript};
use num::BigRational;
use theta_arith::{CircleInterval, CirclePoint, ThetaSpec};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schmidt"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("schmidt-cli-test-{}-{}", std::process::id(), name));
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn play_then_verify_round_trips() {
    let out = tmp("round.json");
    let o = run(&[
        "play",
        "--theta",
        "cfper:[|2]",
        "--beta",
        "1/2",
        "--adversary",
        "random",
        "--seed",
        "7",
        "--rounds",
        "25",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    assert!(out.exists());
    assert!(schmidt_cli::cert_path_for(&out).exists());

    let v = run(&["verify", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&v.stderr));

    // byte-identical re-serialization
    let text = std::fs::read_to_string(&out).unwrap();
    let parsed = transcript_from_json(&text).unwrap();
    assert_eq!(transcript_to_json(&parsed).unwrap(), text);
}

#[test]
fn play_is_bit_stable_for_fixed_seed() {
    // Same file name in two directories so the embedded transcript_ref
    // matches too; bit-stability covers both output files.
    let dir_a = tmp("stable-a");
    let dir_b = tmp("stable-b");
    std::fs::create_dir_all(&dir_a).unwrap();
    std::fs::create_dir_all(&dir_b).unwrap();
    let a = dir_a.join("run.json");
    let b = dir_b.join("run.json");
    for p in [&a, &b] {
        let o = run(&[
            "play",
            "--theta",
            "cfper:[|1]",
            "--beta",
            "2/5",
            "--seed",
            "12",
            "--rounds",
            "20",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    // The cert file embeds the output path; identical once normalized.
    let strip = |p: &Path| {
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(schmidt_cli::cert_path_for(p)).unwrap())
                .unwrap();
        for c in v["certificates"].as_array_mut().unwrap() {
            c["transcript_ref"] = serde_json::json!("");
        }
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn beta_zero_is_a_config_error() {
    let o = run(&["play", "--theta", "cfper:[|1]", "--beta", "0/1", "--out", "/dev/null"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("beta"), "stderr: {err}");
}

#[test]
fn radius_tamper_is_a_referee_violation() {
    let out = tmp("tamper.json");
    let o = run(&[
        "play", "--theta", "cfper:[|1]", "--beta", "1/2", "--seed", "3", "--rounds", "15",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    // shrink one White radius by 1e-9: radius laws are equalities
    let mut t = transcript_from_json(&text).unwrap();
    let idx = 7; // a White move
    assert_eq!(t.moves[idx].mover, Mover::White);
    let eps = rat(1, 1_000_000_000);
    t.moves[idx].ball.radius = &t.moves[idx].ball.radius - eps;
    std::fs::write(&out, transcript_to_json(&t).unwrap()).unwrap();
    let v = run(&["verify", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&v.stderr));
}

#[test]
fn hand_built_straddling_transcript_refutes() {
    // A legal-looking game whose final interval sits on theta*7, with dodge
    // annotations claiming generations 0..5 were handled. The referee passes
    // (the radius laws hold), the recomputed certificate must refute at q=7.
    let theta = ThetaSpec::parse("cfper:[|1]").unwrap();
    let center = CirclePoint::orbit(7, &theta).unwrap();
    let alpha = rat(1, 8);
    let beta = rat(1, 2);
    let config = GameConfig {
        alpha: alpha.clone(),
        beta: beta.clone(),
        theta: theta.clone(),
        max_rounds: 2,
        initial_black: CircleInterval::new(center.clone(), rat(1, 2)).unwrap(),
        seed: None,
        scan_cap: 1_000_000,
        adversary: None,
        combinator: CombinatorDesc::Plain,
    };
    let mut t = Transcript::new(config);
    let mut radius = rat(1, 2);
    let notes = [
        "dodge(0..3) N=3,n0=1,n1=-,m=-,M=-,case=-",
        "dodge(4..5) N=3,n0=1,n1=1,m=-,M=2,case=A",
    ];
    for round in 1..=2usize {
        radius = &radius * &alpha;
        t.push(Move {
            mover: Mover::White,
            ball: CircleInterval::new(center.clone(), radius.clone()).unwrap(),
            round,
            note: notes[round - 1].into(),
        });
        if round < 2 {
            radius = &radius * &beta;
            t.push(Move {
                mover: Mover::Black,
                ball: CircleInterval::new(center.clone(), radius.clone()).unwrap(),
                round: round + 1,
                note: String::new(),
            });
        }
    }
    let path = tmp("straddle.json");
    std::fs::write(&path, transcript_to_json(&t).unwrap()).unwrap();
    let v = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&v.stderr));
    let stdout = String::from_utf8_lossy(&v.stdout);
    assert!(stdout.contains("refuted at q=7"), "stdout: {stdout}");
}

#[test]
fn facts_prints_fibonacci_denominators() {
    let o = run(&["facts", "--theta", "cfper:[|1]", "--depth", "10", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let qs: Vec<&str> =
        v["rows"].as_array().unwrap().iter().map(|r| r["q"].as_str().unwrap()).collect();
    assert_eq!(qs, vec!["1", "2", "3", "5", "8", "13", "21", "34", "55", "89"]);
    // Delta_1 = 1 - theta = 0.3819660112...
    let d1 = v["rows"][0]["delta_decimal"].as_str().unwrap();
    assert!(d1.starts_with("0.381966011250105"), "got {d1}");
}

#[test]
fn facts_depth_beyond_finite_stream_names_the_problem() {
    let o = run(&["facts", "--theta", "cf:[1,2,3]", "--depth", "10"]);
    assert_eq!(o.status.code(), Some(4));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("stream"), "stderr: {err}");
}

#[test]
fn lemmas_pass_on_test_thetas() {
    for theta in ["cfper:[|1]", "cfper:[|2]"] {
        let o = run(&["lemmas", "--theta", theta, "--depth", "12", "--json"]);
        assert_eq!(o.status.code(), Some(0), "theta {theta}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["all_pass"], serde_json::json!(true));
    }
}

#[test]
fn two_sided_play_emits_two_verified_certificates() {
    let out = tmp("two-sided.json");
    let o = run(&[
        "play",
        "--theta",
        "cfper:[|1]",
        "--beta",
        "1/2",
        "--two-sided",
        "--seed",
        "5",
        "--rounds",
        "30",
        "--scan-cap",
        "20000000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    let cert_text = std::fs::read_to_string(schmidt_cli::cert_path_for(&out)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&cert_text).unwrap();
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 2);
    for c in certs {
        assert_eq!(c["verdict"]["verdict"], serde_json::json!("verified"));
        // nonempty q ranges: the claims have content
        let lo: u64 = c["q_lo"].as_str().unwrap().parse().unwrap();
        let hi: u64 = c["q_hi"].as_str().unwrap().parse().unwrap();
        assert!(lo < hi, "vacuous certificate: [{lo}, {hi})");
    }
}

#[test]
fn replay_adversary_reproduces_a_run() {
    let first = tmp("replay-src.json");
    let o = run(&[
        "play", "--theta", "cfper:[|2]", "--beta", "1/3", "--seed", "21", "--rounds", "18",
        "--out", first.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let second = tmp("replay-dst.json");
    let o = run(&[
        "play",
        "--theta",
        "cfper:[|2]",
        "--beta",
        "1/3",
        "--rounds",
        "18",
        "--adversary",
        &format!("replay:{}", first.display()),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    // Same moves; config blocks differ only in the adversary tag.
    let a = transcript_from_json(&std::fs::read_to_string(&first).unwrap()).unwrap();
    let b = transcript_from_json(&std::fs::read_to_string(&second).unwrap()).unwrap();
    assert_eq!(a.moves, b.moves);
}

#[test]
fn scan_cap_env_var_is_honored() {
    let out = tmp("envcap.json");
    let o = bin()
        .env("SCHMIDT_SCAN_CAP", "50000")
        .args(&[
            "play", "--theta", "cfper:[|1]", "--beta", "1/2", "--seed", "2", "--rounds", "20",
            "--out", out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let cert_text = std::fs::read_to_string(schmidt_cli::cert_path_for(&out)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&cert_text).unwrap();
    let hi: u64 = v["certificates"][0]["q_hi"].as_str().unwrap().parse().unwrap();
    assert!(hi <= 50_000, "cap ignored: q_hi = {hi}");
}

#[test]
fn verify_rejects_missing_file() {
    let v = run(&["verify", "/nonexistent/thing.json"]);
    assert_eq!(v.status.code(), Some(1));
}
