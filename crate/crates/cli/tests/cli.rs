//! End-to-end runs of the `quatgro` binary: payloads, exit codes and replay.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn quatgro(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quatgro"));
    cmd.args(args).env_remove("QUATGRO_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn report(args: &[&str]) -> Value {
    let r = quatgro(args, &[]);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).expect("JSON report")
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quatgro-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const CHSH: &str = r#"{"m":2,"n":2,"entries":[[[1,0,0,0],[1,0,0,0]],[[1,0,0,0],[-1,0,0,0]]]}"#;

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

#[test]
fn grothendieck_norm_of_one_by_one() {
    let p = write_temp("one.json", r#"{"m":1,"n":1,"entries":[[[2,0,0,0]]]}"#);
    let r = report(&["norm", p.to_str().unwrap(), "--which", "grothendieck"]);
    assert_eq!(r["command"], "norm");
    let res = &r["results"];
    assert!((f(&res["lower"]) - 2.0).abs() < 1e-6);
    assert!((f(&res["upper"]) - 2.0).abs() < 1e-6);
    assert!(f(&res["sdp"]["gap"]).abs() < 1e-6);
}

#[test]
fn chsh_norms() {
    let p = write_temp("chsh.json", CHSH);
    let path = p.to_str().unwrap();
    // Non-commuting quaternion scalars reach the SDP value 2√2.
    let r = report(&["norm", path, "--which", "inf1"]);
    let res = &r["results"];
    assert!((f(&res["upper"]) - 8f64.sqrt()).abs() < 1e-4);
    assert!((f(&res["lower"]) - 8f64.sqrt()).abs() < 1e-4);
    assert_eq!(res["estimate"]["witness"]["kind"], "bipartite");
    assert_eq!(r["seed"], 0);
    // The CHSH matrix is self-adjoint with θ = γ = 2.
    for which in ["theta", "Theta", "gamma", "Gamma"] {
        let r = report(&["norm", path, "--which", which]);
        let res = &r["results"];
        assert!(f(&res["lower"]) <= f(&res["upper"]) + 1e-9, "{which}");
        assert!(
            (f(&res["upper"]) - 2.0).abs() < 1e-4,
            "{which}: {}",
            res["upper"]
        );
    }
}

#[test]
fn malformed_input_exits_with_parse_code() {
    let p = write_temp("bad.json", r#"{"m": 2,"#);
    let r = quatgro(&["norm", p.to_str().unwrap(), "--which", "inf1"], &[]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("malformed matrix JSON"), "{}", r.stderr);
    let p = write_temp(
        "ragged.json",
        r#"{"m":2,"n":2,"entries":[[[1,0,0,0]],[[1,0,0,0],[1,0,0,0]]]}"#,
    );
    assert_eq!(
        quatgro(&["norm", p.to_str().unwrap(), "--which", "inf1"], &[]).code,
        2
    );
    assert_eq!(
        quatgro(&["norm", "/nonexistent/m.json", "--which", "inf1"], &[]).code,
        2
    );
    let p = write_temp(
        "rect.json",
        r#"{"m":1,"n":2,"entries":[[[1,0,0,0],[1,0,0,0]]]}"#,
    );
    let r = quatgro(&["norm", p.to_str().unwrap(), "--which", "theta"], &[]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert_eq!(
        quatgro(&["norm", p.to_str().unwrap(), "--which", "delta"], &[]).code,
        2
    );
    assert_eq!(
        quatgro(&["mc", "sign", "--seed", "1", "--z", "1,2,3"], &[]).code,
        2
    );
    assert_eq!(quatgro(&["continued", "--grid", "2:1:5"], &[]).code, 2);
}

#[test]
fn overflowing_data_exits_with_solver_code() {
    let p = write_temp(
        "huge.json",
        r#"{"m":1,"n":2,"entries":[[[1e300,0,0,0],[1,0,0,0]]]}"#,
    );
    let r = quatgro(
        &["norm", p.to_str().unwrap(), "--which", "grothendieck"],
        &[],
    );
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stderr.contains("solver failure"));
}

#[test]
fn constants_report_published_values() {
    let r = report(&["constants"]);
    let k = &r["results"]["constants"];
    assert!((f(&k["k_gh_bound"]) - 1.2168).abs() < 1e-4);
    assert!((f(&k["k_gamma_bound"]) - 1.263537).abs() < 1e-6);
    assert!((f(&k["alpha_gw"]) - 0.967337).abs() < 1e-6);
    assert!((f(&k["dd_constant"]) - 1.1204).abs() < 1e-4);
    assert!((f(&r["results"]["landmarks"]["tau"]) - 3f64.sqrt()).abs() < 1e-6);
}

#[test]
fn coefficient_signs_for_ell_three() {
    let r = report(&["coefficients", "--ell", "3", "--count", "20"]);
    let s = &r["results"]["summary"];
    assert_eq!(s["first_positive"], true);
    assert_eq!(s["negative_after_first"], 19);
    let exact = r["results"]["coefficients"].as_array().unwrap().clone();
    assert_eq!(exact[1]["rational"], "-1/12");
    let r = report(&["coefficients", "--ell", "3", "--count", "20", "--float"]);
    let float = r["results"]["coefficients"].as_array().unwrap();
    for (a, b) in exact.iter().zip(float) {
        assert!(b.get("rational").is_none());
        assert!((f(&a["value"]) - f(&b["value"])).abs() <= 1e-9 * f(&a["value"]).abs());
    }
    // The scaled series gives the published c₃.
    let r = report(&["coefficients", "--scaled", "--count", "2"]);
    let c3 = &r["results"]["coefficients"][1];
    assert!((f(&c3["value"]) + 0.12081).abs() < 5e-5, "{c3}");
    assert_eq!(c3["lambda_power"], 3);
    assert_eq!(
        quatgro(&["coefficients", "--scaled", "--ell", "2"], &[]).code,
        2
    );
    assert_eq!(
        quatgro(&["coefficients", "--exact", "--float"], &[]).code,
        2
    );
}

#[test]
fn continued_point_and_grid() {
    let r = report(&["continued", "--x", "5", "--which", "theta,mu"]);
    assert!((f(&r["results"]["values"]["theta"]) - 0.8097).abs() < 2e-3);
    let r = quatgro(
        &[
            "continued",
            "--grid",
            "1.1:2:10",
            "--which",
            "omega,omega-p7,mu",
        ],
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "x,omega,omega_p7,mu");
    assert_eq!(lines.len(), 11);
    let last: Vec<f64> = lines[10].split(',').map(|t| t.parse().unwrap()).collect();
    assert_eq!(last[0], 2.0);
    assert!(last[1] > 0.0 && last[2] > last[1]);
    assert_eq!(quatgro(&["continued", "--x", "0.5"], &[]).code, 2);
}

#[test]
fn certify_all_three_verdicts() {
    let r = report(&["certify", "--prop", "all"]);
    let v = r["results"]["verdicts"].as_array().unwrap();
    assert_eq!(v.len(), 3);
    assert!(v.iter().all(|c| c["verdict"] == true));
    assert!(r["results"]["log"].as_str().unwrap().contains("verdict"));
}

#[test]
fn failed_certificate_exits_with_code_four() {
    let r = quatgro(&["certify", "--prop", "omega-tau", "--m", "2"], &[]);
    assert_eq!(r.code, 4, "{}", r.stderr);
    let rep: Value = serde_json::from_str(&r.stdout).expect("report still printed");
    assert_eq!(rep["results"]["all_verdicts"], false);
    assert!(rep["results"]["first_failure"].is_string());
}

#[test]
fn mc_requires_a_seed_and_replays_exactly() {
    assert_eq!(quatgro(&["mc", "sign"], &[]).code, 2);
    let args = ["mc", "identity", "--seed", "11", "--samples", "100000"];
    let a = report(&args);
    assert_eq!(a["seed"], 11);
    assert!(f(&a["results"]["error"]) < 0.02);
    let b = quatgro(&args, &[("QUATGRO_THREADS", "3")]);
    let b: Value = serde_json::from_str(&b.stdout).unwrap();
    assert_eq!(a["results"], b["results"]);
    let s = report(&[
        "mc",
        "sign",
        "--seed",
        "5",
        "--samples",
        "200000",
        "--z",
        "0,0,0,1",
    ]);
    assert!(f(&s["results"]["error"]) < 0.01);
}

#[test]
fn rounding_reaches_the_sdp_value_on_chsh() {
    let p = write_temp("chsh_round.json", CHSH);
    let r = report(&[
        "round",
        p.to_str().unwrap(),
        "--seed",
        "3",
        "--samples",
        "5000",
    ]);
    let res = &r["results"];
    let best = f(&res["rounding"]["best_value"]);
    assert!(best <= f(&res["sdp"]["value"]) + 1e-6);
    assert!(best > 2.0);
    assert!(f(&res["sdp_over_best"]) >= 1.0 - 1e-6);
}

#[test]
fn reports_embed_the_invocation_and_replay() {
    let p = write_temp("chsh_replay.json", CHSH);
    let args = [
        "norm",
        p.to_str().unwrap(),
        "--which",
        "inf1",
        "--seed",
        "9",
        "--restarts",
        "8",
    ];
    let a = report(&args);
    let inv: Vec<&str> = a["invocation"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(&inv[1..], &args);
    assert_eq!(a["version"], env!("CARGO_PKG_VERSION"));
    let b = report(&inv[1..]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["parameters"], b["parameters"]);
}

#[test]
fn threads_flag_and_environment() {
    let p = write_temp("chsh_threads.json", CHSH);
    let path = p.to_str().unwrap();
    let one = report(&["norm", path, "--which", "inf1", "--threads", "1"]);
    let r = quatgro(
        &["norm", path, "--which", "inf1"],
        &[("QUATGRO_THREADS", "4")],
    );
    assert_eq!(r.code, 0);
    let four: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(one["results"], four["results"]);
    assert_eq!(
        quatgro(&["constants"], &[("QUATGRO_THREADS", "many")]).code,
        2
    );
}

#[test]
fn table_format() {
    let r = quatgro(&["constants", "--format", "table"], &[]);
    assert_eq!(r.code, 0);
    assert!(r
        .stdout
        .lines()
        .any(|l| l.starts_with("results.constants.k_gh_bound")));
    assert!(serde_json::from_str::<Value>(&r.stdout).is_err());
}
