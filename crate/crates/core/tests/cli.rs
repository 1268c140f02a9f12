use std::process::Command;

use clap::Parser;
use hallcomb::cli::{run, Cli, Status};

fn hallcomb(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hallcomb"))
        .args(args)
        .env_remove("HALLCOMB_THREADS")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_args(args: &[&str]) -> hallcomb::cli::Outcome {
    let cli = Cli::try_parse_from(std::iter::once("hallcomb").chain(args.iter().copied())).unwrap();
    run(&cli)
}

#[test]
fn trivial_product() {
    let (code, out, _) = hallcomb(&[
        "compute", "--k", "1", "--n", "2", "--lambda", "0", "--mu", "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "{(): 1}");
}

#[test]
fn worked_example() {
    let args = [
        "compute",
        "--k",
        "5",
        "--n",
        "5",
        "--lambda",
        "3,2,1,1",
        "--mu",
        "3,1",
        "--nu",
        "4,3,2,1,1",
    ];
    let (code, out, _) = hallcomb(&args);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "3 + 2*t - t^2 - t^3");
}

#[test]
fn expansions_agree() {
    let base = ["--k", "2", "--n", "3", "--lambda", "1"];
    let honey = run_args(&[&["compute"][..], &base, &["--mu", "1"]].concat());
    let oracle = run_args(&[&["oracle"][..], &base, &["--mu", "1"]].concat());
    let pieri = run_args(&[&["pieri"][..], &base, &["--r", "1"]].concat());
    assert_eq!(honey.stdout, "{(2): 1, (1,1): 1 + t}");
    assert_eq!(oracle.stdout, honey.stdout);
    assert_eq!(pieri.stdout, honey.stdout);
}

#[test]
fn json_output() {
    let out = run_args(&[
        "--json", "compute", "--k", "2", "--n", "3", "--lambda", "1", "--mu", "1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v[1]["nu"], serde_json::json!([1, 1]));
    assert_eq!(v[1]["coefficient"], "1 + t");
    let out = run_args(&["--json", "fug", "1/1/1/1/1/1"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["fugacity"], "1 + t - t^2");
}

#[test]
fn enumerate_renders_svg() {
    let dir = std::env::temp_dir().join(format!("hallcomb-svg-{}", std::process::id()));
    let args = [
        "enumerate",
        "--k",
        "5",
        "--n",
        "5",
        "--lambda",
        "3,2,1,1",
        "--mu",
        "3,1",
        "--nu",
        "4,3,2,1,1",
        "--render",
        "svg",
        "--out",
    ];
    let mut args: Vec<&str> = args.to_vec();
    let dir_str = dir.to_str().unwrap().to_string();
    args.push(&dir_str);
    let out = run_args(&args);
    assert_eq!(out.status, Status::Ok);
    assert!(out.stdout.ends_with("total: 3 + 2*t - t^2 - t^3"));
    for idx in 0..3 {
        let svg = std::fs::read_to_string(dir.join(format!("{idx}.svg"))).unwrap();
        assert!(svg.starts_with("<svg"));
    }
    assert!(!dir.join("3.svg").exists());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors() {
    let (code, _, err) = hallcomb(&[
        "compute", "--k", "2", "--n", "3", "--lambda", "5", "--mu", "1",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("partition"));
    assert_eq!(hallcomb(&["nonsense"]).0, 2);
    assert_eq!(hallcomb(&["verify", "nope"]).0, 2);
    assert_eq!(
        hallcomb(&["pieri", "--k", "2", "--n", "3", "--lambda", "1", "--r", "3"]).0,
        2
    );
    assert_eq!(hallcomb(&["fug", "1/0/0/0/0/0"]).0, 2);
    let out = run_args(&[
        "enumerate",
        "--k",
        "1",
        "--n",
        "2",
        "--lambda",
        "0",
        "--mu",
        "0",
        "--nu",
        "0",
        "--render",
        "svg",
    ]);
    assert_eq!(out.status, Status::Usage);
}

#[test]
fn verify_suites() {
    let (code, out, _) = hallcomb(&["verify", "appendixA"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "appendixA: 45 checked, 0 failed");
    let (code, out, _) = hallcomb(&[
        "--json",
        "--threads",
        "2",
        "verify",
        "sl4-dualtetra",
        "--bound",
        "1",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suite"], "sl4-dualtetra");
    assert_eq!(v["failed"], 0);
    for suite in ["main-example", "z3", "t0", "double-puzzle"] {
        let out = run_args(&["verify", suite, "--k", "2", "--n", "2"]);
        assert_eq!(out.status, Status::Ok, "{suite}: {}", out.stdout);
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--json",
        "verify",
        "oracle",
        "--k",
        "2",
        "--n",
        "2",
        "--samples",
        "20",
    ];
    assert_eq!(run_args(&args), run_args(&args));
}
