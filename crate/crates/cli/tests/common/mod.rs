#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_dir() -> PathBuf {
    manifest_dir().join("tests").join("golden")
}

pub fn scenario(name: &str) -> String {
    manifest_dir()
        .join("scenarios")
        .join(name)
        .display()
        .to_string()
}

pub fn generators(name: &str) -> String {
    manifest_dir()
        .join("generators")
        .join(name)
        .display()
        .to_string()
}

/// Runs the binary with `GRUEN_CAP` cleared.
pub fn gruen(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gruen"))
        .args(args)
        .env_remove("GRUEN_CAP")
        .output()
        .expect("binary runs")
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: Vec<String>,
    pub exit_code: i32,
}

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

pub fn golden_cases() -> Vec<GoldenCase> {
    vec![
        GoldenCase {
            name: "order_n3_p2",
            args: args(&["--json", "order", "--n", "3", "--p", "2"]),
            exit_code: 0,
        },
        GoldenCase {
            name: "order_n2_p2_f2",
            args: args(&["--json", "order", "--n", "2", "--p", "2", "--f", "2"]),
            exit_code: 0,
        },
        GoldenCase {
            name: "sylow_n2_p2_ell3_verify",
            args: args(&[
                "--json", "sylow", "--n", "2", "--p", "2", "--ell", "3", "--verify",
            ]),
            exit_code: 0,
        },
        GoldenCase {
            name: "sylow_n2_p3_ell2_verify",
            args: args(&[
                "--json", "sylow", "--n", "2", "--p", "3", "--ell", "2", "--verify",
            ]),
            exit_code: 0,
        },
        GoldenCase {
            name: "bound_m5_p2_ell3_gt1",
            args: args(&[
                "--json",
                "bound",
                "--m",
                "5",
                "--p",
                "2",
                "--ell",
                "3",
                "--theorem",
                "gt1",
            ]),
            exit_code: 0,
        },
        GoldenCase {
            name: "bound_m6_p2_ell3_gt1",
            args: args(&[
                "--json",
                "bound",
                "--m",
                "6",
                "--p",
                "2",
                "--ell",
                "3",
                "--theorem",
                "gt1",
            ]),
            exit_code: 0,
        },
        GoldenCase {
            name: "bound_m3_p5_ell2_gt2",
            args: args(&[
                "--json",
                "bound",
                "--m",
                "3",
                "--p",
                "5",
                "--ell",
                "2",
                "--theorem",
                "gt2",
            ]),
            exit_code: 0,
        },
        GoldenCase {
            name: "descent_ell_cubed",
            args: vec![
                "--json".into(),
                "descent".into(),
                scenario("ell_cubed_p5_rank5.json"),
            ],
            exit_code: 0,
        },
        GoldenCase {
            name: "descent_tower",
            args: vec![
                "--json".into(),
                "descent".into(),
                scenario("tower_p5_rank3.json"),
            ],
            exit_code: 0,
        },
        GoldenCase {
            name: "descent_pg1",
            args: vec![
                "--json".into(),
                "descent".into(),
                scenario("pg1_fails.json"),
            ],
            exit_code: 0,
        },
        GoldenCase {
            name: "verify_gl2_f3",
            args: vec![
                "--json".into(),
                "verify".into(),
                generators("gl2_f3.json"),
                "--ell".into(),
                "2".into(),
            ],
            exit_code: 0,
        },
        GoldenCase {
            name: "sweep_n3_q23_ell7",
            args: args(&[
                "--json",
                "sweep",
                "--n-max",
                "3",
                "--q-set",
                "2,3",
                "--ell-max",
                "7",
            ]),
            exit_code: 0,
        },
        GoldenCase {
            name: "sweep_default",
            args: args(&["--json", "sweep"]),
            exit_code: 0,
        },
    ]
}

pub fn golden_path(name: &str) -> PathBuf {
    golden_dir().join(format!("{name}.json"))
}

/// Runs a case twice; returns the stdout if both runs agree and exit as expected.
pub fn run_case(case: &GoldenCase) -> Result<Vec<u8>, String> {
    let first = gruen(&case.args);
    let second = gruen(&case.args);
    for out in [&first, &second] {
        if out.status.code() != Some(case.exit_code) {
            return Err(format!(
                "{}: exit {:?}, expected {}; stderr: {}",
                case.name,
                out.status.code(),
                case.exit_code,
                String::from_utf8_lossy(&out.stderr)
            ));
        }
    }
    if first.stdout != second.stdout {
        return Err(format!("{}: two runs differ", case.name));
    }
    Ok(first.stdout)
}

pub fn compare_golden(case: &GoldenCase, stdout: &[u8]) -> Result<(), String> {
    let path = golden_path(case.name);
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != stdout {
        return Err(format!(
            "{}: output differs from {}",
            case.name,
            display(&path)
        ));
    }
    Ok(())
}

fn display(path: &Path) -> String {
    path.display().to_string()
}
