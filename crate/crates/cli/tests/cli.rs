use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn holodd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holodd")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_u1_passes() {
    let o = holodd(&["verify", "--gate", "u1", "--n", "4", "--j", "1", "--angle", "0.7853981633974483"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
}

#[test]
fn verify_u2_on_six_qubits_passes() {
    let o = holodd(&["verify", "--gate", "u2", "--n", "6", "--j", "3", "--angle", "1.0"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn verify_u3_reports_swap() {
    let o = holodd(&["verify", "--gate", "u3", "--n", "6", "--k", "2", "--l", "4", "--angle", "-0.4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("subspace swap"));
}

#[test]
fn invalid_indices_exit_2() {
    assert_eq!(code(&holodd(&["verify", "--gate", "u3", "--n", "4", "--k", "2", "--l", "1"])), 2);
    assert_eq!(code(&holodd(&["verify", "--gate", "u1", "--n", "4", "--j", "3"])), 2);
    assert_eq!(code(&holodd(&["verify", "--n", "5"])), 2);
    assert_eq!(code(&holodd(&["sweep", "--step", "0"])), 2);
    assert_eq!(code(&holodd(&["sweep", "--bath", "qubit", "--n", "6"])), 2);
    assert_eq!(code(&holodd(&["decouple", "--dt-ladder", "0.3", "--total-time", "1.0"])), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&holodd(&["verify", "--gate", "u9"])), 2);
    assert_eq!(code(&holodd(&["frobnicate"])), 2);
}

#[test]
fn failing_check_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("leaky.json");
    fs::write(
        &p,
        r#"{"n_qubits": 4, "kind": {"gate": "custom"}, "segments": [{"hamiltonian": "1*+XIII", "area": 0.5}]}"#,
    )
    .unwrap();
    let o = holodd(&["verify", "--schedule", path_str(&p)]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn schedule_round_trips_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("u3.json");
    let o = holodd(&["verify", "--gate", "u3", "--angle", "0.3", "--emit-schedule", path_str(&p)]);
    assert_eq!(code(&o), 0);
    let o = holodd(&["verify", "--schedule", path_str(&p)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("gate u3"));
}

#[test]
fn dump_basis_prints_logical_states() {
    let o = holodd(&["verify", "--gate", "u1", "--dump-basis"]);
    assert!(stdout(&o).starts_with("00 : 0.707107|0000\u{27e9} + 0.707107|1111\u{27e9}\n"));
}

#[test]
fn sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = holodd(&["sweep", "--bath", "scalar", "--seed", "5", "--step", "0.025", "--out", path_str(p)]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn default_sweep_shape() {
    let o = holodd(&["sweep"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "error_kind,error_value,fidelity,seed,plan_cycles,gate,theta_or_phi");
    assert_eq!(lines.len(), 1 + 2 * 41);
    let flip: Vec<(f64, f64)> = lines[1..]
        .iter()
        .filter(|l| l.starts_with("flip,"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    let zero = flip.iter().find(|(e, _)| *e == 0.0).unwrap();
    assert!(zero.1 >= 1.0 - 1e-9);
    // Non-increasing in |eps| moving away from zero on each side.
    let mid = flip.iter().position(|(e, _)| *e == 0.0).unwrap();
    for w in flip[mid..].windows(2) {
        assert!(w[1].1 <= w[0].1 + 1e-6);
    }
    for w in flip[..=mid].windows(2) {
        assert!(w[0].1 <= w[1].1 + 1e-6);
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "gate = \"u2\"\nn = 6\nj = 2\nangle = 0.5\nsamples = 10\n").unwrap();
    let o = holodd(&["verify", "--config", path_str(&cfg)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("gate u2 on n = 6"));
    let o = holodd(&["verify", "--config", path_str(&cfg), "--n", "4", "--j", "1"]);
    assert!(stdout(&o).contains("gate u2 on n = 4"));
}

#[test]
fn config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "colour = \"blue\"\n").unwrap();
    assert_eq!(code(&holodd(&["verify", "--config", path_str(&cfg)])), 2);
    let missing = dir.path().join("missing.toml");
    assert_eq!(code(&holodd(&["verify", "--config", path_str(&missing)])), 3);
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("no/such/dir/out.csv");
    assert_eq!(code(&holodd(&["sweep", "--step", "0.05", "--out", path_str(&out)])), 3);
}

#[test]
fn decouple_reports_order() {
    let o = holodd(&["decouple", "--dt-ladder", "0.1,0.05,0.025", "--bath", "scalar", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let order: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("order: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((1.5..=2.5).contains(&order));
    assert!(text.contains("dd beats bare at every dt: true"));
}

#[test]
fn decouple_without_bath_is_exact() {
    let o = holodd(&["decouple", "--bath", "none"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("order: exact"));
}

#[test]
fn decouple_with_bath_qubits() {
    let o = holodd(&["decouple", "--bath", "qubit", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}
