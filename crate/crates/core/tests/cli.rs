use std::process::{Command, Output};

fn plancherel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plancherel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = plancherel(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    plancherel(args).status.code().unwrap()
}

#[test]
fn dims() {
    assert_eq!(stdout(&["dims", "--lambda", "2,1"]).trim(), "dim=2");
    assert_eq!(stdout(&["dims", "--lambda", "1", "--N", "2"]).trim(), "dim=1 Dim=2");
    assert_eq!(stdout(&["dims", "--lambda", ""]).trim(), "dim=1 Dim=1");
    assert_eq!(stdout(&["dims", "--lambda", "3,2", "--N", "3"]).trim(), "dim=5 Dim=15");
}

#[test]
fn kernel_windows() {
    let sine = stdout(&["kernel", "--family", "sine", "--phi", "pi", "--window", "-3..3"]);
    let mut lines = sine.lines();
    assert_eq!(lines.next(), Some("x,y,value"));
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let expect = if f[0] == f[1] { 1.0 } else { 0.0 };
        assert_eq!(f[2].parse::<f64>().unwrap(), expect, "{line}");
    }
    let hermite = stdout(&["kernel", "--family", "hermite", "--s", "0", "--window", "0..2"]);
    assert!(hermite.lines().any(|l| l == "0,0,0.5"));
    let charlier = stdout(&[
        "kernel", "--family", "charlier", "--N", "1", "--theta", "1", "--window", "0..1",
    ]);
    assert!(charlier.lines().any(|l| l.starts_with("0,0,0.3678794")));
}

#[test]
fn sampling_is_deterministic() {
    let args = [
        "sample",
        "--family",
        "krawtchouk",
        "--N",
        "2",
        "--p",
        "0.5",
        "--L",
        "3",
        "--count",
        "1",
        "--seed",
        "7",
    ];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let pts: Vec<i64> = a.trim().split(',').map(|t| t.trim().parse().unwrap()).collect();
    assert_eq!(pts.len(), 2);
    assert!(pts[0] > pts[1]);
    let seq = stdout(&[
        "--sequential",
        "sample",
        "--family",
        "charlier",
        "--N",
        "3",
        "--theta",
        "9",
        "--count",
        "50",
    ]);
    let par = stdout(&[
        "sample", "--family", "charlier", "--N", "3", "--theta", "9", "--count", "50",
    ]);
    assert_eq!(seq, par);
}

#[test]
fn charlier_samples_have_three_points() {
    let out = stdout(&[
        "sample", "--family", "charlier", "--N", "3", "--theta", "9", "--count", "1000",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1000);
    assert!(lines.iter().all(|l| l.split(',').count() == 3));
}

#[test]
fn window_law_is_json() {
    let out = stdout(&[
        "window",
        "--family",
        "krawtchouk",
        "--N",
        "2",
        "--p",
        "0.5",
        "--L",
        "3",
        "--window",
        "0..3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let total: f64 = v.as_object().unwrap().values().map(|x| x.as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn converge_and_shape() {
    let out = stdout(&["converge", "--regime", "bulk", "--c", "0", "--p", "0.5"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    let omega = stdout(&["shape", "--curve", "omega", "--points", "101"]);
    assert!(omega.lines().any(|l| l.starts_with("0,1.2732395")));
    let flat = stdout(&["shape", "--curve", "mixf", "--p", "0.5", "--points", "101"]);
    for line in flat.lines().skip(1) {
        let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((v - 1.0).abs() < 1e-6);
    }
}

#[test]
fn output_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("plancherel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dims.txt");
    let printed = stdout(&["--output", path.to_str().unwrap(), "dims", "--lambda", "3,1"]);
    assert!(printed.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), "dim=3");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["dims", "--lambda", "1,x"]), 2);
    assert_eq!(exit_code(&["dims", "--lambda", "1,2"]), 3);
    assert_eq!(exit_code(&["frobnicate"]), 2);
    assert_eq!(
        exit_code(&["kernel", "--family", "sine", "--phi", "4", "--window", "0..2"]),
        3
    );
    assert_eq!(exit_code(&["kernel", "--family", "hermite", "--window", "0..2"]), 2);
    assert_eq!(
        exit_code(&["window", "--family", "sine", "--phi", "1", "--window", "0..25"]),
        3
    );
    assert_eq!(exit_code(&["shape", "--curve", "mixf", "--p", "1.5"]), 3);
    assert_eq!(exit_code(&["--help"]), 0);
}
