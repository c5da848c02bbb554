use std::fs;
use std::process::{Command, Output};

fn halflap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halflap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eig_lists_eigenvalues() {
    let o = halflap(&["eig", "--domain", "interval:1:64", "--modes", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,lambda"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    let lambda: f64 = first[1].parse().unwrap();
    assert!((lambda - std::f64::consts::PI.powi(2)).abs() < 1e-12);
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn solve_emits_json() {
    let o = halflap(&["solve", "--domain", "interval:1:128", "--modes", "32"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["converged"], true);
    assert!(v["i0"].as_f64().unwrap() > 0.0);
    assert_eq!(v["values"].as_array().unwrap().len(), 127);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 32);
}

#[test]
fn bad_arguments_exit_two() {
    let low_p = halflap(&["solve", "--domain", "interval:1:64", "--modes", "8", "--p", "0.5"]);
    assert_eq!(low_p.status.code(), Some(2));
    assert!(!low_p.stderr.is_empty());

    assert_eq!(halflap(&["solve", "--domain", "disk:1:64"]).status.code(), Some(2));
    assert_eq!(halflap(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(halflap(&["--config", "/nonexistent/halflap.conf"]).status.code(), Some(2));
    // more modes than the grid resolves
    assert_eq!(
        halflap(&["eig", "--domain", "interval:1:16", "--modes", "40"]).status.code(),
        Some(2)
    );
}

#[test]
fn malformed_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    fs::write(&path, "command = solve\nunknown_key = 3\n").unwrap();
    let o = halflap(&["--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_files_drive_runs() {
    let dir = tempfile::tempdir().unwrap();
    let flat = dir.path().join("run.conf");
    fs::write(&flat, "command = eig\ndomain = interval:2:64\nmodes = 3\n").unwrap();
    let o = halflap(&["--config", flat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    let lambda: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert!((lambda - (3.0 * std::f64::consts::PI / 2.0).powi(2)).abs() < 1e-12);

    let json = dir.path().join("run.json");
    fs::write(&json, r#"{"command": "eig", "domain": "interval:1:64", "modes": 2}"#).unwrap();
    let o = halflap(&["--config", json.to_str().unwrap(), "--modes", "5"]);
    assert_eq!(o.status.code(), Some(0));
    // the flag wins over the file
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn plot_data_layout() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("u1.csv");
    let o = halflap(&[
        "solve", "--domain", "interval:1:8", "--modes", "2", "--plot", one.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&one).unwrap();
    assert_eq!(text.lines().next(), Some("x,u"));
    assert_eq!(text.lines().count(), 1 + 7);

    let two = dir.path().join("u2.csv");
    let o = halflap(&[
        "solve", "--domain", "rectangle:1:1:8:8", "--modes", "1", "--plot", two.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&two).unwrap();
    assert_eq!(text.lines().next(), Some("x1,x2,u"));
    assert_eq!(text.lines().count(), 1 + 49);
}

#[test]
fn unwritable_plot_path_exits_one() {
    let o = halflap(&[
        "solve", "--domain", "interval:1:64", "--modes", "8", "--plot",
        "/nonexistent/dir/u.csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn apply_and_extend_reports() {
    let o = halflap(&[
        "apply", "--domain", "interval:1:64", "--modes", "3", "--op", "a-half", "--coeffs", "1,0,-2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert!((rows[2][2] + 2.0 * 3.0 * std::f64::consts::PI).abs() < 1e-12);

    let o = halflap(&[
        "extend", "--domain", "interval:1:64", "--modes", "1", "--coeffs", "1", "--heights", "0,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let sups: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!((sups[1] / sups[0] - (-std::f64::consts::PI).exp()).abs() < 1e-14);
}

#[test]
fn trace_constant_and_check() {
    let o = halflap(&["trace-constant", "--resolution", "256"]);
    assert_eq!(o.status.code(), Some(0));
    let row: Vec<String> = stdout(&o).lines().nth(1).unwrap().split(',').map(String::from).collect();
    let s0: f64 = row[1].parse().unwrap();
    assert!((s0 - std::f64::consts::PI.sqrt()).abs() < 1e-14);

    let o = halflap(&["check", "--domain", "interval:1:256", "--modes", "64", "--wmp-samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().skip(1).all(|l| l.split(',').nth(1) == Some("true")));

    // a coarser truncation overshoots below zero on rough data, and check says so
    let o = halflap(&["check", "--domain", "interval:1:128", "--modes", "32", "--wmp-samples", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("weak_maximum_principle_sample,false"));
}
