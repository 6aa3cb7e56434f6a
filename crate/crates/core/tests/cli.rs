use std::process::{Command, Output};

fn polycasimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycasimir")).args(args).env_remove("POLYCASIMIR_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zeros_example() {
    let o = polycasimir(&["zeros", "--order", "0", "--count", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<f64> = serde_json::from_str(&stdout(&o)).unwrap();
    for (got, want) in v.iter().zip([2.404825557695773, 5.520078110286311, 8.653727912911013]) {
        assert!((got - want).abs() < 1e-14);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(polycasimir(&["zeros", "--unknown"]).status.code(), Some(2));
    assert_eq!(polycasimir(&[]).status.code(), Some(2));
    assert_eq!(polycasimir(&["cylinder", "--length", "0"]).status.code(), Some(2));
    assert_eq!(polycasimir(&["spectrum", "--domain", "square", "--count", "5"]).status.code(), Some(2));
    assert_eq!(polycasimir(&["rd-scale", "--sides", "2"]).status.code(), Some(2));
    assert_eq!(polycasimir(&["--version"]).status.code(), Some(0));
    // usage errors print the usage line
    let o = polycasimir(&["compare", "--grid", "x"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--grid"));
}

#[test]
fn every_subcommand_runs() {
    for args in [
        &["spectrum", "--domain", "disk", "--count", "5"][..],
        &["spectrum", "--domain", "square", "--grid", "3", "--format", "csv"],
        &["spectrum", "--sides", "6", "--grid", "3"],
        &["compare", "--grid", "5", "--curves", "--format", "csv"],
        &["regimes", "--format", "csv"],
        &["circle-energy", "--source", "formula"],
        &["square-energy", "--radius", "2"],
        &["polygon-energy", "--sides", "5", "--order", "2"],
        &["rd-scale", "--dims", "3"],
        &["cylinder", "--length", "0.5", "--count", "4"],
        &["inflate", "--delta-r", "0.05", "--format", "csv"],
        &["reconcile", "--format", "csv"],
    ] {
        let o = polycasimir(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty());
        let manifest = String::from_utf8(o.stderr).unwrap();
        let m: serde_json::Value = serde_json::from_str(manifest.trim()).unwrap();
        assert_eq!(m["command"], args[0]);
    }
}

#[test]
fn polygon_energy_example() {
    let o = polycasimir(&[
        "polygon-energy",
        "--sides",
        "4",
        "--radius",
        "1",
        "--source",
        "paper-constants",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["pole_residue"].as_f64().unwrap() + 1.266783 / 128.0).abs() < 1e-8);
    assert_eq!(v["source"], "paper_constants");
}

#[test]
fn compare_csv_has_rows_and_summary() {
    let o = polycasimir(&["compare", "--grid", "20", "--sides", "4", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,n,omega_polygon,omega_square,rel_diff");
    assert_eq!(lines.iter().filter(|l| !l.starts_with('#')).count(), 401);
    assert!(lines.iter().any(|l| l.starts_with("# mean_rel_diff=")));
}

#[test]
fn output_file_and_manifest() {
    let dir = std::env::temp_dir().join(format!("polycasimir-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("regimes.csv");
    let o = polycasimir(&["regimes", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty() && o.stderr.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("regime,"));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("regimes.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["outputs"][0], out.to_str().unwrap());
    assert_eq!(manifest["flags"]["format"], "csv");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_independent_of_thread_count() {
    let one = polycasimir(&["compare", "--grid", "60", "--format", "csv", "--threads", "1"]);
    let four = polycasimir(&["compare", "--grid", "60", "--format", "csv", "--threads", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_polycasimir"))
        .args(["compare", "--grid", "60", "--format", "csv"])
        .env("POLYCASIMIR_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(env.stdout, one.stdout);
    assert!(String::from_utf8(env.stderr).unwrap().contains("\"threads\":\"3\""));
}
