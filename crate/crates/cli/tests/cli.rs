use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn toboggan(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toboggan"))
        .args(args)
        .current_dir(dir)
        .env_remove("TOBOGGAN_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn wedges_table_lists_first_right() {
    let dir = tempfile::tempdir().unwrap();
    let o = toboggan(&["wedges", "--D", "10", "--sign", "minus"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("first right")).unwrap();
    assert!(line.contains("-5π/12") && line.contains("-π/4"), "{line}");
}

#[test]
fn qe_json_has_exact_solution() {
    let dir = tempfile::tempdir().unwrap();
    let o = toboggan(&["qe", "--M", "1", "--N", "1", "--alpha", "0", "--beta", "0"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s = &v["solutions"][0];
    assert_eq!(s["energy"].as_f64(), Some(0.0));
    assert_eq!(s["g2"].as_f64(), Some(0.0));
    assert_eq!(s["g4"].as_f64(), Some(-4.0));
}

#[test]
fn usage_and_computation_errors_have_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(toboggan(&["nonsense"], dir.path()).status.code(), Some(2));
    assert_eq!(toboggan(&["qe", "--M", "0", "--N", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(toboggan(&["wedges", "--D", "3"], dir.path()).status.code(), Some(2));
    assert_eq!(toboggan(&["spectrum", "--harmonic", "0.5", "--points", "2"], dir.path()).status.code(), Some(2));
    // a contour ending on a Stokes line of x² is a computation failure
    let o = toboggan(&["spectrum", "--harmonic", "0.5", "--variant", "join", "--n", "1", "--p", "4", "--points", "51"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Stokes"));
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.json"), r#"{"command": "qe", "args": {"M": 2, "N": 1, "alpha": 1, "beta": -1}}"#).unwrap();
    let from_config = toboggan(&["--config", "run.json"], dir.path());
    let from_flags = toboggan(&["qe", "--M", "2", "--N", "1", "--alpha", "1", "--beta", "-1"], dir.path());
    assert!(from_config.status.success());
    assert_eq!(from_config.stdout, from_flags.stdout);

    fs::write(dir.path().join("bad.json"), r#"{"command": "qe", "args": {"M": "two"}}"#).unwrap();
    assert_eq!(toboggan(&["--config", "bad.json"], dir.path()).status.code(), Some(2));
    assert_eq!(toboggan(&["--config", "missing.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn figures_are_byte_identical_and_honour_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_toboggan"))
            .arg("figures")
            .current_dir(dir.path())
            .env("TOBOGGAN_OUT_DIR", sub)
            .output()
            .unwrap();
        assert!(o.status.success());
    };
    run("a");
    run("b");
    for n in 1..=7 {
        let name = format!("fig{n}.svg");
        let a = fs::read(dir.path().join("a").join(&name)).unwrap();
        let b = fs::read(dir.path().join("b").join(&name)).unwrap();
        assert_eq!(a, b, "{name}");
        assert!(String::from_utf8(a).unwrap().starts_with("<svg"));
    }
}

#[test]
fn json_outputs_repeat_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 4] = [
        &["wedges", "--D", "2", "--sign", "plus", "--format", "json"],
        &["contour", "--variant", "join", "--n", "3", "--p", "2", "--samples", "21"],
        &["transform", "--term", "-1@2", "--term", "1@-4/3", "--alpha", "3", "--lambda", "1/9", "--exempt", "2"],
        &["spectrum", "--harmonic", "0.75", "--points", "121", "--s-max", "6", "--k", "4"],
    ];
    for args in runs {
        let a = toboggan(args, dir.path());
        let b = toboggan(args, dir.path());
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&a.stdout).unwrap();
    }
}

#[test]
fn transform_is_exact_for_rational_input() {
    let dir = tempfile::tempdir().unwrap();
    let o = toboggan(
        &["transform", "--term", "-1@2", "--term", "1@-4/3", "--term", "5/7@-2", "--alpha", "3", "--lambda", "1/9", "--exempt", "2"],
        dir.path(),
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["new_energy"], "-1");
    assert_eq!(v["energy_factor"], "-9");
    assert!(v["potential_exact"].as_str().unwrap().contains("5/7·(ix)^-2"));
}

#[test]
fn spectrum_writes_files_and_refines() {
    let dir = tempfile::tempdir().unwrap();
    let o = toboggan(
        &["spectrum", "--harmonic", "0.5", "--points", "401", "--k", "3", "--shoot", "0.9", "--output", "out/s.json"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("out/s.json")).unwrap()).unwrap();
    let levels: Vec<f64> = v["filtered_real"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(levels.len(), 3);
    assert!((levels[0] - 1.0).abs() < 1e-2);
    let refined = v["refined"][0]["energy"][0].as_f64().unwrap();
    assert!((refined - 1.0).abs() < 1e-8);
}

#[test]
fn verify_subset_prints_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = toboggan(&["verify", "--only", "1,4,5,8,9,10"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 6);
    assert!(text.contains("6/6 checks passed"));
    assert_eq!(toboggan(&["verify", "--only", "99"], dir.path()).status.code(), Some(2));
}
