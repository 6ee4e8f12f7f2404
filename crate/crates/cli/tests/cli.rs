//! End-to-end tests driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ainfo"))
}

fn bundled_channel() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/channel3x3.json")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ainfo-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_line(output: &Output) -> String {
    assert!(
        output.status.success(),
        "stdout: {} stderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8_lossy(&output.stdout).trim().to_string()
}

#[test]
fn mi_sibson_prints_nine_decimals() {
    let out = bin()
        .args(["mi", "--measure", "sibson", "--alpha", "2.0", "--channel"])
        .arg(bundled_channel())
        .output()
        .unwrap();
    let line = stdout_line(&out);
    assert_eq!(line, "0.087457734");
}

#[test]
fn mi_at_order_one_is_the_shannon_information() {
    let out = bin()
        .args(["mi", "--measure", "lp", "--alpha", "1.0", "--channel"])
        .arg(bundled_channel())
        .output()
        .unwrap();
    assert_eq!(stdout_line(&out), "0.044542386");
}

#[test]
fn mi_lp_on_a_useless_channel_is_zero() {
    let dir = scratch_dir("useless");
    let csv = dir.join("useless.csv");
    std::fs::write(&csv, "0.3,0.2,0.5\n0.3,0.2,0.5\n0.3,0.2,0.5\n").unwrap();
    let out = bin()
        .args(["mi", "--measure", "lp", "--alpha", "0.5", "--channel"])
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(stdout_line(&out), "0.000000000");
}

#[test]
fn mi_ac_at_uniform_stays_below_the_capacity_value() {
    let out = bin()
        .args(["mi", "--measure", "ac", "--alpha", "1.5", "--channel"])
        .arg(bundled_channel())
        .output()
        .unwrap();
    let value: f64 = stdout_line(&out).parse().unwrap();
    let cap = bin()
        .args(["capacity", "--algo", "c", "--alpha", "1.5", "--channel"])
        .arg(bundled_channel())
        .output()
        .unwrap();
    let cap_value: f64 = stdout_line(&cap).split_whitespace().next().unwrap().parse().unwrap();
    assert!(value <= cap_value + 1e-6, "{value} vs capacity {cap_value}");
}

#[test]
fn capacity_prints_value_and_iterations_and_writes_a_monotone_trace() {
    let dir = scratch_dir("capacity");
    let trace = dir.join("trace.csv");
    let out = bin()
        .args(["capacity", "--algo", "s1", "--alpha", "2.0", "--channel"])
        .arg(bundled_channel())
        .arg("--trace")
        .arg(&trace)
        .output()
        .unwrap();
    let line = stdout_line(&out);
    let mut fields = line.split_whitespace();
    let value: f64 = fields.next().unwrap().parse().unwrap();
    let iterations: usize = fields.next().unwrap().parse().unwrap();
    assert!(iterations > 0);

    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,objective,delta"));
    let mut last_objective = f64::NAN;
    let mut previous: Option<f64> = None;
    let mut rows = 0usize;
    for (i, row) in lines.enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), 3, "row {row}");
        let k: usize = cells[0].parse().unwrap();
        assert_eq!(k, i + 1);
        let objective: f64 = cells[1].parse().unwrap();
        let delta: f64 = cells[2].parse().unwrap();
        if let Some(p) = previous {
            assert!((delta - (objective - p)).abs() < 1e-15);
        } else {
            assert_eq!(delta, 0.0);
        }
        assert!(delta >= -1e-12, "trace not monotone at k={k}");
        previous = Some(objective);
        last_objective = objective;
        rows += 1;
    }
    assert_eq!(rows, iterations);
    // the printed value is the final objective rounded to 9 decimals
    assert!((last_objective - value).abs() <= 5e-10, "{last_objective} vs printed {value}");
}

#[test]
fn mi_trace_is_emitted_and_monotone_for_ao_measures() {
    let dir = scratch_dir("mitrace");
    let trace = dir.join("ac.csv");
    let out = bin()
        .args(["mi", "--measure", "ac", "--alpha", "0.5", "--channel"])
        .arg(bundled_channel())
        .arg("--trace")
        .arg(&trace)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,objective,delta"));
    // a minimization-form run: deltas nonpositive after the first row
    for row in lines.skip(1) {
        let delta: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert!(delta <= 1e-12, "{row}");
    }
}

#[test]
fn channel_files_with_wrong_declared_sizes_are_rejected() {
    let dir = scratch_dir("badfile");
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"x_size":3,"y_size":2,"rows":[[0.5,0.5],[0.5,0.5]]}"#,
    )
    .unwrap();
    let out = bin()
        .args(["mi", "--measure", "sibson", "--alpha", "2.0", "--channel"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x_size"));
}

#[test]
fn capacity_rejects_low_orders_for_jo_c_lp() {
    for algo in ["jo", "c", "lp"] {
        let out = bin()
            .args(["capacity", "--algo", algo, "--alpha", "0.9", "--channel"])
            .arg(bundled_channel())
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2), "{algo}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("greater than 1"));
    }
}

#[test]
fn capacity_reports_nonconvergence_with_exit_code_3() {
    let out = bin()
        .args([
            "capacity", "--algo", "s1", "--alpha", "2.0", "--max-iter", "3", "--channel",
        ])
        .arg(bundled_channel())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // the value is still printed
    let stdout = String::from_utf8_lossy(&out.stdout);
    let first = stdout.split_whitespace().next().unwrap();
    assert!(first.parse::<f64>().is_ok());
}

#[test]
fn gen_channel_is_deterministic_and_round_trips() {
    let dir = scratch_dir("gen");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for path in [&a, &b] {
        let out = bin()
            .args(["gen-channel", "--x", "2", "--y", "4", "--seed", "1", "--out"])
            .arg(path)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    // parsing and re-serializing reproduces the file byte for byte
    let parsed = serde_json::from_str::<serde_json::Value>(&std::fs::read_to_string(&a).unwrap())
        .unwrap();
    let rows = parsed["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].as_array().unwrap().len(), 4);
    let out = bin()
        .args(["mi", "--measure", "sibson", "--alpha", "2.0", "--channel"])
        .arg(&a)
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = bin()
        .args(["gen-channel", "--x", "1", "--y", "3", "--seed", "1", "--out"])
        .arg(dir.join("bad.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_one_row_per_cell_in_a_fixed_order() {
    let dir = scratch_dir("bench");
    let report = dir.join("bench.csv");
    let traces = dir.join("traces");
    let out = bin()
        .env("AINFO_THREADS", "2")
        .args([
            "bench",
            "--alphas",
            "1.5,2.0",
            "--algos",
            "s1,jo",
            "--inits",
            "uniform-joint",
            "--channel",
        ])
        .arg(bundled_channel())
        .arg("--out")
        .arg(&report)
        .arg("--trace")
        .arg(&traces)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // every emitted trace re-parses and climbs
    let mut trace_files = 0;
    for entry in std::fs::read_dir(&traces).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        for row in text.lines().skip(2) {
            let delta: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
            assert!(delta >= -1e-12, "{row}");
        }
        trace_files += 1;
    }
    assert_eq!(trace_files, 4);
    let text = std::fs::read_to_string(&report).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "algo,alpha,init,value,iterations,wall_ms");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("s1,1.5,uniform-joint,"));
    assert!(lines[2].starts_with("s1,2,uniform-joint,"));
    assert!(lines[3].starts_with("jo,1.5,uniform-joint,"));
    assert!(lines[4].starts_with("jo,2,uniform-joint,"));
    // values are reproducible from the echoed config
    let value: f64 = lines[1].split(',').nth(3).unwrap().parse().unwrap();
    let single = bin()
        .args([
            "capacity", "--algo", "s1", "--alpha", "1.5", "--init", "uniform-joint", "--channel",
        ])
        .arg(bundled_channel())
        .output()
        .unwrap();
    let again: f64 = stdout_line(&single).split_whitespace().next().unwrap().parse().unwrap();
    assert_eq!(value, again);
}

#[test]
fn bench_rejects_bad_thread_caps_and_incompatible_cells() {
    let dir = scratch_dir("benchbad");
    let out = bin()
        .env("AINFO_THREADS", "zero")
        .args(["bench", "--alphas", "2.0", "--algos", "s1", "--channel"])
        .arg(bundled_channel())
        .arg("--out")
        .arg(dir.join("r.csv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .args(["bench", "--alphas", "0.5", "--algos", "jo", "--channel"])
        .arg(bundled_channel())
        .arg("--out")
        .arg(dir.join("r.csv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .args(["bench", "--alphas", "2.0", "--algos", "s1", "--tol", "0", "--channel"])
        .arg(bundled_channel())
        .arg("--out")
        .arg(dir.join("r.csv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_agrees_with_the_closed_form() {
    let out = bin()
        .args(["oracle", "--measure", "sibson", "--alpha", "2.0", "--channel"])
        .arg(bundled_channel())
        .output()
        .unwrap();
    let oracle_value: f64 = stdout_line(&out).parse().unwrap();
    assert!((oracle_value - 0.087457734).abs() < 1e-4);
}
