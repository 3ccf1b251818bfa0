//! End-to-end tests of the `acr` binary: exit codes, file outputs and
//! byte-level determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn acr() -> Command {
    Command::new(env!("CARGO_BIN_EXE_acr"))
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("config.toml");
    fs::write(&path, body).unwrap();
    path
}

const SMALL_CONFIG: &str = r#"
objective = "sphere2d"
generations = 60
runs = 20
seed = 5
checkpoints = [1, 30, 60]

[strategy]
kind = "adaptive-norm"
"#;

#[test]
fn run_writes_both_csvs_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), SMALL_CONFIG);
    let out = dir.path().join("out");
    let result = acr()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(result.status.success(), "{result:?}");

    let series = fs::read_to_string(out.join("series.csv")).unwrap();
    assert!(series.starts_with("t,e_t,R_t,ratio,log10_e\n"));
    assert_eq!(series.lines().count(), 62); // header + 61 generations
    let checkpoints = fs::read_to_string(out.join("checkpoints.csv")).unwrap();
    assert!(checkpoints.starts_with("objective,strategy,t1,t30,t60\n"));
}

#[test]
fn run_is_byte_deterministic_across_invocations_and_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), SMALL_CONFIG);

    let read_pair = |out: &Path| {
        (
            fs::read(out.join("series.csv")).unwrap(),
            fs::read(out.join("checkpoints.csv")).unwrap(),
        )
    };
    let run_with = |out: &Path, threads: Option<&str>| {
        let mut cmd = acr();
        cmd.args(["run", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(out);
        if let Some(t) = threads {
            cmd.env("RAYON_NUM_THREADS", t);
        }
        let result = cmd.output().unwrap();
        assert!(result.status.success(), "{result:?}");
    };

    let (a, b, c, d) = (
        dir.path().join("a"),
        dir.path().join("b"),
        dir.path().join("c"),
        dir.path().join("d"),
    );
    run_with(&a, None);
    run_with(&b, None);
    run_with(&c, Some("1"));
    run_with(&d, Some("4"));

    let first = read_pair(&a);
    assert_eq!(first, read_pair(&b), "repeat invocation diverged");
    assert_eq!(first, read_pair(&c), "single-worker run diverged");
    assert_eq!(first, read_pair(&d), "four-worker run diverged");
}

#[test]
fn invalid_configs_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("objective = \"ackley\"\n[strategy]\nkind = \"invariant\"\n", "objective"),
        (
            "objective = \"sphere2d\"\ncheckpoints = [0, 9]\n[strategy]\nkind = \"invariant\"\n",
            "checkpoints",
        ),
        (
            "objective = \"sphere2d\"\n[strategy]\nkind = \"invariant\"\nsigma = [-1.0, 1.0]\n",
            "sigma",
        ),
    ];
    for (body, needle) in cases {
        let config = write_config(dir.path(), body);
        let result: Output = acr()
            .args(["run", "--config"])
            .arg(&config)
            .output()
            .unwrap();
        assert_eq!(result.status.code(), Some(2), "{body}");
        let stderr = String::from_utf8_lossy(&result.stderr);
        assert!(stderr.contains(needle), "stderr {stderr:?} misses {needle:?}");
    }
}

#[test]
fn missing_config_file_exits_with_code_three() {
    let result = acr()
        .args(["run", "--config", "/definitely/not/here.toml"])
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(3));
}

#[test]
fn region_prints_interval_rows() {
    let result = acr().args(["region", "--x", "0.7"]).output().unwrap();
    assert!(result.status.success());
    let stdout = String::from_utf8(result.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "lo,hi");
    assert_eq!(lines.len(), 8, "seven intervals expected: {stdout}");
    for row in &lines[1..] {
        let (lo, hi) = row.split_once(',').unwrap();
        assert!(lo.parse::<f64>().unwrap() < hi.parse::<f64>().unwrap());
    }
}

#[test]
fn region_of_the_optimizer_is_empty() {
    let result = acr().args(["region", "--x", "0"]).output().unwrap();
    assert!(result.status.success());
    assert_eq!(String::from_utf8(result.stdout).unwrap(), "lo,hi\n");
}

#[test]
fn plot_generates_a_script_referencing_headers() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), SMALL_CONFIG);
    let out = dir.path().join("out");
    assert!(acr()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap()
        .status
        .success());

    let script_path = dir.path().join("plot.gp");
    let result = acr()
        .arg("plot")
        .arg(out.join("series.csv"))
        .arg("--out")
        .arg(&script_path)
        .output()
        .unwrap();
    assert!(result.status.success(), "{result:?}");
    let script = fs::read_to_string(&script_path).unwrap();
    for column in ["R_t", "ratio", "log10_e"] {
        assert!(script.contains(&format!("column(\"{column}\")")), "{script}");
    }
}

#[test]
fn plot_rejects_empty_or_malformed_series_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "t,e_t,R_t,ratio,log10_e\n").unwrap();
    let script = dir.path().join("plot.gp");
    let result = acr()
        .arg("plot")
        .arg(&empty)
        .arg("--out")
        .arg(&script)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));
    assert!(!script.exists(), "script must not be written on failure");

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "time,error\n0,1\n").unwrap();
    let result = acr()
        .arg("plot")
        .arg(&bad)
        .arg("--out")
        .arg(&script)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains(":1:"), "diagnostic should carry the line: {stderr}");
}

#[test]
fn verify_emits_one_row_per_check_and_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.csv");
    let result = acr()
        .args(["verify", "--seed", "7", "--out"])
        .arg(&report)
        .output()
        .unwrap();
    assert!(result.status.success(), "{result:?}");
    let csv = fs::read_to_string(&report).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "check_id,status,value,bound,ci");
    assert_eq!(
        lines.len(),
        1 + acr_cli::verify::CHECK_COUNT,
        "one row per documented check"
    );
    for row in &lines[1..] {
        assert!(row.contains(",PASS,"), "unexpected failure row: {row}");
    }
}

#[test]
fn bundled_configs_parse() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in fs::read_dir(configs).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let text = fs::read_to_string(&path).unwrap();
            acr_cli::config::load_config(&text)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert_eq!(seen, 4);
}
