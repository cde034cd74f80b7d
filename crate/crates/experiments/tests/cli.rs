use std::path::PathBuf;
use std::process::{Command, Output};

fn xlink(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_xlink"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("XLINK_THREADS", t),
        None => cmd.env_remove("XLINK_THREADS"),
    };
    cmd.output().expect("xlink runs")
}

fn config(name: &str) -> String {
    format!("{}/configs/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sweep_writes_the_fig4_csv() {
    let out = scratch_dir("cli_sweep").join("fig4.csv");
    let o = xlink(
        &[
            "sweep",
            "--config",
            &config("fig4"),
            "--out",
            out.to_str().unwrap(),
        ],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# config_sha256: "));
    let data = xlink_experiments::read_csv(&text).unwrap();
    assert_eq!(data.header[0], "num_satellites");
    assert_eq!(data.rows.len(), 91);
}

#[test]
fn verify_reports_agreement() {
    let o = xlink(&["verify", "--config", &config("fig4")], None);
    assert!(o.status.success());
    let report = stdout(&o);
    assert!(report.contains("result: PASS"), "{report}");
    let db: f64 = report
        .lines()
        .find_map(|l| l.strip_prefix("max_abs_db_discrepancy: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(db < 1e-6);
}

#[test]
fn missing_config_names_the_path() {
    let o = xlink(&["sweep", "--config", "/no/such/dir/fig.json"], None);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("/no/such/dir/fig.json"));
}

#[test]
fn bad_arguments_exit_with_usage() {
    for args in [
        &["frobnicate"][..],
        &["sweep"],
        &["sweep", "--config", "x", "--seed", "minus"],
    ] {
        let o = xlink(args, None);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("--help"));
    }
}

#[test]
fn bad_thread_setting_is_an_error() {
    let o = xlink(&["analyze", "--config", &config("fig4")], Some("many"));
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("XLINK_THREADS"));
}

#[test]
fn analyze_prints_one_evaluation() {
    let o = xlink(
        &["analyze", "--config", &config("fig6a"), "--time", "100"],
        None,
    );
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("scenario: shifted"));
    assert!(text.contains("time_s: 100"));
    assert!(text.contains("sir_db: "));
}

#[test]
fn simulate_is_deterministic_across_thread_counts() {
    let args = [
        "simulate",
        "--config",
        &config("fig5a"),
        "--samples",
        "300",
        "--draws",
        "3",
    ];
    let one = xlink(&args, Some("1"));
    let two = xlink(&args, Some("2"));
    let auto = xlink(&args, Some("0"));
    assert!(
        one.status.success(),
        "{}",
        String::from_utf8_lossy(&one.stderr)
    );
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(one.stdout, auto.stdout);
    assert_eq!(one.stderr, two.stderr);
    let text = stdout(&one);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 301);
    assert!(String::from_utf8_lossy(&one.stderr).contains("monte carlo: draws=3"));
}

#[test]
fn seed_and_samples_flags_reach_the_output() {
    let o = xlink(
        &[
            "sweep",
            "--config",
            &config("fig6a"),
            "--seed",
            "42",
            "--samples",
            "200",
        ],
        None,
    );
    assert!(o.status.success());
    let data = xlink_experiments::read_csv(&stdout(&o)).unwrap();
    assert!(data
        .metadata
        .contains(&("seed".to_string(), "42".to_string())));
    assert_eq!(data.rows.len(), 200);
}

#[test]
fn figures_regenerates_every_csv() {
    let dir = scratch_dir("cli_figures");
    let o = xlink(
        &["figures", "--out", dir.to_str().unwrap(), "--samples", "20"],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for (name, _) in xlink_experiments::figures::FIGURES {
        let text = std::fs::read_to_string(dir.join(format!("{name}.csv"))).unwrap();
        assert!(text.contains("# max_abs_db_discrepancy: "), "{name}");
    }
}
