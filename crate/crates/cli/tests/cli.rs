use std::{ fs, path::{ Path, PathBuf }, process::{ Command, Output } };
use tempfile::TempDir;

const RESONANT: &str = "\
omega_c = 1.0
rwa = true
photon_cutoff = 1
atom.1.omega = 1.0
atom.1.g = 0.01
atom.2.omega = 1.0
atom.2.g = 0.005
";

fn tavis(args: &[&str]) -> Output {
    tavis_env(args, None)
}

fn tavis_env(args: &[&str], workers: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tavis"));
    cmd.args(args).env_remove("TAVIS_WORKERS");
    if let Some(w) = workers {
        cmd.env("TAVIS_WORKERS", w);
    }
    cmd.output().expect("binary runs")
}

fn model_file(dir: &TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("model.txt");
    fs::write(&path, text).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Header names and data rows.
fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().expect("header").split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let k = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[k].parse().unwrap()).collect()
}

#[test]
fn resonant_spectrum_lists_the_dark_state_first() {
    let dir = TempDir::new().unwrap();
    let model = model_file(&dir, RESONANT);
    let o = tavis(&["spectrum", "--model", arg(&model)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = csv(&stdout(&o));
    assert_eq!(rows.len(), 3);
    let ev = column(&h, &rows, "eigenvalue");
    assert!((ev[0] - 1.0).abs() < 1e-12);
    let photon = column(&h, &rows, "v2_re")[0].hypot(column(&h, &rows, "v2_im")[0]);
    assert!(photon < 1e-12);
    assert!(column(&h, &rows, "discrepancy").iter().all(|&d| d <= 1e-8));
}

#[test]
fn decoupled_spectrum_is_bare() {
    let dir = TempDir::new().unwrap();
    let text = RESONANT.replace("atom.1.g = 0.01", "atom.1.g = 0").replace("atom.2.g = 0.005", "atom.2.g = 0");
    let model = model_file(&dir, &text);
    let o = tavis(&["spectrum", "--model", arg(&model), "--set", "atom.2.omega=1.02"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = csv(&stdout(&o));
    let mut ev = column(&h, &rows, "eigenvalue");
    ev.sort_by(f64::total_cmp);
    for (got, want) in ev.iter().zip([1.0, 1.0, 1.02]) {
        assert!((got - want).abs() < 1e-14, "{got} vs {want}");
    }
}

#[test]
fn physical_units_scale_frequencies() {
    let dir = TempDir::new().unwrap();
    let model = model_file(&dir, RESONANT);
    let o = tavis(&["spectrum", "--model", arg(&model), "--physical", "5e9"]);
    assert!(o.status.success());
    let (h, rows) = csv(&stdout(&o));
    assert!((column(&h, &rows, "eigenvalue")[0] - 5e9).abs() < 1e-2);
}

#[test]
fn dark_find_at_resonance() {
    let dir = TempDir::new().unwrap();
    let model = model_file(&dir, RESONANT);
    let o = tavis(&["dark-find", "--model", arg(&model)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = csv(&stdout(&o));
    assert_eq!(rows.len(), 1);
    assert!(column(&h, &rows, "photon_support")[0] < 1e-12);

    let o = tavis(&["dark-find", "--model", arg(&model), "--set", "atom.1.omega=1.005"]);
    assert!(o.status.success());
    assert_eq!(csv(&stdout(&o)).1.len(), 0);
}

#[test]
fn unknown_key_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let model = model_file(&dir, RESONANT);
    let o = tavis(&["spectrum", "--model", arg(&model), "--set", "atom.1.phase=2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("atom.1.phase"));

    let o = tavis(&["sweep", "--set", "gamma=0.1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("gamma"));
}

#[test]
fn sweep_without_shift_has_zero_yield() {
    let o = tavis(&["sweep", "--ds-range", "0:0:1", "--dg-range", "0:0:1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = csv(&stdout(&o));
    assert_eq!(rows.len(), 1);
    assert!(column(&h, &rows, "p_max")[0] <= 1e-25);
}

#[test]
fn sweep_output_is_independent_of_workers() {
    let args = ["sweep", "--ds-range", "0:0.01:6", "--dg-range", "0:0.007:5", "--t-steps", "400"];
    let one = tavis_env(&args, Some("1"));
    let four = tavis_env(&args, Some("4"));
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(csv(&stdout(&one)).1.len(), 30);
    assert_eq!(tavis_env(&args, Some("0")).status.code(), Some(1));
}

#[test]
fn sweep_floats_round_trip_through_out_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = tavis(&["sweep", "--ds-range", "0.001:0.003:3", "--dg-range", "0:0:1", "--out", arg(&out)]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    let (h, rows) = csv(&text);
    let ds = column(&h, &rows, "ds");
    assert_eq!(ds, [0.001, 0.002, 0.003]);
    for r in &rows {
        for cell in r {
            let x: f64 = cell.parse().unwrap();
            assert_eq!(format!("{x:.16e}"), *cell);
        }
    }
}

#[test]
fn protocol_is_reproducible() {
    let args = ["protocol", "--set", "ds=0.005", "--trials", "300", "--max-cycles", "500", "--seed", "9"];
    let a = tavis_env(&args, Some("1"));
    let b = tavis_env(&args, Some("3"));
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let (h, rows) = csv(&stdout(&a));
    assert_eq!(h, ["trial", "cycles_used", "outcome"]);
    assert_eq!(rows.len(), 300);
    let other = tavis(&["protocol", "--set", "ds=0.005", "--trials", "300", "--max-cycles", "500", "--seed", "10"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn protocol_without_shift_never_succeeds() {
    let o = tavis(&["protocol", "--trials", "50", "--max-cycles", "20"]);
    assert!(o.status.success());
    let (_, rows) = csv(&stdout(&o));
    assert!(rows.iter().all(|r| r[2] == "photon_detected" && r[1] == "20"));
    let summary = stderr(&o);
    assert!(summary.contains("no shift"), "{summary}");
    assert!(summary.contains("0 of 50 trials succeeded"), "{summary}");
}

#[test]
fn verify_exit_codes() {
    let o = tavis(&["verify", "--draws", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count() > 1);

    let o = tavis(&["verify", "--draws", "5", "--checks", "hermiticity", "--inject-non-hermitian"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));

    let o = tavis(&["verify", "--checks", ","]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no checks selected"));
}

#[test]
fn bad_invocations() {
    assert_eq!(tavis(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(tavis(&["sweep", "--ds-range", "1:0:3"]).status.code(), Some(1));
    assert_eq!(tavis(&["spectrum", "--model", "/nonexistent/model.txt"]).status.code(), Some(1));
    assert_eq!(tavis(&["--help"]).status.code(), Some(0));
}
