use std::process::{Command, Output};

fn boxjen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxjen")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn row(csv: &str, year: &str) -> Vec<f64> {
    let line = csv.lines().find(|l| l.starts_with(year)).expect("year present");
    line.split(',').skip(1).map(|v| v.parse().unwrap()).collect()
}

#[test]
fn exchange_rate_random_walk_forecast() {
    let o = boxjen(&["forecast", "--data", "catalog:exchange_rate_1971_2024", "--order", "0,1,0", "--drift", "--horizon", "23"]);
    assert!(o.status.success());
    let r = row(&stdout(&o), "2025");
    for (got, want) in r.iter().zip([84.20917, 79.47523, 88.94311]) {
        assert!((got - want).abs() < 1e-4, "{got} vs {want}");
    }
}

#[test]
fn unitroot_reports_adf_statistic() {
    let o = boxjen(&["unitroot", "--data", "catalog:exchange_rate_1971_2024", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let z: f64 = out.lines().nth(1).unwrap().split(',').nth(5).unwrap().parse().unwrap();
    assert!((z - 1.566941).abs() < 1e-4, "{z}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(boxjen(&[]).status.code(), Some(2));
    assert_eq!(boxjen(&["fit", "--data", "catalog:exchange_rate_1971_2024", "--order", "0,1,0", "--bogus"]).status.code(), Some(2));
    assert_eq!(boxjen(&["fit", "--data", "catalog:exchange_rate_1971_2024", "--order", "zero"]).status.code(), Some(2));
    assert_eq!(boxjen(&["forecast", "--data", "catalog:exchange_rate_1971_2024", "--horizon", "2", "--plot"]).status.code(), Some(2));
}

#[test]
fn missing_data_exits_one() {
    let o = boxjen(&["fit", "--data", "/definitely/not/here.csv", "--order", "0,1,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn config_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "data = \"catalog:exchange_rate_1971_2024\"\nhorizonn = 3\n").unwrap();
    let o = boxjen(&["forecast", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "data = \"catalog:exchange_rate_1971_2024\"\norder = \"0,1,0\"\ndrift = true\nhorizon = 10\n").unwrap();
    let o = boxjen(&["forecast", "--config", path.to_str().unwrap(), "--horizon", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let o = boxjen(&[
            "forecast", "--data", "catalog:gdp_rs_crore_1991_2025", "--order", "0,2,1", "--horizon", "22",
            "--out", dir.path().to_str().unwrap(), "--format", "csv,json,md", "--plot",
        ]);
        assert!(o.status.success());
        let mut files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        files.iter().map(|p| std::fs::read(p).unwrap()).collect::<Vec<_>>()
    };
    let a = run();
    assert_eq!(a.len(), 4);
    assert_eq!(a, run());
}

#[test]
fn grid_ranks_ima_first_for_gdp() {
    let o = boxjen(&["grid", "--data", "catalog:gdp_rs_crore_1991_2025", "--p-max", "1", "--d-max", "2", "--q-max", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("0,2,1,"));
}

#[test]
fn reproduce_paper_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = boxjen(&["reproduce-paper", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    assert!(dir.path().join("report.md").exists());
    assert!(dir.path().join("checks.csv").exists());
}
