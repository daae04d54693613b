use std::process::{Command, Output};

fn spiked(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiked"))
        .args(args)
        .env_remove("SPIKED_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const THREE_D_P: [&str; 10] = [
    "--lambda", "10", "--alpha", "2.1", "--dim", "5", "--ell", "1", "--state", "2",
];

#[test]
fn solve_text_output() {
    let mut args = vec!["solve", "--D", "30"];
    args.extend(THREE_D_P);
    let o = spiked(&args);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("E = 17.955445"), "{text}");
    assert!(text.contains("D = 30"));
}

#[test]
fn solve_csv_and_json_agree() {
    let mut csv_args = vec!["solve", "--format", "csv"];
    csv_args.extend(THREE_D_P);
    let csv_text = stdout(&spiked(&csv_args));
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let record = reader.records().next().unwrap().unwrap();
    let energy_col = headers.iter().position(|h| h == "energy").unwrap();
    let from_csv: f64 = record[energy_col].parse().unwrap();

    let mut json_args = vec!["solve", "--format", "json"];
    json_args.extend(THREE_D_P);
    let v: serde_json::Value = serde_json::from_str(&stdout(&spiked(&json_args))).unwrap();
    assert_eq!(v["energy"].as_f64().unwrap(), from_csv);
    assert_eq!(v["dim"], 30);
    assert!((from_csv - 17.955446).abs() < 1e-6);
}

#[test]
fn optimized_solve_reports_shift() {
    let o = spiked(&[
        "solve",
        "--lambda",
        "10",
        "--D",
        "1",
        "--optimize-shift",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let shift = v["shift"].as_f64().unwrap();
    assert!(shift > 0.0);
    assert!(v["energy"].as_f64().unwrap() < 43.910627);
}

#[test]
fn oracle_reference_value() {
    let o = spiked(&["oracle", "--lambda", "10", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["energy"].as_f64().unwrap() - 7.735111).abs() < 1e-6);
    assert!(v["dim"].is_null());
}

#[test]
fn out_dir_env_resolves_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_spiked"))
        .args([
            "reproduce",
            "--table",
            "III",
            "--format",
            "csv",
            "--out",
            "sub/t3.csv",
        ])
        .env("SPIKED_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("sub/t3.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("table,row_key,column,computed,expected,delta,status")
    );
    assert_eq!(lines.count(), 18);
}

#[test]
fn passing_table_exits_zero() {
    let o = spiked(&["reproduce", "--table", "II"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("54 cells, 0 outside tolerance"));
}

#[test]
fn failing_cells_exit_one() {
    let o = spiked(&["reproduce", "--table", "IV", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cells = v.as_array().unwrap();
    assert_eq!(cells.len(), 66);
    assert!(cells.iter().any(|c| c["status"] == "fail"));
}

#[test]
fn usage_and_domain_errors_exit_two() {
    for args in [
        vec!["solve", "--lambda", "abc"],
        vec!["solve", "--ell", "1"],
        vec!["solve", "--shift-lo", "1"],
        vec!["reproduce", "--table", "V"],
        vec!["solve", "--lambda", "1", "--alpha", "3"],
        vec!["solve", "--B", "-1"],
        vec!["solve", "--D", "0"],
    ] {
        let o = spiked(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn figure_has_nine_series_and_potential() {
    let o = spiked(&["wavefunction", "--figure"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let mut expected = vec!["x".to_string(), "V".to_string()];
    expected.extend((2..=10).map(|n| format!("N{n}")));
    assert_eq!(headers, expected);
    let rows: Vec<Vec<f64>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 1000);
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));
    for col in 2..11 {
        let psi: Vec<f64> = rows.iter().map(|r| r[col]).collect();
        assert_eq!(
            spiked_cli::wavefunction::count_nodes(&psi, 1e-3),
            2,
            "{}",
            headers[col]
        );
    }
}

#[test]
fn wavefunction_json_columns() {
    let o = spiked(&[
        "wavefunction",
        "--lambda",
        "1",
        "--D",
        "20",
        "--state",
        "1",
        "--points",
        "50",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["x"].as_array().unwrap().len(), 50);
    assert_eq!(v["psi1"].as_array().unwrap().len(), 50);
    assert_eq!(v["V"].as_array().unwrap().len(), 50);
}
