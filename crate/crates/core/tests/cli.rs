use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn rhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rhs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).expect("golden file readable")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn axioms_matches_golden() {
    let out = rhs(&["axioms", "--seed", "42"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("axioms_seed42.csv"));
}

#[test]
fn converge_matches_golden() {
    let out = rhs(&["converge", "--geometric", "0.5", "--levels", "20"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text, golden("converge_geometric_0.5_20.csv"));
    let rows = csv_rows(&text);
    assert_eq!(rows[2][0], "2");
    assert_eq!(rows[2][1], "2.88675134595e-01");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["axioms", "--seed", "7", "--cases", "200"][..],
        &["seminorm", "--family", "fourier", "--function", "expcos"][..],
        &["hermite", "--degree", "6", "--target", "gaussian"][..],
        &["fourier", "--format", "json"][..],
    ] {
        assert_eq!(rhs(args).stdout, rhs(args).stdout, "{args:?}");
    }
}

#[test]
fn json_and_csv_share_strings() {
    for args in [
        &["converge", "--power", "1.0", "--levels", "10"][..],
        &["fourier", "--function", "sawtooth", "--k", "1"][..],
        &["hermite", "--degree", "3"][..],
    ] {
        let csv = stdout(&rhs(args));
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let json: Value = serde_json::from_str(&stdout(&rhs(&json_args))).expect("valid json");
        let rows = csv_rows(&csv);
        let header = &rows[0];
        let json_rows = json["rows"].as_array().expect("rows array");
        assert_eq!(json_rows.len(), rows.len() - 1);
        for (row, obj) in rows[1..].iter().zip(json_rows) {
            for (col, cell) in header.iter().zip(row) {
                assert_eq!(obj[col].as_str(), Some(cell.as_str()), "{args:?} {col}");
            }
        }
        assert!(json["pass"].is_boolean());
        assert_eq!(json["config"]["seed"], "42");
    }
}

#[test]
fn power_law_column_is_decreasing() {
    let rows = csv_rows(&stdout(&rhs(&[
        "converge", "--power", "1.0", "--levels", "10",
    ])));
    let tails: Vec<f64> = rows[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(tails.len(), 10);
    assert!(tails.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn usage_errors_exit_nonzero() {
    for args in [
        &["converge", "--geometric", "1.5"][..],
        &["converge", "--power", "0.4"][..],
        &["seminorm", "--family", "bessel"][..],
        &["hermite", "--degree", "17"][..],
        &["fourier", "--function", "square"][..],
        &["fourier", "--grid", "96"][..],
        &["axioms", "--ladder", "4:4"][..],
        &["bogus"][..],
    ] {
        let out = rhs(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let err = String::from_utf8(rhs(&["converge", "--geometric", "1.5"]).stderr).unwrap();
    assert!(err.contains("square-summable"));
}

#[test]
fn injected_cocone_fault_fails_the_run() {
    let out = rhs(&["axioms", "--inject-cocone-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let rows = csv_rows(&stdout(&out));
    let compat = rows
        .iter()
        .find(|r| r[0] == "cocone_compatibility")
        .expect("compatibility row");
    assert_eq!(compat[3], "1");
}

#[test]
fn seminorm_flags() {
    let last = |args: &[&str]| -> Vec<String> {
        csv_rows(&stdout(&rhs(args)))
            .pop()
            .expect("at least one row")
    };
    assert_eq!(
        last(&["seminorm", "--family", "geometric", "--k", "1"])[3],
        "true"
    );
    assert_eq!(
        last(&[
            "seminorm",
            "--family",
            "power",
            "--exponent",
            "1",
            "--k",
            "1"
        ])[3],
        "false"
    );

    let rows = csv_rows(&stdout(&rhs(&["seminorm", "--k", "0", "--terms", "20"])));
    let mut acc = 0.0f64;
    for (n, row) in rows[1..].iter().enumerate() {
        acc += 0.25f64.powi(n as i32 + 1);
        let q0: f64 = row[2].parse().unwrap();
        assert!((q0 - acc.sqrt()).abs() < 1e-11 * acc.sqrt());
    }
}

#[test]
fn fourier_examples() {
    let rows = csv_rows(&stdout(&rhs(&[
        "fourier",
        "--function",
        "cosine",
        "--grid",
        "64",
    ])));
    let coeff = |position: &str| -> f64 {
        rows.iter()
            .find(|r| r[0] == "coeff" && r[2] == position)
            .map(|r| r[3].parse().unwrap())
            .unwrap()
    };
    assert!((coeff("2") - 0.5).abs() < 1e-15);
    assert!((coeff("3") - 0.5).abs() < 1e-15);

    let out = rhs(&["fourier", "--function", "expcos", "--grid", "256"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    let gap = rows
        .iter()
        .find(|r| r[0] == "parseval" && r[1] == "gap")
        .unwrap();
    assert!(gap[3].parse::<f64>().unwrap() < 1e-10);

    let rows = csv_rows(&stdout(&rhs(&[
        "fourier",
        "--function",
        "sawtooth",
        "--k",
        "1",
    ])));
    let decay = rows.iter().find(|r| r[0] == "decay").unwrap();
    assert_eq!(decay[5], "false");
}

#[test]
fn hermite_examples() {
    let rows = csv_rows(&stdout(&rhs(&["hermite", "--degree", "2"])));
    let p2: Vec<&str> = rows
        .iter()
        .filter(|r| r[0] == "basis" && r[1] == "2")
        .map(|r| r[3].as_str())
        .collect();
    assert_eq!(p2, ["-1", "0", "1"]);
    let density0 = rows
        .iter()
        .find(|r| r[0] == "density" && r[1] == "0")
        .unwrap();
    assert!(density0[4].parse::<f64>().unwrap() < 1e-7);

    let out = rhs(&["hermite", "--degree", "16"]);
    assert!(out.status.success());
    for r in csv_rows(&stdout(&out))
        .iter()
        .filter(|r| r[0] == "orthonormality")
    {
        assert!(r[4].parse::<f64>().unwrap() < 1e-8);
        assert_eq!(r[3], if r[1] == r[2] { "1" } else { "0" });
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("rhs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = rhs(&[
        "converge",
        "--geometric",
        "0.5",
        "--levels",
        "20",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        golden("converge_geometric_0.5_20.csv")
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
