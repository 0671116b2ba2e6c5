use std::process::{Command, Output};

use cfrac_core::scalar::{parse_rational, Field, RationalField};

fn cfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfrac")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Data rows of a CSV document, header checked against `header`.
fn csv_rows(text: &str, header: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(header));
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn eval_value(args: &[&str]) -> String {
    let o = cfrac(args);
    assert_eq!(code(&o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    csv_rows(&stdout(&o), "method,value,depth,iterations,alternate,residual")[0][1].clone()
}

#[test]
fn eval_examples() {
    let v = eval_value(&["eval", "--preset", "app2", "--q", "1/5", "--z", "1", "--method", "backward", "--depth", "40"]);
    assert!((v.parse::<f64>().unwrap() - 0.838_668_439_332_740_6).abs() < 1e-12);
    let v = eval_value(&["eval", "--a", "1", "--b", "1", "--method", "convergent", "--depth", "4", "--realization", "rational"]);
    assert_eq!(v, "5/8");
    let v = eval_value(&["eval", "--preset", "app1", "--c", "2", "--z", "0", "--method", "backward", "--depth", "10"]);
    assert_eq!(v, "1");
}

#[test]
fn eval_methods_agree() {
    let base = ["eval", "--preset", "app3-canonical", "--q", "2", "--z", "1", "--depth", "40"];
    let values: Vec<f64> = ["backward", "lentz", "convergent", "series-ratio"]
        .iter()
        .map(|m| {
            let mut args = base.to_vec();
            args.extend(["--method", m]);
            eval_value(&args).parse().unwrap()
        })
        .collect();
    for v in &values {
        assert!((v - 0.709_916_694_391_131_5).abs() < 1e-14, "{values:?}");
    }
}

#[test]
fn flags_may_follow_or_precede_the_subcommand() {
    let a = cfrac(&["--realization", "rational", "eval", "--a", "1", "--b", "1", "--depth", "4"]);
    let b = cfrac(&["eval", "--a", "1", "--b", "1", "--depth", "4", "--realization", "rational"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_examples() {
    let o = cfrac(&["table", "--a", "1", "--b", "1", "--realization", "rational", "--depth", "4"]);
    let rows = csv_rows(&stdout(&o), "n,convergent,series_ratio,abs_diff");
    assert_eq!(rows.last().unwrap().join(","), "4,5/8,5/8,0");

    let o = cfrac(&["table", "--a", "7", "--b", "3", "--realization", "rational", "--depth", "0"]);
    let rows = csv_rows(&stdout(&o), "n,convergent,series_ratio,abs_diff");
    assert_eq!(rows, vec![vec!["0", "7/3", "7/3", "0"]]);

    let o = cfrac(&["table", "--preset", "app2", "--q", "1/5", "--z", "1", "--depth", "20"]);
    let rows = csv_rows(&stdout(&o), "n,convergent,series_ratio,abs_diff");
    assert_eq!(rows.len(), 21);
    let diff: f64 = rows[20][3].parse().unwrap();
    assert!(diff < 1e-12);
}

#[test]
fn table_marks_convergents_at_infinity() {
    // Q_1 = b_1 b_0 + a_1 = 1*1 - 1 = 0
    let o = cfrac(&["table", "--a", "-1", "--b", "1", "--a0", "1", "--realization", "rational", "--depth", "2"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stdout(&o), "n,convergent,series_ratio,abs_diff");
    assert_eq!(rows[1], vec!["1", cfrac_cli::AT_INFINITY, cfrac_cli::AT_INFINITY, cfrac_cli::UNDEFINED]);
}

#[test]
fn csv_and_json_tables_round_trip() {
    let base = ["table", "--preset", "app1", "--c", "1/2", "--z", "-3/7", "--realization", "rational", "--depth", "12"];
    let csv = stdout(&cfrac(&base));
    let mut args = base.to_vec();
    args.extend(["--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&cfrac(&args))).unwrap();
    let rows = csv_rows(&csv, "n,convergent,series_ratio,abs_diff");
    let json_rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), json_rows.len());
    let f = RationalField;
    for (row, obj) in rows.iter().zip(json_rows) {
        assert_eq!(obj["n"].as_u64().unwrap().to_string(), row[0]);
        for (k, key) in ["convergent", "series_ratio", "abs_diff"].iter().enumerate() {
            let cell = &row[k + 1];
            assert_eq!(obj[key].as_str().unwrap(), cell);
            let parsed = parse_rational(cell).unwrap();
            assert_eq!(&f.render(&parsed), cell);
        }
    }
    assert_eq!(json["config"]["realization"], "rational");
    assert_eq!(json["config"]["source"]["name"], "app1");
}

#[test]
fn float_output_round_trips_at_working_precision() {
    let o = cfrac(&["eval", "--a", "1", "--b", "1", "--depth", "60", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let text = json["record"]["value"].as_str().unwrap();
    let f = cfrac_core::scalar::FloatField::default();
    assert_eq!(f.render(&f.parse(text).unwrap()), text);
}

#[test]
fn series_realization_binds_its_variable() {
    let o = cfrac(&["eval", "--preset", "app2", "--q", "1/3", "--realization", "series", "--series-degree", "3", "--depth", "12"]);
    assert_eq!(code(&o), 0);
    let v = &csv_rows(&stdout(&o), "method,value,depth,iterations,alternate,residual")[0];
    assert_eq!(v[1], "1 - 1/3*z + 4/27*z^2 - 49/729*z^3");
    assert_eq!(v[5], "0");
    let o = cfrac(&["eval", "--a", "t", "--b", "1", "--realization", "series", "--series-var", "t", "--series-degree", "2", "--depth", "5"]);
    assert_eq!(csv_rows(&stdout(&o), "method,value,depth,iterations,alternate,residual")[0][1], "t - t^2");
}

#[test]
fn coeff_file_source() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("unit_coeffs.txt");
    std::fs::write(&path, "1 1\n1 1\n1 1\n1 1\n1 1\n").unwrap();
    let p = path.to_str().unwrap();
    let v = eval_value(&["eval", "--coeff-file", p, "--realization", "rational", "--method", "convergent", "--depth", "4"]);
    assert_eq!(v, "5/8");
    // past the listed entries a_m = 0, so deeper evaluation stays at the last listed level
    let v = eval_value(&["eval", "--coeff-file", p, "--realization", "rational", "--depth", "30"]);
    assert_eq!(v, "5/8");
}

#[test]
fn verify_examples_pass_and_are_deterministic() {
    for args in [
        vec!["verify", "--suite", "phi", "--trials", "100", "--seed", "42"],
        vec!["verify", "--suite", "eq4", "--trials", "200", "--seed", "7"],
        vec!["verify", "--suite", "apps", "--seed", "1"],
    ] {
        let o = cfrac(&args);
        assert_eq!(code(&o), 0, "{args:?}");
        let rows = csv_rows(&stdout(&o), "suite,trials,failures,status,detail");
        assert!(rows.iter().all(|r| r[3] == "pass"));
    }
    let a = cfrac(&["verify", "--suite", "all", "--seed", "42", "--format", "json"]);
    let b = cfrac(&["verify", "--suite", "all", "--seed", "42", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_code_one_on_verification_failure() {
    // 16-bit floats cannot reach the 1e-10 residual bound
    let o = cfrac(&["verify", "--suite", "apps", "--precision-bits", "16", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["status"], "fail");
    assert!(!json["reports"][0]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn exit_code_two_on_usage_errors() {
    for args in [
        vec!["eval"],
        vec!["eval", "--preset", "app2", "--a", "1", "--b", "1"],
        vec!["eval", "--a", "1"],
        vec!["eval", "--preset", "nope"],
        vec!["eval", "--preset", "app2", "--q", "1/5"],
        vec!["eval", "--a", "m+", "--b", "1"],
        vec!["eval", "--a", "k", "--b", "1"],
        vec!["eval", "--a", "1", "--b", "1", "--eps", "0"],
        vec!["eval", "--a", "1", "--b", "1", "--method", "lentz", "--realization", "rational"],
        vec!["eval", "--preset", "app3-paper", "--q", "2", "--z", "1", "--c", "1/2"],
        vec!["eval", "--coeff-file", "/nonexistent/coeffs.txt"],
        vec!["verify", "--trials", "0"],
        vec!["frobnicate"],
        vec!["eval", "--param", "novalue", "--a", "1", "--b", "1"],
    ] {
        assert_eq!(code(&cfrac(&args)), 2, "{args:?}");
    }
}

#[test]
fn exit_code_three_on_domain_errors() {
    for args in [
        vec!["eval", "--a", "1", "--b", "m", "--realization", "rational", "--depth", "0"],
        vec!["eval", "--a", "1", "--b", "0", "--realization", "rational", "--method", "convergent", "--depth", "0"],
        vec!["eval", "--a", "-1", "--b", "1", "--a0", "1", "--method", "lentz", "--max-iter", "10"],
        vec!["eval", "--a", "1/(m-3)", "--b", "1", "--realization", "rational", "--depth", "5"],
        vec!["eval", "--a", "-1", "--b", "1", "--a0", "1", "--realization", "rational", "--method", "series-ratio", "--depth", "1"],
    ] {
        assert_eq!(code(&cfrac(&args)), 3, "{args:?}");
    }
}
