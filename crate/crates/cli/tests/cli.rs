use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

fn csv_rows(args: &[&str]) -> Vec<Vec<String>> {
    let mut full = vec!["--format", "csv"];
    full.extend_from_slice(args);
    let text = stdout(&full);
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

fn text_rows(args: &[&str]) -> Vec<Vec<String>> {
    stdout(args)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(str::to_owned).collect())
        .collect()
}

const COMMANDS: &[&[&str]] = &[
    &["bounds", "--k-min", "1", "--k-max", "8"],
    &[
        "bounds",
        "--k-min",
        "2",
        "--k-max",
        "6",
        "--setting",
        "continuous",
    ],
    &[
        "bounds",
        "--k-min",
        "2",
        "--k-max",
        "6",
        "--l",
        "3",
        "--setting",
        "continuous",
    ],
    &[
        "bounds",
        "--k-min",
        "2",
        "--k-max",
        "4",
        "--equation-variant",
        "proof",
    ],
    &["sweep", "--k", "3"],
    &["sequence", "--terms", "8"],
    &["exact", "--n", "3", "--k", "2"],
    &["stripe-count", "--n", "30", "--k", "2", "--a-numer", "20"],
];

#[test]
fn json_round_trips_byte_for_byte() {
    for args in COMMANDS {
        for decimals in ["3", "6", "15"] {
            let mut full = vec!["--format", "json", "--decimals", decimals];
            full.extend_from_slice(args);
            let out = stdout(&full);
            let parsed: Value = serde_json::from_str(&out).unwrap();
            let mut again = serde_json::to_string_pretty(&parsed).unwrap();
            again.push('\n');
            assert_eq!(again, out, "{args:?}");
            for key in ["command", "params", "results", "metadata"] {
                assert!(parsed.get(key).is_some(), "{args:?} lacks {key}");
            }
            assert!(parsed["metadata"]["version"].is_string());
            assert!(parsed["metadata"]["config"].is_object());
            assert!(parsed["results"].as_array().unwrap().iter().all(|r| r
                .as_object()
                .unwrap()
                .values()
                .all(|v| !v.is_object() && !v.is_array())));
        }
    }
}

#[test]
fn text_and_csv_agree() {
    for args in COMMANDS {
        let csv = csv_rows(args);
        let text = text_rows(args);
        assert_eq!(csv[0], text[0], "{args:?}");
        for (c, t) in csv.iter().zip(&text) {
            let c: Vec<&String> = c.iter().filter(|s| !s.is_empty()).collect();
            let t: Vec<&String> = t.iter().collect();
            assert_eq!(c, t, "{args:?}");
        }
    }
}

#[test]
fn rejected_inputs_exit_nonzero_without_output() {
    let bad: &[&[&str]] = &[
        &["--decimals", "0", "sequence"],
        &["--decimals", "16", "sequence"],
        &["--tolerance", "0", "bounds"],
        &["bounds", "--k-min", "5", "--k-max", "3"],
        &["bounds", "--k-min", "2", "--k-max", "61"],
        &["bounds", "--k-min", "0", "--k-max", "3"],
        &["bounds", "--l", "1"],
        &["sequence", "--terms", "0"],
        &["sequence", "--terms", "101"],
        &["sweep", "--k", "0"],
        &["exact", "--n", "5", "--k", "2"],
        &["exact", "--n", "0", "--k", "1"],
        &["stripe-count", "--n", "3", "--k", "2", "--a-numer", "0"],
        &["stripe-count", "--n", "3", "--k", "2", "--a-numer", "-2"],
        &[
            "stripe-count",
            "--n",
            "3",
            "--k",
            "2",
            "--a-numer",
            "1",
            "--a-denom",
            "0",
        ],
        &["--format", "xml", "sequence"],
    ];
    for args in bad {
        let out = run(args);
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(out.stdout.is_empty(), "{args:?} printed a partial table");
        assert!(!out.stderr.is_empty(), "{args:?} gave no diagnostic");
    }
}

#[test]
fn cap_violation_names_the_cap() {
    let out = run(&["exact", "--n", "5", "--k", "2"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("25") && err.contains("24"), "{err}");
}

#[test]
fn four_fold_emits_lower_bounds_only() {
    let out = run(&[
        "--format", "csv", "bounds", "--k-min", "2", "--k-max", "3", "--l", "4",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no upper-bound method"));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("2,\"c_{k,4}\",0.840000,,stripe,"));
}

#[test]
fn sweep_examples() {
    let r = &json(&["sweep", "--k", "2", "--l", "2"])["results"][0];
    assert_eq!(r["a_opt"], 0.8);
    assert_eq!(r["volume"], 0.6);
    let r = &json(&["sweep", "--k", "1", "--l", "2"])["results"][0];
    assert_eq!(r["a_opt"], 0.5);
    let r = &json(&["sweep", "--k", "3", "--l", "2"])["results"][0];
    assert!(r["volume"].as_f64().unwrap() >= 0.666667);
}

#[test]
fn sequence_examples() {
    let r = json(&["sequence", "--terms", "1"]);
    assert_eq!(r["results"].as_array().unwrap().len(), 1);
    assert_eq!(r["results"][0]["value"], 0.333333);
    assert_eq!(r["metadata"]["first_nonpositive_index"], Value::Null);
    let r = json(&["sequence", "--terms", "2"]);
    assert_eq!(r["results"][1]["value"], 0.138676);
}

#[test]
fn exact_examples() {
    let r = &json(&["exact", "--n", "2", "--k", "2", "--l", "2"])["results"][0];
    assert_eq!(r["max_size"], 3);
    assert_eq!(r["density"], 0.75);
    assert_eq!(r["witness"], "{(1,1),(1,2),(2,1)}");
    assert_eq!(r["exhaustive"], true);
    let r = &json(&["exact", "--n", "4", "--k", "1", "--l", "2"])["results"][0];
    assert_eq!(
        (r["max_size"].as_u64(), r["density"].as_f64()),
        (Some(2), Some(0.5))
    );
    let r = &json(&["exact", "--n", "1", "--k", "1", "--l", "2"])["results"][0];
    assert_eq!(r["max_size"], 1);
}

#[test]
fn stripe_count_examples() {
    let r = &json(&["stripe-count", "--n", "3", "--k", "2", "--a-numer", "2"])["results"][0];
    assert_eq!(r["count"], 3);
    let r = &json(&["stripe-count", "--n", "1", "--k", "2", "--a-numer", "2"])["results"][0];
    assert_eq!(r["count"], 1);
    let r = &json(&["stripe-count", "--n", "120", "--k", "2", "--a-numer", "80"])["results"][0];
    let density = r["count"].as_f64().unwrap() / 14400.0;
    assert!((density - 5.0 / 9.0).abs() <= 4.0 / 120.0);
    // a given as a fraction: 4/2 is the same stripe as 2
    let r = &json(&[
        "stripe-count",
        "--n",
        "3",
        "--k",
        "2",
        "--a-numer",
        "4",
        "--a-denom",
        "2",
    ])["results"][0];
    assert_eq!(r["count"], 3);
}

#[test]
fn rounding_follows_decimals() {
    let r = &json(&["--decimals", "10", "bounds", "--k-min", "2", "--k-max", "2"])["results"][0];
    assert_eq!(r["lower"], 0.5555555556);
    assert_eq!(r["upper"], 0.913874903);
    let r = &json(&[
        "--decimals",
        "1",
        "bounds",
        "--k-min",
        "2",
        "--k-max",
        "2",
        "--l",
        "3",
    ])["results"][0];
    // 3/4 at one decimal: the tie goes to the even digit
    assert_eq!(r["lower"], 0.8);
}
