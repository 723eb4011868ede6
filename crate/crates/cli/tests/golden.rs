use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const CASES: &[(&str, &[&str])] = &[
    ("emacdonald_0_1", &["emacdonald", "0,1"]),
    ("emacdonald_0_0", &["emacdonald", "0,0"]),
    ("emacdonald_0_1_json", &["emacdonald", "0,1", "--json"]),
    ("emacdonald_0_2", &["emacdonald", "0,2"]),
    ("emacdonald_0_1_0", &["emacdonald", "0,1,0"]),
    ("limit_0_1_tinf", &["limit", "0,1", "--tinf"]),
    ("limit_0_1_t0", &["limit", "0,1", "--t0"]),
    ("limit_0_0_tinf", &["limit", "0,0", "--tinf"]),
    (
        "limit_0_1_2_tinf_json",
        &["limit", "0,1,2", "--tinf", "--json"],
    ),
    ("limit_1_0_2_tinf", &["limit", "1,0,2", "--tinf"]),
    (
        "char_km_n2_w1",
        &["char", "--N", "2", "--weight", "1w1", "--kind", "km"],
    ),
    (
        "char_pbw_n3_w1_w2",
        &["char", "--N", "3", "--weight", "1w1+1w2", "--kind", "pbw"],
    ),
    (
        "char_pbw_n3_2w1",
        &["char", "--N", "3", "--weight", "1w1+1w1", "--kind", "pbw"],
    ),
    (
        "char_pbw_n3_w1_w2_json",
        &[
            "char", "--N", "3", "--weight", "1w1+1w2", "--kind", "pbw", "--json",
        ],
    ),
    (
        "verify_rect_n2_m0",
        &["verify-co", "--family", "rect", "--N", "2", "--m", "0"],
    ),
    (
        "verify_rect_n2_4_m0_3",
        &[
            "verify-co",
            "--family",
            "rect",
            "--N",
            "2..4",
            "--m",
            "0..3",
        ],
    ),
    (
        "verify_two_row_n3_4_m0_2",
        &[
            "verify-co",
            "--family",
            "two-row",
            "--N",
            "3..4",
            "--m",
            "0..2",
            "--workers",
            "3",
        ],
    ),
];

fn macdonald(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macdonald"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("UTF-8 output")
}

/// Drops the timing footer, the only nondeterministic part of any output.
fn stable(s: &str) -> String {
    s.lines()
        .filter(|l| !l.starts_with("# wall time"))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("MACDONALD_BLESS").is_some();
    let mut failures = Vec::new();
    for (name, args) in CASES {
        let out = macdonald(args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = stdout(&out);
        assert!(!text.contains('\r'), "{name}: CR in output");
        assert!(text.ends_with('\n'), "{name}: missing final newline");
        let path = golden_dir().join(format!("{name}.txt"));
        if bless {
            fs::write(&path, stable(&text)).unwrap();
            continue;
        }
        let expected =
            fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if stable(&text) != expected {
            failures.push(format!(
                "{name}:\n--- expected\n{expected}--- got\n{}",
                stable(&text)
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn documented_examples() {
    let first_body_line = |args: &[&str]| {
        let s = stdout(&macdonald(args));
        s.lines().find(|l| !l.starts_with('#')).unwrap().to_string()
    };
    assert_eq!(
        first_body_line(&["emacdonald", "0,1"]),
        "x2 + x1*(1-t)/(1-q*t)"
    );
    assert_eq!(first_body_line(&["emacdonald", "0,0"]), "1");
    assert_eq!(first_body_line(&["limit", "0,1", "--tinf"]), "x2 + q*x1");
    assert_eq!(first_body_line(&["limit", "0,1", "--t0"]), "x1 + x2");
    assert_eq!(first_body_line(&["limit", "0,0", "--tinf"]), "1");
    assert_eq!(
        first_body_line(&["char", "--N", "2", "--weight", "1w1", "--kind", "km"]),
        "x1 + x2"
    );
    let pbw = first_body_line(&["char", "--N", "3", "--weight", "1w1+1w2", "--kind", "pbw"]);
    assert_eq!(pbw.split(" + ").count(), 9);
    let tinf = stdout(&macdonald(&["limit", "0,1", "--tinf"]));
    assert!(tinf.starts_with("# ") && tinf.lines().next().unwrap().contains("q^-1"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| macdonald(args).status.code().unwrap();
    assert_eq!(code(&["emacdonald", "0,x"]), 2);
    assert_eq!(code(&["emacdonald", "3"]), 2);
    assert_eq!(code(&["emacdonald"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["limit", "0,1"]), 2);
    assert_eq!(code(&["char", "--N", "3", "--weight", "1w5"]), 2);
    assert_eq!(code(&["verify-co", "--family", "nope"]), 2);
    assert_eq!(code(&["verify-co", "--N", "4..2"]), 2);
    assert_eq!(
        code(&["char", "--N", "4", "--weight", "1w2+1w3", "--kind", "pbw"]),
        3
    );
    assert_eq!(code(&["emacdonald", "0,3,3", "--cap", "100"]), 3);
    assert_eq!(
        code(&["verify-co", "--family", "all", "--N", "2..3", "--m", "0..1"]),
        0
    );
    let out = macdonald(&["char", "--N", "4", "--weight", "1w2+1w3", "--kind", "pbw"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported-shape"));
}

#[test]
fn cap_marks_cases_unsupported_not_failed() {
    let out = macdonald(&[
        "verify-co",
        "--family",
        "rect",
        "--N",
        "3",
        "--m",
        "2",
        "--cap",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("unsupported (estimated"));
    assert!(s.contains("0 equal, 0 mismatch, 2 unsupported"));
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |k: &str| {
        stable(&stdout(&macdonald(&[
            "verify-co",
            "--N",
            "2..4",
            "--m",
            "0..2",
            "--workers",
            k,
        ])))
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn json_reports_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = macdonald(&[
        "verify-co",
        "--family",
        "two-row",
        "--N",
        "3",
        "--m",
        "0..1",
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["cases"], 4);
    assert_eq!(v["summary"]["equal"], 4);
    let first = &v["cases"][0];
    assert_eq!(first["status"], "equal");
    assert_eq!(first["lhs"], first["rhs"]);
    assert!(v["footer"]["wall_ms"].is_number());
}
