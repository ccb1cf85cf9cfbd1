//! End-to-end tests of the `motrop` binary: byte determinism, exit statuses,
//! and the documented output shapes for every subcommand.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn motrop() -> Command {
    Command::new(env!("CARGO_BIN_EXE_motrop"))
}

fn write_input(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

fn run(args: &[&str]) -> Output {
    motrop().args(args).output().expect("binary runs")
}

fn parse_doc(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON document")
}

const LINE: &str =
    r#"{"terms": [{"m": [1,0], "w": "0"}, {"m": [0,1], "w": "0"}, {"m": [0,0], "w": "0"}]}"#;

const SQUARE_TIE: &str = r#"{"terms": [
    {"m": [0,0], "w": "0"}, {"m": [1,0], "w": "0"},
    {"m": [0,1], "w": "0"}, {"m": [1,1], "w": "0"}]}"#;

const SEMISTABLE_EXAMPLE: &str = r#"{
    "d": 1,
    "components": 2,
    "strata": [
        {"J": [1], "class": [{"i":0,"j":0,"c":"-1"},{"i":1,"j":1,"c":"1"}]},
        {"J": [2], "class": [{"i":0,"j":0,"c":"-1"},{"i":1,"j":1,"c":"1"}]},
        {"J": [1,2], "class": [{"i":0,"j":0,"c":"1"}]}
    ]
}"#;

#[test]
fn volume_is_byte_deterministic_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "line.json", LINE);
    let a = run(&["volume", "--input", &input]);
    let b = run(&["volume", "--input", &input]);
    let c = run(&["volume", "--input", &input, "--threads", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "two runs must agree byte for byte");
    // The thread knob is echoed in the parameters but must not change the
    // result.
    let da = parse_doc(&a);
    let dc = parse_doc(&c);
    assert_eq!(da["result"], dc["result"]);
}

#[test]
fn volume_of_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "line.json", LINE);
    let doc = parse_doc(&run(&["volume", "--input", &input]));
    assert_eq!(doc["result"]["class_string"], "u*v - 2");
    assert_eq!(doc["result"]["euler"], "-1");
    assert_eq!(doc["result"]["schoen"]["status"], "PASS");
    assert_eq!(doc["artifact"]["name"], "motrop");
    assert_eq!(doc["command"], "volume");
    assert_eq!(doc["parameters"]["threads"], 1);
}

#[test]
fn semistable_example_document() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "strata.json", SEMISTABLE_EXAMPLE);
    let doc = parse_doc(&run(&["semistable", "--input", &input]));
    assert_eq!(doc["result"]["class_string"], "u*v - 1");
    assert_eq!(doc["result"]["chi_y_string"], "-1 + y");
    assert_eq!(doc["result"]["euler"], "0");
    let class = doc["result"]["class"].as_array().unwrap();
    assert_eq!(class.len(), 2);
    assert_eq!(class[0]["c"], "-1");
    assert_eq!(class[1]["c"], "1");
}

#[test]
fn semistable_golden_document_bytes() {
    // Full byte-for-byte golden output. The input path is given relative to
    // the working directory so the echoed parameters are stable.
    let dir = tempfile::tempdir().unwrap();
    write_input(dir.path(), "strata.json", SEMISTABLE_EXAMPLE);
    let out = motrop()
        .current_dir(dir.path())
        .args(["semistable", "--input", "strata.json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let expected = r#"{
  "artifact": {
    "name": "motrop",
    "version": "0.1.0"
  },
  "command": "semistable",
  "parameters": {
    "assume_schoen": false,
    "format": "document",
    "genus": null,
    "input": "strata.json",
    "threads": 1,
    "truncation": null
  },
  "result": {
    "chi_y": [
      {
        "c": "-1",
        "half_exp": 0
      },
      {
        "c": "1",
        "half_exp": 2
      }
    ],
    "chi_y_string": "-1 + y",
    "class": [
      {
        "c": "-1",
        "i": 0,
        "j": 0
      },
      {
        "c": "1",
        "i": 1,
        "j": 1
      }
    ],
    "class_string": "u*v - 1",
    "cross_check": "vol(semistable_class) agrees with the closed form",
    "euler": "0"
  }
}
"#;
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
}

#[test]
fn trop_reports_honeycomb_combinatorics() {
    let mut terms = Vec::new();
    for i in 0..=3i64 {
        for j in 0..=(3 - i) {
            terms.push(format!(
                r#"{{"m": [{i},{j}], "w": "{}"}}"#,
                i * i + i * j + j * j
            ));
        }
    }
    let input_json = format!(r#"{{"terms": [{}]}}"#, terms.join(","));
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "cubic.json", &input_json);
    let doc = parse_doc(&run(&["trop", "--input", &input]));
    assert_eq!(doc["result"]["vertices"].as_array().unwrap().len(), 9);
    assert_eq!(doc["result"]["edges"].as_array().unwrap().len(), 18);
    assert_eq!(doc["result"]["first_betti_bounded"], 1);
    assert_eq!(doc["result"]["degenerate"], false);
    assert_eq!(doc["result"]["subdivision"]["cells"].as_array().unwrap().len(), 9);

    // The motivic volume of the honeycomb cubic is the constant -9.
    let vol = parse_doc(&run(&["volume", "--input", &input]));
    assert_eq!(vol["result"]["class_string"], "-9");
    assert_eq!(vol["result"]["chi_y_string"], "-9");
    assert_eq!(vol["result"]["euler"], "-9");
}

#[test]
fn zeta_extract_projective_line() {
    // Symmetric powers of P^1: coefficients 1, 1 + L, 1 + L + L^2, ...
    let coeffs: Vec<String> = (0..=4usize)
        .map(|n| {
            let terms: Vec<String> = (0..=n)
                .map(|k| format!(r#"{{"i":{k},"j":{k},"c":"1"}}"#))
                .collect();
            format!("[{}]", terms.join(","))
        })
        .collect();
    let input_json = format!(r#"{{"g": 0, "M": 4, "coeffs": [{}]}}"#, coeffs.join(","));
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "p1.json", &input_json);
    let doc = parse_doc(&run(&["zeta-extract", "--input", &input]));
    let n = doc["result"]["N_strings"].as_array().unwrap();
    assert_eq!(n[0], "1");
    for entry in &n[1..] {
        assert_eq!(entry, "0");
    }
    assert_eq!(doc["result"]["n"][0], "1");
}

#[test]
fn zeta_roundtrip_reports_exactness() {
    let input_json = r#"{"g": 1, "M": 6, "coeffs": [
        [{"i":0,"j":0,"c":"1"}],
        [{"i":1,"j":1,"c":"1"}],
        [], [], [], [], []
    ]}"#;
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "series.json", input_json);
    let doc = parse_doc(&run(&["zeta-roundtrip", "--input", &input]));
    assert_eq!(doc["result"]["roundtrip"], "exact");
    assert_eq!(doc["result"]["genus"], 1);
}

#[test]
fn zeta_genus_and_truncation_flags() {
    let input_json = r#"{"g": 0, "M": 4, "coeffs": [
        [{"i":0,"j":0,"c":"1"}], [], [], [], []
    ]}"#;
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "series.json", input_json);
    let doc = parse_doc(&run(&[
        "zeta-extract",
        "--input",
        &input,
        "--genus",
        "2",
        "--truncation",
        "3",
    ]));
    assert_eq!(doc["result"]["genus"], 2);
    assert_eq!(doc["result"]["N"].as_array().unwrap().len(), 4);
    assert_eq!(doc["parameters"]["genus"], 2);
    assert_eq!(doc["parameters"]["truncation"], 3);
    // Requesting more than stored is a precondition failure.
    let out = run(&["zeta-extract", "--input", &input, "--truncation", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bg_multiplicities_document() {
    let input_json = r#"{"terms": [
        {"m": [0,0], "w": "0"}, {"m": [2,0], "w": "0"}, {"m": [0,1], "w": "0"}]}"#;
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "m2.json", input_json);
    let doc = parse_doc(&run(&["bg", "--input", &input]));
    assert_eq!(doc["result"]["mikhalkin"], "2");
    assert_eq!(doc["result"]["integral"], false);
    assert_eq!(doc["result"]["vertex_multiplicities"][0], 2);
    let bg = doc["result"]["block_goettsche"].as_array().unwrap();
    assert_eq!(bg.len(), 2);
    assert_eq!(bg[0]["half_exp"], -1);
}

#[test]
fn chi_command_on_blowup_class() {
    let input_json = r#"[
        {"i":0,"j":0,"c":"1"},
        {"i":1,"j":1,"c":"10"},
        {"i":2,"j":2,"c":"1"}
    ]"#;
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "class.json", input_json);
    let doc = parse_doc(&run(&["chi", "--input", &input]));
    assert_eq!(doc["result"]["chi_y_string"], "1 + 10*y + y^2");
    assert_eq!(doc["result"]["euler"], "12");
}

#[test]
fn vfvol_combines_theta_terms() {
    // Theta(pt, 0) + Theta(open ray, 1): volume 1.
    let input_json = r#"{"terms": [
        {"coeff": "1", "var": [{"i":0,"j":0,"c":"1"}], "var_dim": 0,
         "cell": {"dim": 0, "ineqs": []}},
        {"coeff": "1", "var": [{"i":0,"j":0,"c":"1"}], "var_dim": 0,
         "cell": {"dim": 1, "ineqs": [{"a": [-1], "c": "0"}], "open": true}}
    ]}"#;
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "vf.json", input_json);
    let doc = parse_doc(&run(&["vfvol", "--input", &input]));
    assert_eq!(doc["result"]["class_string"], "1");
    assert_eq!(doc["result"]["euler"], "1");
}

#[test]
fn exit_statuses_match_the_contract() {
    let dir = tempfile::tempdir().unwrap();

    // 1: unreadable input.
    let out = run(&["volume", "--input", "/nonexistent/x.json"]);
    assert_eq!(out.status.code(), Some(1));

    // 1: invalid JSON.
    let bad_json = write_input(dir.path(), "bad.json", "{nope");
    let out = run(&["volume", "--input", &bad_json]);
    assert_eq!(out.status.code(), Some(1));

    // 1: schema violation with the offending field named.
    let bad_rat = write_input(
        dir.path(),
        "badrat.json",
        r#"{"terms": [{"m": [0,0], "w": "x"}, {"m": [1,0], "w": "0"}]}"#,
    );
    let out = run(&["volume", "--input", &bad_rat]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("terms[0].w"), "stderr names the field: {stderr}");

    // 2: mathematical precondition (schoen UNKNOWN without the override).
    let square = write_input(dir.path(), "square.json", SQUARE_TIE);
    let out = run(&["volume", "--input", &square]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["volume", "--input", &square, "--assume-schoen"]);
    assert_eq!(out.status.code(), Some(0));

    // 2: non-simple curve for bg.
    let out = run(&["bg", "--input", &square]);
    assert_eq!(out.status.code(), Some(2));

    // 2: zero constant coefficient in zeta extraction.
    let zero_start = write_input(
        dir.path(),
        "zero.json",
        r#"{"g": 0, "M": 1, "coeffs": [[], [{"i":0,"j":0,"c":"1"}]]}"#,
    );
    let out = run(&["zeta-extract", "--input", &zero_start]);
    assert_eq!(out.status.code(), Some(2));

    // 2: duplicate exponent is a domain rejection.
    let dup = write_input(
        dir.path(),
        "dup.json",
        r#"{"terms": [{"m": [0,0], "w": "0"}, {"m": [0,0], "w": "1"}]}"#,
    );
    let out = run(&["volume", "--input", &dup]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_flag_writes_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "line.json", LINE);
    let out_path = dir.path().join("result.json");
    let out = run(&[
        "volume",
        "--input",
        &input,
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    assert_eq!(doc["result"]["class_string"], "u*v - 2");
}

#[test]
fn human_format_renders_text() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(dir.path(), "line.json", LINE);
    let out = run(&["volume", "--input", &input, "--format", "human"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("motivic volume: u*v - 2"));
    assert!(text.contains("euler: -1"));
}

#[test]
fn degenerate_binomial_volume() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "binomial.json",
        r#"{"terms": [{"m": [1,1], "w": "0"}, {"m": [0,0], "w": "2"}]}"#,
    );
    let doc = parse_doc(&run(&["volume", "--input", &input]));
    assert_eq!(doc["result"]["class_string"], "u*v - 1");
    let trop = parse_doc(&run(&["trop", "--input", &input]));
    assert_eq!(trop["result"]["degenerate"], true);
    assert_eq!(trop["result"]["edges"][0]["kind"], "line");
}
