use std::path::PathBuf;

use bicomplex::cli;
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Run {
    let argv = std::iter::once("bicomplex").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, "")
}

fn json(r: &Run) -> Value {
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn error_name(r: &Run) -> String {
    let v: Value = serde_json::from_str(&r.stderr).unwrap();
    v["error"].as_str().unwrap().to_owned()
}

#[test]
fn exact_outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["jordan", "--enumerate-pairings"],
        vec!["lattice"],
        vec!["--format", "dot", "lattice"],
        vec!["inverse"],
    ] {
        let file = data("jordan.json");
        let mut full: Vec<&str> = args.clone();
        full.push(&file);
        let (a, b) = (run(&full), run(&full));
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let seeded = |seed: &str| run(&["--seed", seed, "examples", "--which", "1"]).stdout;
    assert_eq!(seeded("7"), seeded("7"));
}

#[test]
fn examples_pass() {
    let v = json(&run(&["examples"]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["examples"].as_array().unwrap().len(), 2);
    for ex in v["examples"].as_array().unwrap() {
        assert_eq!(ex["pass"], true, "{ex}");
    }
}

#[test]
fn lattice_dot_has_twelve_nodes() {
    let r = run(&["--format", "dot", "lattice", &data("example2.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("digraph"));
    assert!(r.stdout.contains("rankdir=BT"));
    let nodes = r.stdout.lines().filter(|l| l.contains("label=")).count();
    assert_eq!(nodes, 12);
    assert_eq!(r.stdout.matches(" -> ").count(), json(&run(&["lattice", &data("example2.json")]))["covers"].as_array().unwrap().len());
}

#[test]
fn lattice_json_reports_incompleteness() {
    let v = json(&run(&["lattice", &data("example2.json")]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 12);
    // the zero component has two blocks for one eigenvalue
    assert_eq!(v["complete"], false);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn jordan_reports_the_component_that_does_not_split() {
    let r = run(&["jordan", &data("no_split.json")]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.is_empty());
    assert_eq!(error_name(&r), "DoesNotSplit");
    let v: Value = serde_json::from_str(&r.stderr).unwrap();
    assert_eq!(v["component"], "1");
}

#[test]
fn jordan_output_fields() {
    let v = json(&run(&["jordan", &data("jordan.json")]));
    for key in ["p", "j", "blocks", "eigenvalues", "superdiagonal_alphabet"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let alphabet: Vec<&str> = v["superdiagonal_alphabet"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(alphabet.iter().all(|s| ["0", "1", "e", "e†"].contains(s)), "{alphabet:?}");
}

#[test]
fn input_from_stdin() {
    let text = std::fs::read_to_string(data("jordan.json")).unwrap();
    let from_stdin = run_with_stdin(&["det"], &text);
    let from_dash = run_with_stdin(&["det", "-"], &text);
    let from_file = run(&["det", &data("jordan.json")]);
    assert_eq!(from_stdin.stdout, from_file.stdout);
    assert_eq!(from_dash.stdout, from_file.stdout);
    assert_eq!(json(&from_file)["determinant"]["idem"][0]["re"], "12");
}

#[test]
fn scalar_operations() {
    let v = json(&run(&["scalar", "mul", &data("scalars.json")]));
    assert_eq!(v["result"]["idem"][0]["re"], "1/2");
    assert_eq!(v["result"]["idem"][0]["im"], "3/2");
    let r = run_with_stdin(&["scalar", "inverse"], r#"[{"idem": ["0", "1"]}]"#);
    assert_eq!(r.code, 1);
    assert_eq!(error_name(&r), "NotInvertible");
    let r = run_with_stdin(&["scalar", "root", "--n", "2", "--branch", "0,1"], r#"[{"idem": [-1.0, -1.0]}]"#);
    let v = json(&r);
    let c1 = &v["result"]["idem"][0];
    assert!(c1["re"].as_f64().unwrap().abs() < 1e-15 && (c1["im"].as_f64().unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn spectral_pairings() {
    let v = json(&run(&["spectral", "--all-pairings", &data("example1.json")]));
    assert_eq!(v["count"], 2);
    let v = json(&run(&["spectral", "--pairing", "1,0", &data("example1.json")]));
    assert_eq!(v["pairing"], serde_json::json!([1, 0]));
    let r = run(&["--backend", "exact", "spectral", &data("example1.json")]);
    assert_eq!(error_name(&r), "UnsupportedOnExactBackend");
}

#[test]
fn operator_tower_csv() {
    let r = run(&["--format", "csv", "operator", "tower", &data("tower.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    let header: Vec<&str> = lines[0].split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    for row in &lines[1..] {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[col("invertible_members")], f[col("certified")]);
        assert_eq!(f[col("diagonal_both_above")], "3");
    }
}

#[test]
fn operator_approx_and_riesz() {
    let v = json(&run(&["operator", "approx", "--ranks", "0,1,2,3", &data("approx.json")]));
    assert_eq!(v["nonincreasing"], true);
    for row in v["rows"].as_array().unwrap() {
        for k in 0..2 {
            let (e, p) = (row["error"][k].as_f64().unwrap(), row["predicted"][k].as_f64().unwrap());
            assert!((e - p).abs() < 1e-9, "{row}");
        }
    }
    let v = json(&run(&["operator", "riesz", &data("riesz.json")]));
    for k in 0..2 {
        assert!((v["norm"][k].as_f64().unwrap() - 1.0).abs() < 1e-10);
        assert!((v["distance"][k].as_f64().unwrap() - 0.5).abs() < 1e-10);
    }
    let r = run(&["operator", "riesz", "--r", "1.5", &data("riesz.json")]);
    assert_eq!(error_name(&r), "InvalidArgument");
}

#[test]
fn malformed_input_is_reported_not_panicked() {
    for (args, stdin, name) in [
        (vec!["det"], "{not json", "Parse"),
        (vec!["det"], r#"{"rows": 2, "cols": 2, "entries": []}"#, "Parse"),
        (vec!["--tol", "bogus=1", "det"], "{}", "Parse"),
        (vec!["inverse"], r#"{"rows":1,"cols":2,"entries":[[{"idem":["1","1"]},{"idem":["1","1"]}]]}"#, "NotSquare"),
    ] {
        let r = run_with_stdin(&args, stdin);
        assert_ne!(r.code, 0, "{args:?}");
        assert_eq!(error_name(&r), name, "{args:?}: {}", r.stderr);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["no-such-command"]).code, 2);
    assert_eq!(run(&["--format", "xml", "det"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}
