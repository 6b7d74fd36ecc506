use inertia_cli::run_args;
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run_args(a);
    (o.code, serde_json::from_str(&o.out).unwrap_or(Value::Null))
}

fn verify(v: &Value) -> inertia_cli::Outcome {
    inertia_cli::verify::verify_text(&v.to_string(), 20).unwrap()
}

#[test]
fn classify_examples() {
    let (code, v) = json(&["classify", "Q^w", "mult 2"]);
    assert_eq!(code, 0);
    assert_eq!((v["rin"].as_bool(), v["lin"].as_bool()), (Some(true), Some(false)));
    let (code, v) = json(&["classify", "Z(2^inf)+Q[2]", "block{1: local(2:1); 2: 1/2}"]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["kind"], "diagonal");
}

#[test]
fn lin_flag_changes_the_exit_code() {
    assert_eq!(run_args(["classify", "Q^w", "mult 2"]).code, 0);
    assert_eq!(run_args(["classify", "Q^w", "mult 2", "--lin"]).code, 1);
}

#[test]
fn input_errors_exit_2_with_position() {
    let o = run_args(["classify", "Z(2^inf) + Q[2", "mult 1"]);
    assert_eq!(o.code, 2);
    assert!(o.out.contains("line 1, column"), "{}", o.out);
    let o = run_args(["classify", "Q", "block{1: 1/2"]);
    assert_eq!(o.code, 2);
    assert!(o.out.contains("column"), "{}", o.out);
    assert_eq!(run_args(["classify", "Q", "mult 1", "--bogus"]).code, 2);
    assert_eq!(run_args(["oracle", "subgroups", "Z(2)^20", "--cap", "1024"]).code, 2);
}

#[test]
fn json_is_stable() {
    let args = ["classify", "Z(3^inf) + Q[2,3]", "block{1: 1/2; 2: 1/2}", "--json"];
    let a = run_args(args);
    let b = run_args(args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.out).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys[0], "schemaVersion");
    assert_eq!(v["certificate"]["indexBound"].as_str().map(|s| s.parse::<u64>().is_ok()), Some(true));
}

#[test]
fn oracle_examples() {
    let (code, v) = json(&["oracle", "subgroups", "Z(4)+Z(2)"]);
    assert_eq!((code, v["count"].as_str()), (0, Some("8")));
    let (code, v) = json(&["oracle", "bounds", "Z(3)^3", "--endo", "swap-cycle"]);
    assert_eq!((code, v["holds"].as_bool()), (0, Some(true)));
    let (code, v) = json(&["oracle", "fs", "Z(2)+Z(4)", "--endo", "shear"]);
    assert_eq!(code, 0);
    // X = <e_1>: X^Phi = <e_1, 2e_2> has order 4 while X_Phi = 0
    assert_eq!(v["result"]["bound"], "4");
    assert_eq!(run_args(["oracle", "bounds", "Z(3)^3"]).code, 2);
}

#[test]
fn tampered_certificate_names_the_invariant() {
    let (_, v) = json(&["classify", "Z(3^inf) + Q[2,3]", "block{1: 1/2; 2: 1/2}"]);
    let mut c = v["certificate"].clone();
    assert_eq!(verify(&c).code, 0);
    c["pi1"] = Value::Array(vec![]);
    let o = verify(&c);
    assert_eq!(o.code, 1);
    assert!(o.out.contains("pi is not contained in pi1"), "{}", o.out);
}

#[test]
fn inflated_witness_fails_at_first_index() {
    let (code, mut w) = json(&["witness", "endo", "Q^w", "mult 1/2"]);
    assert_eq!(code, 1);
    assert_eq!(verify(&w).code, 0);
    w["growth"]["base"] = Value::String("4".into());
    let o = verify(&w);
    assert_eq!(o.code, 1);
    assert!(o.out.contains("index 1"), "{}", o.out);
}

#[test]
fn tampered_oracle_reports_fail() {
    let (_, mut v) = json(&["oracle", "subgroups", "Z(4)+Z(2)"]);
    v["subgroups"][2]["order"] = Value::String("4".into());
    assert_eq!(verify(&v).code, 1);
    let (_, mut v) = json(&["oracle", "fs", "Z(2)+Z(4)", "--endo", "shear"]);
    v["result"]["bound"] = Value::String("2".into());
    assert_eq!(verify(&v).code, 1);
}

#[test]
fn schema_mismatch_is_an_input_error() {
    let (_, mut v) = json(&["classify", "Q^w", "mult 2"]);
    v["schemaVersion"] = Value::String("0".into());
    assert!(inertia_cli::verify::verify_text(&v.to_string(), 20).is_err());
    assert_eq!(run_args(["verify", "/nonexistent/file.json"]).code, 2);
}

#[test]
fn gallery_and_witness_commands() {
    let o = run_args(["gallery"]);
    assert!(o.out.contains("proposition-a"));
    assert_eq!(run_args(["gallery", "critical-id-inversion", "--p", "5"]).code, 0);
    assert_eq!(run_args(["gallery", "critical-id-inversion", "--p", "2"]).code, 2);
    assert_eq!(run_args(["witness", "endo", "Q^w", "mult 2"]).code, 0);
    let (code, w) = json(&["witness", "diagonal", "--p", "2", "--alpha", "1", "--mn", "1/2"]);
    assert_eq!(code, 1);
    assert_eq!(verify(&w).code, 0);
}
