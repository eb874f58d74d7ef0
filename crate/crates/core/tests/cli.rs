use nonparam::cli::run_with;
use nonparam::families::FamilyVerdict;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nonparam").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = call(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}\n{err}"));
    (code, v)
}

#[test]
fn dihedral_15_is_certified() {
    let (code, v) = json(&["classify", "--group", r#"{"dihedral":15}"#, "--field", "Q"]);
    assert_eq!(code, 0);
    assert_eq!(v["covered"], true);
    assert_eq!(v["matched_condition"], "Thm 5.2(3)");
}

#[test]
fn klein_four_is_an_exception() {
    let (code, v) = json(&["classify", "--group", r#"{"abelian":[2,2]}"#, "--field", "Q"]);
    assert_eq!(code, 2);
    assert_eq!(v["exception"]["group"], "(Z/2Z)^2");
}

#[test]
fn genus_and_tables() {
    let (code, out, _) = call(&["genus", "--order", "2", "--ram", "2,2,2,2"]);
    assert_eq!((code, out.trim()), (0, "1"));
    let (_, v) = json(&["genus-table", "--order", "60", "--element-orders", "2,3,5", "--cap", "0"]);
    assert_eq!(v["types"], serde_json::json!([{"indices": [2, 3, 5], "genus": 0}]));
    let (_, v) = json(&["genus", "--group", r#"{"abelian":[5]}"#]);
    assert_eq!(v["bound"], "AtLeastTwo");
}

#[test]
fn field_and_class_commands() {
    let (_, v) = json(&["prime-set", "--field", "Q"]);
    assert_eq!(v["primes"], serde_json::json!([2, 3]));
    let (_, v) = json(&["prime-set", "--field", r#"{"degree":2,"ramified":[2,3,7]}"#]);
    assert_eq!((&v["primes"], &v["exact"]), (&serde_json::json!([2, 3]), &Value::from(true)));
    let (_, v) = json(&["prime-set", "--field", r#"{"degree":3,"ramified":[7]}"#]);
    assert_eq!((&v["primes"], &v["exact"]), (&serde_json::json!([2, 3, 7]), &Value::from(false)));
    let (_, v) = json(&["sn-classes", "--n", "8", "--count", "5"]);
    assert_eq!(v["classes"][4], "[2^1 3^2]");
    let (code, v) = json(&["abelian-quotient", "--invariants", "4,8"]);
    assert_eq!((code, &v["kind"]), (0, &Value::from("suitable")));
    let (code, _) = json(&["abelian-quotient", "--invariants", "2,2"]);
    assert_eq!(code, 2);
}

#[test]
fn audit_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let (code, out, _) = call(&["audit", "--group", r#"{"abelian":[5,5]}"#, "--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["outcome"], "certified");
    assert_eq!(v["certificate"]["theorem"], "T3.2");
    let (code, v) = json(&["audit", "--group", r#"{"abelian":[2]}"#]);
    assert_eq!((code, &v["outcome"]), (2, &Value::from("refused")));
}

#[test]
fn assertions_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("evidence.json");
    std::fs::write(&path, r#"{"galois_group": "known"}"#).unwrap();
    let (code, _) = json(&["classify", "--group", r#"{"dihedral":15}"#, "--assert", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    std::fs::write(&path, r#"{"colour": "blue"}"#).unwrap();
    let (code, _, err) = call(&["classify", "--group", r#"{"dihedral":15}"#, "--assert", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("usage"));
}

#[test]
fn hyper_commands() {
    let (_, v) = json(&["specialize", "--poly", "T^2+1", "--t", "7/3"]);
    assert_eq!(v["d"], 58);
    let (_, v) = json(&["specialize", "--coeffs", "-1,0,2", "--t", "infinity"]);
    assert_eq!(v["d"], 2);
    let (code, _, err) = call(&["specialize", "--poly", "T^2-1", "--t", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("branch point"));
    let (_, v) = json(&["prop81", "--poly", "T^2-1"]);
    assert_eq!(v["classification"], "parametric");
    let (_, v) = json(&["prop81", "--poly", "T^3-T"]);
    assert_eq!(v["classification"], "non_parametric");
    let (_, v) = json(&["twist-scan", "--poly", "T^3-T", "--d", "-6:6", "--height", "30"]);
    let records = v["records"].as_array().unwrap();
    let six = records.iter().find(|r| r["d"] == 6).unwrap();
    assert_eq!((six["realized"].as_bool(), six["has_point"].as_bool()), (Some(true), Some(true)));
    assert!(records.iter().all(|r| r["agree"] == true));
    let skipped: Vec<i64> = v["skipped"].as_array().unwrap().iter().map(|s| s["d"].as_i64().unwrap()).collect();
    assert_eq!(skipped, [-4, 0, 1, 4]);
}

#[test]
fn batch_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bounds.conf");
    std::fs::write(&cfg, "height = 20\nenumeration = 10000\n").unwrap();
    let (_, v) = json(&["--config", cfg.to_str().unwrap(), "twist-scan", "--poly", "T^2-1", "--d", "2:3"]);
    assert_eq!(v["bound"], 20);
    let (code, v) = json(&["classify-all", "--orders", "1..16", "--abelian-only"]);
    assert_eq!(code, 0);
    let records = v["records"].as_array().unwrap();
    let s = &v["summary"];
    let total = ["covered", "exception", "not_covered", "errors"].iter().map(|k| s[k].as_u64().unwrap()).sum::<u64>();
    assert_eq!(total as usize, records.len());
    assert_eq!(s["errors"], 0);
    std::fs::write(&cfg, "height = -3\n").unwrap();
    assert_eq!(call(&["--config", cfg.to_str().unwrap(), "prime-set"]).0, 1);
}

#[test]
fn outputs_are_deterministic_and_round_trip() {
    let args = ["classify", "--group", r#"{"gl":[2,3]}"#];
    let (c1, a, _) = call(&args);
    let (c2, b, _) = call(&args);
    assert_eq!((c1, &a), (c2, &b));
    for g in [r#"{"dihedral":15}"#, r#"{"abelian":[3,9]}"#, r#"{"symmetric":6}"#, r#"{"gl":[2,5]}"#] {
        let (_, out, _) = call(&["classify", "--group", g]);
        let v: FamilyVerdict = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, out, "{g}");
    }
    let (a, _, _) = call(&["classify-all", "--orders", "1..30"]);
    let (_, x, _) = call(&["classify-all", "--orders", "1..30"]);
    let (_, y, _) = call(&["classify-all", "--orders", "1..30"]);
    assert_eq!(a, 0);
    assert_eq!(x, y);
}

#[test]
fn usage_errors() {
    for args in [
        vec!["classify"],
        vec!["classify", "--group", "{\"dihedral\":0}"],
        vec!["genus", "--order", "6", "--ram", "4"],
        vec!["twist-scan", "--poly", "T^2-1", "--d", "5:1"],
        vec!["specialize", "--poly", "T^2-1", "--coeffs", "1,2", "--t", "1"],
        vec!["prop81", "--poly", "T^2-2T+1"],
        vec!["fiber-power", "--group", "{\"dihedral\":4}", "--kernel-order", "3", "--n", "2"],
    ] {
        let (code, out, err) = call(&args);
        assert_eq!(code, 1, "{args:?}: {out}");
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert!(v["message"].is_string());
    }
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("twist-scan"));
}
