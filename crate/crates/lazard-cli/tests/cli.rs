use lazard::report::{Report, Status};
use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn lazard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lazard")).args(args).env_remove("COBORDISM_ORDER").output().expect("binary runs")
}

fn lazard_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lazard"))
        .args(args)
        .env_remove("COBORDISM_ORDER")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(args: &[&str]) -> Report {
    let o = lazard(args);
    assert_eq!(o.status.code(), Some(0), "{:?}: {}", args, String::from_utf8_lossy(&o.stderr));
    Report::from_json(&stdout(&o)).unwrap()
}

fn data(r: &Report) -> &Value {
    r.data.as_ref().expect("data present")
}

/// Series terms as `(exponents, [(t power, coefficient)])`, skipping b and ε parts.
fn t_terms(series: &Value) -> Vec<(Vec<u64>, Vec<(u64, String)>)> {
    series
        .as_array()
        .unwrap()
        .iter()
        .map(|term| {
            let exps = term["exps"].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).collect();
            let coeff = term["coeff"]["terms"].as_array().unwrap().iter().map(|m| (m["t"].as_u64().unwrap(), m["coeff"].as_str().unwrap().to_string())).collect();
            (exps, coeff)
        })
        .collect()
}

#[test]
fn chx_law_to_order_four() {
    let r = report(&["fgl", "--law", "chx", "--order", "4"]);
    assert!(r.records.iter().all(|c| c.status == Status::Pass));
    let mut got = t_terms(&data(&r)["F"]);
    got.sort();
    let s = |c: &str| c.to_string();
    let want = vec![
        (vec![0, 1], vec![(0, s("1"))]),
        (vec![1, 0], vec![(0, s("1"))]),
        (vec![1, 1], vec![(1, s("-2"))]),
        (vec![1, 2], vec![(2, s("1"))]),
        (vec![2, 1], vec![(2, s("1"))]),
    ];
    assert_eq!(got, want);
}

#[test]
fn additive_multiplication_by_five() {
    let r = report(&["fgl", "--law", "additive", "--mult", "5"]);
    let got = t_terms(&data(&r)["mult"]["series"]);
    assert_eq!(got, vec![(vec![1], vec![(0, "5".to_string())])]);
}

#[test]
fn p_series_vanishes_mod_three() {
    let r = report(&["fgl", "--law", "universal-mod-p", "--p", "3", "--mult", "3", "--order", "8"]);
    assert_eq!(data(&r)["mult"]["series"], Value::Array(vec![]));
    assert!(r.records.iter().any(|c| c.id == "fgl.p-series" && c.status == Status::Pass));
}

#[test]
fn chern_numbers_of_small_varieties() {
    let r = report(&["chern", "--spec", r#"{"type":"multiproj","dims":[3]}"#, "--alpha", "3"]);
    assert_eq!(data(&r)["euler"], "4");
    assert_eq!(data(&r)["requested"]["value"], "-4");

    let r = report(&["chern", "--spec", r#"{"type":"multiproj","dims":[1,1]}"#, "--alpha", "2"]);
    assert_eq!(data(&r)["euler"], "4");
    assert_eq!(data(&r)["requested"]["value"], "0");

    let r = report(&["chern", "--spec", r#"{"type":"multiproj","dims":[0]}"#]);
    assert_eq!(data(&r)["euler"], "1");
    let pretty = stdout(&lazard(&["chern", "--spec", r#"{"type":"multiproj","dims":[0]}"#, "--pretty"]));
    assert!(pretty.contains("class = 1\n"));
}

#[test]
fn chern_reads_stdin() {
    let o = lazard_stdin(&["chern"], r#"{"type":"multiproj","dims":[2]}"#);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(data(&r)["euler"], "3");
    assert_eq!(data(&r)["additive_chern_number"], "-3");
}

#[test]
fn verify_examples() {
    let r = report(&["verify", "--theorem", "euler", "--builtin", "linear_pn", "--n", "3", "--a", "1"]);
    assert!(r.records.iter().all(|c| c.status != Status::Fail));
    assert!(r.records.iter().any(|c| c.id == "euler.mod4" && c.status == Status::Pass));

    let r = report(&["verify", "--theorem", "ks", "--builtin", "factorwise_p1n", "--n", "2", "--alpha", "1,1"]);
    assert_eq!(r.records.len(), 1);
    assert_eq!(r.records[0].status, Status::Pass);

    let r = report(&["verify", "--theorem", "trivial-normal", "--builtin", "linear_pn", "--n", "2", "--a", "0"]);
    assert!(r.records.iter().all(|c| c.status == Status::HypothesisNotMet));
}

#[test]
fn exit_codes() {
    assert_eq!(lazard(&["verify", "--theorem", "bogus"]).status.code(), Some(2));
    assert_eq!(lazard(&["chern", "--spec", "{not json"]).status.code(), Some(2));
    assert_eq!(lazard(&["fgl", "--law", "chx", "--order", "1"]).status.code(), Some(2));
    // ℙ² cannot have a single isolated fixed point
    let fake = r#"{"ambient":{"type":"multiproj","dims":[2]},"components":[{"spec":{"type":"multiproj","dims":[0]},"codim":2,"normal_lines":[[],[]]}]}"#;
    let o = lazard_stdin(&["verify", "--theorem", "l2"], fake);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert!(r.failures() > 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--all", "--max-m", "2"];
    let a = lazard(&args);
    let b = lazard(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_round_trips() {
    let o = lazard(&["verify", "--theorem", "l2", "--builtin", "factorwise_p1n", "--n", "3"]);
    let text = stdout(&o);
    let r = Report::from_json(&text).unwrap();
    assert_eq!(r.to_json(), text.trim_end());
}

#[test]
fn catalog_listing() {
    let o = lazard(&["catalog", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v["builtins"].as_array().unwrap().iter().map(|b| b["name"].as_str().unwrap()).collect();
    assert!(names.len() >= 3);
    for n in ["linear_pn", "factorwise_p1n", "swap_square"] {
        assert!(names.contains(&n));
    }
    let o = lazard(&["catalog", "--builtin", "swap_square"]);
    assert!(stdout(&o).contains("swap_square"));
    assert!(!stdout(&o).contains("linear_pn"));
}

#[test]
fn order_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_lazard")).args(["fgl", "--law", "chx"]).env("COBORDISM_ORDER", "3").output().unwrap();
    let r = Report::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(data(&r)["order"], 3);
}
