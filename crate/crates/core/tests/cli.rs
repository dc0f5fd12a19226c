use std::process::{Command, Output};

fn austere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_austere")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = austere(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn real_roots_come_in_pairs() {
    let v = json(&["classify", "real", "--type", "EIII", "--format", "json"]);
    let roots = v["roots"].as_array().unwrap();
    assert!(!roots.is_empty());
    for r in roots {
        let neg: Vec<i64> = r.as_array().unwrap().iter().map(|c| -c.as_i64().unwrap()).collect();
        assert!(roots.iter().any(|s| *s == serde_json::json!(neg)));
    }
}

#[test]
fn root_counts() {
    for (ty, n) in [("E6", 72), ("F4", 48), ("BC3", 24), ("A1+G2", 14)] {
        let v = json(&["roots", "gen", "--type", ty, "--format", "json"]);
        assert_eq!(v["count"], n, "{ty}");
        assert_eq!(v["positive_roots"].as_array().unwrap().len(), n / 2, "{ty}");
    }
}

#[test]
fn instantiate_exceptional_row() {
    let v = json(&["catalog", "instantiate", "(e6(6), sp(4))", "--format", "json"]);
    assert_eq!(v, serde_json::json!({"label": "EI", "r": 6, "l": 6}));
}

#[test]
fn eval_prints_value() {
    let o = austere(&["catalog", "eval", "min(i+j, m+n-(i+j))", "--params", "n=5,m=3,i=1,j=2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn recipe_builtin_matches_expectation() {
    let v = json(&["recipe", "run", "--input", "a3-aiii", "--format", "json"]);
    assert_eq!(v["split_rank"], 1);
    assert!(v["types"].as_array().unwrap().contains(&serde_json::json!("AIII")));
}

#[test]
fn recipe_mismatch_exits_one() {
    let o = austere(&[
        "recipe", "run", "--input", "a3-aiii", "--expect", "(su(p,n-p), so(p,n-p))", "--params", "n=4,p=2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn austere_verdicts() {
    let v = json(&["austere", "check", "--type", "EII", "--root", "a2", "--format", "json"]);
    assert_eq!(v["verdict"], true);
    let v = json(&["austere", "check", "--type", "A2", "--coeffs", "3,1", "--format", "json"]);
    assert_eq!(v["verdict"], false);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["satake", "show", "--type", "AII", "--rank", "4", "--split", "1"],
        vec!["roots", "gen", "--type", "Q3"],
        vec!["catalog", "eval", "n+", "--params", "n=1"],
        vec!["recipe", "run", "--input", "/nonexistent/input.json"],
        vec!["bogus"],
    ] {
        let o = austere(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classify", "table1", "--max-rank", "5"],
        vec!["satake", "show", "--type", "EIII"],
        vec!["catalog", "lookup", "sl"],
    ] {
        let a = austere(&args);
        let b = austere(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn latex_output() {
    let o = austere(&["classify", "real", "--type", "FII", "--format", "latex"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains('\\'));
}
