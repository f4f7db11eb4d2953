use std::path::PathBuf;
use std::process::{Command, Output};

fn semilin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semilin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("semilin-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn eval_c() {
    let o = semilin(&[
        "eval",
        "C",
        r#"{"turns":["1/4"],"depth":"1"}"#,
        r#"{"turns":["1/2"],"depth":"1"}"#,
        r#"{"turns":[],"depth":"1"}"#,
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "true");
    let o = semilin(&["eval", "lt", "<{},2>", "<{},0>"]);
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn solve_exit_codes() {
    let unsat = temp("unsat.txt", "x < y\ny < x\n");
    let o = semilin(&["solve", unsat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "UNSAT");
    let o = semilin(&["oracle", unsat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let sat = temp("sat.txt", "# witness\nx || y\nC(z, x y)\n");
    let o = semilin(&["solve", sat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let (head, body) = out.split_once('\n').unwrap();
    assert_eq!(head, "SAT");
    let v: serde_json::Value = serde_json::from_str(body).unwrap();
    assert!(v.get("z").is_some());

    let bad = temp("bad.txt", "x << y\n");
    let o = semilin(&["solve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn enumerate_and_extensions() {
    assert_eq!(stdout(&semilin(&["enumerate", "3"])).trim(), "6");
    assert_eq!(stdout(&semilin(&["enumerate", "3", "--classes"])).trim(), "4");
    assert_eq!(semilin(&["enumerate", "9"]).status.code(), Some(2));

    let anti = temp("anti.json", r#"{"n":3,"leq":[[1,0,0],[0,1,0],[0,0,1]],"C":[[2,0,1],[2,1,0]]}"#);
    let out = stdout(&semilin(&["extensions", anti.to_str().unwrap()]));
    assert_eq!(out.lines().next(), Some("4"));
    let o = semilin(&["embed", anti.to_str().unwrap()]);
    let nodes: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(nodes.len(), 3);

    let lambda = temp("lambda.json", r#"{"n":3,"leq":[[1,1,1],[0,1,0],[0,0,1]],"C":[]}"#);
    assert_eq!(semilin(&["embed", lambda.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn maps_round_trip() {
    let pts = temp(
        "pts.json",
        r#"[{"turns":[],"depth":"1"},{"turns":[],"depth":"3"},{"turns":["3/2"],"depth":"2"}]"#,
    );
    for args in [vec!["reroot", pts.to_str().unwrap(), "--pivot", "<{},1>"], vec!["flatten", pts.to_str().unwrap()]] {
        let o = semilin(&args);
        assert!(o.status.success(), "{args:?}");
        let m = semilin_core::MappedSet::from_json(&stdout(&o)).unwrap();
        assert_eq!(m.len(), 3);
    }
}

#[test]
fn classify_is_reproducible() {
    let a = semilin(&["classify", "--formula", "x != y", "--seed", "4", "--samples", "20"]);
    let b = semilin(&["classify", "--formula", "x != y", "--seed", "4", "--samples", "20"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("equality-class"));
    let c = semilin(&["classify", "--formula", "B(x,y,z)", "--seed", "1"]);
    assert!(stdout(&c).starts_with("B-class"));
    let d = semilin(&["chain-classify", "--formula", "(x < y & y < z) | (z < y & y < x)"]);
    assert!(stdout(&d).starts_with("Betw-class"));
}

#[test]
fn behaviors_and_axioms() {
    let out = stdout(&semilin(&["behaviors"]));
    assert_eq!(out.lines().filter(|l| l.starts_with("survives")).count(), 10);
    assert!(!out.contains("NOT REJECTED") && !out.contains("FAIL"));
    let o = semilin(&["axioms", "--samples", "100", "--seed", "0"]);
    assert!(o.status.success());
    assert_eq!(o.stdout, semilin(&["axioms", "--samples", "100", "--seed", "0"]).stdout);
}
