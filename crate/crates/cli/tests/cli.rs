use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn tvcsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tvcsp"))
        .args(args)
        .env_remove("TVCSP_SEARCH_CAP")
        .env_remove("TVCSP_ARITY_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_reports_case_and_witness() {
    let o = tvcsp(&["classify", &corpus("neq01.toml")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("complexity: P\ncase: lexCase\nwitness: mi"), "{out}");
    let o = tvcsp(&["classify", "--equality", &corpus("neq01.toml")]);
    assert!(stdout(&o).contains("case: eqInjCase"));
    let o = tvcsp(&["classify", &corpus("lt01.toml")]);
    assert!(stdout(&o).contains("complexity: NP-complete\ncase: hardCase\nwitness: none"));
}

#[test]
fn solve_with_threshold_rejects() {
    let o = tvcsp(&[
        "solve",
        "--structure",
        &corpus("lt01.toml"),
        "--instance",
        &corpus("cycle.instance.toml"),
        "--threshold",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("optimal cost: 1\n"), "{out}");
    assert!(out.contains("method: oracleFallback"));
    assert!(out.contains("decision: reject"));
    assert!(out.contains("warning: "));
}

#[test]
fn solve_backends_agree() {
    let run = |backend| {
        stdout(&tvcsp(&[
            "solve",
            "--structure",
            &corpus("r3.toml"),
            "--instance",
            &corpus("r3.instance.toml"),
            "--backend",
            backend,
        ]))
    };
    let cost = |s: String| s.lines().next().unwrap().to_string();
    assert_eq!(cost(run("dispatch")), "optimal cost: 1");
    assert_eq!(cost(run("oracle")), "optimal cost: 1");
}

#[test]
fn check_prints_counterexample() {
    let o = tvcsp(&["check", "--op", "min", "--mode", "preserve", "--structure", &corpus("betw.toml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("Betw: false  s=⟨0,1,2⟩ t=⟨2,1,0⟩"));
    let o = tvcsp(&["check", "--op", "lex", "--mode", "improve", "--structure", &corpus("neq01.toml")]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "neq01: true\n".to_string()));
    let o = tvcsp(&["check", "--op", "nope", "--mode", "improve", "--structure", &corpus("neq01.toml")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn expr_opt_of_triangle_is_cyc() {
    let o = tvcsp(&[
        "expr",
        "--structure",
        &corpus("soft_order.toml"),
        "--expr",
        &corpus("triangle.expr.toml"),
        "--opt",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for ranks in ["[0, 1, 2]", "[1, 2, 0]", "[2, 0, 1]"] {
        assert!(out.contains(&format!("{{ ranks = {ranks}, cost = \"0\" }}")), "{out}");
    }
    assert!(out.contains("default = \"inf\""));
}

#[test]
fn hat_lists_feas_and_opt() {
    let out = stdout(&tvcsp(&["hat", "--structure", &corpus("neq01.toml")]));
    assert!(out.contains("name = \"feas(neq01)\""));
    assert!(out.contains("name = \"opt(neq01)\""));
}

#[test]
fn gen_fas_round_trips_through_solve() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = tvcsp(&["gen", "fas", "--edges", "a-b,b-a,a-b", "--out-dir", d]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = tvcsp(&[
        "solve",
        "--structure",
        &format!("{d}/fas.structure.toml"),
        "--instance",
        &format!("{d}/fas.instance.toml"),
        "--backend",
        "oracle",
    ]);
    assert!(stdout(&o).starts_with("optimal cost: 1\n"));
}

#[test]
fn input_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[[relation]]\nname = \"R\"\narity = 2\ndefault = \"0\"\nentries = [{ ranks = [0, 2], cost = \"1\" }]\n").unwrap();
    let o = tvcsp(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.toml:5:22:"), "{}", stderr(&o));
    let o = tvcsp(&["gen", "fas", "--edges", "a-a"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tvcsp(&["classify", "/nonexistent/file.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn capacity_errors_exit_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_tvcsp"))
        .args(["solve", "--structure", &corpus("lt01.toml"), "--instance", &corpus("cycle.instance.toml")])
        .env("TVCSP_SEARCH_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("capacity exceeded"));
}
