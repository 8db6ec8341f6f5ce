//! End-to-end runs of the binary: exit codes and output formats.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn proved_goal_exits_zero() {
    let o = run(&["prove", "p^ ; ~(p;q) <= ~q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("proved"));
}

#[test]
fn hypothesis_file_is_used_and_trace_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let hyp = dir.path().join("hyps.txt");
    fs::write(&hyp, "# one hypothesis\n\nr' <= r''  # primes are name characters\n").unwrap();
    let trace = dir.path().join("trace.json");
    let (h, t) = (hyp.to_str().unwrap(), trace.to_str().unwrap());
    for mode in ["erase", "hzero"] {
        let o = run(&["prove", "p;r';q <= p;r'';q", "--hyp", h, "--mode", mode, "--trace", t]);
        assert_eq!(o.status.code(), Some(0), "{mode}: {}", stdout(&o));
        let v = run(&["verify", t]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    }
    let o = run(&["prove", "p;r';q <= p;r'';q"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn tampered_trace_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.json");
    let t = trace.to_str().unwrap();
    assert_eq!(run(&["prove", "p;(q!r) <= (p;q)!r", "--trace", t]).status.code(), Some(0));
    let text = fs::read_to_string(&trace).unwrap();
    let tampered = text.replacen("\"rel_prod\"", "\"join\"", 1);
    assert_ne!(text, tampered);
    fs::write(&trace, tampered).unwrap();
    let v = run(&["verify", t]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("step"));
}

#[test]
fn refuted_goal_prints_a_one_element_model() {
    let o = run(&["prove", "p <= q"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("size 1"), "{out}");
}

#[test]
fn unknown_exits_two() {
    let o = run(&["prove", "p;(q!r) <= (p;q)!r", "--depth", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("unknown"));
}

#[test]
fn structured_verdict_is_json() {
    let o = run(&["prove", "p;q <= q;p", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "countermodel");
}

#[test]
fn parse_and_usage_errors_exit_three() {
    let o = run(&["prove", "p <= (q"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
    assert_eq!(run(&["prove"]).status.code(), Some(3));
    assert_eq!(run(&["prove", "p <= q", "--mode", "other"]).status.code(), Some(3));
    assert_eq!(run(&["prove", "p <= q", "--unknown-flag"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "/nonexistent/trace.json"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn hypothesis_file_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let hyp = dir.path().join("hyps.txt");
    fs::write(&hyp, "p <= q\np <=\n").unwrap();
    let o = run(&["prove", "p <= q", "--hyp", hyp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn convert_outputs() {
    let o = run(&["convert", "r;0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("{}\n"), "{out}");
    let steps: usize = out.lines().nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!(steps >= 2);

    let o = run(&["convert", "1"]);
    assert!(stdout(&o).starts_with("{[0 -> 1 |]}"));

    let o = run(&["convert", "--inclusion", "r&(s;t) <= s;((s^;r)&t)"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(first.matches(", ").count(), 3 + 3, "{first}");

    let o = run(&["convert", "p!q", "--format", "dot"]);
    assert!(stdout(&o).contains("style=dashed"));
}

#[test]
fn structured_conversion_replays() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conv.json");
    let o = run(&["convert", "--inclusion", "p;(q!r) <= (p;q)!r", "--format", "structured"]);
    fs::write(&path, o.stdout).unwrap();
    let v = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn check_model_on_natural_model() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("m.txt");
    fs::write(&model, "# x=0 y=1 z=2\nsize 3\nr: (0,1)\ns: (0,2)\nt: (2,1)\n").unwrap();
    let m = model.to_str().unwrap();
    let o = run(&["check-model", m, "r & (s;t) <= s;((s^;r)&t)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "holds");
    let o = run(&["check-model", m, "r <= s"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(0, 1)"));
    fs::write(&model, "size 2\nr: (0,5)\n").unwrap();
    let o = run(&["check-model", m, "r <= s"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn render_nests_complemented_slices() {
    let o = run(&["render", "p^ ; ~(p;q) <= ~q"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("subgraph cluster_2"));
    assert!(dot.contains("style=dashed"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let conv = run(&["convert", "p;q", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&conv.stdout).unwrap();
    fs::write(&path, v["result"].to_string()).unwrap();
    let o = run(&["render", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("label=\"q\""));
}
