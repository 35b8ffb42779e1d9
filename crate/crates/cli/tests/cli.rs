use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use maxline::{line_digraph, Digraph};
use maxline_cli::{emit, parse_edge_list, Format};

fn maxline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn maxline_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_maxline"))
        .args(args)
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

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_o_and_transpose() {
    let o = maxline(&["gen", "o", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n 4\n0 1\n0 2\n1 0\n2 0\n3 0\n");
    let t = maxline(&["gen", "o", "5", "--transpose"]);
    assert_eq!(stdout(&t), "n 4\n0 1\n0 2\n0 3\n1 0\n2 0\n");
}

#[test]
fn gen_star_and_extremal_line() {
    let s = parse_edge_list(&stdout(&maxline(&["gen", "star", "3", "2", "1"]))).unwrap();
    assert_eq!(s.arc_count(), 5);
    assert_eq!(maxline_stdin(&["phi", "-"], &emit(&s, Format::Edges)).stdout, b"7\n");

    let l = parse_edge_list(&stdout(&maxline(&["gen", "extremal-line", "7"]))).unwrap();
    assert_eq!(l.vertex_count(), 7);
    assert_eq!(l.arc_count() as u64, maxline::max_arcs(7));

    assert_eq!(maxline(&["gen", "star", "1", "1", "2"]).status.code(), Some(2));
    assert_eq!(maxline(&["gen", "o", "1"]).status.code(), Some(2));
}

#[test]
fn dot_format() {
    let o = maxline(&["--format", "dot", "gen", "o", "4"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph G {\n"));
    assert_eq!(text.matches(" -> ").count(), 4);
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g", "0 1\n1 2\n");
    let l = stdout(&maxline(&["line", p(&f), "--format", "dot"]));
    assert!(l.contains("1 [label=\"1 2\"];"));
    assert!(l.contains("0 -> 1;"));
}

#[test]
fn line_phi_and_max_arcs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "o12", &stdout(&maxline(&["gen", "o", "12"])));
    assert_eq!(stdout(&maxline(&["phi", p(&f)])), "42\n");
    assert_eq!(stdout(&maxline(&["max-arcs", "12"])), "42\n");
    assert_eq!(stdout(&maxline(&["max-arcs", "11"])), "35\n");

    let l = parse_edge_list(&stdout(&maxline(&["line", p(&f)]))).unwrap();
    assert_eq!(l.vertex_count(), 12);
    assert_eq!(l.arc_count(), 42);
}

#[test]
fn check_reports_witness_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let eight = write(dir.path(), "eight", "0 1\n1 0\n0 2\n2 0\n");
    let o = maxline(&["check", p(&eight)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not-line\n");
    let o = maxline(&["check", p(&eight), "--witness"]);
    assert_eq!(stdout(&o), "not-line\neight 0 1 2\n");

    let path = write(dir.path(), "path", "0 1\n1 2\n");
    let o = maxline(&["check", p(&path), "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "line\n");
}

#[test]
fn root_reconstructs_via_stdin() {
    let root = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)]).unwrap();
    let l = line_digraph(&root).graph;
    let o = maxline_stdin(&["root", "-"], &emit(&l, Format::Edges));
    assert_eq!(o.status.code(), Some(0));
    let rebuilt = parse_edge_list(&stdout(&o)).unwrap();
    assert!(maxline::are_isomorphic(&line_digraph(&rebuilt).graph, &l));

    let o = maxline_stdin(&["root", "-"], "0 1\n1 0\n0 2\n2 0\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("eight"));
}

#[test]
fn iso_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a", "0 1\n1 2\n");
    let b = write(dir.path(), "b", "n 5\n4 0\n3 4\n");
    let c = write(dir.path(), "c", "0 1\n2 1\n");
    let o = maxline(&["iso", p(&a), p(&b)]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "isomorphic\n"));
    let o = maxline(&["iso", p(&a), p(&c)]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "not-isomorphic\n"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let loop_file = write(dir.path(), "loop", "0 1\n2 2\n");
    let o = maxline(&["phi", p(&loop_file)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let missing = dir.path().join("missing");
    assert_eq!(maxline(&["phi", p(&missing)]).status.code(), Some(2));
    assert_eq!(maxline(&["nonsense"]).status.code(), Some(2));
    assert_eq!(maxline(&["verify", "max", "8"]).status.code(), Some(2));
    assert_eq!(maxline(&["verify", "max", "0"]).status.code(), Some(2));
    assert_eq!(maxline(&["verify", "max", "5", "--mode", "guess"]).status.code(), Some(2));
}

#[test]
fn verify_writes_report_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let one = maxline(&["verify", "max", "7", "--report", p(&report)]);
    assert_eq!(one.status.code(), Some(0));
    let four = maxline(&["verify", "max", "7", "--jobs", "4"]);
    assert_eq!(stdout(&one), stdout(&four));
    assert!(stdout(&one).contains("max_phi_found = 15\n"));
    assert!(stdout(&one).ends_with("verdict = consistent\n"));

    let parsed = maxline_cli::report::from_json(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed.max_phi_found, 15);
    assert_eq!(parsed.optimal_classes.len(), 2);
}

#[test]
fn verify_branch_and_bound_beyond_exhaustive_range() {
    let o = maxline(&["verify", "max", "9", "--mode", "bnb"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("mode = branch_and_bound\n"));
    assert!(text.contains("max_phi_found = 24\n"));
    assert!(text.contains("optimal_classes = 2\n"));
}

#[test]
fn edge_list_roundtrip_through_binary() {
    let o = maxline_stdin(&["root", "-"], "# comment\n1 0\n\n0 1   # tail\n");
    let first = stdout(&o);
    let again = maxline_stdin(&["root", "-"], &stdout(&maxline_stdin(&["line", "-"], &first)));
    let a = parse_edge_list(&first).unwrap();
    let b = parse_edge_list(&stdout(&again)).unwrap();
    assert!(maxline::are_isomorphic(&line_digraph(&a).graph, &line_digraph(&b).graph));
}
