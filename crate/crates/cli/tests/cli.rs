use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use raagsep::{DecompositionTree, FiniteQuotientWitness, Graph, Word};
use serde_json::Value;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: TempDir::new().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raagsep")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

const P3: &str = "a b\nb c\n";
const SQUARE: &str = "v1 v2\nv2 v3\nv3 v4\nv4 v1\n";
const Z3: &str = "gens: x\nx^3\n";

#[test]
fn analyze_square_reports_witness() {
    let ws = Workspace::new();
    let g = ws.file("square.txt", SQUARE);
    let out = run(&["--json", "analyze", g.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["separable"], false);
    assert_eq!(v["witness"]["kind"], "square");
    assert_eq!(v["witness"]["group"], "F2×F2");
}

#[test]
fn analyze_path_of_length_three() {
    let ws = Workspace::new();
    let g = ws.file("l.txt", "a b\nb c\nc d\n");
    let out = run(&["--json", "analyze", g.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["witness"]["kind"], "path3");
    assert_eq!(v["witness"]["relations"], "[a,b]=[b,c]=[c,d]=1");
}

#[test]
fn analyze_separable_path() {
    let ws = Workspace::new();
    let g = ws.file("p3.txt", P3);
    let out = run(&["analyze", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("structure: (Z[a] * Z[c]) × Z[b]"), "{text}");
    assert!(text.contains("group: F2 × Z"), "{text}");
}

#[test]
fn analyze_emits_dot() {
    let ws = Workspace::new();
    let g = ws.file("p3.txt", P3);
    let out = run(&["analyze", "--emit-dot", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("a -- b;"));
}

#[test]
fn malformed_graph_is_an_input_error() {
    let ws = Workspace::new();
    let g = ws.file("bad.txt", "a b c\n");
    let out = run(&["--json", "analyze", g.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["status"], "error");

    let loop_file = ws.file("loop.txt", "a a\n");
    assert_eq!(code(&run(&["analyze", loop_file.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["analyze", "/nonexistent/graph.txt"])), 2);
}

#[test]
fn empty_graph_needs_flag() {
    let ws = Workspace::new();
    let g = ws.file("empty.txt", "\n");
    assert_eq!(code(&run(&["analyze", g.to_str().unwrap()])), 2);
    let out = run(&["--json", "decompose", "--allow-empty", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["structure"], "1");
}

#[test]
fn decompose_tree_round_trips() {
    let ws = Workspace::new();
    let g = ws.file("p3.txt", P3);
    let out = run(&["--json", "decompose", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let tree = DecompositionTree::from_json(&v["tree"].to_string()).unwrap();
    let graph = Graph::path(&["a", "b", "c"]).unwrap();
    assert!(tree.validate(&graph));
    assert_eq!(tree.render(), "(Z[a] * Z[c]) × Z[b]");
}

#[test]
fn decompose_rejects_square() {
    let ws = Workspace::new();
    let g = ws.file("square.txt", SQUARE);
    assert_eq!(code(&run(&["decompose", g.to_str().unwrap()])), 3);
}

#[test]
fn present_lists_commutators() {
    let ws = Workspace::new();
    let g = ws.file("square.txt", SQUARE);
    let out = run(&["present", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("[v1,v2]=[v1,v4]=[v2,v3]=[v3,v4]=1"));
}

#[test]
fn equal_and_normal_form() {
    let ws = Workspace::new();
    let g = ws.file("p3.txt", P3);
    let p = g.to_str().unwrap();
    assert_eq!(code(&run(&["equal", p, "a b", "b a"])), 0);
    assert_eq!(code(&run(&["equal", p, "a c", "c a"])), 3);
    assert_eq!(code(&run(&["equal", p, "a z", "a"])), 2);
    let out = run(&["nf", p, "c b a"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "b c a");
}

#[test]
fn michailova_membership() {
    let ws = Workspace::new();
    let h = ws.file("z3.txt", Z3);
    let p = h.to_str().unwrap();
    assert_eq!(code(&run(&["michailova", p, "1 | x^3"])), 0);
    assert_eq!(code(&run(&["michailova", p, "x^2 | x^5"])), 0);
    assert_eq!(code(&run(&["michailova", p, "1 | x"])), 3);
    assert_eq!(code(&run(&["michailova", p, "1 x"])), 2);
}

#[test]
fn michailova_infinite_group_exhausts() {
    let ws = Workspace::new();
    let h = ws.file("z.txt", "gens: x\n");
    let out = run(&["--json", "michailova", h.to_str().unwrap(), "1 | x", "--max-cosets", "10"]);
    assert_eq!(code(&out), 4);
    assert_eq!(json(&out)["status"], "error");
}

#[test]
fn separate_free_generators() {
    let ws = Workspace::new();
    let g = ws.file("free.txt", "a\nb\n");
    let out = run(&["--json", "separate", g.to_str().unwrap(), "a", "b"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["result"], "separated");
    assert_eq!(v["witness"]["degree"], 2);
}

#[test]
fn separate_witness_round_trips_and_verifies() {
    let ws = Workspace::new();
    let g = ws.file("p3.txt", P3);
    let out = run(&["--json", "separate", g.to_str().unwrap(), "a c", "c a"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let witness = FiniteQuotientWitness::from_json(&v["witness"].to_string()).unwrap();
    let graph = Graph::path(&["a", "b", "c"]).unwrap();
    let h = raagsep::parse_word(&graph, "a c").unwrap();
    let x = raagsep::parse_word(&graph, "c a").unwrap();
    assert!(raagsep::verify_witness(&graph, &h, &x, &witness));

    let again = run(&["--json", "separate", g.to_str().unwrap(), "a c", "c a"]);
    assert_eq!(stdout(&out), stdout(&again));
}

#[test]
fn separate_power_of_h_is_negative() {
    let ws = Workspace::new();
    let g = ws.file("one.txt", "a\n");
    let out = run(&["--json", "separate", g.to_str().unwrap(), "a", "a^2"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["result"], "not_outside");
}

#[test]
fn separate_without_budget_is_inconclusive() {
    let ws = Workspace::new();
    let g = ws.file("free.txt", "a\nb\n");
    let out = run(&[
        "--json",
        "separate",
        g.to_str().unwrap(),
        "a",
        "a b a^-1 b^-1",
        "--max-candidates",
        "0",
    ]);
    assert_eq!(code(&out), 5);
    assert_eq!(json(&out)["result"], "inconclusive");
}

#[test]
fn seed_accepts_hex_and_decimal() {
    let ws = Workspace::new();
    let g = ws.file("free.txt", "a\nb\n");
    let p = g.to_str().unwrap();
    assert_eq!(code(&run(&["separate", p, "a", "b", "--seed", "0x10"])), 0);
    assert_eq!(code(&run(&["separate", p, "a", "b", "--seed", "16"])), 0);
    assert_eq!(code(&run(&["separate", p, "a", "b", "--seed", "zz"])), 2);
}

#[test]
fn word_display_matches_cli_syntax() {
    let names = vec!["a".to_string()];
    let w = Word::parse("a^-1 a^-1", &names).unwrap();
    assert_eq!(w.display(&names).to_string(), "a^-1 a^-1");
}
