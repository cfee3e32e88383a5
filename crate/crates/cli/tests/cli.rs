use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn qlayout(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qlayout"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qlayout-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn k8() -> String {
    (0..8).flat_map(|a| ((a + 1)..8).map(move |b| format!("{a} {b}\n"))).collect()
}

fn k33() -> String {
    (0..3).flat_map(|a| (0..3).map(move |b| format!("a{a} b{b}\n"))).collect()
}

fn broom(leaves: usize) -> String {
    std::iter::once("r c\n".to_string()).chain((0..leaves).map(|i| format!("c l{i}\n"))).collect()
}

#[test]
fn k8_needs_four_queues_and_the_layout_checks() {
    let layout = scratch_file("k8-layout.json", "");
    let graph = scratch_file("k8.txt", &k8());
    let o = qlayout(&["qn", graph.to_str().unwrap(), "--output", layout.to_str().unwrap()], "");
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("4"));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&layout).unwrap()).unwrap();
    assert_eq!(doc["queues"].as_object().unwrap().len(), 4);
    let o = qlayout(&["check", graph.to_str().unwrap(), layout.to_str().unwrap()], "");
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn trees_and_empty_graphs() {
    let o = qlayout(&["qn"], "0 1\n1 2\n1 3\n3 4\n");
    assert_eq!((code(&o), stdout(&o).lines().next()), (0, Some("1")));
    let o = qlayout(&["qn"], "");
    assert_eq!((code(&o), stdout(&o).lines().next()), (0, Some("0")));
}

#[test]
fn disconnected_graphs_are_solved_per_component() {
    let g = "a b\nb c\nc a\nx y\n";
    let o = qlayout(&["qn", "--format", "json"], g);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["queue_number"], 1);
    assert_eq!(doc["layout"]["order"].as_array().unwrap().len(), 5);
    assert_eq!(code(&qlayout(&["td1"], g)), 2);
    let o = qlayout(&["td1", "--per-component"], g);
    assert_eq!((code(&o), stdout(&o).lines().next()), (0, Some("yes")));
}

#[test]
fn check_reports_nesting_and_structural_errors() {
    let graph = scratch_file("c4.txt", "a b\nb c\nc d\nd a\n");
    let nested = scratch_file("nested.json", r#"{"order":["a","b","c","d"],"queues":{"1":[["a","b"],["b","c"],["c","d"],["a","d"]]}}"#);
    let o = qlayout(&["check", graph.to_str().unwrap(), nested.to_str().unwrap()], "");
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("a-d nests over b-c"), "{}", stdout(&o));
    let missing = scratch_file("missing.json", r#"{"order":["a","b","c","d"],"queues":{"1":[["a","b"],["b","c"],["c","d"]]}}"#);
    assert_eq!(code(&qlayout(&["check", graph.to_str().unwrap(), missing.to_str().unwrap()], "")), 2);
    let ok = scratch_file("ok.json", r#"{"order":["a","b","d","c"],"queues":{"1":[["a","b"],["b","c"],["c","d"],["a","d"]]}}"#);
    assert_eq!(code(&qlayout(&["check", graph.to_str().unwrap(), ok.to_str().unwrap()], "")), 0);
}

#[test]
fn k33_two_queue_layout_checks() {
    let graph = scratch_file("k33.txt", &k33());
    let layout = scratch_file("k33-layout.json", "");
    let o = qlayout(&["oracle", graph.to_str().unwrap(), "-o", layout.to_str().unwrap()], "");
    assert_eq!((code(&o), stdout(&o).lines().next()), (0, Some("2")));
    assert_eq!(code(&qlayout(&["check", graph.to_str().unwrap(), layout.to_str().unwrap()], "")), 0);
    assert_eq!(code(&qlayout(&["oracle", "--h", "1"], &k33())), 1);
}

#[test]
fn td1_decisions() {
    let o = qlayout(&["td1"], &k33());
    assert_eq!((code(&o), stdout(&o).lines().next()), (1, Some("no")));
    let o = qlayout(&["td1"], "u v\n");
    assert_eq!((code(&o), stdout(&o).lines().next()), (0, Some("yes")));
    let o = qlayout(&["td1", "--thresholds", "synthetic:5", "--format", "json"], &broom(50));
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["answer"], "yes");
    assert!(doc["kernel_size"].as_u64().unwrap() <= 14);
    assert_eq!(doc["layout"]["order"].as_array().unwrap().len(), 52);
}

#[test]
fn capacity_limits_exit_four() {
    let o = qlayout(&["td1", "--thresholds", "paper"], &broom(50));
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("synthetic"));
    let path11: String = (0..10).map(|i| format!("{i} {}\n", i + 1)).collect();
    assert_eq!(code(&qlayout(&["oracle"], &path11)), 4);
    assert_eq!(code(&qlayout(&["oracle", "--oracle-cap", "11"], &path11)), 0);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&qlayout(&["qn"], "a b c\n")), 2);
    assert_eq!(code(&qlayout(&["qn"], "a a\n")), 2);
    assert_eq!(code(&qlayout(&["qn", "--thresholds", "synthetic:5"], "a b\n")), 2);
    assert_eq!(code(&qlayout(&["td1", "--thresholds", "tower"], "a b\n")), 2);
    assert_eq!(code(&qlayout(&["kernel-vc"], "a b\n")), 2);
    assert_eq!(code(&qlayout(&["frobnicate"], "")), 2);
}

#[test]
fn kernels_report_their_logs() {
    let o = qlayout(&["kernel-vc", "--h", "1", "--format", "json"], &broom(9).replace("r c\n", ""));
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["kernel"]["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(doc["trims"].as_array().unwrap().len(), 6);
    let o = qlayout(&["kernel-td", "--thresholds", "synthetic:5", "--format", "json"], &broom(20));
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let removals = doc["removals"].as_array().unwrap();
    assert!(!removals.is_empty());
    assert!(removals.iter().all(|r| r["anchor"] == "c" && r["class_size"].as_u64().unwrap() >= 2));
}

#[test]
fn outputs_are_reproducible() {
    let g = k8();
    let a = qlayout(&["qn", "--seed", "7", "--format", "svg"], &g);
    let b = qlayout(&["qn", "--seed", "7", "--format", "svg"], &g);
    assert_eq!(code(&a), 0);
    assert!(stdout(&a).starts_with("<svg"));
    assert_eq!(a.stdout, b.stdout);
}
