use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use bcklab::fixtures::{b2, c3, c4, pm};
use bcklab::format::{parse_algebra, parse_map, parse_mv, write_algebra, write_map};
use bcklab::{certify_state, CayleyAlgebra, StateKind};
use bcklab_cli::{run_args, Status};
use serde_json::Value;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        let ws = Workspace {
            dir: tempfile::tempdir().unwrap(),
        };
        ws.algebra("C4.bck", &c4());
        ws.algebra("C3.bck", &c3());
        ws.algebra("B2.bck", &b2());
        ws.file("PM.map", &write_map(&pm()));
        ws
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn p(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }

    fn file(&self, name: &str, text: &str) {
        fs::write(self.path(name), text).unwrap();
    }

    fn algebra(&self, name: &str, a: &CayleyAlgebra) {
        self.file(name, &write_algebra(a));
    }
}

fn run(args: &[&str]) -> (Status, String, String) {
    run_args(std::iter::once("bcklab").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (Status, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (status, out, err) = run(&full);
    assert!(err.is_empty(), "{err}");
    (status, serde_json::from_str(&out).unwrap())
}

#[test]
fn check_prints_flags() {
    let ws = Workspace::new();
    let (status, out, _) = run(&["check", &ws.p("C4.bck")]);
    assert_eq!(status, Status::Ok);
    assert!(out.contains("BCK1 ok"));
    assert!(out.contains("flags positive_implicative,bounded,linear,lattice"));
    assert!(out.ends_with("check: C4 is a BCK-algebra of order 4\n"));
}

#[test]
fn check_reports_axiom_failures() {
    let ws = Workspace::new();
    ws.file("bad.bck", "bck 1\norder 2\n0 0\n0 0\n");
    let (status, v) = json(&["check", &ws.p("bad.bck")]);
    assert_eq!(status, Status::Failed);
    let axioms: Vec<&str> = v["counterexamples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["axiom"].as_str().unwrap())
        .collect();
    assert_eq!(axioms, ["Bck2", "Bck3"]);
}

#[test]
fn malformed_input_names_file_and_line() {
    let ws = Workspace::new();
    ws.file("bad.bck", "bck 1\norder 2\n0 0\n1 x\n");
    let (status, out, err) = run(&["check", &ws.p("bad.bck")]);
    assert_eq!(status, Status::Usage);
    assert!(out.is_empty());
    assert!(err.contains("bad.bck") && err.contains("line 4"), "{err}");

    let (status, _, err) = run(&["check", &ws.p("missing.bck")]);
    assert_eq!(status, Status::Usage);
    assert!(err.contains("missing.bck"));
}

#[test]
fn worked_example_morphism_check_fails_at_three_two() {
    let ws = Workspace::new();
    let args = [
        "states",
        "--algebra",
        &ws.p("C4.bck"),
        "--check",
        &ws.p("PM.map"),
        "--kind",
        "morphism",
    ];
    let (status, out, _) = run(&args);
    assert_eq!(status, Status::Failed);
    assert!(out.contains("witness (3, 2)"), "{out}");
    assert!(out.contains("μ(x*y) = 2 but μ(x)*μ(y) = 0"));

    let (_, v) = json(&args);
    let c = &v["counterexamples"][0];
    assert_eq!((c["x"].as_u64(), c["y"].as_u64()), (Some(3), Some(2)));
    assert_eq!((c["lhs"].as_u64(), c["rhs"].as_u64()), (Some(2), Some(0)));
}

#[test]
fn worked_example_is_left_not_right() {
    let ws = Workspace::new();
    let base = [
        "states",
        "--algebra",
        &ws.p("C4.bck"),
        "--check",
        &ws.p("PM.map"),
        "--kind",
    ];
    let mut left = base.to_vec();
    left.push("left");
    let (status, out, _) = run(&left);
    assert_eq!(status, Status::Ok);
    assert!(
        out.starts_with("left (0,0,2,2) ker {0,1} im {0,2} state_ideals 4 si yes\n"),
        "{out}"
    );
    let mut right = base.to_vec();
    right.push("right");
    assert_eq!(run(&right).0, Status::Failed);
}

#[test]
fn states_enumerate_lists_one_line_per_operator() {
    let ws = Workspace::new();
    let (status, out, _) = run(&[
        "states",
        "--algebra",
        &ws.p("C4.bck"),
        "--kind",
        "left",
        "--enumerate",
    ]);
    assert_eq!(status, Status::Ok);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 14);
    assert!(lines[..13].iter().all(|l| l.starts_with("left (")));
    assert_eq!(lines[13], "states: 13 left operator(s) on C4");

    let (_, out, _) = run(&[
        "states",
        "--algebra",
        &ws.p("C4.bck"),
        "--kind",
        "morphism",
        "--enumerate",
    ]);
    assert!(out.ends_with("states: 4 morphism operator(s) on C4\n"));
}

#[test]
fn usage_errors_exit_two() {
    let ws = Workspace::new();
    assert_eq!(run(&["states", "--kind", "left"]).0, Status::Usage);
    let c4 = ws.p("C4.bck");
    let pm = ws.p("PM.map");
    let both = [
        "states",
        "--algebra",
        &c4,
        "--kind",
        "left",
        "--enumerate",
        "--check",
        &pm,
    ];
    let (status, _, err) = run(&both);
    assert_eq!(status, Status::Usage);
    assert!(err.contains("--enumerate"));
    assert_eq!(
        run(&[
            "states",
            "--algebra",
            &c4,
            "--kind",
            "sideways",
            "--enumerate"
        ])
        .0,
        Status::Usage
    );
    assert_eq!(run(&["frobnicate"]).0, Status::Usage);
    assert_eq!(run(&["mv", "--check-state", &pm]).0, Status::Usage);
}

#[test]
fn map_of_wrong_size_is_a_format_error() {
    let ws = Workspace::new();
    ws.file("short.map", "map 3 0 0 0\n");
    let (status, _, err) = run(&[
        "states",
        "--algebra",
        &ws.p("C4.bck"),
        "--kind",
        "left",
        "--check",
        &ws.p("short.map"),
    ]);
    assert_eq!(status, Status::Usage);
    assert!(err.contains("short.map"), "{err}");
}

#[test]
fn ideals_lines_parse_back() {
    let ws = Workspace::new();
    let (status, out, _) = run(&[
        "ideals",
        "--algebra",
        &ws.p("C4.bck"),
        "--congruences",
        "--generate",
        "2",
    ]);
    assert_eq!(status, Status::Ok);
    let ideals: Vec<Vec<usize>> = out
        .lines()
        .filter(|l| l.starts_with("ideal "))
        .map(|l| {
            let body = l.split('#').next().unwrap();
            let nums: Vec<usize> = body
                .split_whitespace()
                .skip(1)
                .map(|t| t.parse().unwrap())
                .collect();
            assert_eq!(nums[0], nums.len() - 1);
            nums[1..].to_vec()
        })
        .collect();
    assert_eq!(
        ideals,
        vec![vec![0], vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3]]
    );
    assert!(out.contains("classes {0,1}{2}{3}\n"));
    assert!(out.contains("generated by {2}: ideal 3 0 1 2\n"));
    assert!(out.contains("ideal 2 0 1  # commutative no"));
}

#[test]
fn adjoint_and_retract_agree_on_the_chain() {
    let ws = Workspace::new();
    let (status, out, _) = run(&["adjoint", "--algebra", &ws.p("C4.bck")]);
    assert_eq!(status, Status::Ok);
    assert!(out.contains("A {0,2,3} I {0,1} mu (0,0,2,3)\n"));
    assert!(out.ends_with("adjoint: 4 pair(s)\n"));
    let (status, out, _) = run(&["retract", "--algebra", &ws.p("C4.bck")]);
    assert_eq!(status, Status::Ok);
    assert!(out.ends_with("retract: 4 retract ideal(s)\n"));
}

#[test]
fn mv_conversion_and_state_check() {
    let ws = Workspace::new();
    let (status, out, _) = run(&["mv", "--from-bck", &ws.p("C3.bck")]);
    assert_eq!(status, Status::Ok);
    let table: String = out.lines().take(6).map(|l| format!("{l}\n")).collect();
    let m = parse_mv(&table).unwrap();
    assert_eq!(m.order(), 3);
    ws.file("C3.mv", &table);

    ws.file("id.map", "map 3 0 1 2\n");
    ws.file("bad.map", "map 3 0 2 2\n");
    let (status, out, _) = run(&[
        "mv",
        "--mv",
        &ws.p("C3.mv"),
        "--check-state",
        &ws.p("id.map"),
    ]);
    assert_eq!(status, Status::Ok, "{out}");
    let (status, out, _) = run(&[
        "mv",
        "--from-bck",
        &ws.p("C3.bck"),
        "--check-state",
        &ws.p("bad.map"),
    ]);
    assert_eq!(status, Status::Failed);
    assert!(out.contains("left state operator on the BCK reduct: no"));

    let (status, out, _) = run(&["mv", "--from-bck", &ws.p("C3.bck"), "--correspondence"]);
    assert_eq!(status, Status::Ok);
    assert!(out.contains("maps 27\n"));

    let (status, _, err) = run(&["mv", "--from-bck", &ws.p("C4.bck")]);
    assert_eq!(status, Status::Failed);
    assert!(err.contains("not commutative"));
}

#[test]
fn diagonal_emits_certifiable_files() {
    let ws = Workspace::new();
    let (d, mu) = (ws.p("d.bck"), ws.p("mu.map"));
    let (status, out, _) = run(&[
        "diagonal",
        "--algebra",
        &ws.p("C3.bck"),
        "--emit",
        &d,
        "--emit-map",
        &mu,
    ]);
    assert_eq!(status, Status::Ok);
    assert!(out.contains("order 9\n"));
    let a = parse_algebra(&fs::read_to_string(&d).unwrap()).unwrap();
    let m = parse_map(&fs::read_to_string(&mu).unwrap()).unwrap();
    assert!(certify_state(&a, &m, StateKind::StateMorphism).is_ok());
}

#[test]
fn product_prints_a_bck_table() {
    let ws = Workspace::new();
    let (status, out, _) = run(&["product", &ws.p("B2.bck"), &ws.p("C3.bck")]);
    assert_eq!(status, Status::Ok);
    let body: String = out
        .lines()
        .filter(|l| !l.starts_with("product:"))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(parse_algebra(&body).unwrap().order(), 6);
}

#[test]
fn caps_from_config_file() {
    let ws = Workspace::new();
    ws.file("caps.toml", "max_order = 8\n");
    let (status, _, err) = run(&[
        "--config",
        &ws.p("caps.toml"),
        "diagonal",
        "--algebra",
        &ws.p("C3.bck"),
    ]);
    assert_eq!(status, Status::Usage);
    assert!(err.contains("exceeds configured limit 8"), "{err}");
    ws.file("typo.toml", "max_ordre = 8\n");
    let (status, _, err) = run(&["--config", &ws.p("typo.toml"), "check", &ws.p("C3.bck")]);
    assert_eq!(status, Status::Usage);
    assert!(err.contains("max_ordre"));
}

#[test]
fn json_schema_and_timestamps() {
    let ws = Workspace::new();
    let (_, v) = json(&["check", &ws.p("B2.bck")]);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["counterexamples", "inputs", "results", "verb"]);
    assert_eq!(v["verb"], "check");
    let (_, v) = json(&["--timestamps", "check", &ws.p("B2.bck")]);
    assert!(v["timestamp"].is_u64());
    let (_, out, _) = run(&["--timestamps", "check", &ws.p("B2.bck")]);
    assert!(out.starts_with("# timestamp "));
}

fn enumerate(ws: &Workspace, n: usize) -> PathBuf {
    let root = ws.path("catalog");
    let (status, out, _) = run(&[
        "enumerate",
        "--order",
        &n.to_string(),
        "--out",
        &root.display().to_string(),
    ]);
    assert_eq!(status, Status::Ok, "{out}");
    root.join(format!("n={n}"))
}

#[test]
fn enumerate_then_suite_on_order_four() {
    let ws = Workspace::new();
    let dir = enumerate(&ws, 4);
    assert_eq!(fs::read_dir(&dir).unwrap().count(), 15);
    let report = ws.p("report.tsv");
    let (status, out, _) = run(&[
        "suite",
        "--catalog",
        &dir.display().to_string(),
        "--report",
        &report,
    ]);
    assert_eq!(status, Status::Ok, "{out}");
    let tsv = fs::read_to_string(&report).unwrap();
    assert!(tsv.starts_with("theorem_label\tinstances_checked\tfailures\tfirst_counterexample\n"));
    assert!(out.starts_with(&tsv));
    assert!(
        tsv.contains("example: four-element chain with (0,0,2,2) is left but not right\t1\t0\t-\n")
    );
    assert!(tsv.lines().skip(1).all(|l| l.split('\t').count() == 4));
}

#[test]
fn suite_reports_are_byte_identical() {
    let ws = Workspace::new();
    enumerate(&ws, 2);
    enumerate(&ws, 3);
    let root = ws.p("catalog");
    let (a, b) = (ws.p("a.tsv"), ws.p("b.tsv"));
    let first = run(&["suite", "--catalog", &root, "--report", &a]);
    let second = run(&["suite", "--catalog", &root, "--report", &b]);
    assert_eq!(first, second);
    assert_eq!(first.0, Status::Ok);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(first.1.contains("suite: 4 entries"));
}

#[test]
fn empty_catalog_gives_summary_only() {
    let ws = Workspace::new();
    let empty = ws.path("empty");
    fs::create_dir(&empty).unwrap();
    let (status, out, _) = run(&["suite", "--catalog", &empty.display().to_string()]);
    assert_eq!(status, Status::Ok);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("suite: 0 entries"));
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bcklab"))
}

fn exit_code(cmd: &mut Command) -> i32 {
    cmd.output().unwrap().status.code().unwrap()
}

#[test]
fn binary_exit_codes_and_thread_variable() {
    let ws = Workspace::new();
    let c4: &Path = &ws.path("C4.bck");
    assert_eq!(exit_code(binary().arg("check").arg(c4)), 0);
    let out = binary()
        .args(["states", "--kind", "morphism", "--algebra"])
        .arg(c4)
        .arg("--check")
        .arg(ws.path("PM.map"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("(3, 2)"));
    assert_eq!(exit_code(binary().args(["states", "--kind", "left"])), 2);
    assert_eq!(
        exit_code(binary().env("BCKLAB_THREADS", "2").arg("check").arg(c4)),
        0
    );
    assert_eq!(
        exit_code(binary().env("BCKLAB_THREADS", "many").arg("check").arg(c4)),
        2
    );
    assert_eq!(exit_code(binary().arg("--help")), 0);
}
