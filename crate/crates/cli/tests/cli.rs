use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn camenc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_camenc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn row_of(o: &Output, head: &str) -> String {
    stdout(o)
        .lines()
        .find(|l| l.starts_with(head))
        .map(|l| {
            l[head.len()..]
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

#[test]
fn bounds_rows() {
    let o = camenc(&[
        "bounds",
        "--family",
        "G",
        "--scenario",
        "ss",
        "--n-max",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(row_of(&o, "G ss"), "2 4 7 9");
    let o = camenc(&[
        "bounds",
        "--family",
        "N",
        "--scenario",
        "os",
        "--n-max",
        "3",
    ]);
    assert_eq!(row_of(&o, "N os"), "2 2 3");
    let o = camenc(&[
        "bounds",
        "--family",
        "F",
        "--scenario",
        "rr",
        "--n-max",
        "3",
    ]);
    assert_eq!(row_of(&o, "F rr"), "2 4 6");
}

#[test]
fn bounds_records() {
    let o = camenc(&[
        "--format",
        "records",
        "bounds",
        "--family",
        "E",
        "--scenario",
        "rr",
        "--n-max",
        "2",
    ]);
    assert_eq!(
        stdout(&o),
        "family=E scenario=rr n=1 max_q=2\nfamily=E scenario=rr n=2 max_q=6\n"
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(camenc(&["bounds", "--family", "Q"]).status.code(), Some(2));
    assert_eq!(
        camenc(&["bounds", "--family", "G", "--scenario", "oo"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        camenc(&["encode", "--family", "G", "--scenario", "ss"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(camenc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn encode_balanced_words() {
    let o = camenc(&["encode", "--family", "E", "--scenario", "rr", "--q", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("E rr 6 2\n"));
    let inputs: Vec<&str> = text.lines().skip(1).take(6).map(|l| &l[2..]).collect();
    let balanced: Vec<String> = camenc::balanced_set(2)
        .unwrap()
        .iter()
        .map(|w| w.to_string())
        .collect();
    assert_eq!(inputs, balanced);
}

#[test]
fn encode_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("enc.txt");
    let p = path.to_str().unwrap();
    let o = camenc(&[
        "encode",
        "--family",
        "GL",
        "--scenario",
        "ss",
        "--q",
        "5",
        "--out",
        p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = camenc(&["verify", "--encoding", p, "--family", "GL", "--q", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "OK\n");
    // The header alone identifies the family.
    assert_eq!(camenc(&["verify", "--encoding", p]).status.code(), Some(0));
}

#[test]
fn verify_reports_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "G ss 2 1\n0 0\n1 1\nt=0 *\nt=1 0\n").unwrap();
    let o = camenc(&["verify", "--encoding", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("FAIL"));
    assert!(text.contains("counterexample x=0 key=t=1 expected=0 got=1"));
    assert!(text.contains("counterexample x=1 key=t=1 expected=1 got=0"));
}

#[test]
fn verify_family_mismatch_is_negative() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("enc.txt");
    let p = path.to_str().unwrap();
    camenc(&[
        "encode",
        "--family",
        "G",
        "--scenario",
        "ss",
        "--q",
        "4",
        "--out",
        p,
    ]);
    assert_eq!(
        camenc(&["verify", "--encoding", p, "--family", "E", "--q", "4"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn punctured_encode_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pf.txt");
    let p = path.to_str().unwrap();
    let o = camenc(&[
        "encode",
        "--family",
        "PF",
        "--puncture",
        "0110",
        "--scenario",
        "ss",
        "--out",
        p,
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("PF:0110 ss 4 3\n"));
    assert_eq!(camenc(&["verify", "--encoding", p]).status.code(), Some(0));
}

#[test]
fn search_outcomes() {
    let o = camenc(&[
        "search",
        "--family",
        "GL",
        "--scenario",
        "ss",
        "--q",
        "4",
        "--n",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NOT-EXISTS\n");

    let o = camenc(&[
        "search",
        "--family",
        "G",
        "--scenario",
        "ss",
        "--q",
        "4",
        "--n",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("EXISTS\nG ss 4 2\n"));
    let enc: camenc::Encoding = text["EXISTS\n".len()..].parse().unwrap();
    assert_eq!(enc.n, 2);

    let o = camenc(&[
        "search",
        "--family",
        "F",
        "--scenario",
        "ss",
        "--q",
        "4",
        "--n",
        "3",
        "--max-input-maps",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("BUDGET-EXCEEDED"));
}

#[test]
fn search_explicit_family() {
    let o = camenc(&[
        "--format",
        "records",
        "search",
        "--family",
        "X",
        "--members",
        "100,011",
        "--scenario",
        "os",
        "--n",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "status=EXISTS family=X scenario=os q=3 n=1\n");
    // Separating 1 from 2 as well needs a second binary cell.
    let o = camenc(&[
        "search",
        "--family",
        "X",
        "--members",
        "100,010",
        "--scenario",
        "os",
        "--n",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = camenc(&[
        "search",
        "--family",
        "X",
        "--members",
        "100,010",
        "--scenario",
        "os",
        "--n",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

fn pipeline(tree: &str, vectors: &str, extra: &[&str]) {
    let dir = tempfile::tempdir().unwrap();
    let prog = dir.path().join("p.cam");
    let tree = fixture(tree);
    let mut args = vec![
        "compile",
        "--tree",
        tree.to_str().unwrap(),
        "--out",
        prog.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let o = camenc(&args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = camenc(&[
        "simulate",
        "--program",
        prog.to_str().unwrap(),
        "--vectors",
        fixture(vectors).to_str().unwrap(),
        "--check-tree",
        tree.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    for line in stdout(&o).lines() {
        assert_eq!(line.split(' ').nth(2), Some("1"), "{line}");
    }
}

#[test]
fn compile_simulate_fixtures() {
    pipeline("threshold.tree", "threshold.vec", &[]);
    pipeline("depth2.tree", "depth2.vec", &[]);
    pipeline("depth2.tree", "depth2.vec", &["--scenario", "rr"]);
    pipeline(
        "squared.tree",
        "squared.vec",
        &["--scenario", "rr", "--squaring"],
    );
    pipeline(
        "squared.tree",
        "squared.vec",
        &["--scenario", "sr", "--squaring"],
    );
}

#[test]
fn threshold_fixture_results() {
    let dir = tempfile::tempdir().unwrap();
    let prog = dir.path().join("p.cam");
    camenc(&[
        "compile",
        "--tree",
        fixture("threshold.tree").to_str().unwrap(),
        "--out",
        prog.to_str().unwrap(),
    ]);
    let o = camenc(&[
        "simulate",
        "--program",
        prog.to_str().unwrap(),
        "--vectors",
        fixture("threshold.vec").to_str().unwrap(),
    ]);
    assert_eq!(stdout(&o), "1 01 1 1\n2 10 1 0\n3 10 1 0\n4 01 1 1\n");
}

#[test]
fn simulate_rejects_out_of_domain() {
    let dir = tempfile::tempdir().unwrap();
    let prog = dir.path().join("p.cam");
    let vec = dir.path().join("v.txt");
    std::fs::write(&vec, "7\n").unwrap();
    camenc(&[
        "compile",
        "--tree",
        fixture("threshold.tree").to_str().unwrap(),
        "--out",
        prog.to_str().unwrap(),
    ]);
    let o = camenc(&[
        "simulate",
        "--program",
        prog.to_str().unwrap(),
        "--vectors",
        vec.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outputs_independent_of_threads() {
    let args = |t: &'static str| {
        vec![
            "--threads",
            t,
            "search",
            "--family",
            "G",
            "--scenario",
            "rs",
            "--q",
            "5",
            "--n",
            "2",
        ]
    };
    let a = camenc(&args("1"));
    let b = camenc(&args("4"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_tree_is_seeded() {
    let a = camenc(&["--seed", "11", "gen-tree", "--index", "3"]);
    let b = camenc(&["--seed", "11", "gen-tree", "--index", "3"]);
    let c = camenc(&["--seed", "12", "gen-tree", "--index", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let tree: camenc::DecisionTree = stdout(&a).parse().unwrap();
    assert!(tree.validate().is_ok());
}
