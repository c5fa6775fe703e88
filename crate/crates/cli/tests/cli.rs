use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use apartness_core::apartness::classify;
use apartness_core::heyting::enumerate_algebras;
use apartness_lab::records::{read_records, Record};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apartness-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn poset_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("apartness-lab-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn prove_exit_codes() {
    let o = lab(&["prove", "~P | ~~P"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("Invalid"));
    assert!(text.contains("countermodel with 3 worlds"));
    assert!(text.contains("w0: sees [w1, w2]"));

    let o = lab(&["prove", "(~X & ~Y) -> (X <-> Y)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Valid"));

    assert_eq!(lab(&["prove", "bot -> P"]).status.code(), Some(0));
    assert_eq!(lab(&["prove", "P &"]).status.code(), Some(2));
    assert_eq!(
        lab(&["prove", "P", "--max-worlds", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn prove_records() {
    let o = lab(&["prove", "P | ~P", "--format", "records"]);
    assert_eq!(o.status.code(), Some(1));
    let records = read_records(&stdout(&o)).unwrap();
    match &records[..] {
        [Record::Proof(p)] => {
            assert!(!p.valid);
            let m = p.countermodel.as_ref().unwrap();
            assert_eq!(m.worlds, 2);
            assert_eq!(m.covers, vec![(0, 1)]);
        }
        other => panic!("unexpected records {other:?}"),
    }
}

#[test]
fn countermodel_command() {
    let o = lab(&["countermodel", "~P | ~~P", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("digraph countermodel"));
    assert!(text.contains("w0 -> w1;"));
    let o = lab(&["countermodel", "P -> P"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no countermodel"));
}

#[test]
fn rn_commands() {
    let o = lab(&["rn", "normalize", "~~y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("i_2\n"));
    assert!(stdout(&lab(&["rn", "normalize", "~y"])).starts_with("i_1\n"));
    assert_eq!(lab(&["rn", "normalize", "x & y"]).status.code(), Some(2));

    let o = lab(&["rn", "hasse", "--depth", "2", "--dot"]);
    assert!(stdout(&o).contains("d1 -> d2;"));
    let o = lab(&["rn", "hasse", "--depth", "2"]);
    assert!(stdout(&o).lines().any(|l| l == "d_1 < d_2"));
}

#[test]
fn classify_enumerate_three() {
    let o = lab(&["classify", "--enumerate", "3"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(
        stdout(&o)
            .lines()
            .filter(|l| l.starts_with("algebra "))
            .count(),
        9
    );
}

#[test]
fn classify_poset_files() {
    // downsets of this order are the upsets of the fork r < p, r < q
    let fork = poset_file("fork.poset", "# root on top\nelements: 3\n1 < 0\n2 < 0\n");
    let chain = poset_file("chain2.poset", "elements: 2\n0 < 1\n");
    let o = lab(&[
        "classify",
        "--poset",
        fork.to_str().unwrap(),
        "--poset",
        chain.to_str().unwrap(),
        "--format",
        "records",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let records = read_records(&stdout(&o)).unwrap();
    let reports: Vec<_> = records
        .into_iter()
        .map(|r| match r {
            Record::Classification(c) => c,
            other => panic!("unexpected record {other:?}"),
        })
        .collect();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0].algebra_size, 5);
    assert!(!reports[0].wlem);
    assert_eq!(reports[0].nontrivial_apartness_functions, 0);
    assert_eq!(reports[1].algebra_size, 3);
    assert_eq!(reports[1].nontrivial_apartness_functions, 1);
    assert!(reports[1].unique_equals_candidate2);

    let bad = poset_file("bad.poset", "elements: 2\n0 < 1\n1 < 0\n");
    assert_eq!(
        lab(&["classify", "--poset", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lab(&["classify", "--poset", "/nonexistent/x.poset"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn classify_records_round_trip() {
    let o = lab(&[
        "classify",
        "--enumerate",
        "3",
        "--format",
        "records",
        "--jobs",
        "3",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("schema: 1\n"));
    let parsed = read_records(&text).unwrap();
    let expected: Vec<Record> = enumerate_algebras(3)
        .unwrap()
        .map(|h| Record::Classification(classify(&h, 200_000)))
        .collect();
    assert_eq!(parsed, expected);
}

#[test]
fn output_is_deterministic() {
    let a = lab(&["classify", "--enumerate", "3", "--jobs", "1"]);
    let b = lab(&["classify", "--enumerate", "3", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn capped_classification_fails() {
    let o = lab(&["classify", "--enumerate", "2", "--clone-cap", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("inconclusive"));
}

#[test]
fn enumerate_command() {
    let o = lab(&["enumerate", "3", "--format", "records"]);
    let records = read_records(&stdout(&o)).unwrap();
    assert_eq!(records.len(), 9);
    let wlem_failures = records
        .iter()
        .filter(|r| matches!(r, Record::Algebra(a) if !a.wlem))
        .count();
    assert_eq!(wlem_failures, 1);
}

#[test]
fn corpus_runs() {
    let o = lab(&["corpus", "--max-poset-size", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS [")).count(), 9);
    assert!(text.contains("2 algebras"));

    let o = lab(&["corpus", "--clone-cap", "10", "--format", "records"]);
    assert_eq!(o.status.code(), Some(1));
    let records = read_records(&stdout(&o)).unwrap();
    assert!(records.iter().any(|r| matches!(r, Record::Criterion(c) if c.status == apartness_core::apartness::Status::Inconclusive)));

    let o = lab(&["corpus"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
