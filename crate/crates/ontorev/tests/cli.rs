use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn ontorev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ontorev")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn example_args(cmd: &str) -> Vec<String> {
    vec![
        cmd.into(),
        "--rebuttal".into(),
        s(&fixture("example_rebuttal.ofn")).into(),
        "--reliable".into(),
        s(&fixture("example_reliable.ofn")).into(),
    ]
}

fn run(args: &[String]) -> Output {
    ontorev(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn check_reports_the_unsatisfiable_concept() {
    let o = run(&example_args("check"));
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("StudentJudge"));
}

#[test]
fn explain_lists_one_conflict() {
    let mut args = example_args("explain");
    args.extend(["--format".into(), "structured".into()]);
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let text = v.to_string();
    assert!(
        text.contains("SubClassOf(StudentJudge Judge)") && text.contains("SubClassOf(StudentJudge Student)"),
        "{text}"
    );
}

#[test]
fn repair_then_check_is_coherent() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("repaired.ofn");
    let report = dir.path().join("report.json");
    let mut args = example_args("repair");
    args.extend(
        [
            "--pairs-file",
            s(&fixture("example5.pairs.json")),
            "--out",
            s(&out),
            "--report",
            s(&report),
            "--format",
            "structured",
        ]
        .map(String::from),
    );
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let removed: Vec<&str> = r["removed"].as_array().unwrap().iter().map(|x| x["id"].as_str().unwrap()).collect();
    assert_eq!(removed, ["SubClassOf(StudentJudge Judge)"]);
    assert_eq!(r["coherent_after"], true);

    let text = std::fs::read_to_string(&out).unwrap();
    assert!(!text.contains("SubClassOf(StudentJudge Judge)"));
    assert!(text.contains("SubClassOf(StudentJudge Student)"));
    let o = ontorev(&["check", "--rebuttal", s(&out), "--reliable", s(&fixture("example_reliable.ofn"))]);
    assert_eq!(code(&o), 0);
}

#[test]
fn coherent_pair_gives_empty_diagnosis() {
    let dir = TempDir::new().unwrap();
    let k = dir.path().join("k.ofn");
    std::fs::write(&k, "SubClassOf(A B)\nSubClassOf(B C)\n").unwrap();
    let k0 = fixture("example_reliable.ofn");
    assert_eq!(code(&ontorev(&["check", "--rebuttal", s(&k), "--reliable", s(&k0)])), 0);
    let report = dir.path().join("r.json");
    let o = ontorev(&[
        "repair",
        "--rebuttal",
        s(&k),
        "--reliable",
        s(&k0),
        "--report",
        s(&report),
        "--format",
        "structured",
    ]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["removed"].as_array().unwrap().len(), 0);
}

#[test]
fn parse_error_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.ofn");
    std::fs::write(&bad, "SubClassOf(A\n").unwrap();
    let o = ontorev(&["check", "--rebuttal", s(&bad), "--reliable", s(&fixture("example_reliable.ofn"))]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
}

#[test]
fn missing_vectors_exit_4() {
    let dir = TempDir::new().unwrap();
    let mut args = example_args("repair");
    args.extend(["--vectors".into(), s(&dir.path().join("absent.json")).into()]);
    assert_eq!(code(&run(&args)), 4);

    // A vectors file that lacks an axiom in a conflict.
    let partial = dir.path().join("partial.json");
    std::fs::write(&partial, r#"{"dimension": 2, "vectors": {"SubClassOf(StudentJudge Student)": [1.0, 0.0]}}"#)
        .unwrap();
    let mut args = example_args("repair");
    args.extend(["--vectors".into(), s(&partial).into()]);
    assert_eq!(code(&run(&args)), 4);
}

#[test]
fn grouped_repair_with_step_one() {
    let dir = TempDir::new().unwrap();
    let k = dir.path().join("k.ofn");
    let k0 = dir.path().join("k0.ofn");
    std::fs::write(&k0, "DisjointClasses(X Y)\n").unwrap();
    std::fs::write(&k, "SubClassOf(A X)\nSubClassOf(A Y)\nSubClassOf(B X)\nSubClassOf(B Y)\nSubClassOf(C A)\n")
        .unwrap();
    let out = dir.path().join("fixed.ofn");
    let o = ontorev(&[
        "repair",
        "--rebuttal",
        s(&k),
        "--reliable",
        s(&k0),
        "--strategy",
        "ex-score",
        "--mode",
        "grouped",
        "--step-length",
        "1",
        "--out",
        s(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&ontorev(&["check", "--rebuttal", s(&out), "--reliable", s(&k0)])), 0);
}

#[test]
fn bench_on_empty_corpus_writes_header() {
    let dir = TempDir::new().unwrap();
    let o = ontorev(&["bench", "--corpus", s(dir.path())]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("pair,strategy,metric,mode,step_length,removed_count"));
}

#[test]
fn gen_corpus_is_reproducible_and_benchable() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for d in [&a, &b] {
        let o = ontorev(&["gen-corpus", "--out", s(d.path()), "--seed", "7", "--pairs", "2", "--planted", "3"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    for pair in ["pair_000", "pair_001"] {
        for f in ["rebuttal.ofn", "reliable.ofn", "ground_truth.json"] {
            let x = std::fs::read(a.path().join(pair).join(f)).unwrap();
            let y = std::fs::read(b.path().join(pair).join(f)).unwrap();
            assert_eq!(x, y, "{pair}/{f}");
        }
    }
    let csv = a.path().join("out/bench.csv");
    let o = ontorev(&[
        "bench",
        "--corpus",
        s(a.path()),
        "--strategy",
        "ex-base,reliableOnt",
        "--mode",
        "all-mips,grouped",
        "--step-length",
        "2",
        "--out",
        s(&csv),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 2 * 2);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")), "{text}");
}

#[test]
fn no_planted_conflicts_gives_coherent_pair() {
    let d = TempDir::new().unwrap();
    let o = ontorev(&["gen-corpus", "--out", s(d.path()), "--pairs", "1", "--planted", "0"]);
    assert_eq!(code(&o), 0);
    let p = d.path().join("pair_000");
    let o = ontorev(&["check", "--rebuttal", s(&p.join("rebuttal.ofn")), "--reliable", s(&p.join("reliable.ofn"))]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verbalize_embed_repair_round_trip() {
    let dir = TempDir::new().unwrap();
    let sentences = dir.path().join("sentences.json");
    let vectors = dir.path().join("vectors.json");
    let (k, k0) = (fixture("example_rebuttal.ofn"), fixture("example_reliable.ofn"));
    let o = ontorev(&["verbalize", "--rebuttal", s(&k), "--reliable", s(&k0), "--out", s(&sentences)]);
    assert_eq!(code(&o), 0);
    let map: serde_json::Map<String, serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(&sentences).unwrap()).unwrap();
    assert_eq!(map.len(), 7);
    assert_eq!(map["SubClassOf(StudentJudge Judge)"], "every student judge is a judge");

    let o = ontorev(&["embed-fallback", "--sentences", s(&sentences), "--fallback-dim", "64", "--out", s(&vectors)]);
    assert_eq!(code(&o), 0);
    let o = ontorev(&["repair", "--rebuttal", s(&k), "--reliable", s(&k0), "--vectors", s(&vectors)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn unknown_strategy_is_a_usage_error() {
    let mut args = example_args("repair");
    args.extend(["--strategy".into(), "bogus".into()]);
    assert_eq!(code(&run(&args)), 2);
}

fn structured(o: &Output) -> serde_json::Value {
    assert_eq!(code(o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn explain_counts_planted_conflicts() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&ontorev(&["gen-corpus", "--out", s(d.path()), "--pairs", "1", "--planted", "3", "--seed", "4"])), 0);
    let p = d.path().join("pair_000");
    let v = structured(&ontorev(&[
        "explain",
        "--rebuttal",
        s(&p.join("rebuttal.ofn")),
        "--reliable",
        s(&p.join("reliable.ofn")),
        "--format",
        "structured",
    ]));
    assert_eq!(v["counts"]["unsat_concepts"], 3);
    assert!(v["counts"]["mups_total"].as_u64().unwrap() >= 3);
}

#[test]
fn empty_and_coherent_pairs() {
    let d = TempDir::new().unwrap();
    let empty = d.path().join("empty.ofn");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(code(&ontorev(&["check", "--rebuttal", s(&empty), "--reliable", s(&empty)])), 0);
    let v = structured(&ontorev(&[
        "explain",
        "--rebuttal",
        s(&fixture("example_reliable.ofn")),
        "--reliable",
        s(&empty),
        "--format",
        "structured",
    ]));
    assert_eq!(v["counts"]["unsat_concepts"], 0);
    assert_eq!(v["counts"]["mups_total"], 0);
    assert_eq!(v["counts"]["mips_count"], 0);
}

#[test]
fn bench_is_deterministic_modulo_timing() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&ontorev(&["gen-corpus", "--out", s(d.path()), "--pairs", "3", "--planted", "4", "--seed", "9"])), 0);
    let untimed = || {
        let o = ontorev(&["bench", "--corpus", s(d.path()), "--mode", "all-mips,grouped", "--step-length", "1,3"]);
        assert_eq!(code(&o), 0);
        let text = stdout(&o);
        let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
        let timed: Vec<usize> = header.iter().enumerate().filter(|(_, h)| h.ends_with("_ms")).map(|(i, _)| i).collect();
        assert_eq!(timed.len(), 2);
        text.lines()
            .map(|l| l.split(',').enumerate().filter(|(i, _)| !timed.contains(i)).map(|(_, f)| f).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
    };
    let first = untimed();
    // 3 pairs, 8 strategies, one all-mips row plus two grouped rows each.
    assert_eq!(first.len(), 1 + 3 * 8 * 3);
    assert_eq!(first, untimed());
}
