use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathpuzzle"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn gen_is_deterministic_in_seed() {
    let dir = TempDir::new().unwrap();
    let args = [
        "gen",
        "1in3",
        "--variables",
        "4",
        "--clauses",
        "2",
        "--seed",
        "7",
    ];
    let a = run(dir.path(), &args);
    let b = run(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("p1in3 4 2\n"));
    assert!(stderr(&a).starts_with("digest "));
}

#[test]
fn gen_refuses_impossible_sizes() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["gen", "3dm", "--size", "2", "--extra", "9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["gen", "lo", "--intervals", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--horizon"));
}

#[test]
fn count_and_solve_single_clause() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.txt", "p1in3 3 1\n1 2 3\n");
    let o = run(dir.path(), &["count", "--in", "f.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
    let o = run(dir.path(), &["solve", "--in", "f.txt", "--out", "s.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let sols = fs::read_to_string(dir.path().join("s.txt")).unwrap();
    assert_eq!(sols.matches("assign 3").count(), 3);
}

#[test]
fn count_puzzle_reports_nodes_on_stderr() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        &[
            "gen", "pp", "--rows", "3", "--cols", "3", "--seed", "2", "--out", "p.txt",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let o = run(dir.path(), &["count", "--in", "p.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("nodes "));
    let n: u64 = stdout(&o).trim().parse().unwrap();
    assert!(n >= 1);
    let p = run(dir.path(), &["count", "--in", "p.txt", "--paranoid"]);
    assert_eq!(stdout(&p), stdout(&o));
}

#[test]
fn format_flag_checks_the_input_kind() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.txt", "p1in3 3 1\n1 2 3\n");
    let o = run(dir.path(), &["count", "--in", "f.txt", "--format", "pp"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["count", "--in", "f.txt", "--format", "1in3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_accepts_and_rejects() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.txt", "p1in3 3 1\n1 2 3\n");
    write(dir.path(), "good.txt", "assign 3\n0 1 0\n");
    write(dir.path(), "bad.txt", "assign 3\n1 1 0\n");
    let o = run(
        dir.path(),
        &["verify", "--in", "f.txt", "--solution", "good.txt"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid\n");
    let o = run(
        dir.path(),
        &["verify", "--in", "f.txt", "--solution", "bad.txt"],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(!stdout(&o).is_empty());
}

#[test]
fn reduce_lift_project_round_trip() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.txt", "p1in3 3 1\n1 2 3\n");
    write(dir.path(), "a.txt", "assign 3\n0 0 1\n");
    let o = run(
        dir.path(),
        &[
            "reduce", "--stage", "sat-3dm", "--in", "f.txt", "--out", "g.txt", "--trace", "t.txt",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(fs::read_to_string(dir.path().join("g.txt"))
        .unwrap()
        .starts_with("3dm "));
    assert!(!fs::read_to_string(dir.path().join("t.txt"))
        .unwrap()
        .is_empty());

    let o = run(
        dir.path(),
        &[
            "lift",
            "--stage",
            "sat-3dm",
            "--in",
            "f.txt",
            "--solution",
            "a.txt",
            "--out",
            "m.txt",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(
        dir.path(),
        &["verify", "--in", "g.txt", "--solution", "m.txt"],
    );
    assert_eq!(o.status.code(), Some(0));
    let o = run(
        dir.path(),
        &[
            "project",
            "--stage",
            "sat-3dm",
            "--in",
            "f.txt",
            "--solution",
            "m.txt",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "assign 3\n0 0 1\n");
}

#[test]
fn reduce_with_wrong_stage_is_input_error() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.txt", "p1in3 3 1\n1 2 3\n");
    let o = run(dir.path(), &["reduce", "--stage", "lo-pp", "--in", "f.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["reduce", "--in", "f.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--stage"));
}

#[test]
fn complete_fills_every_row_label() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "l.txt", "lo 1 3\n1\n0 1 0\n");
    let o = run(
        dir.path(),
        &[
            "reduce",
            "--stage",
            "lo-pp",
            "--complete",
            "--in",
            "l.txt",
            "--out",
            "p.txt",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("p.txt")).unwrap();
    let labels: Vec<&str> = text
        .lines()
        .skip(2)
        .flat_map(|l| l.split_whitespace().skip(1))
        .collect();
    assert!(!labels.is_empty());
    assert!(labels.iter().all(|t| *t != "-"), "{text}");
    let o = run(
        dir.path(),
        &[
            "reduce",
            "--stage",
            "sat-3dm",
            "--complete",
            "--in",
            "l.txt",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_parsimony_exit_codes() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.txt", "p1in3 3 1\n1 2 3\n");
    let o = run(
        dir.path(),
        &["check-parsimony", "--stage", "sat-3dm", "--in", "f.txt"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict equal\n"));
    let o = run(
        dir.path(),
        &[
            "check-parsimony",
            "--stage",
            "sat-3dm",
            "--in",
            "f.txt",
            "--cap",
            "sat=2",
        ],
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("verdict oracle-cap\n"));
    let o = run(
        dir.path(),
        &[
            "check-parsimony",
            "--stage",
            "sat-3dm",
            "--in",
            "f.txt",
            "--cap",
            "bogus=1",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn chain_writes_instances_and_reports() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "f.txt", "p1in3 3 1\n1 2 3\n");
    let o = run(
        dir.path(),
        &[
            "chain", "--in", "f.txt", "--stage", "sat-3dm", "--out", "run",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(dir.path().join("run/00-1in3.txt").exists());
    assert!(dir.path().join("run/01-3dm.txt").exists());
    assert!(dir.path().join("run/01-sat-3dm.trace").exists());
    assert_eq!(stdout(&o).matches("verdict equal").count(), 1);
}

#[test]
fn missing_input_file_is_input_error() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["count", "--in", "absent.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("absent.txt"));
}
