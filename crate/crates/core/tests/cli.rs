use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn numinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numinv")).args(args).output().unwrap()
}

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn safe_program_prints_invariant() {
    let o = numinv(&["verify", &corpus("stride.ts"), "--teacher", "builtin:8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("SAFE"));
    let inv = lines.next().unwrap();
    assert!(inv.contains('j') && inv.contains('k'), "{inv}");
    assert!(stderr(&o).contains("bounded box"));
}

#[test]
fn unsafe_program_reports_bad_state() {
    let o = numinv(&["verify", &corpus("overflow.ts")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "UNSAFE");
    assert!(stderr(&o).contains("(6)"), "{}", stderr(&o));
}

#[test]
fn iteration_cap_is_unknown() {
    let o = numinv(&["verify", &corpus("stride.ts"), "--max-iters", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).trim(), "UNKNOWN");
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(numinv(&["verify", "/nonexistent/file.ts"]).status.code(), Some(3));
    assert_eq!(numinv(&["verify", &corpus("stride.ts"), "--domain", "cube"]).status.code(), Some(3));
    assert_eq!(numinv(&["verify", &corpus("stride.ts"), "--domain", "all"]).status.code(), Some(3));
    assert_eq!(numinv(&["verify", &corpus("stride.ts"), "--teacher", "oracle"]).status.code(), Some(3));
    assert_eq!(numinv(&["verify", &corpus("stride.ts"), "--attrs", "templates"]).status.code(), Some(3));
    assert_eq!(numinv(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn parse_error_has_position() {
    let dir = tempfile::tempdir().unwrap();
    let f: PathBuf = dir.path().join("bad.ts");
    std::fs::write(&f, "(declare-var x Int)\n(init (= y 0))\n(trans (= x' x))\n(good true)\n").unwrap();
    let o = numinv(&["verify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("bad.ts:2:10:"), "{err}");
}

#[test]
fn bench_marks_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("counter.ts"), dir.path().join("counter.ts")).unwrap();
    std::fs::write(dir.path().join("broken.ts"), "(declare-var x Int)\n(init (= x 0)\n").unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let csv = dir.path().join("out.csv");
    let o = numinv(&["bench", dir.path().to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "solved 1 safe / 0 unsafe / total 2");
    let table = std::fs::read_to_string(csv).unwrap();
    let rows: Vec<&str> = table.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("broken,ERROR,"));
    assert!(rows[2].starts_with("counter,SAFE,"));
}

#[test]
fn bench_all_domains() {
    let o = numinv(&["bench", &corpus(""), "--domain", "all", "--jobs", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("name,outcome,iterations,pool,elapsed_ms,domain,separator\n"));
    assert_eq!(out.lines().last(), Some("solved 24 safe / 6 unsafe / total 30"));
    for d in ["int", "oct", "poly"] {
        assert_eq!(out.lines().filter(|l| l.ends_with(&format!(",{d},incremental"))).count(), 10);
    }
}
