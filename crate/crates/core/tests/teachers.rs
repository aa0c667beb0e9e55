mod common;

use std::path::Path;
use std::process::Command;
use std::time::Duration;

use common::*;
use numinv::bench::{corpus_files, expected_outcome};
use numinv::driver::{run_verification, Outcome, RunConfig, TeacherSpec};
use numinv::frontend::parse_system;
use num_bigint::BigInt;
use numinv::model::{Counterexample, Formula, LinearConstraint, Rel, TranSys};
use numinv::teacher::{
    builtin_check, is_genuine, naive_check, ScriptedTeacher, SmtSession, SmtTeacher, Teacher, TeacherError, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<(String, String, TranSys)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    corpus_files(&dir)
        .unwrap()
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let sys = parse_system(&text).unwrap();
            (p.file_stem().unwrap().to_string_lossy().into_owned(), text, sys)
        })
        .collect()
}

fn random_formula(rng: &mut impl Rng, n: usize) -> Formula {
    let atom = |rng: &mut dyn rand::RngCore| {
        let a: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect();
        let b = BigInt::from(rng.gen_range(-4..=4));
        let rel = if rng.gen_bool(0.3) { Rel::Eq } else { Rel::Le };
        LinearConstraint::new(a, rel, b).into_formula()
    };
    let cubes = (0..rng.gen_range(1..=2)).map(|_| Formula::and((0..rng.gen_range(1..=3)).map(|_| atom(rng)).collect()));
    Formula::or(cubes.collect())
}

#[test]
fn builtin_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, _, sys) in corpus().into_iter().filter(|(_, _, s)| s.dim() <= 3) {
        let mut candidates: Vec<Formula> = (0..15).map(|_| random_formula(&mut rng, sys.dim())).collect();
        let run = run_verification(&sys, &RunConfig { teacher: TeacherSpec::Builtin(3), ..RunConfig::default() });
        candidates.extend(run.candidates);
        for j in &candidates {
            let fast = builtin_check(&sys, j, 3);
            assert_eq!(fast, naive_check(&sys, j, 3), "{name}: {j:?}");
            if let Verdict::Cex(c) = &fast {
                assert!(is_genuine(&sys, j, c));
            }
        }
    }
}

#[test]
fn scripted_teacher_rejects_spurious_script() {
    let sys = stride();
    let mut t = ScriptedTeacher::new([Counterexample::Negative(st(&[0, 0, 0]))], 4);
    let r = t.check(&sys, &Formula::tt());
    assert!(matches!(r, Err(TeacherError::ScriptMismatch(_))), "{r:?}");

    let mut t = ScriptedTeacher::new(stride_script(), 4);
    assert!(matches!(t.check(&sys, &Formula::tt()), Ok(Verdict::Cex(Counterexample::Negative(_)))));
    assert_eq!(t.remaining(), 6);
}

fn z3() -> bool {
    Command::new("z3").arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn smt_teacher_on_corpus() {
    if !z3() {
        eprintln!("z3 not found, skipping");
        return;
    }
    let spec: TeacherSpec = "smt:z3 -in".parse().unwrap();
    for (name, text, sys) in corpus() {
        let r = run_verification(&sys, &RunConfig { teacher: spec.clone(), ..RunConfig::default() });
        assert_eq!(Some(r.outcome.label().to_string()), expected_outcome(&text), "{name}: {:?}", r.outcome);
        assert!(!r.bounded);
        let mut t = SmtTeacher::new("z3 -in", Duration::from_secs(10));
        for j in &r.candidates[..r.candidates.len() - 1] {
            match t.check(&sys, j).unwrap() {
                Verdict::Cex(c) => assert!(is_genuine(&sys, j, &c), "{name}: {c:?}"),
                Verdict::Valid => assert!(matches!(r.outcome, Outcome::Unsafe(_)), "{name}: early valid candidate"),
            }
        }
    }
}

#[test]
fn smt_confirms_builtin_invariant() {
    if !z3() {
        return;
    }
    let sys = stride();
    let r = run_verification(&sys, &RunConfig { teacher: TeacherSpec::Builtin(8), ..RunConfig::default() });
    let Outcome::Safe(inv) = r.outcome else { panic!() };
    let mut t = SmtTeacher::new("z3 -in", Duration::from_secs(10));
    assert_eq!(t.check(&sys, &inv).unwrap(), Verdict::Valid);
}

#[test]
fn unresponsive_solver_times_out() {
    let mut s = SmtSession::spawn("sleep 5", Duration::from_millis(200)).unwrap();
    assert!(matches!(s.query("(< 0 1)"), Err(TeacherError::Timeout(_))));
    let mut t = SmtTeacher::new("/nonexistent/solver", Duration::from_secs(1));
    assert!(matches!(t.check(&stride(), &Formula::tt()), Err(TeacherError::Solver(_))));
}
