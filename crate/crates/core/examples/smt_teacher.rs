//! Check a few candidate invariants of the stride program with an external
//! SMT solver.
//!
//! `cargo run --example smt_teacher -- "z3 -in"`

use std::time::Duration;

use numinv::frontend::{parse_formula, parse_system};
use numinv::teacher::{SmtTeacher, Teacher};

fn main() {
    let cmd = std::env::args().nth(1).unwrap_or_else(|| "z3 -in".into());
    let sys = parse_system(include_str!("../corpus/stride.ts")).unwrap();
    let mut teacher = SmtTeacher::new(cmd, Duration::from_secs(10));
    for text in [
        "true",
        "(= k 0)",
        "(= j (+ (* 2 k) 2))",
        "(or (and (= t 0) (= k 0)) (and (not (= t 0)) (= j (+ (* 2 k) 2))))",
    ] {
        let j = parse_formula(text, &sys.vars).unwrap();
        match teacher.check(&sys, &j) {
            Ok(v) => println!("{text}\n    {v:?}"),
            Err(e) => {
                eprintln!("{e}");
                std::process::exit(1);
            }
        }
    }
}
