//! Verify the bundled stride program with polyhedra and the builtin teacher.

use std::time::Duration;

use numinv::domains::Domain;
use numinv::driver::{run_verification, Outcome, RunConfig, TeacherSpec};
use numinv::frontend::{parse_system, smt2::print_smt2};

fn main() {
    let sys = parse_system(include_str!("../corpus/stride.ts")).expect("bundled program parses");
    let cfg = RunConfig {
        domain: Domain::Poly,
        teacher: TeacherSpec::Builtin(8),
        budget: Duration::from_secs(120),
        ..RunConfig::default()
    };
    let r = run_verification(&sys, &cfg);
    for (i, j) in r.candidates.iter().enumerate() {
        println!("{:>3}  {}", i + 1, print_smt2(j, &sys.vars));
    }
    println!("{}", r.outcome.label());
    if let Outcome::Safe(inv) = &r.outcome {
        println!("{}", print_smt2(inv, &sys.vars));
    }
    println!(
        "iterations {}  pool {}  joins {}  pops {}  {:?}",
        r.stats.iterations, r.stats.pool, r.stats.joins, r.stats.pops, r.stats.elapsed
    );
}
