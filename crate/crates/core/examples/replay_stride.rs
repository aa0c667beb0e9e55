//! Replay a fixed counterexample sequence on the stride program and print
//! every separator and candidate along the way.
//!
//! `cargo run --example replay_stride -- [basic|incremental|refined]`

use numinv::domains::Domain;
use numinv::driver::{run_verification, RunConfig, TeacherSpec};
use numinv::frontend::{parse_system, print_smt2};
use numinv::model::{Counterexample, State};
use numinv::separator::SeparatorKind;

fn st(v: [i64; 3]) -> State {
    State::from_i64(&v)
}

fn main() {
    let kind: SeparatorKind = std::env::args().nth(1).as_deref().unwrap_or("basic").parse().expect("separator kind");
    let sys = parse_system(include_str!("../corpus/stride.ts")).unwrap();
    let script = vec![
        Counterexample::Negative(st([5, 1, 0])),
        Counterexample::Positive(st([2, 0, 0])),
        Counterexample::Implication(st([0, 0, 1]), st([2, 1, 1])),
        Counterexample::Implication(st([2, 0, 1]), st([4, 1, 1])),
        Counterexample::Implication(st([2, 0, 0]), st([6, 0, 0])),
        Counterexample::Negative(st([0, -2, 0])),
        Counterexample::Implication(st([3, 0, 1]), st([5, 1, 1])),
    ];
    let cfg = RunConfig {
        domain: Domain::Poly,
        separator: kind,
        teacher: TeacherSpec::Scripted { script, bound: 8 },
        initial_attributes: false,
        ..RunConfig::default()
    };
    let r = run_verification(&sys, &cfg);
    println!("separators ({kind}):");
    for (i, sep) in r.separators.iter().enumerate() {
        let elems: Vec<String> = sep
            .constraints()
            .iter()
            .map(|cs| {
                let parts: Vec<String> = cs.iter().map(|c| c.display_with(&sys.vars).to_string()).collect();
                format!("{{{}}}", parts.join(", "))
            })
            .collect();
        println!("  S{}: {}", i + 1, elems.join("  "));
    }
    println!("candidates:");
    for (i, j) in r.candidates.iter().enumerate() {
        println!("  {:>2}  {}", i + 1, print_smt2(j, &sys.vars));
    }
    println!("{}  joins {}  pops {}", r.outcome.label(), r.stats.joins, r.stats.pops);
}
