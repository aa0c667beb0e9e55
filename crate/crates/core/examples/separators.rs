//! Compare the three separator algorithms on a sample that grows one
//! counterexample at a time.
//!
//! `cargo run --example separators -- [int|oct|poly]`

use numinv::domains::Domain;
use numinv::model::{Counterexample, Sample, State};
use numinv::separator::{
    construct_separator, construct_separator_inc, construct_separator_refined, SeparatorStack, Stats,
};

fn st(x: i64, y: i64) -> State {
    State::from_i64(&[x, y])
}

fn main() {
    let domain: Domain = std::env::args().nth(1).as_deref().unwrap_or("poly").parse().expect("domain");
    let stream = vec![
        Counterexample::Positive(st(1, 1)),
        Counterexample::Positive(st(1, 4)),
        Counterexample::Negative(st(4, 2)),
        Counterexample::Positive(st(3, 1)),
        Counterexample::Positive(st(5, 1)),
        Counterexample::Negative(st(4, 4)),
        Counterexample::Positive(st(6, 4)),
        Counterexample::Implication(st(2, 2), st(2, 3)),
        Counterexample::Negative(st(4, 1)),
        Counterexample::Negative(st(4, 3)),
    ];

    let mut sample = Sample::new();
    let (mut inc_stack, mut ref_stack) = (SeparatorStack::new(), SeparatorStack::new());
    let (mut basic, mut inc, mut refined) = (Stats::default(), Stats::default(), Stats::default());
    for c in stream {
        println!("+ {c:?}");
        sample.add_counterexample(c).expect("consistent stream");
        let b = construct_separator(&sample, domain, &[], &mut basic).unwrap();
        let i = construct_separator_inc(&sample, domain, &mut inc_stack, &[], &mut inc);
        let r = construct_separator_refined(&sample, domain, &mut ref_stack, &[], &mut refined);
        println!("  elements  basic {}  incremental {}  refined {}", b.len(), i.len(), r.len());
    }
    println!("joins     basic {}  incremental {}  refined {}", basic.joins, inc.joins, refined.joins);
    println!("pops      incremental {}  refined {}", inc.pops, refined.pops);
}
