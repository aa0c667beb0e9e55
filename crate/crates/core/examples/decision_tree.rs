//! Learn a decision tree over hand-picked attributes on a small ICE sample.

use numinv::learner::{construct_tree, sufficient, tree_to_formula};
use numinv::model::{Counterexample, LinearConstraint, Sample, State};

fn main() {
    let st = |x: i64, y: i64| State::from_i64(&[x, y]);
    let mut s = Sample::new();
    for (x, y) in [(1, 1), (1, 4), (3, 1), (5, 1), (5, 4), (6, 1), (6, 4)] {
        s.add_counterexample(Counterexample::Positive(st(x, y))).unwrap();
    }
    for y in 1..=4 {
        s.add_counterexample(Counterexample::Negative(st(4, y))).unwrap();
    }
    s.add_counterexample(Counterexample::Implication(st(2, 2), st(2, 3))).unwrap();
    s.add_counterexample(Counterexample::Implication(st(0, 2), st(4, 0))).unwrap();

    let attrs = vec![
        LinearConstraint::ge_i64(&[1, 0], 1),
        LinearConstraint::le_i64(&[1, 0], 3),
        LinearConstraint::ge_i64(&[0, 1], 1),
        LinearConstraint::le_i64(&[0, 1], 4),
        LinearConstraint::ge_i64(&[1, 0], 5),
        LinearConstraint::le_i64(&[1, 0], 6),
    ];
    let (ok, closed) = sufficient(&attrs, &s);
    println!("sufficient: {ok}");
    println!("positives after closing: {}", closed.pos.len());
    let tree = construct_tree(&closed, &attrs, 1.0).expect("sufficient attributes");
    println!("depth {}", tree.depth());
    let names = ["x".to_string(), "y".to_string()];
    println!("{}", numinv::frontend::print_smt2(&tree_to_formula(&tree), &names));
}
