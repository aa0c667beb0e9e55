#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_traits::ToPrimitive;
use numinv::frontend::parse_system;
use numinv::model::{Counterexample, Formula, LinearConstraint, Rel, Sample, State, TranSys};
use rand::seq::SliceRandom;
use rand::Rng;

pub const STRIDE: &str = include_str!("../../corpus/stride.ts");

pub fn stride() -> TranSys {
    parse_system(STRIDE).unwrap()
}

pub fn st(v: &[i64]) -> State {
    State::from_i64(v)
}

/// The counterexamples the stride teacher hands out, in order.
pub fn stride_script() -> Vec<Counterexample> {
    vec![
        Counterexample::Negative(st(&[5, 1, 0])),
        Counterexample::Positive(st(&[2, 0, 0])),
        Counterexample::Implication(st(&[0, 0, 1]), st(&[2, 1, 1])),
        Counterexample::Implication(st(&[2, 0, 1]), st(&[4, 1, 1])),
        Counterexample::Implication(st(&[2, 0, 0]), st(&[6, 0, 0])),
        Counterexample::Negative(st(&[0, -2, 0])),
        Counterexample::Implication(st(&[3, 0, 1]), st(&[5, 1, 1])),
    ]
}

pub fn sample(pos: &[&[i64]], neg: &[&[i64]], imp: &[(&[i64], &[i64])]) -> Sample {
    let mut s = Sample::new();
    for p in pos {
        s.add_counterexample(Counterexample::Positive(st(p))).unwrap();
    }
    for n in neg {
        s.add_counterexample(Counterexample::Negative(st(n))).unwrap();
    }
    for (a, b) in imp {
        s.add_counterexample(Counterexample::Implication(st(a), st(b))).unwrap();
    }
    s
}

/// The sample of the two-box example.
pub fn boxes_sample() -> Sample {
    sample(
        &[&[1, 1], &[1, 4], &[3, 1], &[5, 1], &[5, 4], &[6, 1], &[6, 4]],
        &[&[4, 1], &[4, 2], &[4, 3], &[4, 4]],
        &[(&[2, 2], &[2, 3]), (&[0, 2], &[4, 0])],
    )
}

/// A formula compiled to machine integers, evaluated without allocation.
pub enum F64 {
    And(Vec<F64>),
    Or(Vec<F64>),
    Not(Box<F64>),
    Atom(Vec<i64>, i64, bool),
}

impl F64 {
    pub fn new(f: &Formula) -> F64 {
        match f {
            Formula::And(fs) => F64::And(fs.iter().map(F64::new).collect()),
            Formula::Or(fs) => F64::Or(fs.iter().map(F64::new).collect()),
            Formula::Not(g) => F64::Not(Box::new(F64::new(g))),
            Formula::Atom(c) => F64::Atom(
                c.coeffs().iter().map(|k| k.to_i64().unwrap()).collect(),
                c.bound().to_i64().unwrap(),
                c.rel() == Rel::Eq,
            ),
        }
    }

    pub fn eval(&self, x: &[i64]) -> bool {
        match self {
            F64::And(fs) => fs.iter().all(|f| f.eval(x)),
            F64::Or(fs) => fs.iter().any(|f| f.eval(x)),
            F64::Not(f) => !f.eval(x),
            F64::Atom(a, b, eq) => {
                let l: i64 = a.iter().zip(x).map(|(a, x)| a * x).sum();
                if *eq {
                    l == *b
                } else {
                    l <= *b
                }
            }
        }
    }
}

pub fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (lo..=hi).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Explores the states reachable inside `[-b, b]^n` breadth first and
/// reports a reachable state violating `Good`, if any.
pub fn reachable_bad(sys: &TranSys, b: i64) -> Option<Vec<i64>> {
    let n = sys.dim();
    let init = F64::new(&sys.init);
    let trans = F64::new(&sys.trans);
    let good = F64::new(&sys.good);
    let boxed = grid(n, -b, b);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for s in boxed.iter().filter(|s| init.eval(s)) {
        seen.insert(s.clone());
        queue.push_back(s.clone());
    }
    let mut pair = vec![0i64; 2 * n];
    while let Some(s) = queue.pop_front() {
        if !good.eval(&s) {
            return Some(s);
        }
        pair[..n].copy_from_slice(&s);
        for t in &boxed {
            pair[n..].copy_from_slice(t);
            if trans.eval(&pair) && seen.insert(t.clone()) {
                queue.push_back(t.clone());
            }
        }
    }
    None
}

/// `inv` is initiated, adequate and consecutive on every state of the box.
pub fn inductive_in_box(sys: &TranSys, inv: &Formula, b: i64) -> bool {
    let n = sys.dim();
    let init = F64::new(&sys.init);
    let trans = F64::new(&sys.trans);
    let good = F64::new(&sys.good);
    let j = F64::new(inv);
    let boxed = grid(n, -b, b);
    let mut pair = vec![0i64; 2 * n];
    for s in &boxed {
        let js = j.eval(s);
        if init.eval(s) && !js {
            return false;
        }
        if !js {
            continue;
        }
        if !good.eval(s) {
            return false;
        }
        pair[..n].copy_from_slice(s);
        for t in &boxed {
            pair[n..].copy_from_slice(t);
            if trans.eval(&pair) && !j.eval(t) {
                return false;
            }
        }
    }
    true
}

/// A random sample that a hidden classifier labels consistently: the
/// hidden rule is a random half-space or a random union of two of them.
pub fn random_consistent_sample(rng: &mut impl Rng, n: usize) -> (Sample, Vec<Counterexample>) {
    let planes: Vec<(Vec<i64>, i64)> =
        (0..2).map(|_| ((0..n).map(|_| rng.gen_range(-2..=2)).collect(), rng.gen_range(-3..=3))).collect();
    let two = rng.gen_bool(0.5);
    let label = |p: &[i64]| {
        let side = |(a, b): &(Vec<i64>, i64)| a.iter().zip(p).map(|(a, x)| a * x).sum::<i64>() <= *b;
        side(&planes[0]) || (two && side(&planes[1]))
    };
    let point = |rng: &mut dyn rand::RngCore| -> Vec<i64> { (0..n).map(|_| rng.gen_range(-5..=5)).collect() };
    let mut cexs = Vec::new();
    let (mut np, mut nn, mut ni) = (0, 0, 0);
    let (maxp, maxn, maxi) = (rng.gen_range(1..=20), rng.gen_range(0..=15), rng.gen_range(0..=10));
    let mut tries = 0;
    while (np < maxp || nn < maxn || ni < maxi) && tries < 2000 {
        tries += 1;
        let p = point(rng);
        match rng.gen_range(0..3) {
            0 if np < maxp && label(&p) => {
                np += 1;
                cexs.push(Counterexample::Positive(State::from_i64(&p)));
            }
            1 if nn < maxn && !label(&p) => {
                nn += 1;
                cexs.push(Counterexample::Negative(State::from_i64(&p)));
            }
            2 if ni < maxi => {
                let q = point(rng);
                if !(label(&p) && !label(&q)) {
                    ni += 1;
                    cexs.push(Counterexample::Implication(State::from_i64(&p), State::from_i64(&q)));
                }
            }
            _ => {}
        }
    }
    cexs.shuffle(rng);
    let mut s = Sample::new();
    for c in &cexs {
        s.add_counterexample(c.clone()).expect("hidden rule keeps the sample consistent");
    }
    (s, cexs)
}

pub fn sorted(mut v: Vec<LinearConstraint>) -> Vec<LinearConstraint> {
    v.sort();
    v.dedup();
    v
}
