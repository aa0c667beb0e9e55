use num_bigint::BigInt;

use super::search::lex_min;
use super::{Teacher, TeacherError, Verdict};
use crate::model::{Counterexample, Cube, Formula, State, TranSys};

/// Largest DNF expanded for the box search; conjuncts beyond it are only
/// evaluated on complete assignments.
pub const DNF_CAP: usize = 4096;

fn solve(parts: &[Formula], m: usize, bound: i64) -> Option<Vec<BigInt>> {
    let mut cubes: Vec<Cube> = vec![Vec::new()];
    let mut rest = Vec::new();
    for p in parts {
        match p.dnf(DNF_CAP) {
            Some(d) if cubes.len() * d.len() <= DNF_CAP => {
                cubes = cubes
                    .iter()
                    .flat_map(|a| d.iter().map(move |b| a.iter().chain(b).cloned().collect()))
                    .collect();
            }
            _ => rest.push(p.clone()),
        }
    }
    let residual = (!rest.is_empty()).then(|| Formula::and(rest));
    lex_min(&cubes, residual.as_ref(), m, bound)
}

fn split(v: Vec<BigInt>, n: usize) -> (State, State) {
    let mut v = v;
    let t = v.split_off(n);
    (State::new(v), State::new(t))
}

/// Check `j` on the box `[-bound, bound]^n` and return the lexicographically
/// least witness of the first violated condition. For implications the
/// order is over the pair `(s, s')`.
pub fn builtin_check(sys: &TranSys, j: &Formula, bound: i64) -> Verdict {
    let n = sys.dim();
    let not_j = Formula::negate(j.clone());
    if let Some(s) = solve(&[sys.init.clone(), not_j.clone()], n, bound) {
        return Verdict::Cex(Counterexample::Positive(State::new(s)));
    }
    if let Some(s) = solve(&[j.clone(), Formula::negate(sys.good.clone())], n, bound) {
        return Verdict::Cex(Counterexample::Negative(State::new(s)));
    }
    let parts = [sys.trans.clone(), j.unprimed(n), not_j.primed(n)];
    if let Some(v) = solve(&parts, 2 * n, bound) {
        let (s, t) = split(v, n);
        return Verdict::Cex(Counterexample::Implication(s, t));
    }
    Verdict::Valid
}

fn box_states(n: usize, bound: i64) -> impl Iterator<Item = State> {
    let side = (2 * bound + 1) as u64;
    let total = side.pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0i64; n];
        for x in v.iter_mut().rev() {
            *x = (k % side) as i64 - bound;
            k /= side;
        }
        State::from_i64(&v)
    })
}

/// Plain enumeration with the same contract as [`builtin_check`]; meant
/// for cross-checking on small boxes.
pub fn naive_check(sys: &TranSys, j: &Formula, bound: i64) -> Verdict {
    let n = sys.dim();
    let holds = |s: &State| j.eval(s.values()).unwrap_or(false);
    if let Some(s) = box_states(n, bound).find(|s| sys.is_initial(s) && !holds(s)) {
        return Verdict::Cex(Counterexample::Positive(s));
    }
    if let Some(s) = box_states(n, bound).find(|s| holds(s) && !sys.is_good(s)) {
        return Verdict::Cex(Counterexample::Negative(s));
    }
    for s in box_states(n, bound).filter(|s| holds(s)) {
        if let Some(t) = box_states(n, bound).find(|t| sys.is_transition(&s, t) && !holds(t)) {
            return Verdict::Cex(Counterexample::Implication(s, t));
        }
    }
    Verdict::Valid
}

/// Teacher backed by [`builtin_check`].
#[derive(Clone, Copy, Debug)]
pub struct BuiltinTeacher {
    pub bound: i64,
}

impl Teacher for BuiltinTeacher {
    fn check(&mut self, sys: &TranSys, j: &Formula) -> Result<Verdict, TeacherError> {
        Ok(builtin_check(sys, j, self.bound))
    }

    fn is_bounded(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_formula, parse_system};
    use crate::teacher::is_genuine;

    const STRIDE: &str = include_str!("../../corpus/stride.ts");

    fn one_var(good: &str) -> TranSys {
        parse_system(&format!("(declare-var x Int) (init (= x 0)) (trans (= x' x)) (good {good})")).unwrap()
    }

    #[test]
    fn valid_inside_box() {
        let sys = one_var("(>= x 0)");
        let j = parse_formula("(>= x 0)", &sys.vars).unwrap();
        assert_eq!(builtin_check(&sys, &j, 5), Verdict::Valid);
    }

    #[test]
    fn least_negative() {
        let sys = one_var("(>= x 1)");
        assert_eq!(
            builtin_check(&sys, &Formula::tt(), 5),
            Verdict::Cex(Counterexample::Negative(State::from_i64(&[-5])))
        );
    }

    #[test]
    fn stride_implication() {
        let sys = parse_system(STRIDE).unwrap();
        let j = parse_formula("(= k 0)", &sys.vars).unwrap();
        let v = builtin_check(&sys, &j, 6);
        let Verdict::Cex(c @ Counterexample::Implication(..)) = &v else { panic!("{v:?}") };
        assert!(is_genuine(&sys, &j, c));
        assert_eq!(v, naive_check(&sys, &j, 6));
    }

    #[test]
    fn agrees_with_enumeration_on_stride_candidates() {
        let sys = parse_system(STRIDE).unwrap();
        for text in [
            "true",
            "false",
            "(and (= j 2) (= k 0))",
            "(= j (+ (* 2 k) 2))",
            "(or (and (= t 0) (<= 2 j) (= k 0)) (and (not (= t 0)) (<= 2 j) (= j (+ (* 2 k) 2))))",
        ] {
            let j = parse_formula(text, &sys.vars).unwrap();
            assert_eq!(builtin_check(&sys, &j, 4), naive_check(&sys, &j, 4), "{text}");
        }
    }
}
