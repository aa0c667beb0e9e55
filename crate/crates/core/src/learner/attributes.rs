use num_bigint::BigInt;
use num_traits::Zero;

use crate::model::{LinearConstraint, TranSys};

/// Atoms of the specification and the program: `Good`, then `Init`, then the
/// atoms of `Trans` that mention unprimed variables only.
pub fn initial_attributes(sys: &TranSys) -> Vec<LinearConstraint> {
    let n = sys.dim();
    let mut out: Vec<LinearConstraint> = Vec::new();
    out.extend(sys.good.atoms().into_iter().cloned());
    out.extend(sys.init.atoms().into_iter().cloned());
    out.extend(sys.trans.atoms().into_iter().filter_map(|c| c.restrict(0, n)));
    out
}

/// Two atoms describe the same split of `Z^n` when they are equal or one is
/// the integer complement of the other (`x ≤ 0` versus `x ≥ 1`).
pub fn same_split(a: &LinearConstraint, b: &LinearConstraint) -> bool {
    a == b || a.complement().is_some_and(|c| c == *b)
}

/// Drop later atoms that split the state space like an earlier one.
pub fn dedup(attrs: Vec<LinearConstraint>) -> Vec<LinearConstraint> {
    let mut out: Vec<LinearConstraint> = Vec::with_capacity(attrs.len());
    for a in attrs {
        if !out.iter().any(|b| same_split(b, &a)) {
            out.push(a);
        }
    }
    out
}

/// All octagonal atoms `±x ± y ≤ α` and `±x ≤ α` with `|α| ≤ c`.
pub fn octagon_templates(n: usize, c: i64) -> Vec<LinearConstraint> {
    let mut forms: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(s);
            forms.push(v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![BigInt::zero(); n];
                v[i] = BigInt::from(si);
                v[j] = BigInt::from(sj);
                forms.push(v);
            }
        }
    }
    let mut out = Vec::new();
    for f in &forms {
        for a in -c..=c {
            out.push(LinearConstraint::le(f.clone(), BigInt::from(a)).unwrap());
        }
    }
    dedup(out)
}
