//! Lexicographically least integer solutions inside a box.
//!
//! A query is a disjunction of cubes (conjunctions of linear atoms) plus an
//! optional residual formula that is only evaluated on complete
//! assignments. Each cube is explored depth first in variable order, with
//! bound propagation on its rows pruning the search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::model::{Cube, Formula, LinearConstraint, Rel};

/// `a·x ≤ b`, or `a·x = b` when `eq`.
struct Row {
    a: Vec<(usize, i128)>,
    b: i128,
    eq: bool,
}

impl Row {
    fn from_atom(c: &LinearConstraint) -> Option<Row> {
        let mut a = Vec::new();
        for (i, k) in c.coeffs().iter().enumerate() {
            let k = i128::from(k.to_i64()?);
            if k != 0 {
                a.push((i, k));
            }
        }
        Some(Row { a, b: i128::from(c.bound().to_i64()?), eq: c.rel() == Rel::Eq })
    }
}

struct Cx<'a> {
    rows: Vec<Row>,
    /// Atoms whose coefficients overflow, checked at leaves.
    wide: Vec<&'a LinearConstraint>,
    residual: Option<&'a Formula>,
}

/// Tighten `[lo, hi]` against `a·x ≤ b`. False when infeasible.
fn tighten_le(a: &[(usize, i128)], b: i128, sign: i128, lo: &mut [i128], hi: &mut [i128], changed: &mut bool) -> bool {
    let term_min = |i: usize, k: i128, lo: &[i128], hi: &[i128]| (k * lo[i]).min(k * hi[i]);
    let min: i128 = a.iter().map(|&(i, k)| term_min(i, sign * k, lo, hi)).sum();
    let b = sign * b;
    if min > b {
        return false;
    }
    for &(i, k) in a {
        let k = sign * k;
        let slack = b - (min - term_min(i, k, lo, hi));
        if k > 0 {
            let ub = Integer::div_floor(&slack, &k);
            if ub < hi[i] {
                hi[i] = ub;
                *changed = true;
            }
        } else {
            let lb = Integer::div_ceil(&slack, &k);
            if lb > lo[i] {
                lo[i] = lb;
                *changed = true;
            }
        }
        if lo[i] > hi[i] {
            return false;
        }
    }
    true
}

fn propagate(rows: &[Row], lo: &mut [i128], hi: &mut [i128]) -> bool {
    loop {
        let mut changed = false;
        for r in rows {
            if !tighten_le(&r.a, r.b, 1, lo, hi, &mut changed) {
                return false;
            }
            if r.eq && !tighten_le(&r.a, r.b, -1, lo, hi, &mut changed) {
                return false;
            }
        }
        if !changed {
            return true;
        }
    }
}

fn leaf_ok(cx: &Cx, x: &[i128]) -> bool {
    if cx.wide.is_empty() && cx.residual.is_none() {
        return true;
    }
    let v: Vec<BigInt> = x.iter().map(|&k| BigInt::from(k)).collect();
    cx.wide.iter().all(|c| c.holds(&v)) && cx.residual.is_none_or(|f| f.eval(&v).unwrap_or(false))
}

fn dfs(cx: &Cx, mut lo: Vec<i128>, mut hi: Vec<i128>, best: &Option<Vec<i128>>) -> Option<Vec<i128>> {
    if !propagate(&cx.rows, &mut lo, &mut hi) {
        return None;
    }
    if best.as_ref().is_some_and(|b| lo >= *b) {
        return None;
    }
    let Some(k) = (0..lo.len()).find(|&i| lo[i] < hi[i]) else {
        return leaf_ok(cx, &lo).then_some(lo);
    };
    for v in lo[k]..=hi[k] {
        let mut l = lo.clone();
        let mut h = hi.clone();
        l[k] = v;
        h[k] = v;
        if best.as_ref().is_some_and(|b| l >= *b) {
            break;
        }
        if let Some(found) = dfs(cx, l, h, best) {
            return Some(found);
        }
    }
    None
}

/// The lexicographically least point of `[-bound, bound]^m` satisfying some
/// cube and the residual formula.
pub fn lex_min(cubes: &[Cube], residual: Option<&Formula>, m: usize, bound: i64) -> Option<Vec<BigInt>> {
    let mut best: Option<Vec<i128>> = None;
    for cube in cubes {
        let mut rows = Vec::new();
        let mut wide = Vec::new();
        for c in cube {
            match Row::from_atom(c) {
                Some(r) => rows.push(r),
                None => wide.push(c),
            }
        }
        let cx = Cx { rows, wide, residual };
        let lo = vec![-(bound as i128); m];
        let hi = vec![bound as i128; m];
        if let Some(x) = dfs(&cx, lo, hi, &best) {
            best = Some(x);
        }
    }
    best.map(|x| x.into_iter().map(BigInt::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(cubes: &[Cube], m: usize, bound: i64) -> Option<Vec<BigInt>> {
        let side = (2 * bound + 1) as usize;
        let total = side.pow(m as u32);
        (0..total)
            .map(|mut k| {
                let mut v = vec![0i64; m];
                for i in (0..m).rev() {
                    v[i] = (k % side) as i64 - bound;
                    k /= side;
                }
                v.into_iter().map(BigInt::from).collect::<Vec<_>>()
            })
            .find(|v| cubes.iter().any(|c| c.iter().all(|a| a.holds(v))))
    }

    #[test]
    fn matches_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let m = rng.gen_range(1..=3);
            let ncubes = rng.gen_range(1..=3);
            let cubes: Vec<Cube> = (0..ncubes)
                .map(|_| {
                    (0..rng.gen_range(1..=3))
                        .map(|_| {
                            let a: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
                            let b = rng.gen_range(-6..=6);
                            if rng.gen_bool(0.3) {
                                LinearConstraint::new(
                                    a.iter().map(|&k| BigInt::from(k)).collect(),
                                    Rel::Eq,
                                    BigInt::from(b),
                                )
                            } else {
                                LinearConstraint::le(a.iter().map(|&k| BigInt::from(k)).collect(), BigInt::from(b))
                            }
                        })
                        .filter_map(|n| match n {
                            crate::model::Normalized::Atom(c) => Some(c),
                            crate::model::Normalized::Const(_) => None,
                        })
                        .collect()
                })
                .collect();
            assert_eq!(lex_min(&cubes, None, m, 4), naive(&cubes, m, 4), "{cubes:?}");
        }
    }

    #[test]
    fn residual_checked_at_leaves() {
        let f = Formula::atom(LinearConstraint::ge_i64(&[1], 2));
        let got = lex_min(&[vec![]], Some(&f), 1, 5).unwrap();
        assert_eq!(got, vec![BigInt::from(2)]);
    }
}
