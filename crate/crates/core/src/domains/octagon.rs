use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::model::{LinearConstraint, Rel, State};

type Bound = Option<BigInt>;

fn add(a: &Bound, b: &Bound) -> Bound {
    match (a, b) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    }
}

fn lt(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a < b,
        (Some(_), None) => true,
        (None, _) => false,
    }
}

fn bar(i: usize) -> usize {
    i ^ 1
}

/// Integer octagon as a `2n × 2n` difference-bound matrix.
///
/// Index `2i` stands for `+x_i` and `2i+1` for `-x_i`; entry `m[a][b]`
/// bounds `V_b - V_a`. Elements are kept tightly closed, which makes the
/// matrix canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OctagonElem {
    n: usize,
    m: Vec<Bound>,
}

impl OctagonElem {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, a: usize, b: usize) -> &Bound {
        &self.m[a * 2 * self.n + b]
    }

    fn set_min(&mut self, a: usize, b: usize, v: BigInt) {
        let w = 2 * self.n;
        let slot = &mut self.m[a * w + b];
        if slot.as_ref().is_none_or(|cur| v < *cur) {
            *slot = Some(v);
        }
    }

    fn top(n: usize) -> Self {
        let w = 2 * n;
        let mut m = vec![None; w * w];
        for i in 0..w {
            m[i * w + i] = Some(BigInt::zero());
        }
        OctagonElem { n, m }
    }

    fn value(p: &[BigInt], idx: usize) -> BigInt {
        if idx.is_multiple_of(2) {
            p[idx / 2].clone()
        } else {
            -&p[idx / 2]
        }
    }

    pub fn singleton(s: &State) -> Self {
        let n = s.dim();
        let w = 2 * n;
        let p = s.values();
        let mut m = Vec::with_capacity(w * w);
        for a in 0..w {
            for b in 0..w {
                m.push(Some(Self::value(p, b) - Self::value(p, a)));
            }
        }
        OctagonElem { n, m }
    }

    /// Tight closure; `false` when the octagon has no integer point.
    fn close(&mut self) -> bool {
        let w = 2 * self.n;
        for k in 0..w {
            for i in 0..w {
                let ik = self.m[i * w + k].clone();
                if ik.is_none() {
                    continue;
                }
                for j in 0..w {
                    let through = add(&ik, &self.m[k * w + j]);
                    if lt(&through, &self.m[i * w + j]) {
                        self.m[i * w + j] = through;
                    }
                }
            }
        }
        if (0..w).any(|i| self.m[i * w + i].as_ref().is_some_and(|d| d.is_negative())) {
            return false;
        }
        for i in 0..w {
            if let Some(v) = &self.m[i * w + bar(i)] {
                let two = BigInt::from(2);
                self.m[i * w + bar(i)] = Some(v.div_floor(&two) * two);
            }
        }
        for i in (0..w).step_by(2) {
            if let (Some(a), Some(b)) = (&self.m[i * w + bar(i)], &self.m[bar(i) * w + i]) {
                if (a + b).is_negative() {
                    return false;
                }
            }
        }
        for i in 0..w {
            for j in 0..w {
                let s = add(&self.m[i * w + bar(i)], &self.m[bar(j) * w + j]);
                if let Some(s) = s {
                    let half: BigInt = s / BigInt::from(2);
                    if lt(&Some(half.clone()), &self.m[i * w + j]) {
                        self.m[i * w + j] = Some(half);
                    }
                }
            }
        }
        for i in 0..w {
            self.m[i * w + i] = Some(BigInt::zero());
        }
        true
    }

    pub fn join(&self, other: &Self) -> Self {
        let m = self
            .m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.max(b).clone()),
                _ => None,
            })
            .collect();
        let mut out = OctagonElem { n: self.n, m };
        let ok = out.close();
        debug_assert!(ok);
        out
    }

    pub fn contains(&self, p: &[BigInt]) -> bool {
        let w = 2 * self.n;
        for a in 0..w {
            for b in 0..w {
                if let Some(bound) = &self.m[a * w + b] {
                    if Self::value(p, b) - Self::value(p, a) > *bound {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.m.iter().zip(&other.m).all(|(a, b)| match (a, b) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        })
    }

    /// Every finite off-diagonal entry as a normalized inequality.
    pub fn constraints(&self) -> Vec<LinearConstraint> {
        let w = 2 * self.n;
        let mut out = Vec::new();
        for a in 0..w {
            for b in 0..w {
                if a == b {
                    continue;
                }
                let Some(bound) = &self.m[a * w + b] else { continue };
                let mut coeffs = vec![BigInt::zero(); self.n];
                let sign = |idx: usize| if idx.is_multiple_of(2) { 1 } else { -1 };
                coeffs[b / 2] += sign(b);
                coeffs[a / 2] -= sign(a);
                out.push(LinearConstraint::le(coeffs, bound.clone()).unwrap());
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Octagon of a conjunction of octagonal atoms, or `None` when an atom is
    /// not of the form `±x ± y ⋈ c` / `±x ⋈ c` or there is no integer point.
    pub fn from_atoms(n: usize, atoms: &[LinearConstraint]) -> Option<Self> {
        let mut e = Self::top(n);
        for c in atoms {
            for h in c.as_inequalities() {
                e.add_inequality(&h)?;
            }
            debug_assert!(c.rel() == Rel::Le || c.as_inequalities().len() == 2);
        }
        e.close().then_some(e)
    }

    fn add_inequality(&mut self, c: &LinearConstraint) -> Option<()> {
        let nz: Vec<(usize, &BigInt)> = c.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero()).collect();
        let idx = |i: usize, a: &BigInt| -> Option<usize> {
            if *a == BigInt::from(1) {
                Some(2 * i)
            } else if *a == BigInt::from(-1) {
                Some(2 * i + 1)
            } else {
                None
            }
        };
        match nz.as_slice() {
            // ±x_i ≤ c  as  V_b - V_bar(b) ≤ 2c
            [(i, a)] => {
                let b = idx(*i, a)?;
                self.set_min(bar(b), b, c.bound() * 2);
            }
            // V_p + V_q ≤ c  as  V_q - V_bar(p) ≤ c
            [(i, a), (j, b)] => {
                let p = idx(*i, a)?;
                let q = idx(*j, b)?;
                self.set_min(bar(p), q, c.bound().clone());
                self.set_min(bar(q), p, c.bound().clone());
            }
            _ => return None,
        }
        Some(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn singleton_has_eight_constraints() {
        let d = OctagonElem::singleton(&State::from_i64(&[1, 2]));
        let cs = d.constraints();
        assert_eq!(cs.len(), 8);
        assert!(cs.contains(&LinearConstraint::ge_i64(&[-1, 1], 1)));
        assert!(cs.contains(&LinearConstraint::le_i64(&[1, 1], 3)));
    }

    #[test]
    fn left_box_octagon() {
        let a = OctagonElem::singleton(&State::from_i64(&[1, 1]));
        let b = OctagonElem::singleton(&State::from_i64(&[3, 1]));
        let c = OctagonElem::singleton(&State::from_i64(&[1, 4]));
        let j = a.join(&b).join(&c);
        assert!(j.contains(&pt(&[3, 2])));
        assert!(!j.contains(&pt(&[3, 3])));
        assert!(!j.contains(&pt(&[2, 4])));
        assert!(j.contains(&pt(&[2, 3])));
    }

    #[test]
    fn tightening_rounds_unary_bounds() {
        // x + y ≤ 1 and x - y ≤ 0 give 2x ≤ 1, so x ≤ 0 over the integers.
        let d = OctagonElem::from_atoms(
            2,
            &[LinearConstraint::le_i64(&[1, 1], 1), LinearConstraint::le_i64(&[1, -1], 0)],
        )
        .unwrap();
        assert!(d.constraints().contains(&LinearConstraint::le_i64(&[1, 0], 0)));
    }

    #[test]
    fn integer_empty_detected() {
        // x + y = 1 and x - y = 0 has no integer solution.
        let d = OctagonElem::from_atoms(2, &[LinearConstraint::eq_i64(&[1, 1], 1), LinearConstraint::eq_i64(&[1, -1], 0)]);
        assert!(d.is_none());
    }
}
