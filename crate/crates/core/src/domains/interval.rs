use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::model::{LinearConstraint, Rel, State};

/// A box: per-variable bounds, `None` meaning unbounded on that side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalElem {
    pub lo: Vec<Option<BigInt>>,
    pub hi: Vec<Option<BigInt>>,
}

fn unit(n: usize, i: usize, sign: i64) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::from(sign);
    v
}

impl IntervalElem {
    pub fn singleton(s: &State) -> Self {
        let b: Vec<Option<BigInt>> = s.values().iter().cloned().map(Some).collect();
        IntervalElem { lo: b.clone(), hi: b }
    }

    pub fn top(n: usize) -> Self {
        IntervalElem { lo: vec![None; n], hi: vec![None; n] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn join(&self, other: &Self) -> Self {
        let lo = self
            .lo
            .iter()
            .zip(&other.lo)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.min(b).clone()),
                _ => None,
            })
            .collect();
        let hi = self
            .hi
            .iter()
            .zip(&other.hi)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.max(b).clone()),
                _ => None,
            })
            .collect();
        IntervalElem { lo, hi }
    }

    pub fn contains(&self, p: &[BigInt]) -> bool {
        p.iter().enumerate().all(|(i, v)| {
            self.lo[i].as_ref().is_none_or(|l| l <= v) && self.hi[i].as_ref().is_none_or(|h| v <= h)
        })
    }

    pub fn leq(&self, other: &Self) -> bool {
        (0..self.dim()).all(|i| {
            let lo_ok = match (&self.lo[i], &other.lo[i]) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(a), Some(b)) => b <= a,
            };
            let hi_ok = match (&self.hi[i], &other.hi[i]) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(a), Some(b)) => a <= b,
            };
            lo_ok && hi_ok
        })
    }

    pub fn constraints(&self) -> Vec<LinearConstraint> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            if let Some(h) = &self.hi[i] {
                out.push(LinearConstraint::le(unit(n, i, 1), h.clone()).unwrap());
            }
            if let Some(l) = &self.lo[i] {
                out.push(LinearConstraint::le(unit(n, i, -1), -l).unwrap());
            }
        }
        out.sort();
        out
    }

    /// Box of a conjunction of unary atoms; `None` if an atom is not unary
    /// or the conjunction is empty over the integers.
    pub fn from_atoms(n: usize, atoms: &[LinearConstraint]) -> Option<Self> {
        let mut e = Self::top(n);
        for c in atoms {
            let mut nz = c.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero());
            let (i, a) = nz.next()?;
            if nz.next().is_some() || !a.abs().is_one() {
                return None;
            }
            let b = c.bound().clone();
            let (upper, lower) = match (c.rel(), a.is_positive()) {
                (Rel::Le, true) => (Some(b), None),
                (Rel::Le, false) => (None, Some(-b)),
                (Rel::Eq, _) => (Some(b.clone()), Some(b)),
            };
            if let Some(u) = upper {
                e.hi[i] = Some(e.hi[i].take().map_or(u.clone(), |h| h.min(u)));
            }
            if let Some(l) = lower {
                e.lo[i] = Some(e.lo[i].take().map_or(l.clone(), |x| x.max(l)));
            }
        }
        let empty = (0..n).any(|i| matches!((&e.lo[i], &e.hi[i]), (Some(l), Some(h)) if l > h));
        (!empty).then_some(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_constraints() {
        let d = IntervalElem::singleton(&State::from_i64(&[1, 2]));
        let mut want = vec![
            LinearConstraint::le_i64(&[1, 0], 1),
            LinearConstraint::ge_i64(&[1, 0], 1),
            LinearConstraint::le_i64(&[0, 1], 2),
            LinearConstraint::ge_i64(&[0, 1], 2),
        ];
        want.sort();
        assert_eq!(d.constraints(), want);
    }

    #[test]
    fn unbounded_sides_omitted() {
        let d = IntervalElem::from_atoms(2, &[LinearConstraint::le_i64(&[1, 0], 3), LinearConstraint::ge_i64(&[1, 0], 1)])
            .unwrap();
        assert_eq!(d.constraints().len(), 2);
        assert!(d.contains(&[BigInt::from(2), BigInt::from(-100)]));
    }

    #[test]
    fn non_unary_rejected() {
        assert!(IntervalElem::from_atoms(2, &[LinearConstraint::le_i64(&[1, 1], 3)]).is_none());
        assert!(IntervalElem::from_atoms(1, &[LinearConstraint::le_i64(&[1], 0), LinearConstraint::ge_i64(&[1], 1)]).is_none());
    }
}
