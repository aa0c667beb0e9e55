//! Double description for polyhedral cones, in exact integer arithmetic.
//!
//! [`cone_generators`] turns `{y | a·y ≤ 0 (a ∈ ineqs), a·y = 0 (a ∈ eqs)}`
//! into extreme rays plus a basis of the lineality space. Vectors are kept
//! primitive (entries coprime) so that results are canonical up to order.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cone {
    pub rays: Vec<Vec<BigInt>>,
    pub lines: Vec<Vec<BigInt>>,
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// Divide by the gcd of the entries; the zero vector is left alone.
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// `p·u + q·v`, made primitive.
fn combine(p: &BigInt, u: &[BigInt], q: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    primitive(u.iter().zip(v).map(|(a, b)| p * a + q * b).collect())
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    /// Bitset over processed inequalities that are tight on this ray.
    zero: Vec<u64>,
}

fn set_bit(bits: &mut Vec<u64>, i: usize) {
    if bits.len() <= i / 64 {
        bits.resize(i / 64 + 1, 0);
    }
    bits[i / 64] |= 1 << (i % 64);
}

fn and_bits(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().enumerate().all(|(i, x)| x & !b.get(i).copied().unwrap_or(0) == 0)
}

pub fn cone_generators(dim: usize, ineqs: &[Vec<BigInt>], eqs: &[Vec<BigInt>]) -> Cone {
    let mut lines: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::from(1);
            v
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for a in eqs {
        if let Some(pos) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let l0 = lines.swap_remove(pos);
            let c = dot(a, &l0);
            for l in lines.iter_mut() {
                let d = dot(a, l);
                if !d.is_zero() {
                    *l = combine(&c, l, &-d, &l0);
                }
            }
            for r in rays.iter_mut() {
                let d = dot(a, &r.v);
                if !d.is_zero() {
                    r.v = combine(&c.abs(), &r.v, &(-d * c.signum()), &l0);
                }
            }
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        rays = split_rays(&rays, &vals, None);
    }

    for (k, a) in ineqs.iter().enumerate() {
        if let Some(pos) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lines.swap_remove(pos);
            let mut c = dot(a, &l0);
            if c.is_positive() {
                l0 = l0.iter().map(|x| -x).collect();
                c = -c;
            }
            for l in lines.iter_mut() {
                let d = dot(a, l);
                if !d.is_zero() {
                    *l = combine(&c, l, &-d, &l0);
                }
            }
            for r in rays.iter_mut() {
                let d = dot(a, &r.v);
                if !d.is_zero() {
                    r.v = combine(&-c.clone(), &r.v, &d, &l0);
                }
                set_bit(&mut r.zero, k);
            }
            let mut zero = Vec::new();
            for i in 0..k {
                set_bit(&mut zero, i);
            }
            rays.push(Ray { v: l0, zero });
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        rays = split_rays(&rays, &vals, Some(k));
    }

    Cone { rays: rays.into_iter().map(|r| r.v).collect(), lines }
}

/// One DD step against `a·y ≤ 0` (or `= 0` when `ineq` is `None`), given the
/// values `vals[i] = a·rays[i]`.
fn split_rays(rays: &[Ray], vals: &[BigInt], ineq: Option<usize>) -> Vec<Ray> {
    let mut out: Vec<Ray> = Vec::new();
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
    let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
    for (i, r) in rays.iter().enumerate() {
        let keep = if ineq.is_some() { !vals[i].is_positive() } else { vals[i].is_zero() };
        if keep {
            let mut r = r.clone();
            if let (Some(k), true) = (ineq, vals[i].is_zero()) {
                set_bit(&mut r.zero, k);
            }
            seen.insert(r.v.clone());
            out.push(r);
        }
    }
    for &p in &plus {
        for &m in &minus {
            let common = and_bits(&rays[p].zero, &rays[m].zero);
            let blocked = rays
                .iter()
                .enumerate()
                .any(|(t, r)| t != p && t != m && subset(&common, &r.zero));
            if blocked {
                continue;
            }
            // vals[p] > 0 > vals[m]: vals[p]·r_m - vals[m]·r_p is tight on a.
            let v = combine(&vals[p], &rays[m].v, &-vals[m].clone(), &rays[p].v);
            if v.iter().all(Zero::is_zero) || !seen.insert(v.clone()) {
                continue;
            }
            let mut zero = common;
            if let Some(k) = ineq {
                set_bit(&mut zero, k);
            }
            out.push(Ray { v, zero });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn positive_orthant() {
        let c = cone_generators(2, &[v(&[-1, 0]), v(&[0, -1])], &[]);
        assert!(c.lines.is_empty());
        let mut rays = c.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn square_cone() {
        // Homogenized unit square 0 ≤ x,y ≤ 1 (third coordinate t ≥ 0).
        let ineqs = vec![v(&[0, 0, -1]), v(&[-1, 0, 0]), v(&[0, -1, 0]), v(&[1, 0, -1]), v(&[0, 1, -1])];
        let c = cone_generators(3, &ineqs, &[]);
        assert!(c.lines.is_empty());
        let mut rays = c.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 0, 1]), v(&[0, 1, 1]), v(&[1, 0, 1]), v(&[1, 1, 1])]);
    }

    #[test]
    fn equality_and_line() {
        // x = y in R^3 with z free: lines (1,1,0) and (0,0,1).
        let c = cone_generators(3, &[], &[v(&[1, -1, 0])]);
        assert!(c.rays.is_empty());
        assert_eq!(c.lines.len(), 2);
        for l in &c.lines {
            assert_eq!(l[0], l[1]);
        }
    }

    #[test]
    fn halfspace_keeps_lines() {
        let c = cone_generators(2, &[v(&[1, 0])], &[]);
        assert_eq!(c.lines.len(), 1);
        assert_eq!(c.rays, vec![v(&[-1, 0])]);
    }
}
