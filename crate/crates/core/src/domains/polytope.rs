use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dd::{cone_generators, dot, primitive};
use super::simplex;
use crate::model::{LinearConstraint, Rel, State};

/// A rational polyhedron kept in both representations.
///
/// Generators: points (rational), rays and lines (primitive integer
/// directions), always minimal. Constraints: rows `c = (α, γ)` over
/// `n + 1` entries meaning `α·x + γ ≤ 0` (or `= 0`), in a canonical form so
/// that equal polyhedra have equal rows.
#[derive(Clone, Debug)]
pub struct PolytopeElem {
    dim: usize,
    points: Vec<Vec<BigRational>>,
    rays: Vec<Vec<BigInt>>,
    lines: Vec<Vec<BigInt>>,
    eqs: Vec<Vec<BigInt>>,
    ineqs: Vec<Vec<BigInt>>,
}

impl PartialEq for PolytopeElem {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.eqs == other.eqs && self.ineqs == other.ineqs
    }
}

impl Eq for PolytopeElem {}

impl Hash for PolytopeElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.eqs.hash(state);
        self.ineqs.hash(state);
    }
}

fn int_q(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Homogenize a rational point as a primitive integer vector `(v·L, L)`.
fn homog_point(p: &[BigRational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut v: Vec<BigInt> = p.iter().map(|x| (x * int_q(&l)).to_integer()).collect();
    v.push(l);
    primitive(v)
}

fn with_zero(v: &[BigInt]) -> Vec<BigInt> {
    let mut out = v.to_vec();
    out.push(BigInt::zero());
    out
}

/// Scale a rational row to a primitive integer row.
fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    primitive(row.iter().map(|x| (x * int_q(&l)).to_integer()).collect())
}

/// Canonical H-representation: equalities in reduced row echelon form with
/// pivots on the right-most variables, inequalities with those pivot
/// variables eliminated.
fn canonicalize(n: usize, eq_rows: &[Vec<BigInt>], ineq_rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut rows: Vec<Vec<BigRational>> = eq_rows.iter().map(|r| r.iter().map(int_q).collect()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in (0..n).rev() {
        let Some(r) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(next, r);
        let p = rows[next][col].clone();
        for x in rows[next].iter_mut() {
            *x = &*x / &p;
        }
        let prow = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    rows.truncate(next);

    let mut ineqs: Vec<Vec<BigInt>> = ineq_rows
        .iter()
        .map(|c| {
            let mut c: Vec<BigRational> = c.iter().map(int_q).collect();
            for &(r, col) in &pivots {
                if !c[col].is_zero() {
                    let f = c[col].clone();
                    for (x, y) in c.iter_mut().zip(&rows[r]) {
                        *x -= &f * y;
                    }
                }
            }
            integer_row(&c)
        })
        .filter(|c| c[..n].iter().any(|x| !x.is_zero()))
        .collect();
    ineqs.sort();
    ineqs.dedup();

    let mut eqs: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    for (e, &(_, col)) in eqs.iter_mut().zip(&pivots) {
        if e[col].is_negative() {
            for x in e.iter_mut() {
                *x = -&*x;
            }
        }
    }
    eqs.sort();
    (eqs, ineqs)
}

type Generators = (Vec<Vec<BigRational>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>);

fn h_to_v(n: usize, eqs: &[Vec<BigInt>], ineqs: &[Vec<BigInt>]) -> Option<Generators> {
    let mut all = Vec::with_capacity(ineqs.len() + 1);
    let mut t_nonneg = vec![BigInt::zero(); n + 1];
    t_nonneg[n] = BigInt::from(-1);
    all.push(t_nonneg);
    all.extend(ineqs.iter().cloned());
    let cone = cone_generators(n + 1, &all, eqs);
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for r in cone.rays {
        if r[n].is_positive() {
            let t = int_q(&r[n]);
            points.push(r[..n].iter().map(|x| int_q(x) / &t).collect());
        } else {
            rays.push(primitive(r[..n].to_vec()));
        }
    }
    if points.is_empty() {
        return None;
    }
    let lines = cone.lines.into_iter().map(|l| primitive(l[..n].to_vec())).collect();
    Some((points, rays, lines))
}

fn v_to_h(n: usize, points: &[Vec<BigRational>], rays: &[Vec<BigInt>], lines: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut gens: Vec<Vec<BigInt>> = points.iter().map(|p| homog_point(p)).collect();
    gens.extend(rays.iter().map(|r| with_zero(r)));
    let line_rows: Vec<Vec<BigInt>> = lines.iter().map(|l| with_zero(l)).collect();
    let dual = cone_generators(n + 1, &gens, &line_rows);
    let ineqs: Vec<Vec<BigInt>> = dual.rays.into_iter().filter(|c| c[..n].iter().any(|x| !x.is_zero())).collect();
    canonicalize(n, &dual.lines, &ineqs)
}

impl PolytopeElem {
    pub fn from_generators(n: usize, points: Vec<Vec<BigRational>>, rays: Vec<Vec<BigInt>>, lines: Vec<Vec<BigInt>>) -> Self {
        assert!(!points.is_empty(), "a polyhedron needs at least one point");
        let (eqs, ineqs) = v_to_h(n, &points, &rays, &lines);
        let (points, rays, lines) = h_to_v(n, &eqs, &ineqs).expect("non-empty by construction");
        PolytopeElem { dim: n, points, rays, lines, eqs, ineqs }
    }

    pub fn from_points(n: usize, pts: &[State]) -> Self {
        let points = pts.iter().map(|s| s.values().iter().map(int_q).collect()).collect();
        Self::from_generators(n, points, Vec::new(), Vec::new())
    }

    pub fn singleton(s: &State) -> Self {
        Self::from_points(s.dim(), std::slice::from_ref(s))
    }

    /// Polyhedron of a conjunction of atoms; `None` when it is empty over Q.
    pub fn from_atoms(n: usize, atoms: &[LinearConstraint]) -> Option<Self> {
        let row = |c: &LinearConstraint| {
            let mut r = c.coeffs().to_vec();
            r.push(-c.bound());
            r
        };
        let eqs: Vec<Vec<BigInt>> = atoms.iter().filter(|c| c.rel() == Rel::Eq).map(row).collect();
        let ineqs: Vec<Vec<BigInt>> = atoms.iter().filter(|c| c.rel() == Rel::Le).map(row).collect();
        let (points, rays, lines) = h_to_v(n, &eqs, &ineqs)?;
        Some(Self::from_generators(n, points, rays, lines))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lines(&self) -> &[Vec<BigInt>] {
        &self.lines
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }

    pub fn join(&self, other: &Self) -> Self {
        if other.leq(self) {
            return self.clone();
        }
        if self.leq(other) {
            return other.clone();
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        let mut rays = self.rays.clone();
        rays.extend(other.rays.iter().cloned());
        let mut lines = self.lines.clone();
        lines.extend(other.lines.iter().cloned());
        Self::from_generators(self.dim, points, rays, lines)
    }

    fn row_value(row: &[BigInt], p: &[BigInt]) -> BigInt {
        dot(&row[..row.len() - 1], p) + &row[row.len() - 1]
    }

    fn row_value_q(row: &[BigInt], p: &[BigRational]) -> BigRational {
        let mut acc = int_q(&row[row.len() - 1]);
        for (a, x) in row.iter().zip(p) {
            if !a.is_zero() {
                acc += int_q(a) * x;
            }
        }
        acc
    }

    /// Membership by evaluating the constraint rows.
    pub fn contains(&self, p: &[BigInt]) -> bool {
        self.eqs.iter().all(|r| Self::row_value(r, p).is_zero())
            && self.ineqs.iter().all(|r| !Self::row_value(r, p).is_positive())
    }

    fn contains_q(&self, p: &[BigRational]) -> bool {
        self.eqs.iter().all(|r| Self::row_value_q(r, p).is_zero())
            && self.ineqs.iter().all(|r| !Self::row_value_q(r, p).is_positive())
    }

    /// Membership by solving `p = Σλv + Σμr + Σνl`, `λ, μ ≥ 0`, `Σλ = 1`
    /// exactly; independent of the constraint rows.
    pub fn member(&self, p: &[BigInt]) -> bool {
        let n = self.dim;
        let mut cols: Vec<Vec<BigRational>> = Vec::new();
        for v in &self.points {
            let mut c = v.clone();
            c.push(BigRational::one());
            cols.push(c);
        }
        for r in &self.rays {
            let mut c: Vec<BigRational> = r.iter().map(int_q).collect();
            c.push(BigRational::zero());
            cols.push(c);
        }
        for l in &self.lines {
            let up: Vec<BigRational> = l.iter().map(int_q).chain([BigRational::zero()]).collect();
            let down: Vec<BigRational> = up.iter().map(|x| -x).collect();
            cols.push(up);
            cols.push(down);
        }
        let a: Vec<Vec<BigRational>> = (0..=n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let mut b: Vec<BigRational> = p.iter().map(int_q).collect();
        b.push(BigRational::one());
        simplex::feasible(&a, &b)
    }

    pub fn leq(&self, other: &Self) -> bool {
        let dir_ok = |d: &[BigInt], line: bool| {
            other.eqs.iter().all(|r| dot(&r[..self.dim], d).is_zero())
                && other.ineqs.iter().all(|r| {
                    let v = dot(&r[..self.dim], d);
                    if line {
                        v.is_zero()
                    } else {
                        !v.is_positive()
                    }
                })
        };
        self.points.iter().all(|p| other.contains_q(p))
            && self.rays.iter().all(|r| dir_ok(r, false))
            && self.lines.iter().all(|l| dir_ok(l, true))
    }

    /// Integer-normalized constraints, equalities included as single atoms.
    pub fn constraints(&self) -> Vec<LinearConstraint> {
        let n = self.dim;
        let mut out = Vec::new();
        for r in &self.eqs {
            if let crate::model::Normalized::Atom(c) = LinearConstraint::eq(r[..n].to_vec(), -&r[n]) {
                out.push(c);
            }
        }
        for r in &self.ineqs {
            if let crate::model::Normalized::Atom(c) = LinearConstraint::le(r[..n].to_vec(), -&r[n]) {
                out.push(c);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(v: &[i64]) -> State {
        State::from_i64(v)
    }

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn singleton_is_equalities() {
        let d = PolytopeElem::singleton(&st(&[1, 2]));
        let mut want = vec![LinearConstraint::eq_i64(&[1, 0], 1), LinearConstraint::eq_i64(&[0, 1], 2)];
        want.sort();
        assert_eq!(d.constraints(), want);
    }

    #[test]
    fn triangle_membership() {
        let d = PolytopeElem::from_points(2, &[st(&[1, 1]), st(&[1, 4]), st(&[3, 1])]);
        assert!(d.member(&b(&[2, 2])) && d.contains(&b(&[2, 2])));
        assert!(!d.member(&b(&[2, 3])) && !d.contains(&b(&[2, 3])));
        assert_eq!(d.points().len(), 3);
    }

    #[test]
    fn interior_point_dropped() {
        let d = PolytopeElem::from_points(2, &[st(&[0, 0]), st(&[4, 0]), st(&[0, 4]), st(&[1, 1])]);
        assert_eq!(d.points().len(), 3);
    }

    #[test]
    fn init_region_with_free_variable() {
        // j = 2, k = 0, t free
        let atoms = [LinearConstraint::eq_i64(&[1, 0, 0], 2), LinearConstraint::eq_i64(&[0, 1, 0], 0)];
        let d1 = PolytopeElem::from_atoms(3, &atoms).unwrap();
        assert_eq!(d1.lines().len(), 1);
        assert!(PolytopeElem::singleton(&st(&[2, 0, 0])).leq(&d1));
        let mut want = atoms.to_vec();
        want.sort();
        assert_eq!(d1.constraints(), want);

        let d3 = d1.join(&PolytopeElem::singleton(&st(&[4, 1, 1])));
        let mut want = vec![
            LinearConstraint::eq_i64(&[1, -2, 0], 2),
            LinearConstraint::le_i64(&[1, 0, 0], 4),
            LinearConstraint::ge_i64(&[1, 0, 0], 2),
        ];
        want.sort();
        assert_eq!(d3.constraints(), want);
    }

    #[test]
    fn empty_conjunction_is_none() {
        let atoms = [LinearConstraint::le_i64(&[1], 0), LinearConstraint::ge_i64(&[1], 1)];
        assert!(PolytopeElem::from_atoms(1, &atoms).is_none());
    }

    #[test]
    fn canonical_equality() {
        let a = PolytopeElem::from_points(2, &[st(&[0, 0]), st(&[2, 2])]);
        let b = PolytopeElem::from_points(2, &[st(&[2, 2]), st(&[1, 1]), st(&[0, 0])]);
        assert_eq!(a, b);
    }
}
