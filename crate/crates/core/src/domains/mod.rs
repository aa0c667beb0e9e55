//! Numerical abstract domains: intervals, octagons and polyhedra.
//!
//! All three are exposed through [`AbstractElement`], which carries its
//! domain tag. Elements are never empty; every one is built from a point or
//! a satisfiable conjunction.

pub mod dd;
pub mod interval;
pub mod octagon;
pub mod polytope;
pub mod simplex;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

pub use interval::IntervalElem;
pub use octagon::OctagonElem;
pub use polytope::PolytopeElem;

use crate::model::{Formula, LinearConstraint, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Int,
    Oct,
    Poly,
}

impl Domain {
    pub const ALL: [Domain; 3] = [Domain::Int, Domain::Oct, Domain::Poly];
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Int => "int",
            Domain::Oct => "oct",
            Domain::Poly => "poly",
        })
    }
}

impl FromStr for Domain {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "int" => Ok(Domain::Int),
            "oct" => Ok(Domain::Oct),
            "poly" => Ok(Domain::Poly),
            _ => Err(format!("unknown domain {s:?} (expected int, oct or poly)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("cannot combine a {0} element with a {1} element")]
    TagMismatch(Domain, Domain),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AbstractElement {
    Int(IntervalElem),
    Oct(OctagonElem),
    Poly(PolytopeElem),
}

impl AbstractElement {
    pub fn singleton(s: &State, domain: Domain) -> Self {
        match domain {
            Domain::Int => AbstractElement::Int(IntervalElem::singleton(s)),
            Domain::Oct => AbstractElement::Oct(OctagonElem::singleton(s)),
            Domain::Poly => AbstractElement::Poly(PolytopeElem::singleton(s)),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            AbstractElement::Int(_) => Domain::Int,
            AbstractElement::Oct(_) => Domain::Oct,
            AbstractElement::Poly(_) => Domain::Poly,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AbstractElement::Int(e) => e.dim(),
            AbstractElement::Oct(e) => e.dim(),
            AbstractElement::Poly(e) => e.dim(),
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), DomainError> {
        if self.domain() != other.domain() {
            return Err(DomainError::TagMismatch(self.domain(), other.domain()));
        }
        if self.dim() != other.dim() {
            return Err(DomainError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// Least upper bound.
    pub fn join(&self, other: &Self) -> Result<Self, DomainError> {
        self.compatible(other)?;
        Ok(match (self, other) {
            (AbstractElement::Int(a), AbstractElement::Int(b)) => AbstractElement::Int(a.join(b)),
            (AbstractElement::Oct(a), AbstractElement::Oct(b)) => AbstractElement::Oct(a.join(b)),
            (AbstractElement::Poly(a), AbstractElement::Poly(b)) => AbstractElement::Poly(a.join(b)),
            _ => unreachable!(),
        })
    }

    /// Point membership. Polyhedra are decided by an exact LP over the
    /// generators; see [`AbstractElement::contains`] for the fast path.
    pub fn member(&self, p: &State) -> Result<bool, DomainError> {
        if p.dim() != self.dim() {
            return Err(DomainError::DimensionMismatch(self.dim(), p.dim()));
        }
        Ok(match self {
            AbstractElement::Poly(e) => e.member(p.values()),
            _ => self.contains(p.values()),
        })
    }

    /// Point membership by constraint evaluation. Same answer as `member`.
    pub fn contains(&self, p: &[BigInt]) -> bool {
        assert_eq!(p.len(), self.dim(), "point dimension differs from element");
        match self {
            AbstractElement::Int(e) => e.contains(p),
            AbstractElement::Oct(e) => e.contains(p),
            AbstractElement::Poly(e) => e.contains(p),
        }
    }

    pub fn leq(&self, other: &Self) -> Result<bool, DomainError> {
        self.compatible(other)?;
        Ok(match (self, other) {
            (AbstractElement::Int(a), AbstractElement::Int(b)) => a.leq(b),
            (AbstractElement::Oct(a), AbstractElement::Oct(b)) => a.leq(b),
            (AbstractElement::Poly(a), AbstractElement::Poly(b)) => a.leq(b),
            _ => unreachable!(),
        })
    }

    /// The element's constraint set, normalized and sorted.
    pub fn constraints(&self) -> Vec<LinearConstraint> {
        match self {
            AbstractElement::Int(e) => e.constraints(),
            AbstractElement::Oct(e) => e.constraints(),
            AbstractElement::Poly(e) => e.constraints(),
        }
    }

    /// The element described by a conjunction of atoms, if the formula is
    /// one and every atom fits the domain.
    pub fn from_conjunction(f: &Formula, n: usize, domain: Domain) -> Option<Self> {
        let mut atoms = Vec::new();
        if !conjunct_atoms(f, &mut atoms) {
            return None;
        }
        if atoms.iter().any(|c| c.dim() != n) {
            return None;
        }
        match domain {
            Domain::Int => IntervalElem::from_atoms(n, &atoms).map(AbstractElement::Int),
            Domain::Oct => OctagonElem::from_atoms(n, &atoms).map(AbstractElement::Oct),
            Domain::Poly => PolytopeElem::from_atoms(n, &atoms).map(AbstractElement::Poly),
        }
    }

    pub fn as_polytope(&self) -> Option<&PolytopeElem> {
        match self {
            AbstractElement::Poly(p) => Some(p),
            _ => None,
        }
    }
}

fn conjunct_atoms(f: &Formula, out: &mut Vec<LinearConstraint>) -> bool {
    match f {
        Formula::And(fs) => fs.iter().all(|g| conjunct_atoms(g, out)),
        Formula::Atom(c) => {
            out.push(c.clone());
            true
        }
        Formula::Not(g) => match g.as_ref() {
            Formula::Atom(c) => match c.complement() {
                Some(neg) => {
                    out.push(neg);
                    true
                }
                None => false,
            },
            _ => false,
        },
        Formula::Or(fs) if fs.len() == 1 => conjunct_atoms(&fs[0], out),
        Formula::Or(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_formula;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn conjunctions() {
        let jkt = names(&["j", "k", "t"]);
        let f = parse_formula("(and (= j 2) (= k 0))", &jkt).unwrap();
        let d1 = AbstractElement::from_conjunction(&f, 3, Domain::Poly).unwrap();
        let mut want = vec![LinearConstraint::eq_i64(&[1, 0, 0], 2), LinearConstraint::eq_i64(&[0, 1, 0], 0)];
        want.sort();
        assert_eq!(d1.constraints(), want);

        let x = names(&["x"]);
        let f = parse_formula("(or (= x 0) (= x 1))", &x).unwrap();
        for d in Domain::ALL {
            assert!(AbstractElement::from_conjunction(&f, 1, d).is_none());
        }
        let f = parse_formula("(and (<= x 3) (>= x 1))", &x).unwrap();
        let b = AbstractElement::from_conjunction(&f, 1, Domain::Int).unwrap();
        assert_eq!(b.constraints().len(), 2);
    }

    #[test]
    fn mixing_tags_is_an_error() {
        let p = State::from_i64(&[0, 0]);
        let a = AbstractElement::singleton(&p, Domain::Int);
        let b = AbstractElement::singleton(&p, Domain::Oct);
        assert_eq!(a.join(&b).unwrap_err(), DomainError::TagMismatch(Domain::Int, Domain::Oct));
        let c = AbstractElement::singleton(&State::from_i64(&[0]), Domain::Int);
        assert!(matches!(a.leq(&c), Err(DomainError::DimensionMismatch(2, 1))));
    }
}
