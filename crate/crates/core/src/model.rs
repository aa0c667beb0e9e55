//! States, linear constraints, formulas, transition systems and ICE samples.
//!
//! Everything here is exact: coefficients, bounds and state components are
//! arbitrary-precision integers. Constraints are normalized when they are
//! built, so two constraints describing the same half-space over `Z^n`
//! compare equal.

use std::fmt;

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A program state: one integer per declared variable, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(Vec<BigInt>);

impl State {
    pub fn new(values: Vec<BigInt>) -> Self {
        State(values)
    }

    pub fn from_i64(values: &[i64]) -> Self {
        State(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The pair `(self, next)` as one vector over `V ∪ V'`.
    pub fn concat(&self, next: &State) -> Vec<BigInt> {
        self.0.iter().chain(next.0.iter()).cloned().collect()
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.0
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    /// `Σ aᵢxᵢ ≤ b`
    Le,
    /// `Σ aᵢxᵢ = b`
    Eq,
}

/// A normalized linear atom `Σ aᵢxᵢ ⋈ b` with `⋈ ∈ {≤, =}`.
///
/// Invariants: not all coefficients are zero; the coefficients are coprime
/// (for `≤` the bound is floored after dividing, for `=` the bound is
/// divisible); the first non-zero coefficient of an equality is positive.
///
/// The derived order compares coefficient vectors first, which is the
/// canonical order used when constraint sets are listed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearConstraint {
    coeffs: Vec<BigInt>,
    rel: Rel,
    bound: BigInt,
}

/// Result of normalizing an atom: either a proper constraint or a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Atom(LinearConstraint),
    Const(bool),
}

impl Normalized {
    pub fn into_formula(self) -> Formula {
        match self {
            Normalized::Atom(c) => Formula::Atom(c),
            Normalized::Const(true) => Formula::tt(),
            Normalized::Const(false) => Formula::ff(),
        }
    }

    /// The constraint, panicking on a constant. Meant for tests and literals.
    pub fn unwrap(self) -> LinearConstraint {
        match self {
            Normalized::Atom(c) => c,
            Normalized::Const(b) => panic!("atom normalized to constant {b}"),
        }
    }
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<BigInt>, rel: Rel, bound: BigInt) -> Normalized {
        let g = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            let holds = match rel {
                Rel::Le => !bound.is_negative(),
                Rel::Eq => bound.is_zero(),
            };
            return Normalized::Const(holds);
        }
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c / &g).collect();
        let mut bound = match rel {
            Rel::Le => bound.div_floor(&g),
            Rel::Eq => {
                if !(&bound % &g).is_zero() {
                    return Normalized::Const(false);
                }
                bound / &g
            }
        };
        if rel == Rel::Eq {
            let first = coeffs.iter().find(|c| !c.is_zero()).expect("non-zero gcd");
            if first.is_negative() {
                for c in coeffs.iter_mut() {
                    *c = -&*c;
                }
                bound = -bound;
            }
        }
        Normalized::Atom(LinearConstraint { coeffs, rel, bound })
    }

    pub fn le(coeffs: Vec<BigInt>, bound: BigInt) -> Normalized {
        Self::new(coeffs, Rel::Le, bound)
    }

    pub fn eq(coeffs: Vec<BigInt>, bound: BigInt) -> Normalized {
        Self::new(coeffs, Rel::Eq, bound)
    }

    /// `Σ coeffs·x ≤ bound` from machine integers; panics if trivial.
    pub fn le_i64(coeffs: &[i64], bound: i64) -> Self {
        Self::le(to_big(coeffs), BigInt::from(bound)).unwrap()
    }

    /// `Σ coeffs·x = bound` from machine integers; panics if trivial.
    pub fn eq_i64(coeffs: &[i64], bound: i64) -> Self {
        Self::eq(to_big(coeffs), BigInt::from(bound)).unwrap()
    }

    /// `Σ coeffs·x ≥ bound`, stored as `-Σ coeffs·x ≤ -bound`.
    pub fn ge_i64(coeffs: &[i64], bound: i64) -> Self {
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        Self::le_i64(&neg, -bound)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn rel(&self) -> Rel {
        self.rel
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn lhs(&self, values: &[BigInt]) -> BigInt {
        self.coeffs
            .iter()
            .zip(values)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum()
    }

    /// Truth value at a point; `values` must have length `dim()`.
    pub fn holds(&self, values: &[BigInt]) -> bool {
        debug_assert_eq!(values.len(), self.coeffs.len());
        let lhs = self.lhs(values);
        match self.rel {
            Rel::Le => lhs <= self.bound,
            Rel::Eq => lhs == self.bound,
        }
    }

    /// Integer complement of a `≤` atom: `¬(a·x ≤ b)` is `-a·x ≤ -b-1`.
    /// `None` for equalities, whose complement is not a single atom.
    pub fn complement(&self) -> Option<LinearConstraint> {
        match self.rel {
            Rel::Le => {
                let coeffs = self.coeffs.iter().map(|c| -c).collect();
                Some(Self::le(coeffs, -&self.bound - BigInt::one()).unwrap())
            }
            Rel::Eq => None,
        }
    }

    /// The two `≤` halves of the atom (one for inequalities).
    pub fn as_inequalities(&self) -> Vec<LinearConstraint> {
        match self.rel {
            Rel::Le => vec![self.clone()],
            Rel::Eq => {
                let up = LinearConstraint { coeffs: self.coeffs.clone(), rel: Rel::Le, bound: self.bound.clone() };
                let down = LinearConstraint {
                    coeffs: self.coeffs.iter().map(|c| -c).collect(),
                    rel: Rel::Le,
                    bound: -&self.bound,
                };
                vec![up, down]
            }
        }
    }

    /// Re-embed over `width` variables with the current ones starting at `offset`.
    pub fn embed(&self, width: usize, offset: usize) -> LinearConstraint {
        assert!(offset + self.dim() <= width);
        let mut coeffs = vec![BigInt::zero(); width];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[offset + i] = c.clone();
        }
        LinearConstraint { coeffs, rel: self.rel, bound: self.bound.clone() }
    }

    /// Restrict to the window `[offset, offset+len)`, if the atom mentions no
    /// variable outside of it.
    pub fn restrict(&self, offset: usize, len: usize) -> Option<LinearConstraint> {
        let outside = self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| !c.is_zero() && (i < offset || i >= offset + len));
        if outside {
            return None;
        }
        let coeffs = self.coeffs[offset..offset + len].to_vec();
        Some(LinearConstraint { coeffs, rel: self.rel, bound: self.bound.clone() })
    }

    /// Render with variable names, e.g. `j - 2*k = 2`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayConstraint { c: self, names }
    }
}

struct DisplayConstraint<'a> {
    c: &'a LinearConstraint,
    names: &'a [String],
}

impl fmt::Display for DisplayConstraint<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let name = self.names.get(i).map(String::as_str).unwrap_or("?");
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        let op = match self.c.rel {
            Rel::Le => "<=",
            Rel::Eq => "=",
        };
        write!(f, " {op} {}", self.c.bound)
    }
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("dimension mismatch: formula atom over {expected} variables, state has {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Boolean combination of linear atoms. `And([])` is true, `Or([])` false.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Atom(LinearConstraint),
}

/// A conjunction of atoms; one disjunct of a DNF.
pub type Cube = Vec<LinearConstraint>;

impl Formula {
    pub fn tt() -> Formula {
        Formula::And(Vec::new())
    }

    pub fn ff() -> Formula {
        Formula::Or(Vec::new())
    }

    pub fn is_true_literal(&self) -> bool {
        matches!(self, Formula::And(v) if v.is_empty())
    }

    pub fn is_false_literal(&self) -> bool {
        matches!(self, Formula::Or(v) if v.is_empty())
    }

    pub fn atom(c: LinearConstraint) -> Formula {
        Formula::Atom(c)
    }

    pub fn negate(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            return parts.into_iter().next().unwrap();
        }
        Formula::And(parts)
    }

    pub fn or(parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            return parts.into_iter().next().unwrap();
        }
        Formula::Or(parts)
    }

    pub fn eval(&self, values: &[BigInt]) -> Result<bool, ModelError> {
        Ok(match self {
            Formula::And(fs) => {
                for f in fs {
                    if !f.eval(values)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(fs) => {
                for f in fs {
                    if f.eval(values)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Not(f) => !f.eval(values)?,
            Formula::Atom(c) => {
                if c.dim() != values.len() {
                    return Err(ModelError::DimensionMismatch { expected: c.dim(), found: values.len() });
                }
                c.holds(values)
            }
        })
    }

    /// All atoms, in syntactic order (duplicates included).
    pub fn atoms(&self) -> Vec<&LinearConstraint> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a LinearConstraint>) {
        match self {
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Not(f) => f.collect_atoms(out),
            Formula::Atom(c) => out.push(c),
        }
    }

    pub fn map_atoms(&self, g: &impl Fn(&LinearConstraint) -> LinearConstraint) -> Formula {
        match self {
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.map_atoms(g)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.map_atoms(g)).collect()),
            Formula::Not(f) => Formula::Not(Box::new(f.map_atoms(g))),
            Formula::Atom(c) => Formula::Atom(g(c)),
        }
    }

    /// A formula over `V` re-embedded over `V ∪ V'` on the unprimed half.
    pub fn unprimed(&self, n: usize) -> Formula {
        self.map_atoms(&|c| c.embed(2 * n, 0))
    }

    /// A formula over `V` re-embedded over `V ∪ V'` on the primed half.
    pub fn primed(&self, n: usize) -> Formula {
        self.map_atoms(&|c| c.embed(2 * n, n))
    }

    /// Disjunctive normal form over `≤`/`=` atoms; negated atoms are turned
    /// into their integer complements. Returns `None` when more than `cap`
    /// cubes would be produced.
    pub fn dnf(&self, cap: usize) -> Option<Vec<Cube>> {
        self.dnf_polarity(true, cap)
    }

    fn dnf_polarity(&self, positive: bool, cap: usize) -> Option<Vec<Cube>> {
        match (self, positive) {
            (Formula::Atom(c), true) => Some(vec![vec![c.clone()]]),
            (Formula::Atom(c), false) => Some(match c.rel {
                Rel::Le => vec![vec![c.complement().unwrap()]],
                Rel::Eq => {
                    let halves = c.as_inequalities();
                    halves.iter().map(|h| vec![h.complement().unwrap()]).collect()
                }
            }),
            (Formula::Not(f), p) => f.dnf_polarity(!p, cap),
            (Formula::And(fs), true) | (Formula::Or(fs), false) => {
                let mut acc: Vec<Cube> = vec![Vec::new()];
                for f in fs {
                    let part = f.dnf_polarity(positive, cap)?;
                    if part.is_empty() {
                        return Some(Vec::new());
                    }
                    if acc.len() * part.len() > cap {
                        return None;
                    }
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for a in &acc {
                        for b in &part {
                            let mut cube = a.clone();
                            cube.extend(b.iter().cloned());
                            next.push(cube);
                        }
                    }
                    acc = next;
                }
                Some(acc)
            }
            (Formula::Or(fs), true) | (Formula::And(fs), false) => {
                let mut acc = Vec::new();
                for f in fs {
                    acc.extend(f.dnf_polarity(positive, cap)?);
                    if acc.len() > cap {
                        return None;
                    }
                }
                Some(acc)
            }
        }
    }
}

/// `(Init, T, Good)` over declared variables `vars`; `trans` ranges over
/// `V ∪ V'` with primed variables at indices `n..2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranSys {
    pub vars: Vec<String>,
    pub init: Formula,
    pub trans: Formula,
    pub good: Formula,
}

impl TranSys {
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn is_initial(&self, s: &State) -> bool {
        eval_formula(&self.init, s).unwrap_or(false)
    }

    pub fn is_good(&self, s: &State) -> bool {
        eval_formula(&self.good, s).unwrap_or(false)
    }

    pub fn is_transition(&self, s: &State, next: &State) -> bool {
        eval_trans(&self.trans, s, next).unwrap_or(false)
    }
}

pub fn eval_formula(f: &Formula, s: &State) -> Result<bool, ModelError> {
    f.eval(s.values())
}

pub fn eval_trans(t: &Formula, s: &State, next: &State) -> Result<bool, ModelError> {
    if s.dim() != next.dim() {
        return Err(ModelError::DimensionMismatch { expected: s.dim(), found: next.dim() });
    }
    t.eval(&s.concat(next))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Counterexample {
    Positive(State),
    Negative(State),
    Implication(State, State),
}

/// Raised when a state ends up both positive and negative.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("contradictory sample: {witness} is both positive and negative")]
pub struct Contradiction {
    pub witness: State,
}

/// An ICE sample `(S⁺, S⁻, S→)`. Sets keep insertion order, which fixes
/// the order separators see positives in.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sample {
    pub pos: IndexSet<State>,
    pub neg: IndexSet<State>,
    pub impl_: IndexSet<(State, State)>,
}

impl Sample {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty() && self.impl_.is_empty()
    }

    /// Insert a counterexample and close the sets: positives flow
    /// forward along implications, negatives backward.
    pub fn add_counterexample(&mut self, cex: Counterexample) -> Result<(), Contradiction> {
        match cex {
            Counterexample::Positive(s) => {
                self.pos.insert(s);
            }
            Counterexample::Negative(s) => {
                self.neg.insert(s);
            }
            Counterexample::Implication(s, t) => {
                assert_eq!(s.dim(), t.dim(), "implication endpoints differ in dimension");
                self.impl_.insert((s, t));
            }
        }
        self.close();
        match self.contradiction() {
            Some(witness) => Err(Contradiction { witness }),
            None => Ok(()),
        }
    }

    /// The first positive state that is also negative, if any.
    pub fn contradiction(&self) -> Option<State> {
        self.pos.iter().find(|s| self.neg.contains(*s)).cloned()
    }

    /// Recompute the closure to a fixpoint.
    pub fn close(&mut self) {
        loop {
            let mut changed = false;
            for (s, t) in &self.impl_ {
                if self.pos.contains(s) && !self.pos.contains(t) {
                    self.pos.insert(t.clone());
                    changed = true;
                }
                if self.neg.contains(t) && !self.neg.contains(s) {
                    self.neg.insert(s.clone());
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Property (4), checked by expanding the quantifier over `S→`.
    pub fn is_closed(&self) -> bool {
        self.impl_
            .iter()
            .all(|(s, t)| (!self.pos.contains(s) || self.pos.contains(t)) && (!self.neg.contains(t) || self.neg.contains(s)))
    }

    pub fn is_consistent(&self) -> bool {
        self.pos.iter().all(|s| !self.neg.contains(s))
    }

    /// Every distinct state mentioned by the sample, positives first.
    pub fn points(&self) -> IndexSet<State> {
        let mut out: IndexSet<State> = self.pos.iter().cloned().collect();
        out.extend(self.neg.iter().cloned());
        for (s, t) in &self.impl_ {
            out.insert(s.clone());
            out.insert(t.clone());
        }
        out
    }

    /// A candidate is consistent with the sample when it holds on `S⁺`,
    /// fails on `S⁻`, and no implication goes from true to false.
    pub fn is_consistent_with(&self, f: &Formula) -> Result<bool, ModelError> {
        for p in &self.pos {
            if !eval_formula(f, p)? {
                return Ok(false);
            }
        }
        for n in &self.neg {
            if eval_formula(f, n)? {
                return Ok(false);
            }
        }
        for (s, t) in &self.impl_ {
            if eval_formula(f, s)? && !eval_formula(f, t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
