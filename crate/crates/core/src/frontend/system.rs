use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::sexp::{parse_all, LexError, Sexp, SourceSpan};
use crate::model::{Formula, LinearConstraint, Rel, TranSys};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UnboundVariable,
    PrimedOutsideTrans,
    NonLinear,
    MissingSection,
    DuplicateDeclaration,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub span: SourceSpan,
}

impl ParseError {
    fn new(kind: ParseErrorKind, message: impl Into<String>, span: SourceSpan) -> Self {
        ParseError { kind, message: message.into(), span }
    }

    /// `file:line:col: message`, for diagnostics.
    pub fn render(&self, file: &str, text: &str) -> String {
        let (line, col) = self.span.line_col(text);
        format!("{file}:{line}:{col}: {}", self.message)
    }
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError::new(ParseErrorKind::Lexical, e.message, e.span)
    }
}

/// Name resolution for one formula: plain names map to indices `0..n`,
/// `name'` to `n..2n` when primes are allowed.
struct Scope<'a> {
    index: &'a HashMap<String, usize>,
    width: usize,
    primes: Option<usize>,
}

impl Scope<'_> {
    fn resolve(&self, name: &str, span: SourceSpan) -> Result<usize, ParseError> {
        if let Some(base) = name.strip_suffix('\'') {
            return match (self.primes, self.index.get(base)) {
                (Some(n), Some(&i)) => Ok(n + i),
                (None, Some(_)) => Err(ParseError::new(
                    ParseErrorKind::PrimedOutsideTrans,
                    format!("primed variable {name} outside of (trans ...)"),
                    span,
                )),
                (_, None) => Err(ParseError::new(ParseErrorKind::UnboundVariable, format!("unbound variable {base}"), span)),
            };
        }
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ParseError::new(ParseErrorKind::UnboundVariable, format!("unbound variable {name}"), span))
    }
}

/// Affine expression `coeffs·x + constant`.
#[derive(Clone, Debug)]
struct Lin {
    coeffs: Vec<BigInt>,
    constant: BigInt,
}

impl Lin {
    fn constant(width: usize, c: BigInt) -> Self {
        Lin { coeffs: vec![BigInt::zero(); width], constant: c }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add(mut self, other: &Lin) -> Lin {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.constant += &other.constant;
        self
    }

    fn scale(mut self, k: &BigInt) -> Lin {
        for a in self.coeffs.iter_mut() {
            *a *= k;
        }
        self.constant *= k;
        self
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_term(e: &Sexp, scope: &Scope) -> Result<Lin, ParseError> {
    match e {
        Sexp::Atom(a, span) => {
            if let Some(v) = parse_int(a) {
                return Ok(Lin::constant(scope.width, v));
            }
            if a.starts_with('-') && parse_int(&a[1..]).is_some() {
                return Ok(Lin::constant(scope.width, -parse_int(&a[1..]).unwrap()));
            }
            let i = scope.resolve(a, *span)?;
            let mut l = Lin::constant(scope.width, BigInt::zero());
            l.coeffs[i] = BigInt::one();
            Ok(l)
        }
        Sexp::List(items, span) => {
            let head = e
                .head()
                .ok_or_else(|| ParseError::new(ParseErrorKind::Syntax, "expected an arithmetic term", *span))?;
            let args = &items[1..];
            let terms = args.iter().map(|a| parse_term(a, scope)).collect::<Result<Vec<_>, _>>()?;
            match (head, terms.len()) {
                ("+", n) if n >= 1 => {
                    let mut it = terms.into_iter();
                    let first = it.next().unwrap();
                    Ok(it.fold(first, |acc, t| acc.add(&t)))
                }
                ("-", 1) => Ok(terms.into_iter().next().unwrap().scale(&BigInt::from(-1))),
                ("-", n) if n >= 2 => {
                    let mut it = terms.into_iter();
                    let first = it.next().unwrap();
                    Ok(it.fold(first, |acc, t| acc.add(&t.scale(&BigInt::from(-1)))))
                }
                ("*", n) if n >= 1 => {
                    let mut acc = Lin::constant(scope.width, BigInt::one());
                    for (t, arg) in terms.into_iter().zip(args) {
                        if t.is_constant() {
                            acc = acc.scale(&t.constant);
                        } else if acc.is_constant() {
                            let k = acc.constant.clone();
                            acc = t.scale(&k);
                        } else {
                            return Err(ParseError::new(
                                ParseErrorKind::NonLinear,
                                "non-linear term: product of two variables",
                                arg.span(),
                            ));
                        }
                    }
                    Ok(acc)
                }
                _ => Err(ParseError::new(ParseErrorKind::Syntax, format!("unknown arithmetic operator {head}"), *span)),
            }
        }
    }
}

fn parse_atom(op: &str, lhs: Lin, rhs: Lin) -> Formula {
    // lhs - rhs ⋈ 0, i.e. coeffs·x ⋈ -constant
    let d = lhs.add(&rhs.scale(&BigInt::from(-1)));
    let b = -d.constant;
    let neg: Vec<BigInt> = d.coeffs.iter().map(|c| -c).collect();
    let norm = match op {
        "<=" => LinearConstraint::new(d.coeffs, Rel::Le, b),
        "<" => LinearConstraint::new(d.coeffs, Rel::Le, b - 1),
        ">=" => LinearConstraint::new(neg, Rel::Le, -b),
        ">" => LinearConstraint::new(neg, Rel::Le, -b - 1),
        "=" => LinearConstraint::new(d.coeffs, Rel::Eq, b),
        _ => unreachable!(),
    };
    norm.into_formula()
}

fn parse_form(e: &Sexp, scope: &Scope) -> Result<Formula, ParseError> {
    match e {
        Sexp::Atom(a, span) => match a.as_str() {
            "true" => Ok(Formula::tt()),
            "false" => Ok(Formula::ff()),
            _ => Err(ParseError::new(ParseErrorKind::Syntax, format!("expected a formula, found {a}"), *span)),
        },
        Sexp::List(items, span) => {
            let head = e
                .head()
                .ok_or_else(|| ParseError::new(ParseErrorKind::Syntax, "expected a formula", *span))?;
            let args = &items[1..];
            let arity = |want: usize| {
                if args.len() == want {
                    Ok(())
                } else {
                    Err(ParseError::new(ParseErrorKind::Syntax, format!("{head} expects {want} arguments"), *span))
                }
            };
            match head {
                "and" | "or" => {
                    let parts = args.iter().map(|a| parse_form(a, scope)).collect::<Result<Vec<_>, _>>()?;
                    Ok(if head == "and" { Formula::And(parts) } else { Formula::Or(parts) })
                }
                "not" => {
                    arity(1)?;
                    Ok(Formula::negate(parse_form(&args[0], scope)?))
                }
                "=>" => {
                    arity(2)?;
                    let a = parse_form(&args[0], scope)?;
                    let b = parse_form(&args[1], scope)?;
                    Ok(Formula::Or(vec![Formula::negate(a), b]))
                }
                "<=" | "<" | ">=" | ">" | "=" => {
                    arity(2)?;
                    let l = parse_term(&args[0], scope)?;
                    let r = parse_term(&args[1], scope)?;
                    Ok(parse_atom(head, l, r))
                }
                _ => Err(ParseError::new(ParseErrorKind::Syntax, format!("unknown connective {head}"), *span)),
            }
        }
    }
}

/// Parse a formula whose variables are exactly `names` (index = position).
pub fn parse_formula(text: &str, names: &[String]) -> Result<Formula, ParseError> {
    let e = super::sexp::parse_one(text)?;
    let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    parse_form(&e, &Scope { index: &index, width: names.len(), primes: None })
}

/// Parse a transition-system file: declarations, then `init`, `trans`, `good`.
pub fn parse_system(text: &str) -> Result<TranSys, ParseError> {
    let top = parse_all(text)?;
    let mut vars: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut sections: HashMap<&'static str, &Sexp> = HashMap::new();

    for item in &top {
        let span = item.span();
        let head = item
            .head()
            .ok_or_else(|| ParseError::new(ParseErrorKind::Syntax, "expected a top-level command", span))?;
        let args = &item.as_list().unwrap()[1..];
        match head {
            "declare-var" => {
                if !sections.is_empty() {
                    return Err(ParseError::new(ParseErrorKind::Syntax, "declarations must precede init/trans/good", span));
                }
                let (name, sort) = match args {
                    [n, s] => (n, s),
                    _ => return Err(ParseError::new(ParseErrorKind::Syntax, "expected (declare-var NAME Int)", span)),
                };
                let name_str = name
                    .as_atom()
                    .filter(|n| !n.ends_with('\'') && parse_int(n).is_none() && !n.starts_with('-'))
                    .ok_or_else(|| ParseError::new(ParseErrorKind::Syntax, "invalid variable name", name.span()))?;
                if sort.as_atom() != Some("Int") {
                    return Err(ParseError::new(ParseErrorKind::Syntax, "only Int variables are supported", sort.span()));
                }
                if index.contains_key(name_str) {
                    return Err(ParseError::new(
                        ParseErrorKind::DuplicateDeclaration,
                        format!("variable {name_str} declared twice"),
                        name.span(),
                    ));
                }
                index.insert(name_str.to_string(), vars.len());
                vars.push(name_str.to_string());
            }
            "init" | "trans" | "good" => {
                let key = match head {
                    "init" => "init",
                    "trans" => "trans",
                    _ => "good",
                };
                if sections.contains_key(key) {
                    return Err(ParseError::new(ParseErrorKind::Syntax, format!("duplicate ({key} ...) section"), span));
                }
                if args.len() != 1 {
                    return Err(ParseError::new(ParseErrorKind::Syntax, format!("({key} FORM) takes one formula"), span));
                }
                sections.insert(key, &args[0]);
            }
            _ => return Err(ParseError::new(ParseErrorKind::Syntax, format!("unknown command {head}"), span)),
        }
    }

    let end = SourceSpan::new(text.len(), text.len());
    if vars.is_empty() {
        return Err(ParseError::new(ParseErrorKind::MissingSection, "no variables declared", end));
    }
    let n = vars.len();
    let get = |key: &str, primes: bool| -> Result<Formula, ParseError> {
        let e = sections
            .get(key)
            .ok_or_else(|| ParseError::new(ParseErrorKind::MissingSection, format!("missing ({key} ...) section"), end))?;
        let scope = Scope { index: &index, width: if primes { 2 * n } else { n }, primes: primes.then_some(n) };
        parse_form(e, &scope)
    };
    let init = get("init", false)?;
    let trans = get("trans", true)?;
    let good = get("good", false)?;
    Ok(TranSys { vars, init, trans, good })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{eval_formula, eval_trans, State};

    const STRIDE: &str = "(declare-var j Int)(declare-var k Int)(declare-var t Int)
        (init (and (= j 2) (= k 0)))
        (trans (or (and (= t 0) (= j' (+ j 4)) (= k' k) (= t' t))
                   (and (not (= t 0)) (= j' (+ j 2)) (= k' (+ k 1)) (= t' t))))
        (good (or (= k 0) (= j (+ (* 2 k) 2))))";

    #[test]
    fn stride_program() {
        let sys = parse_system(STRIDE).unwrap();
        assert_eq!(sys.vars, ["j", "k", "t"]);
        let s = State::from_i64(&[2, 0, 1]);
        assert!(eval_formula(&sys.init, &s).unwrap());
        assert!(eval_trans(&sys.trans, &s, &State::from_i64(&[4, 1, 1])).unwrap());
        assert!(!eval_formula(&sys.good, &State::from_i64(&[5, 1, 0])).unwrap());
    }

    #[test]
    fn identity_loop() {
        let sys = parse_system("(declare-var x Int)(init (= x 0))(trans (= x' x))(good (>= x 0))").unwrap();
        assert_eq!(sys.dim(), 1);
        assert_eq!(sys.good, Formula::Atom(LinearConstraint::ge_i64(&[1], 0)));
    }

    #[test]
    fn unbound_variable() {
        let text = "(declare-var x Int)(init (= y 0))(trans (= x' x))(good true)";
        let e = parse_system(text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnboundVariable);
        assert_eq!(&text[e.span.start..e.span.end], "y");
    }

    #[test]
    fn primed_outside_trans() {
        let e = parse_system("(declare-var x Int)(init (= x' 0))(trans (= x' x))(good true)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::PrimedOutsideTrans);
    }

    #[test]
    fn nonlinear_and_missing() {
        let e = parse_system("(declare-var x Int)(init (= (* x x) 0))(trans (= x' x))(good true)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonLinear);
        let e = parse_system("(declare-var x Int)(init (= x 0))(good true)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingSection);
    }

    #[test]
    fn strict_inequalities_tighten() {
        let names = vec!["x".to_string()];
        let f = parse_formula("(< x 3)", &names).unwrap();
        assert_eq!(f, Formula::Atom(LinearConstraint::le_i64(&[1], 2)));
        let f = parse_formula("(> (* 2 x) 3)", &names).unwrap();
        assert_eq!(f, Formula::Atom(LinearConstraint::ge_i64(&[1], 2)));
    }

    #[test]
    fn constant_atoms_fold() {
        let names = vec!["x".to_string()];
        assert!(parse_formula("(<= 1 2)", &names).unwrap().is_true_literal());
        assert!(parse_formula("(= (* 2 x) 1)", &names).unwrap().is_false_literal());
    }
}
