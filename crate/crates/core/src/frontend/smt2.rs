use std::collections::HashMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::sexp::{parse_one, Sexp};
use crate::model::{Formula, LinearConstraint, Rel, State};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelParseError {
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error("non-integer value for {0}")]
    NonInteger(String),
}

fn is_simple_symbol(s: &str) -> bool {
    const EXTRA: &str = "~!@$%^&*_-+=<>.?/";
    !s.is_empty()
        && !s.as_bytes()[0].is_ascii_digit()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || EXTRA.contains(c))
}

/// A variable name as an SMT-LIB symbol, quoting it when necessary.
pub fn symbol(name: &str) -> String {
    if is_simple_symbol(name) {
        name.to_string()
    } else {
        format!("|{name}|")
    }
}

pub fn print_int(v: &BigInt) -> String {
    if v.is_negative() {
        format!("(- {})", -v)
    } else {
        v.to_string()
    }
}

fn print_term(c: &LinearConstraint, names: &[String]) -> String {
    let mut terms = Vec::new();
    for (i, a) in c.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let v = symbol(&names[i]);
        let mag = a.abs();
        let t = if mag.is_one() { v } else { format!("(* {mag} {v})") };
        terms.push(if a.is_negative() { format!("(- {t})") } else { t });
    }
    if terms.len() == 1 {
        terms.pop().unwrap()
    } else {
        format!("(+ {})", terms.join(" "))
    }
}

fn print_into(f: &Formula, names: &[String], out: &mut String) {
    match f {
        Formula::And(fs) if fs.is_empty() => out.push_str("true"),
        Formula::Or(fs) if fs.is_empty() => out.push_str("false"),
        Formula::And(fs) | Formula::Or(fs) => {
            out.push_str(if matches!(f, Formula::And(_)) { "(and" } else { "(or" });
            for g in fs {
                out.push(' ');
                print_into(g, names, out);
            }
            out.push(')');
        }
        Formula::Not(g) => {
            out.push_str("(not ");
            print_into(g, names, out);
            out.push(')');
        }
        Formula::Atom(c) => {
            let op = match c.rel() {
                Rel::Le => "<=",
                Rel::Eq => "=",
            };
            let _ = write!(out, "({op} {} {})", print_term(c, names), print_int(c.bound()));
        }
    }
}

/// Print a formula as an SMT-LIB term; `names[i]` names variable `i`.
pub fn print_smt2(f: &Formula, names: &[String]) -> String {
    let mut out = String::new();
    print_into(f, names, &mut out);
    out
}

fn value_of(e: &Sexp, name: &str) -> Result<BigInt, ModelParseError> {
    match e {
        Sexp::Atom(a, _) => a.parse().map_err(|_| ModelParseError::NonInteger(name.to_string())),
        Sexp::List(items, _) => match items.as_slice() {
            [Sexp::Atom(op, _), inner] if op == "-" => Ok(-value_of(inner, name)?),
            _ => Err(ModelParseError::NonInteger(name.to_string())),
        },
    }
}

/// Every zero-arity `define-fun` of a `get-model` response. Accepts both
/// `((define-fun ...) ...)` and the older `(model (define-fun ...) ...)`.
pub fn parse_assignments(text: &str) -> Result<HashMap<String, BigInt>, ModelParseError> {
    let e = parse_one(text).map_err(|e| ModelParseError::Malformed(e.message))?;
    let items = e.as_list().ok_or_else(|| ModelParseError::Malformed("expected a list".into()))?;
    let items = match items.first().and_then(Sexp::as_atom) {
        Some("model") => &items[1..],
        _ => items,
    };
    let mut out = HashMap::new();
    for item in items {
        let parts = item
            .as_list()
            .ok_or_else(|| ModelParseError::Malformed("expected (define-fun ...)".into()))?;
        match parts {
            [Sexp::Atom(kw, _), Sexp::Atom(name, _), Sexp::List(params, _), sort, value] if kw == "define-fun" => {
                if !params.is_empty() {
                    continue;
                }
                if sort.as_atom() != Some("Int") {
                    return Err(ModelParseError::NonInteger(name.clone()));
                }
                out.insert(name.clone(), value_of(value, name)?);
            }
            _ => return Err(ModelParseError::Malformed("expected (define-fun NAME () SORT VALUE)".into())),
        }
    }
    Ok(out)
}

/// The state named by a model; unmentioned variables default to 0.
pub fn parse_model(text: &str, vars: &[String]) -> Result<State, ModelParseError> {
    let m = parse_assignments(text)?;
    Ok(State::new(vars.iter().map(|v| m.get(v).cloned().unwrap_or_else(BigInt::zero)).collect()))
}
