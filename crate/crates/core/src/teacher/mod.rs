//! Teachers check candidate invariants and answer with counterexamples.
//!
//! A candidate `J` is an inductive invariant when `Init ⇒ J`, `J ⇒ Good`
//! and `J ∧ T ⇒ J'`. The three conditions are checked in that order and
//! the first violation is returned as a positive, negative or implication
//! counterexample.

mod builtin;
mod scripted;
mod search;
mod smt;

use thiserror::Error;

pub use builtin::{builtin_check, naive_check, BuiltinTeacher, DNF_CAP};
pub use scripted::ScriptedTeacher;
pub use search::lex_min;
pub use smt::{check_inductive, queries, SmtSession, SmtTeacher};

use crate::model::{Counterexample, Formula, TranSys};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Cex(Counterexample),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TeacherError {
    #[error("solver: {0}")]
    Solver(String),
    #[error("solver did not answer within {0:?}")]
    Timeout(std::time::Duration),
    #[error("malformed solver model: {0}")]
    MalformedModel(String),
    #[error("counterexample is not genuine: {0}")]
    NotGenuine(String),
    #[error("script mismatch: {0}")]
    ScriptMismatch(String),
}

pub trait Teacher {
    fn check(&mut self, sys: &TranSys, j: &Formula) -> Result<Verdict, TeacherError>;

    /// `Valid` only means no violation inside a finite box.
    fn is_bounded(&self) -> bool {
        false
    }
}

/// Does `cex` really refute `j` for `sys`?
pub fn is_genuine(sys: &TranSys, j: &Formula, cex: &Counterexample) -> bool {
    let holds = |s: &crate::model::State| s.dim() == sys.dim() && j.eval(s.values()).unwrap_or(false);
    match cex {
        Counterexample::Positive(s) => s.dim() == sys.dim() && sys.is_initial(s) && !holds(s),
        Counterexample::Negative(s) => s.dim() == sys.dim() && holds(s) && !sys.is_good(s),
        Counterexample::Implication(s, t) => {
            s.dim() == sys.dim() && t.dim() == sys.dim() && holds(s) && sys.is_transition(s, t) && !holds(t)
        }
    }
}
