use std::collections::VecDeque;

use super::{builtin_check, is_genuine, Teacher, TeacherError, Verdict};
use crate::model::{Counterexample, Formula, TranSys};

/// Replays a fixed list of counterexamples, then falls back to
/// [`builtin_check`] once the list is exhausted.
#[derive(Clone, Debug)]
pub struct ScriptedTeacher {
    script: VecDeque<Counterexample>,
    bound: i64,
}

impl ScriptedTeacher {
    pub fn new(script: impl IntoIterator<Item = Counterexample>, bound: i64) -> Self {
        ScriptedTeacher { script: script.into_iter().collect(), bound }
    }

    pub fn remaining(&self) -> usize {
        self.script.len()
    }
}

impl Teacher for ScriptedTeacher {
    fn check(&mut self, sys: &TranSys, j: &Formula) -> Result<Verdict, TeacherError> {
        match self.script.pop_front() {
            Some(c) if is_genuine(sys, j, &c) => Ok(Verdict::Cex(c)),
            Some(c) => Err(TeacherError::ScriptMismatch(format!("{c:?} does not refute the candidate"))),
            None => Ok(builtin_check(sys, j, self.bound)),
        }
    }

    fn is_bounded(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_system;
    use crate::model::State;

    fn sys() -> TranSys {
        parse_system("(declare-var x Int) (init (= x 0)) (trans (= x' x)) (good (>= x 0))").unwrap()
    }

    #[test]
    fn empty_script_confirms_inductive_candidate() {
        let j = Formula::atom(crate::model::LinearConstraint::eq_i64(&[1], 0));
        assert_eq!(ScriptedTeacher::new([], 4).check(&sys(), &j).unwrap(), Verdict::Valid);
    }

    #[test]
    fn non_initial_positive_is_a_mismatch() {
        let mut t = ScriptedTeacher::new([Counterexample::Positive(State::from_i64(&[3]))], 4);
        assert!(matches!(t.check(&sys(), &Formula::ff()), Err(TeacherError::ScriptMismatch(_))));
    }
}
