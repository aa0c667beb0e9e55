use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::{Duration, Instant};

use super::{is_genuine, Teacher, TeacherError, Verdict};
use crate::frontend::smt2::symbol;
use crate::frontend::{parse_model, print_smt2};
use crate::model::{Counterexample, Formula, State, TranSys};

fn primed_names(vars: &[String]) -> Vec<String> {
    vars.iter().map(|v| format!("{v}!p")).collect()
}

/// The three assertions checked for `j`, in order: `Init ∧ ¬J`,
/// `J ∧ ¬Good` and `J ∧ T ∧ ¬J'`.
pub fn queries(sys: &TranSys, j: &Formula) -> [String; 3] {
    let n = sys.dim();
    let both: Vec<String> = sys.vars.iter().cloned().chain(primed_names(&sys.vars)).collect();
    let not_j = Formula::negate(j.clone());
    [
        print_smt2(&Formula::and(vec![sys.init.clone(), not_j.clone()]), &sys.vars),
        print_smt2(&Formula::and(vec![j.clone(), Formula::negate(sys.good.clone())]), &sys.vars),
        print_smt2(&Formula::and(vec![j.unprimed(n), sys.trans.clone(), not_j.primed(n)]), &both),
    ]
}

/// A long-lived solver process speaking SMT-LIB2 over stdin/stdout.
pub struct SmtSession {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<String>,
    timeout: Duration,
    declared: Vec<String>,
}

fn depth_change(line: &str) -> i64 {
    let mut d = 0;
    let mut quoted = false;
    let mut string = false;
    for c in line.chars() {
        match c {
            '|' if !string => quoted = !quoted,
            '"' if !quoted => string = !string,
            '(' if !quoted && !string => d += 1,
            ')' if !quoted && !string => d -= 1,
            _ => {}
        }
    }
    d
}

impl SmtSession {
    /// Start `command` (split on whitespace) in LIA mode.
    pub fn spawn(command: &str, timeout: Duration) -> Result<Self, TeacherError> {
        let mut parts = command.split_whitespace();
        let prog = parts.next().ok_or_else(|| TeacherError::Solver("empty solver command".into()))?;
        let mut child = Command::new(prog)
            .args(parts)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| TeacherError::Solver(format!("cannot start {prog:?}: {e}")))?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                let Ok(line) = line else { break };
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        let mut s = SmtSession { child, stdin, lines: rx, timeout, declared: Vec::new() };
        s.send("(set-option :produce-models true)\n(set-logic LIA)\n")?;
        Ok(s)
    }

    fn send(&mut self, text: &str) -> Result<(), TeacherError> {
        self.stdin
            .write_all(text.as_bytes())
            .and_then(|_| self.stdin.flush())
            .map_err(|e| TeacherError::Solver(format!("write failed: {e}")))
    }

    /// One complete response: a bare atom or a balanced S-expression.
    fn read_response(&mut self) -> Result<String, TeacherError> {
        let deadline = Instant::now() + self.timeout;
        let mut out = String::new();
        let mut depth = 0;
        loop {
            let left = deadline.saturating_duration_since(Instant::now());
            let line = match self.lines.recv_timeout(left) {
                Ok(l) => l,
                Err(RecvTimeoutError::Timeout) => {
                    let _ = self.child.kill();
                    return Err(TeacherError::Timeout(self.timeout));
                }
                Err(RecvTimeoutError::Disconnected) => {
                    return Err(TeacherError::Solver("solver exited".into()));
                }
            };
            depth += depth_change(&line);
            out.push_str(&line);
            out.push('\n');
            if depth <= 0 && !out.trim().is_empty() {
                let t = out.trim().to_string();
                if t.starts_with("(error") {
                    return Err(TeacherError::Solver(t));
                }
                return Ok(t);
            }
        }
    }

    /// Declare every name not declared yet as an integer constant.
    pub fn declare(&mut self, names: &[String]) -> Result<(), TeacherError> {
        let mut text = String::new();
        for n in names {
            if !self.declared.contains(n) {
                text.push_str(&format!("(declare-const {} Int)\n", symbol(n)));
                self.declared.push(n.clone());
            }
        }
        self.send(&text)
    }

    /// Check `assertion` in a fresh scope; the model text when satisfiable.
    pub fn query(&mut self, assertion: &str) -> Result<Option<String>, TeacherError> {
        self.send(&format!("(push 1)\n(assert {assertion})\n(check-sat)\n"))?;
        let answer = self.read_response()?;
        let model = match answer.as_str() {
            "unsat" => None,
            "sat" => {
                self.send("(get-model)\n")?;
                Some(self.read_response()?)
            }
            other => {
                self.send("(pop 1)\n")?;
                return Err(TeacherError::Solver(format!("check-sat answered {other:?}")));
            }
        };
        self.send("(pop 1)\n")?;
        Ok(model)
    }
}

impl Drop for SmtSession {
    fn drop(&mut self) {
        let _ = self.send("(exit)\n");
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

fn state(model: &str, names: &[String]) -> Result<State, TeacherError> {
    parse_model(model, names).map_err(|e| TeacherError::MalformedModel(e.to_string()))
}

/// Check `j` with the solver behind `session`. Every model is re-checked by
/// evaluation before it is returned.
pub fn check_inductive(sys: &TranSys, j: &Formula, session: &mut SmtSession) -> Result<Verdict, TeacherError> {
    let primed = primed_names(&sys.vars);
    session.declare(&sys.vars)?;
    session.declare(&primed)?;
    let [q1, q2, q3] = queries(sys, j);
    let cex = if let Some(m) = session.query(&q1)? {
        Some(Counterexample::Positive(state(&m, &sys.vars)?))
    } else if let Some(m) = session.query(&q2)? {
        Some(Counterexample::Negative(state(&m, &sys.vars)?))
    } else if let Some(m) = session.query(&q3)? {
        Some(Counterexample::Implication(state(&m, &sys.vars)?, state(&m, &primed)?))
    } else {
        None
    };
    match cex {
        None => Ok(Verdict::Valid),
        Some(c) if is_genuine(sys, j, &c) => Ok(Verdict::Cex(c)),
        Some(c) => Err(TeacherError::NotGenuine(format!("{c:?}"))),
    }
}

/// Teacher backed by an external solver, started on first use.
pub struct SmtTeacher {
    command: String,
    timeout: Duration,
    session: Option<SmtSession>,
}

impl SmtTeacher {
    pub fn new(command: impl Into<String>, timeout: Duration) -> Self {
        SmtTeacher { command: command.into(), timeout, session: None }
    }
}

impl Teacher for SmtTeacher {
    fn check(&mut self, sys: &TranSys, j: &Formula) -> Result<Verdict, TeacherError> {
        if self.session.is_none() {
            self.session = Some(SmtSession::spawn(&self.command, self.timeout)?);
        }
        let r = check_inductive(sys, j, self.session.as_mut().unwrap());
        if matches!(r, Err(TeacherError::Timeout(_) | TeacherError::Solver(_))) {
            self.session = None;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_formula, parse_system};

    #[test]
    fn queries_are_pure() {
        let sys = parse_system(include_str!("../../corpus/stride.ts")).unwrap();
        let j = parse_formula("(= k 0)", &sys.vars).unwrap();
        let q = queries(&sys, &j);
        assert_eq!(q, queries(&sys, &j));
        assert!(q[2].contains("j!p"));
    }

    #[test]
    fn response_depth() {
        assert_eq!(depth_change("((define-fun x () Int"), 2);
        assert_eq!(depth_change("(define-fun |a)b| () Int 1)"), 0);
    }
}
