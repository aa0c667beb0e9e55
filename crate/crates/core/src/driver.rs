//! The ICE loop: learn a candidate, ask the teacher, grow the sample.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use indexmap::IndexSet;

use crate::domains::Domain;
use crate::learner::{AttrSource, Learner, LearnerConfig};
use crate::model::{Counterexample, Formula, Sample, State, TranSys};
use crate::separator::{Separator, SeparatorKind};
use crate::teacher::{BuiltinTeacher, ScriptedTeacher, SmtTeacher, Teacher, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TeacherSpec {
    Builtin(i64),
    Smt { command: String, query_timeout: Duration },
    /// Replay `script`, then check with the builtin teacher on `bound`.
    Scripted { script: Vec<Counterexample>, bound: i64 },
}

impl Default for TeacherSpec {
    fn default() -> Self {
        TeacherSpec::Builtin(16)
    }
}

impl FromStr for TeacherSpec {
    type Err = String;

    /// `builtin:<B>` or `smt:<command>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(b) = s.strip_prefix("builtin:") {
            let b: i64 = b.parse().map_err(|_| format!("bad bound in {s:?}"))?;
            if b < 1 {
                return Err("builtin bound must be at least 1".into());
            }
            return Ok(TeacherSpec::Builtin(b));
        }
        if s == "builtin" {
            return Ok(TeacherSpec::Builtin(16));
        }
        if let Some(cmd) = s.strip_prefix("smt:") {
            if cmd.trim().is_empty() {
                return Err("empty solver command".into());
            }
            return Ok(TeacherSpec::Smt { command: cmd.to_string(), query_timeout: Duration::from_secs(10) });
        }
        Err(format!("unknown teacher {s:?} (expected builtin:<B> or smt:<command>)"))
    }
}

impl fmt::Display for TeacherSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TeacherSpec::Builtin(b) => write!(f, "builtin:{b}"),
            TeacherSpec::Smt { command, .. } => write!(f, "smt:{command}"),
            TeacherSpec::Scripted { script, bound } => write!(f, "scripted:{}+builtin:{bound}", script.len()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub domain: Domain,
    pub separator: SeparatorKind,
    pub teacher: TeacherSpec,
    pub max_iterations: usize,
    pub budget: Duration,
    pub penalty: f64,
    pub trace: bool,
    pub initial_attributes: bool,
    pub attrs: AttrSource,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            domain: Domain::Poly,
            separator: SeparatorKind::Incremental,
            teacher: TeacherSpec::default(),
            max_iterations: 500,
            budget: Duration::from_secs(300),
            penalty: 1.0,
            trace: false,
            initial_attributes: true,
            attrs: AttrSource::Separators,
        }
    }
}

impl RunConfig {
    fn learner(&self) -> LearnerConfig {
        LearnerConfig {
            domain: self.domain,
            separator: self.separator,
            penalty: self.penalty,
            initial_attributes: self.initial_attributes,
            source: self.attrs,
            trace: self.trace,
        }
    }

    pub fn teacher(&self) -> Box<dyn Teacher> {
        match &self.teacher {
            TeacherSpec::Builtin(b) => Box::new(BuiltinTeacher { bound: *b }),
            TeacherSpec::Smt { command, query_timeout } => Box::new(SmtTeacher::new(command.clone(), *query_timeout)),
            TeacherSpec::Scripted { script, bound } => Box::new(ScriptedTeacher::new(script.clone(), *bound)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Safe(Formula),
    Unsafe(State),
    Unknown(String),
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Safe(_) => "SAFE",
            Outcome::Unsafe(_) => "UNSAFE",
            Outcome::Unknown(_) => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunStats {
    pub iterations: usize,
    pub pool: usize,
    pub joins: u64,
    pub pops: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub outcome: Outcome,
    pub stats: RunStats,
    /// `Safe` was established by a teacher that only searches a finite box.
    pub bounded: bool,
    pub candidates: Vec<Formula>,
    pub separators: Vec<Separator>,
    pub sample: Sample,
    pub trace: Vec<String>,
}

/// Counterexamples implied by `c` given what the system says about its
/// states: successors of initial states are reachable, and a reachable
/// state outside `Good` refutes safety.
pub fn enrich(sys: &TranSys, c: &Counterexample) -> Vec<Counterexample> {
    let mut out = vec![c.clone()];
    match c {
        Counterexample::Positive(s) if !sys.is_good(s) => out.push(Counterexample::Negative(s.clone())),
        Counterexample::Negative(s) if sys.is_initial(s) => out.push(Counterexample::Positive(s.clone())),
        Counterexample::Implication(s, t) => {
            if sys.is_initial(s) {
                out.push(Counterexample::Positive(t.clone()));
            }
            if !sys.is_good(t) {
                out.push(Counterexample::Negative(t.clone()));
            }
        }
        _ => {}
    }
    out
}

/// A state outside `Good` reachable from the positives along the sample's
/// implications. Once positives and negatives meet, such a state exists.
fn bad_successor(sys: &TranSys, sample: &Sample) -> Option<State> {
    let mut seen: IndexSet<&State> = sample.pos.iter().collect();
    let mut i = 0;
    while let Some(&s) = seen.get_index(i) {
        if !sys.is_good(s) {
            return Some(s.clone());
        }
        for (_, t) in sample.impl_.iter().filter(|(p, _)| p == s) {
            seen.insert(t);
        }
        i += 1;
    }
    None
}

pub fn run_verification(sys: &TranSys, cfg: &RunConfig) -> RunResult {
    let mut teacher = cfg.teacher();
    run_with_teacher(sys, cfg, teacher.as_mut())
}

/// [`run_verification`] with a caller-supplied teacher; `cfg.teacher` is
/// ignored.
pub fn run_with_teacher(sys: &TranSys, cfg: &RunConfig, teacher: &mut dyn Teacher) -> RunResult {
    let start = Instant::now();
    let mut learner = Learner::new(sys.clone(), cfg.learner());
    let mut sample = Sample::new();
    let mut candidates = Vec::new();
    let mut iterations = 0;
    let outcome = 'run: loop {
        if iterations >= cfg.max_iterations.max(1) {
            break Outcome::Unknown(format!("iteration cap {} reached", cfg.max_iterations));
        }
        if start.elapsed() > cfg.budget {
            break Outcome::Unknown(format!("time budget {:?} exhausted", cfg.budget));
        }
        iterations += 1;
        let j = match learner.learn(&sample) {
            Ok(j) => j,
            Err(e) => break Outcome::Unknown(e.to_string()),
        };
        candidates.push(j.clone());
        let verdict = match teacher.check(sys, &j) {
            Ok(v) => v,
            Err(e) => break Outcome::Unknown(e.to_string()),
        };
        let c = match verdict {
            Verdict::Valid => match teacher.check(sys, &j) {
                Ok(Verdict::Valid) => break Outcome::Safe(j),
                Ok(Verdict::Cex(_)) => break Outcome::Unknown("candidate failed re-verification".into()),
                Err(e) => break Outcome::Unknown(e.to_string()),
            },
            Verdict::Cex(c) => c,
        };
        learner.stats_mut().event("CEX", iterations, || format!("{c:?}"));
        let before = sample.clone();
        for e in enrich(sys, &c) {
            if let Err(contra) = sample.add_counterexample(e) {
                break 'run Outcome::Unsafe(bad_successor(sys, &sample).unwrap_or(contra.witness));
            }
        }
        if sample == before {
            break Outcome::Unknown(format!("counterexample {c:?} does not change the sample"));
        }
    };
    let s = learner.stats();
    RunResult {
        bounded: matches!(outcome, Outcome::Safe(_)) && teacher.is_bounded(),
        outcome,
        stats: RunStats {
            iterations,
            pool: learner.pool().len(),
            joins: s.joins,
            pops: s.pops,
            elapsed: start.elapsed(),
        },
        candidates,
        separators: learner.history().to_vec(),
        sample,
        trace: s.trace.clone().unwrap_or_default(),
    }
}
