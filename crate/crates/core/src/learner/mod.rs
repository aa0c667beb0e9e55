//! The ICE decision-tree learner.
//!
//! Attributes are harvested from a separator of the current sample (plus,
//! optionally, the atoms of the system itself). A decision tree over them
//! is grown so that every positive point lands in a `+` leaf, every
//! negative in a `-` leaf, and no implication goes from `+` to `-`.
//!
//! ```
//! use numinv::frontend::parse_system;
//! use numinv::learner::{Learner, LearnerConfig};
//! use numinv::model::{Counterexample, Sample, State};
//!
//! let sys = parse_system(
//!     "(declare-var x Int) (init (= x 0)) (trans (= x' (+ x 1))) (good (>= x 0))",
//! ).unwrap();
//! let mut learner = Learner::new(sys, LearnerConfig::default());
//! let mut sample = Sample::new();
//! assert!(learner.learn(&sample).unwrap().is_true_literal());
//!
//! sample.add_counterexample(Counterexample::Negative(State::from_i64(&[-1]))).unwrap();
//! sample.add_counterexample(Counterexample::Positive(State::from_i64(&[0]))).unwrap();
//! let j = learner.learn(&sample).unwrap();
//! assert!(sample.is_consistent_with(&j).unwrap());
//! ```

mod attributes;
mod tree;

use thiserror::Error;

pub use attributes::{dedup, initial_attributes, octagon_templates, same_split};
pub use tree::{choose_root, construct_tree, gain, sufficient, tree_to_formula, DecisionTree};

use crate::domains::{AbstractElement, Domain};
use crate::model::{Formula, LinearConstraint, Sample, TranSys};
use crate::separator::{
    construct_separator, construct_separator_inc, construct_separator_refined, Separator, SeparatorError,
    SeparatorKind, SeparatorStack, Stats,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LearnError {
    #[error("internal learner error: {0}")]
    Internal(String),
    #[error(transparent)]
    Separator(#[from] SeparatorError),
}

/// Where attributes come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttrSource {
    Separators,
    /// Enumerated octagonal atoms with constants bounded by the given value,
    /// widened until the pool suffices.
    OctagonTemplates(i64),
}

#[derive(Clone, Debug)]
pub struct LearnerConfig {
    pub domain: Domain,
    pub separator: SeparatorKind,
    /// Weight of each implication cut by a split, in bits.
    pub penalty: f64,
    /// Add the atoms of `Init`, `Good` and `Trans` to every pool.
    pub initial_attributes: bool,
    pub source: AttrSource,
    pub trace: bool,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        LearnerConfig {
            domain: Domain::Poly,
            separator: SeparatorKind::Incremental,
            penalty: 1.0,
            initial_attributes: true,
            source: AttrSource::Separators,
            trace: false,
        }
    }
}

pub struct Learner {
    sys: TranSys,
    cfg: LearnerConfig,
    pool: Vec<LinearConstraint>,
    initial: Option<Vec<LinearConstraint>>,
    stack: SeparatorStack,
    stats: Stats,
    history: Vec<Separator>,
    template_bound: i64,
    last_tree: Option<DecisionTree>,
}

impl Learner {
    pub fn new(sys: TranSys, cfg: LearnerConfig) -> Self {
        let stats = if cfg.trace { Stats::with_trace() } else { Stats::default() };
        let template_bound = match cfg.source {
            AttrSource::OctagonTemplates(c) => c.max(0),
            AttrSource::Separators => 0,
        };
        Learner {
            sys,
            cfg,
            pool: Vec::new(),
            initial: None,
            stack: SeparatorStack::new(),
            stats,
            history: Vec::new(),
            template_bound,
            last_tree: None,
        }
    }

    pub fn config(&self) -> &LearnerConfig {
        &self.cfg
    }

    /// The current attribute pool, in tie-break order.
    pub fn pool(&self) -> &[LinearConstraint] {
        &self.pool
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub(crate) fn stats_mut(&mut self) -> &mut Stats {
        &mut self.stats
    }

    pub fn stack(&self) -> &SeparatorStack {
        &self.stack
    }

    /// Every separator computed so far, oldest first.
    pub fn history(&self) -> &[Separator] {
        &self.history
    }

    pub fn last_tree(&self) -> Option<&DecisionTree> {
        self.last_tree.as_ref()
    }

    fn seed(&self, sample: &Sample) -> Vec<AbstractElement> {
        AbstractElement::from_conjunction(&self.sys.init, self.sys.dim(), self.cfg.domain)
            .filter(|d| sample.neg.iter().all(|n| !d.contains(n.values())))
            .into_iter()
            .collect()
    }

    fn initial(&mut self) -> Vec<LinearConstraint> {
        if !self.cfg.initial_attributes {
            return Vec::new();
        }
        self.initial.get_or_insert_with(|| initial_attributes(&self.sys)).clone()
    }

    /// Replace the pool by the constraints of a fresh separator of `sample`
    /// (plus the initial attributes when enabled).
    pub fn generate_attributes(&mut self, sample: &Sample) -> Result<&[LinearConstraint], LearnError> {
        let seed = self.seed(sample);
        let sep = match self.cfg.separator {
            SeparatorKind::Basic => construct_separator(sample, self.cfg.domain, &seed, &mut self.stats)?,
            SeparatorKind::Incremental => {
                construct_separator_inc(sample, self.cfg.domain, &mut self.stack, &seed, &mut self.stats)
            }
            SeparatorKind::Refined => {
                construct_separator_refined(sample, self.cfg.domain, &mut self.stack, &seed, &mut self.stats)
            }
        };
        let mut attrs: Vec<LinearConstraint> = sep.constraints().into_iter().flatten().collect();
        self.history.push(sep);
        attrs.extend(self.initial());
        self.pool = dedup(attrs);
        Ok(&self.pool)
    }

    fn template_pool(&mut self, sample: &Sample) -> (bool, Sample) {
        let n = self.sys.dim();
        let reach = sample
            .points()
            .iter()
            .flat_map(|p| p.values().iter().map(|v| v.magnitude().clone()))
            .max()
            .map_or(0, |m| i64::try_from(m).unwrap_or(i64::MAX));
        loop {
            let mut attrs = octagon_templates(n, self.template_bound);
            attrs.extend(self.initial());
            self.pool = dedup(attrs);
            let (ok, ext) = sufficient(&self.pool, sample);
            if ok || self.template_bound >= reach {
                return (ok, ext);
            }
            self.template_bound = (self.template_bound * 2).max(1).min(reach);
        }
    }

    /// A candidate consistent with `sample`, as a decision tree.
    pub fn learn_tree(&mut self, sample: &Sample) -> Result<DecisionTree, LearnError> {
        let (ok, ext) = sufficient(&self.pool, sample);
        let ext = if ok {
            ext
        } else {
            let (ok, ext) = match self.cfg.source {
                AttrSource::Separators => {
                    self.generate_attributes(sample)?;
                    sufficient(&self.pool, sample)
                }
                AttrSource::OctagonTemplates(_) => self.template_pool(sample),
            };
            if !ok {
                return Err(LearnError::Internal("regenerated attribute pool is not sufficient".into()));
            }
            ext
        };
        let t = construct_tree(&ext, &self.pool, self.cfg.penalty)?;
        self.last_tree = Some(t.clone());
        Ok(t)
    }

    /// A candidate invariant consistent with `sample`.
    pub fn learn(&mut self, sample: &Sample) -> Result<Formula, LearnError> {
        let t = self.learn_tree(sample)?;
        Ok(tree_to_formula(&t))
    }
}
