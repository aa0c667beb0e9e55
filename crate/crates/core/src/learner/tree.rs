use std::collections::HashMap;

use indexmap::IndexSet;

use super::LearnError;
use crate::model::{Formula, LinearConstraint, Sample, State};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(bool),
    Node {
        attr: LinearConstraint,
        /// Points satisfying `attr`.
        yes: Box<DecisionTree>,
        no: Box<DecisionTree>,
    },
}

impl DecisionTree {
    /// Polarity of the leaf `p` is routed to.
    pub fn route(&self, p: &State) -> bool {
        match self {
            DecisionTree::Leaf(b) => *b,
            DecisionTree::Node { attr, yes, no } => {
                if attr.holds(p.values()) {
                    yes.route(p)
                } else {
                    no.route(p)
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node { yes, no, .. } => 1 + yes.depth().max(no.depth()),
        }
    }
}

/// Disjunction over root-to-`+` paths of the path literals.
pub fn tree_to_formula(t: &DecisionTree) -> Formula {
    fn walk(t: &DecisionTree, path: &mut Vec<Formula>, out: &mut Vec<Formula>) {
        match t {
            DecisionTree::Leaf(true) => out.push(Formula::and(path.clone())),
            DecisionTree::Leaf(false) => {}
            DecisionTree::Node { attr, yes, no } => {
                path.push(Formula::Atom(attr.clone()));
                walk(yes, path, out);
                path.pop();
                path.push(Formula::negate(Formula::Atom(attr.clone())));
                walk(no, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(t, &mut Vec::new(), &mut out);
    Formula::or(out)
}

/// Truth table of every attribute on every sample point.
struct Signatures {
    points: IndexSet<State>,
    /// `bits[a][p]`
    bits: Vec<Vec<bool>>,
}

impl Signatures {
    fn new(attrs: &[LinearConstraint], points: IndexSet<State>) -> Self {
        let bits = attrs.iter().map(|a| points.iter().map(|p| a.holds(p.values())).collect()).collect();
        Signatures { points, bits }
    }

    fn of_point(&self, p: usize) -> Vec<bool> {
        self.bits.iter().map(|row| row[p]).collect()
    }
}

/// Are the attributes fine enough for a consistent tree to exist?
///
/// Points with equal truth values on every attribute are linked by
/// implications both ways and the sample is re-closed. Returns `false` (and
/// the input sample) on a conflict, otherwise the extended sample.
pub fn sufficient(attrs: &[LinearConstraint], sample: &Sample) -> (bool, Sample) {
    let sig = Signatures::new(attrs, sample.points());
    let mut classes: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut ext = sample.clone();
    for i in 0..sig.points.len() {
        let key = sig.of_point(i);
        match classes.get(&key) {
            Some(&first) => {
                let a = sig.points[first].clone();
                let b = sig.points[i].clone();
                ext.impl_.insert((a.clone(), b.clone()));
                ext.impl_.insert((b, a));
            }
            None => {
                classes.insert(key, i);
            }
        }
    }
    ext.close();
    if ext.contradiction().is_some() {
        return (false, sample.clone());
    }
    (true, ext)
}

/// Entropy in nats of a two-class distribution.
fn entropy(p: usize, n: usize) -> f64 {
    let t = (p + n) as f64;
    let h = |k: usize| {
        if k == 0 {
            0.0
        } else {
            let q = k as f64 / t;
            -q * q.ln()
        }
    };
    if p == 0 || n == 0 {
        0.0
    } else {
        h(p) + h(n)
    }
}

struct Builder<'a> {
    sig: Signatures,
    attrs: &'a [LinearConstraint],
    impls: Vec<(usize, usize)>,
    class: Vec<Option<bool>>,
    penalty: f64,
}

impl Builder<'_> {
    fn close(&mut self) -> Result<(), LearnError> {
        loop {
            let mut changed = false;
            for &(s, t) in &self.impls {
                match (self.class[s], self.class[t]) {
                    (Some(true), Some(false)) => {
                        return Err(LearnError::Internal(format!(
                            "implication {} -> {} classified + -",
                            self.sig.points[s], self.sig.points[t]
                        )))
                    }
                    (Some(true), None) => {
                        self.class[t] = Some(true);
                        changed = true;
                    }
                    (None, Some(false)) => {
                        self.class[s] = Some(false);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn gain(&self, a: usize, examples: &[usize], in_node: &[bool]) -> f64 {
        let row = &self.sig.bits[a];
        let (mut pl, mut nl, mut pr, mut nr) = (0, 0, 0, 0);
        for &e in examples {
            match (self.class[e], row[e]) {
                (Some(true), true) => pl += 1,
                (Some(false), true) => nl += 1,
                (Some(true), false) => pr += 1,
                (Some(false), false) => nr += 1,
                (None, _) => {}
            }
        }
        let total = (pl + nl + pr + nr) as f64;
        let info = entropy(pl + pr, nl + nr)
            - (pl + nl) as f64 / total * entropy(pl, nl)
            - (pr + nr) as f64 / total * entropy(pr, nr);
        let cut = self.impls.iter().filter(|&&(s, t)| in_node[s] && in_node[t] && row[s] != row[t]).count();
        info - self.penalty * std::f64::consts::LN_2 * cut as f64
    }

    fn choose(&self, avail: &[usize], examples: &[usize]) -> Option<usize> {
        let mut in_node = vec![false; self.sig.points.len()];
        for &e in examples {
            in_node[e] = true;
        }
        let mut best: Option<(usize, f64)> = None;
        for &a in avail {
            let row = &self.sig.bits[a];
            let splits = examples.iter().any(|&e| row[e]) && examples.iter().any(|&e| !row[e]);
            if !splits {
                continue;
            }
            let g = self.gain(a, examples, &in_node);
            if best.is_none_or(|(_, bg)| g > bg) {
                best = Some((a, g));
            }
        }
        best.map(|(a, _)| a)
    }

    fn build(&mut self, examples: Vec<usize>, avail: Vec<usize>) -> Result<DecisionTree, LearnError> {
        let has = |b: bool, class: &[Option<bool>]| examples.iter().any(|&e| class[e] == Some(b));
        let has_pos = has(true, &self.class);
        let has_neg = has(false, &self.class);
        if !has_neg || !has_pos {
            let label = !has_neg;
            for &e in &examples {
                if self.class[e].is_none() {
                    self.class[e] = Some(label);
                }
            }
            self.close()?;
            return Ok(DecisionTree::Leaf(label));
        }
        let a = self
            .choose(&avail, &examples)
            .ok_or_else(|| LearnError::Internal("no attribute separates the node's examples".into()))?;
        let (yes, no): (Vec<usize>, Vec<usize>) = examples.iter().partition(|&&e| self.sig.bits[a][e]);
        let rest: Vec<usize> = avail.into_iter().filter(|&b| b != a).collect();
        let yes = self.build(yes, rest.clone())?;
        let no = self.build(no, rest)?;
        Ok(DecisionTree::Node { attr: self.attrs[a].clone(), yes: Box::new(yes), no: Box::new(no) })
    }
}

/// Decision tree consistent with `sample`, which should be the extended
/// sample returned by [`sufficient`] for the same attributes. `penalty`
/// weighs each implication cut by a split, in bits.
pub fn construct_tree(sample: &Sample, attrs: &[LinearConstraint], penalty: f64) -> Result<DecisionTree, LearnError> {
    let sig = Signatures::new(attrs, sample.points());
    let idx = |s: &State| sig.points.get_index_of(s).expect("sample point");
    let impls: Vec<(usize, usize)> = sample.impl_.iter().map(|(s, t)| (idx(s), idx(t))).collect();
    let mut class = vec![None; sig.points.len()];
    for p in &sample.pos {
        class[idx(p)] = Some(true);
    }
    for n in &sample.neg {
        class[idx(n)] = Some(false);
    }
    let n = sig.points.len();
    let mut b = Builder { sig, attrs, impls, class, penalty };
    b.close()?;
    b.build((0..n).collect(), (0..attrs.len()).collect())
}

/// The index of the attribute `choose` picks at the root of `sample`.
pub fn choose_root(sample: &Sample, attrs: &[LinearConstraint], penalty: f64) -> Option<usize> {
    let sig = Signatures::new(attrs, sample.points());
    let idx = |s: &State| sig.points.get_index_of(s).expect("sample point");
    let impls: Vec<(usize, usize)> = sample.impl_.iter().map(|(s, t)| (idx(s), idx(t))).collect();
    let mut class = vec![None; sig.points.len()];
    for p in &sample.pos {
        class[idx(p)] = Some(true);
    }
    for n in &sample.neg {
        class[idx(n)] = Some(false);
    }
    let n = sig.points.len();
    let b = Builder { sig, attrs, impls, class, penalty };
    b.choose(&(0..attrs.len()).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>())
}

/// Information gain (nats) of `attr` on the classified points of `sample`,
/// minus the implication-cut penalty.
pub fn gain(attr: &LinearConstraint, sample: &Sample, penalty: f64) -> f64 {
    let attrs = std::slice::from_ref(attr);
    let sig = Signatures::new(attrs, sample.points());
    let idx = |s: &State| sig.points.get_index_of(s).expect("sample point");
    let impls: Vec<(usize, usize)> = sample.impl_.iter().map(|(s, t)| (idx(s), idx(t))).collect();
    let mut class = vec![None; sig.points.len()];
    for p in &sample.pos {
        class[idx(p)] = Some(true);
    }
    for n in &sample.neg {
        class[idx(n)] = Some(false);
    }
    let n = sig.points.len();
    let b = Builder { sig, attrs, impls, class, penalty };
    b.gain(0, &(0..n).collect::<Vec<_>>(), &vec![true; n])
}
