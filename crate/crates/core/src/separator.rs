//! Join-maximal separators of ICE samples.
//!
//! A separator is a finite set of abstract elements that together cover
//! every positive state, contain no negative state, and are closed under
//! the sample's implications. Three constructions are provided: the basic
//! fixpoint, an incremental variant that reuses earlier separators kept on
//! a stack, and a refined incremental variant that tracks which joins
//! produced each element so that it can backtrack further in one step.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use indexmap::IndexSet;
use thiserror::Error;

use crate::domains::{AbstractElement, Domain};
use crate::model::{LinearConstraint, Sample, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeparatorKind {
    Basic,
    Incremental,
    Refined,
}

impl fmt::Display for SeparatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeparatorKind::Basic => "basic",
            SeparatorKind::Incremental => "incremental",
            SeparatorKind::Refined => "refined",
        })
    }
}

impl FromStr for SeparatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basic" => Ok(SeparatorKind::Basic),
            "incremental" => Ok(SeparatorKind::Incremental),
            "refined" => Ok(SeparatorKind::Refined),
            _ => Err(format!("unknown separator {s:?} (expected basic, incremental or refined)")),
        }
    }
}

/// Work counters, plus an optional event log (`EVENT\tstep\tpayload`).
#[derive(Clone, Debug, Default)]
pub struct Stats {
    pub joins: u64,
    pub pops: u64,
    pub trace: Option<Vec<String>>,
}

impl Stats {
    pub fn with_trace() -> Self {
        Stats { trace: Some(Vec::new()), ..Stats::default() }
    }

    pub fn event(&mut self, kind: &str, step: usize, payload: impl FnOnce() -> String) {
        if let Some(t) = self.trace.as_mut() {
            t.push(format!("{kind}\t{step}\t{}", payload()));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separator {
    pub elems: Vec<AbstractElement>,
}

impl Separator {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn covers(&self, p: &State) -> bool {
        covered(&self.elems, p)
    }

    /// Constraint sets of the elements, in element order.
    pub fn constraints(&self) -> Vec<Vec<LinearConstraint>> {
        self.elems.iter().map(AbstractElement::constraints).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeparatorError {
    #[error("seed element contains negative state {0}")]
    SeedViolation(State),
}

fn covered(elems: &[AbstractElement], p: &State) -> bool {
    elems.iter().any(|d| d.contains(p.values()))
}

fn excludes_all(d: &AbstractElement, neg: &IndexSet<State>) -> bool {
    neg.iter().all(|n| !d.contains(n.values()))
}

/// Coverage, exclusion and implication consistency, checked literally.
pub fn is_separator(sep: &Separator, sample: &Sample) -> bool {
    sample.pos.iter().all(|p| sep.covers(p))
        && sep.elems.iter().all(|d| excludes_all(d, &sample.neg))
        && sample.impl_.iter().all(|(p, q)| !sep.covers(p) || sep.covers(q))
}

/// No two distinct elements can be joined without capturing a negative.
pub fn is_join_maximal(sep: &Separator, sample: &Sample) -> bool {
    let e = &sep.elems;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if e[i] == e[j] {
                continue;
            }
            let o = e[i].join(&e[j]).expect("separator elements share a domain");
            if excludes_all(&o, &sample.neg) {
                return false;
            }
        }
    }
    true
}

/// Elements with identities, so that rejected pairs are never re-joined.
struct Pool {
    elems: Vec<(u64, AbstractElement)>,
    next_id: u64,
}

impl Pool {
    fn push(&mut self, d: AbstractElement) {
        if self.elems.iter().all(|(_, e)| *e != d) {
            self.elems.push((self.next_id, d));
            self.next_id += 1;
        }
    }

    fn covers(&self, p: &State) -> bool {
        self.elems.iter().any(|(_, d)| d.contains(p.values()))
    }
}

/// Basic construction: start from `seed` followed by one singleton per
/// positive, add implication targets of covered sources, and join pairs
/// `(i, j)`, `i < j`, scanning from the start after each successful join.
pub fn construct_separator(
    sample: &Sample,
    domain: Domain,
    seed: &[AbstractElement],
    stats: &mut Stats,
) -> Result<Separator, SeparatorError> {
    for d in seed {
        if let Some(n) = sample.neg.iter().find(|n| d.contains(n.values())) {
            return Err(SeparatorError::SeedViolation(n.clone()));
        }
    }
    let mut pool = Pool { elems: Vec::new(), next_id: 0 };
    for d in seed {
        pool.push(d.clone());
    }
    for p in &sample.pos {
        pool.push(AbstractElement::singleton(p, domain));
    }
    let mut rejected: HashSet<(u64, u64)> = HashSet::new();
    loop {
        loop {
            let target = sample
                .impl_
                .iter()
                .find(|(p, q)| pool.covers(p) && !pool.covers(q))
                .map(|(_, q)| q.clone());
            match target {
                Some(q) => {
                    stats.event("IMPL", 0, || q.to_string());
                    pool.push(AbstractElement::singleton(&q, domain));
                }
                None => break,
            }
        }
        let mut merged = None;
        'scan: for i in 0..pool.elems.len() {
            for j in i + 1..pool.elems.len() {
                let key = (pool.elems[i].0, pool.elems[j].0);
                if rejected.contains(&key) {
                    continue;
                }
                stats.joins += 1;
                let o = pool.elems[i].1.join(&pool.elems[j].1).expect("same domain");
                if excludes_all(&o, &sample.neg) {
                    merged = Some((i, j, o));
                    break 'scan;
                }
                stats.event("JOIN", 0, || format!("rejected {i} {j}"));
                rejected.insert(key);
            }
        }
        let Some((i, j, o)) = merged else { break };
        stats.event("JOIN", 0, || format!("merged {i} {j}"));
        pool.elems.remove(j);
        pool.elems[i] = (pool.next_id, o);
        pool.next_id += 1;
        let fresh = pool.elems[i].1.clone();
        let id = pool.elems[i].0;
        pool.elems.retain(|(k, e)| *k == id || *e != fresh);
    }
    Ok(Separator { elems: pool.elems.into_iter().map(|(_, d)| d).collect() })
}

/// An element together with the step that created it and, for joins, the
/// two nodes it was joined from.
#[derive(Debug)]
pub struct Node {
    pub object: AbstractElement,
    pub index: usize,
    pub parents: Vec<Arc<Node>>,
}

#[derive(Clone, Debug)]
pub struct Layer {
    pub forest: Vec<Arc<Node>>,
    pub index: usize,
}

/// History of partial separators for the incremental variants. The bottom
/// layer is the empty separator and is never popped.
#[derive(Clone, Debug)]
pub struct SeparatorStack {
    layers: Vec<Layer>,
    step: usize,
}

impl Default for SeparatorStack {
    fn default() -> Self {
        SeparatorStack { layers: vec![Layer { forest: Vec::new(), index: 0 }], step: 0 }
    }
}

impl SeparatorStack {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Number of stored layers, bottom included.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    fn head(&self) -> &Layer {
        self.layers.last().expect("bottom layer is never popped")
    }

    fn pop(&mut self, stats: &mut Stats) -> bool {
        if self.layers.len() <= 1 {
            return false;
        }
        let l = self.layers.pop().unwrap();
        stats.pops += 1;
        stats.event("POP", self.step, || l.index.to_string());
        true
    }

    /// No layer holds an element containing one of `neg`.
    pub fn excludes(&self, neg: &IndexSet<State>) -> bool {
        self.layers.iter().all(|l| l.forest.iter().all(|n| excludes_all(&n.object, neg)))
    }

    /// Push a hand-built layer; used to set up backtracking scenarios.
    pub fn push_layer(&mut self, forest: Vec<Arc<Node>>, index: usize) {
        self.step = self.step.max(index);
        self.layers.push(Layer { forest, index });
    }
}

fn offending<'a>(layer: &'a Layer, neg: &'a IndexSet<State>) -> Option<(&'a State, &'a Arc<Node>)> {
    neg.iter().find_map(|n| layer.forest.iter().find(|node| node.object.contains(n.values())).map(|node| (n, node)))
}

fn forest_covers(forest: &[Arc<Node>], p: &State) -> bool {
    forest.iter().any(|n| n.object.contains(p.values()))
}

/// Incremental construction: pop every head layer that contains a negative,
/// then expand the surviving partial separator with the uncovered positives
/// and the implication targets its elements force.
pub fn construct_separator_inc(
    sample: &Sample,
    domain: Domain,
    stack: &mut SeparatorStack,
    seed: &[AbstractElement],
    stats: &mut Stats,
) -> Separator {
    stack.step += 1;
    while offending(stack.head(), &sample.neg).is_some() {
        if !stack.pop(stats) {
            break;
        }
    }
    expand(sample, domain, stack, seed, stats)
}

/// Refined incremental construction: when the head contains a negative,
/// walk from the offending element up its join ancestry to the oldest node
/// still containing the negative, and drop every layer from that node's
/// step on.
pub fn construct_separator_refined(
    sample: &Sample,
    domain: Domain,
    stack: &mut SeparatorStack,
    seed: &[AbstractElement],
    stats: &mut Stats,
) -> Separator {
    stack.step += 1;
    while let Some((n, node)) = offending(stack.head(), &sample.neg) {
        let mut tmp = node.clone();
        while let Some(p) = tmp.parents.iter().find(|p| p.object.contains(n.values())) {
            tmp = p.clone();
        }
        let mut popped = false;
        while stack.head().index >= tmp.index && stack.pop(stats) {
            popped = true;
        }
        if !popped && !stack.pop(stats) {
            break;
        }
    }
    expand(sample, domain, stack, seed, stats)
}

fn expand(sample: &Sample, domain: Domain, stack: &mut SeparatorStack, seed: &[AbstractElement], stats: &mut Stats) -> Separator {
    let i = stack.step;
    let mut forest: Vec<Arc<Node>> = if stack.layers.len() == 1 {
        seed.iter()
            .filter(|d| excludes_all(d, &sample.neg))
            .map(|d| Arc::new(Node { object: d.clone(), index: 0, parents: Vec::new() }))
            .collect()
    } else {
        stack.head().forest.clone()
    };

    let mut add: IndexSet<State> = sample.pos.iter().filter(|p| !forest_covers(&forest, p)).cloned().collect();
    for (p, q) in &sample.impl_ {
        if forest_covers(&forest, p) && !forest_covers(&forest, q) {
            add.insert(q.clone());
        }
    }

    while let Some(s) = add.shift_remove_index(0) {
        if forest_covers(&forest, &s) {
            continue;
        }
        stats.event("EXPAND", i, || s.to_string());
        let single = AbstractElement::singleton(&s, domain);
        let mut merged = None;
        for (k, node) in forest.iter().enumerate() {
            stats.joins += 1;
            let o = node.object.join(&single).expect("same domain");
            if excludes_all(&o, &sample.neg) {
                merged = Some((k, o));
                break;
            }
        }
        match merged {
            Some((k, o)) => {
                stats.event("JOIN", i, || format!("merged {k} {s}"));
                let leaf = Arc::new(Node { object: single, index: i, parents: Vec::new() });
                let node = Arc::new(Node { object: o, index: i, parents: vec![forest[k].clone(), leaf] });
                forest[k] = node.clone();
                for (p, q) in &sample.impl_ {
                    if node.object.contains(p.values()) && !forest_covers(&forest, q) {
                        add.insert(q.clone());
                    }
                }
            }
            None => {
                forest.push(Arc::new(Node { object: single, index: i, parents: Vec::new() }));
                for (p, q) in &sample.impl_ {
                    if *p == s && !forest_covers(&forest, q) {
                        add.insert(q.clone());
                    }
                }
            }
        }
    }

    let sep = Separator { elems: forest.iter().map(|n| n.object.clone()).collect() };
    stack.layers.push(Layer { forest, index: i });
    sep
}
