//! Fixpoint engines for approximability and inductive barredness, and the
//! extensional choice-function and bar searches.
//!
//! Both fixpoints range over approximations whose domain strictly grows,
//! so they are well-founded recursions on `|A| - |dom(v)|` and the greatest
//! and least readings compute the same table. Results are memoized on pair
//! sets.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{bits_of, ApproxPred, ChoiceFun, Shape};
use crate::error::{Error, Result};
use crate::seq::Elem;

/// Memo tables for one predicate.
struct Engine<'a> {
    t: &'a ApproxPred,
    shape: Shape,
    down: HashMap<u64, bool>,
    up: HashMap<u64, bool>,
    approx: HashMap<u64, bool>,
    barred: HashMap<u64, bool>,
}

impl<'a> Engine<'a> {
    fn new(t: &'a ApproxPred) -> Self {
        Engine {
            t,
            shape: t.shape(),
            down: HashMap::new(),
            up: HashMap::new(),
            approx: HashMap::new(),
            barred: HashMap::new(),
        }
    }

    /// `v ∈ ⌄T`.
    fn in_down(&mut self, v: u64) -> bool {
        if let Some(&x) = self.down.get(&v) {
            return x;
        }
        let x = self.t.contains_mask(v) && bits_of(v).all(|p| self.in_down(v & !(1 << p)));
        self.down.insert(v, x);
        x
    }

    /// `v ∈ ↑T`.
    fn in_up(&mut self, v: u64) -> bool {
        if let Some(&x) = self.up.get(&v) {
            return x;
        }
        let x = self.t.contains_mask(v) || bits_of(v).any(|p| self.in_up(v & !(1 << p)));
        self.up.insert(v, x);
        x
    }

    fn free(&self, v: u64) -> impl Iterator<Item = usize> {
        let dom = self.shape.dom(v);
        (0..self.shape.domain()).filter(move |a| dom >> a & 1 == 0)
    }

    /// `v ∈ ⌄T ∧ ∀a ∉ dom(v) ∃b v⋆(a,b) approximable`.
    fn approximable(&mut self, v: u64) -> bool {
        if let Some(&x) = self.approx.get(&v) {
            return x;
        }
        let x = self.in_down(v) && {
            let free: Vec<usize> = self.free(v).collect();
            let shape = self.shape;
            free.into_iter().all(|a| {
                shape
                    .codomain()
                    .elements()
                    .any(|b| self.approximable(v | shape.bit(a, b)))
            })
        };
        self.approx.insert(v, x);
        x
    }

    /// `v ∈ ↑T ∨ ∃a ∉ dom(v) ∀b v⋆(a,b) inductively barred`.
    fn inductively_barred(&mut self, v: u64) -> bool {
        if let Some(&x) = self.barred.get(&v) {
            return x;
        }
        let x = self.in_up(v) || self.split_atom(v).is_some();
        self.barred.insert(v, x);
        x
    }

    fn split_atom(&mut self, v: u64) -> Option<usize> {
        let free: Vec<usize> = self.free(v).collect();
        let shape = self.shape;
        free.into_iter().find(|&a| {
            shape
                .codomain()
                .elements()
                .all(|b| self.inductively_barred(v | shape.bit(a, b)))
        })
    }

    fn derivation(&mut self, v: u64) -> Option<BarTree> {
        if !self.inductively_barred(v) {
            return None;
        }
        if self.in_up(v) {
            return Some(BarTree::Hit { approx: v });
        }
        let a = self.split_atom(v)?;
        let shape = self.shape;
        let children = shape
            .codomain()
            .elements()
            .map(|b| self.derivation(v | shape.bit(a, b)))
            .collect::<Option<Vec<_>>>()?;
        Some(BarTree::Split { atom: a, children })
    }

    /// `v ∈ ⌄T`, kept along every extension of the domain by up to `k`
    /// further elements.
    fn approximable_bounded(
        &mut self,
        v: u64,
        k: usize,
        memo: &mut HashMap<(u64, usize), bool>,
    ) -> bool {
        if k == 0 {
            return self.in_down(v);
        }
        if let Some(&x) = memo.get(&(v, k)) {
            return x;
        }
        let x = self.in_down(v) && {
            let free: Vec<usize> = self.free(v).collect();
            let shape = self.shape;
            free.into_iter().all(|a| {
                shape
                    .codomain()
                    .elements()
                    .any(|b| self.approximable_bounded(v | shape.bit(a, b), k - 1, memo))
            })
        };
        memo.insert((v, k), x);
        x
    }
}

fn check_mask(t: &ApproxPred, v: u64) -> Result<()> {
    if v & !t.shape().full_mask() != 0 {
        return Err(Error::InvalidArguments(
            "approximation outside the shape".into(),
        ));
    }
    Ok(())
}

/// Derivation of inductive barredness: a hit in `↑T`, or a split on a free
/// domain element with one subderivation per codomain value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum BarTree {
    Hit { approx: u64 },
    Split { atom: usize, children: Vec<BarTree> },
}

impl BarTree {
    /// Re-checks the derivation for `T` from `v`.
    pub fn check(&self, t: &ApproxPred, v: u64) -> bool {
        let shape = t.shape();
        match self {
            BarTree::Hit { approx } => {
                *approx == v && super::subsets(v).any(|w| t.contains_mask(w))
            }
            BarTree::Split { atom, children } => {
                *atom < shape.domain()
                    && shape.dom(v) >> atom & 1 == 0
                    && children.len() == shape.codomain().size()
                    && children
                        .iter()
                        .zip(shape.codomain().elements())
                        .all(|(c, b)| c.check(t, v | shape.bit(*atom, b)))
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            BarTree::Hit { .. } => 1,
            BarTree::Split { children, .. } => {
                1 + children.iter().map(BarTree::size).sum::<usize>()
            }
        }
    }
}

pub fn approximable_from(t: &ApproxPred, v: u64) -> Result<bool> {
    check_mask(t, v)?;
    Ok(Engine::new(t).approximable(v))
}

pub fn approximable(t: &ApproxPred) -> bool {
    Engine::new(t).approximable(0)
}

/// Approximability cut off after `k` extension steps: every approximation a
/// strategy builds with domain size at most `k` stays in `⌄T`.
pub fn approximable_to_depth(t: &ApproxPred, k: usize) -> bool {
    Engine::new(t).approximable_bounded(0, k, &mut HashMap::new())
}

/// Derivation when inductively barred from `v`.
pub fn inductively_barred_from(t: &ApproxPred, v: u64) -> Result<Option<BarTree>> {
    check_mask(t, v)?;
    Ok(Engine::new(t).derivation(v))
}

pub fn inductively_barred(t: &ApproxPred) -> Option<BarTree> {
    Engine::new(t).derivation(0)
}

/// Some `α` with every `v ≺ α` in `T`, i.e. `graph(α) ∈ ⌄T`.
pub fn find_choice_function(t: &ApproxPred) -> Option<ChoiceFun> {
    let mut engine = Engine::new(t);
    let shape = t.shape();
    let mut alpha: Vec<Elem> = Vec::with_capacity(shape.domain());
    fn go(engine: &mut Engine, alpha: &mut Vec<Elem>, graph: u64) -> bool {
        let shape = engine.shape;
        if !engine.in_down(graph) {
            return false;
        }
        let a = alpha.len();
        if a == shape.domain() {
            return true;
        }
        for b in shape.codomain().elements() {
            alpha.push(b);
            if go(engine, alpha, graph | shape.bit(a, b)) {
                return true;
            }
            alpha.pop();
        }
        false
    }
    go(&mut engine, &mut alpha, 0).then(|| ChoiceFun::from_vec_unchecked(alpha))
}

/// `∀α ∃v ≺ α. v ∈ T`, i.e. every graph is in `↑T`; on failure, a function
/// whose graph avoids `T` below it.
pub fn barred(t: &ApproxPred) -> std::result::Result<(), ChoiceFun> {
    let mut engine = Engine::new(t);
    let mut alpha: Vec<Elem> = Vec::with_capacity(t.shape().domain());
    fn go(engine: &mut Engine, alpha: &mut Vec<Elem>, graph: u64) -> bool {
        let shape = engine.shape;
        if engine.in_up(graph) {
            return false;
        }
        let a = alpha.len();
        if a == shape.domain() {
            return true;
        }
        for b in shape.codomain().elements() {
            alpha.push(b);
            if go(engine, alpha, graph | shape.bit(a, b)) {
                return true;
            }
            alpha.pop();
        }
        false
    }
    if go(&mut engine, &mut alpha, 0) {
        Err(ChoiceFun::from_vec_unchecked(alpha))
    } else {
        Ok(())
    }
}

/// `hypothesis ⇒ conclusion` on one instance, with the evidence found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralReport {
    pub hypothesis: bool,
    pub conclusion: bool,
    pub choice: Option<ChoiceFun>,
    pub counterexample: Option<ChoiceFun>,
    pub derivation: Option<BarTree>,
}

impl GeneralReport {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// Approximable ⇒ has a choice function.
pub fn check_gdc(t: &ApproxPred) -> GeneralReport {
    let choice = find_choice_function(t);
    GeneralReport {
        hypothesis: approximable(t),
        conclusion: choice.is_some(),
        choice,
        counterexample: None,
        derivation: None,
    }
}

/// Barred ⇒ inductively barred.
pub fn check_gbi(t: &ApproxPred) -> GeneralReport {
    let bar = barred(t);
    let derivation = inductively_barred(t);
    GeneralReport {
        hypothesis: bar.is_ok(),
        conclusion: derivation.is_some(),
        choice: None,
        counterexample: bar.err(),
        derivation,
    }
}
