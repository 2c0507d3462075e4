//! Intensional well-founded trees and their extensional predicates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pred::{Pred, Universe};
use crate::seq::{Alphabet, Elem, Seq};

/// `Leaf | Node(f)` with `f` tabulated over the alphabet: `children[a] = f(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ITree {
    Leaf,
    Node(Vec<ITree>),
}

impl ITree {
    /// `Node(λa. child(a))` over `alphabet`.
    pub fn node(alphabet: Alphabet, mut child: impl FnMut(Elem) -> ITree) -> ITree {
        ITree::Node(alphabet.elements().map(&mut child).collect())
    }

    /// Height; `Leaf` has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            ITree::Leaf => 0,
            ITree::Node(children) => 1 + children.iter().map(ITree::depth).max().unwrap_or(0),
        }
    }

    /// Every `Node` has exactly one child per letter.
    pub fn is_total_on(&self, alphabet: Alphabet) -> bool {
        match self {
            ITree::Leaf => true,
            ITree::Node(children) => {
                children.len() == alphabet.size()
                    && children.iter().all(|c| c.is_total_on(alphabet))
            }
        }
    }

    /// All trees over `alphabet` of depth at most `depth`.
    pub fn all(alphabet: Alphabet, depth: usize) -> Vec<ITree> {
        let mut out = vec![ITree::Leaf];
        if depth == 0 {
            return out;
        }
        let smaller = ITree::all(alphabet, depth - 1);
        let k = alphabet.size();
        let mut idx = vec![0usize; k];
        loop {
            out.push(ITree::Node(
                idx.iter().map(|&i| smaller[i].clone()).collect(),
            ));
            let mut pos = 0;
            loop {
                if pos == k {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] < smaller.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    fn contains(&self, u: &[Elem]) -> bool {
        match (self, u.split_first()) {
            (ITree::Leaf, _) => false,
            (ITree::Node(_), None) => true,
            (ITree::Node(children), Some((&a, rest))) => {
                children.get(a as usize).is_some_and(|c| c.contains(rest))
            }
        }
    }
}

/// The predicate `T(t)`: `⟨⟩ ∈ T(Node f)`, `a@u ∈ T(Node f)` iff
/// `u ∈ T(f(a))`, and `T(Leaf)` is empty.
pub fn itree_to_extensional(t: &ITree, universe: Universe) -> Result<Pred> {
    if !t.is_total_on(universe.alphabet()) {
        return Err(Error::InvalidArguments(
            "tree nodes must have one child per alphabet element".into(),
        ));
    }
    if t.depth() > universe.depth() {
        return Err(Error::DepthExceeded {
            len: t.depth(),
            depth: universe.depth(),
        });
    }
    Ok(Pred::from_fn(universe, |u| t.contains(u.items())))
}

/// `Leaf` realises `T` iff `⟨⟩ ∉ T`; `Node(f)` realises `T` iff `⟨⟩ ∈ T` and
/// each `f(a)` realises `λu. a@u ∈ T`. Sequences outside the universe are
/// not members.
pub fn realises(t: &ITree, pred: &Pred) -> bool {
    fn go(t: &ITree, pred: &Pred, prefix: &mut Vec<Elem>) -> bool {
        let member = pred.contains(&Seq::from_vec_unchecked(prefix.clone()));
        match t {
            ITree::Leaf => !member,
            ITree::Node(children) => {
                member
                    && children.len() == pred.universe().alphabet().size()
                    && children.iter().enumerate().all(|(a, c)| {
                        prefix.push(a as Elem);
                        let ok = go(c, pred, prefix);
                        prefix.pop();
                        ok
                    })
            }
        }
    }
    go(t, pred, &mut Vec::new())
}
