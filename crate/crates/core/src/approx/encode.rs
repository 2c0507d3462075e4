//! Moving between predicates on sequences and predicates on approximations
//! with domain `{0..d-1}`, and relations read as approximation predicates.

use super::{bits_of, ApproxPred, Shape};
use crate::error::{Error, Result};
use crate::pred::{Pred, Universe};
use crate::rel::HetRel;
use crate::seq::{Elem, Seq};

/// `ord(⟨⟩) = ⟨⟩`, `ord(u⋆b) = ord(u)⋆(|u|, b)`, as a pair set.
pub fn ord(shape: Shape, u: &Seq) -> Result<u64> {
    if u.len() > shape.domain() {
        return Err(Error::DepthExceeded {
            len: u.len(),
            depth: shape.domain(),
        });
    }
    u.items().iter().enumerate().try_fold(0, |acc, (i, &b)| {
        shape.codomain().check(b)?;
        Ok(acc | shape.bit(i, b))
    })
}

/// The sequence `u` with `ord(u) = v`, if `v` is sequential.
fn unord(shape: Shape, v: u64) -> Option<Seq> {
    let k = shape.codomain().size();
    let mut items = Vec::new();
    let mut rest = v;
    for a in 0..shape.domain() {
        let col = (rest >> (a * k)) & ((1 << k) - 1);
        if col == 0 {
            break;
        }
        if col.count_ones() != 1 {
            return None;
        }
        items.push(col.trailing_zeros() as Elem);
        rest &= !shape.column(a);
    }
    (rest == 0).then(|| Seq::from_vec_unchecked(items))
}

fn shape_of(universe: Universe) -> Result<Shape> {
    Shape::new(universe.depth(), universe.alphabet())
}

/// `‖T‖`: `u ∈ ‖T‖` iff `ord(u) ∈ T`.
pub fn ordered(t: &ApproxPred, universe: Universe) -> Result<Pred> {
    let shape = t.shape();
    if shape.codomain() != universe.alphabet() || shape.domain() < universe.depth() {
        return Err(Error::UniverseMismatch(format!(
            "approximations over {} × {} cannot encode {universe}",
            shape.domain(),
            shape.codomain().size()
        )));
    }
    Ok(Pred::from_fn(universe, |u| {
        t.contains_mask(ord(shape, u).expect("sequence fits the shape"))
    }))
}

/// The approximations equal, as sets, to `ord(u)` for some `u ∈ T`, over
/// domain `{0..d-1}`.
pub fn lift(t: &Pred) -> Result<ApproxPred> {
    let shape = shape_of(t.universe())?;
    let t = t.clone();
    Ok(ApproxPred::from_fn(shape, move |v| {
        unord(shape, v).is_some_and(|u| t.contains(&u))
    }))
}

fn check_relation(r: &HetRel) -> Result<Shape> {
    Shape::new(r.domain(), r.codomain())
}

/// `R_⊤`: every pair of `v` is in `R`.
pub fn relation_alignment(r: &HetRel) -> Result<ApproxPred> {
    let shape = check_relation(r)?;
    let rmask = relation_mask(shape, r);
    Ok(ApproxPred::from_fn(shape, move |v| v & !rmask == 0))
}

/// `R_⊥`: some pair of `v` is in `R`.
pub fn relation_neg_alignment(r: &HetRel) -> Result<ApproxPred> {
    let shape = check_relation(r)?;
    let rmask = relation_mask(shape, r);
    Ok(ApproxPred::from_fn(shape, move |v| v & rmask != 0))
}

fn relation_mask(shape: Shape, r: &HetRel) -> u64 {
    bits_of(shape.full_mask())
        .filter(|&i| {
            let (a, b) = shape.pair_of_bit(i);
            r.related(a, b)
        })
        .fold(0, |acc, i| acc | 1 << i)
}
