//! Finite sequences over a finite alphabet, the prefix order, and
//! depth-truncated branches.
//!
//! An infinite sequence `α : ℕ → B` is only ever observed up to some depth
//! `d`, so a [`Branch`] is the explicit table `α(0), …, α(d-1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An alphabet element. Elements of an alphabet of size `n` are `0..n`.
pub type Elem = u16;

/// A non-empty finite alphabet `{0, …, size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    size: Elem,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let size = Elem::try_from(size)
            .map_err(|_| Error::Limit(format!("alphabet of size {size} is too large")))?;
        Ok(Alphabet { size })
    }

    /// The two-element alphabet `𝔹 = {0, 1}`.
    pub fn boolean() -> Self {
        Alphabet { size: 2 }
    }

    pub fn size(self) -> usize {
        self.size as usize
    }

    pub fn contains(self, a: Elem) -> bool {
        a < self.size
    }

    pub fn check(self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::InvalidElement {
                element: a,
                size: self.size,
            })
        }
    }

    pub fn elements(self) -> impl Iterator<Item = Elem> + Clone {
        0..self.size
    }
}

/// A finite sequence `u ∈ B*`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seq {
    items: Vec<Elem>,
}

impl Seq {
    /// The empty sequence `⟨⟩`.
    pub fn empty() -> Self {
        Seq { items: Vec::new() }
    }

    /// Builds a sequence after checking every item against `alphabet`.
    pub fn new(items: Vec<Elem>, alphabet: Alphabet) -> Result<Self> {
        for &a in &items {
            alphabet.check(a)?;
        }
        Ok(Seq { items })
    }

    pub(crate) fn from_vec_unchecked(items: Vec<Elem>) -> Self {
        Seq { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Elem] {
        &self.items
    }

    pub fn get(&self, n: usize) -> Option<Elem> {
        self.items.get(n).copied()
    }

    pub fn last(&self) -> Option<Elem> {
        self.items.last().copied()
    }

    /// `u ⋆ a`.
    pub fn extend(&self, a: Elem, alphabet: Alphabet) -> Result<Seq> {
        alphabet.check(a)?;
        Ok(self.push(a))
    }

    pub(crate) fn push(&self, a: Elem) -> Seq {
        let mut items = Vec::with_capacity(self.items.len() + 1);
        items.extend_from_slice(&self.items);
        items.push(a);
        Seq { items }
    }

    /// `a @ u`.
    pub fn prepend(&self, a: Elem) -> Seq {
        let mut items = Vec::with_capacity(self.items.len() + 1);
        items.push(a);
        items.extend_from_slice(&self.items);
        Seq { items }
    }

    /// `self @ v`.
    pub fn concat(&self, v: &Seq) -> Seq {
        let mut items = self.items.clone();
        items.extend_from_slice(&v.items);
        Seq { items }
    }

    /// The prefix of length `n` (or the whole sequence if shorter).
    pub fn prefix(&self, n: usize) -> Seq {
        Seq {
            items: self.items[..n.min(self.len())].to_vec(),
        }
    }

    /// All prefixes, from `⟨⟩` up to the sequence itself.
    pub fn prefixes(&self) -> impl Iterator<Item = Seq> + '_ {
        (0..=self.len()).map(move |n| self.prefix(n))
    }

    /// `u ≤_s v`: `self` is an initial segment of `v`.
    pub fn is_prefix_of(&self, v: &Seq) -> bool {
        v.items.starts_with(&self.items)
    }

    /// `u ≺_s α`. Errors if `u` is longer than the observed part of `α`.
    pub fn is_prefix_of_branch(&self, alpha: &Branch) -> Result<bool> {
        if self.len() > alpha.depth() {
            return Err(Error::DepthExceeded {
                len: self.len(),
                depth: alpha.depth(),
            });
        }
        Ok(alpha.values.starts_with(&self.items))
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.items.is_empty() {
            return f.write_str("ε");
        }
        for (i, a) in self.items.iter().enumerate() {
            if i > 0 && self.items.iter().any(|&x| x > 9) {
                f.write_str(".")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// `u ≤_s v`.
pub fn is_prefix(u: &Seq, v: &Seq) -> bool {
    u.is_prefix_of(v)
}

/// A branch `α ∈ B^ℕ` observed up to depth `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Branch {
    values: Vec<Elem>,
}

impl Branch {
    pub fn new(values: Vec<Elem>, alphabet: Alphabet) -> Result<Self> {
        for &a in &values {
            alphabet.check(a)?;
        }
        Ok(Branch { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<Elem>) -> Self {
        Branch { values }
    }

    pub fn depth(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn at(&self, n: usize) -> Option<Elem> {
        self.values.get(n).copied()
    }

    /// `α|n`, the restriction to the first `n` values.
    pub fn restrict(&self, n: usize) -> Seq {
        Seq::from_vec_unchecked(self.values[..n.min(self.depth())].to_vec())
    }

    /// Every `u ≺_s α` within the observed depth, shortest first.
    pub fn prefixes(&self) -> impl Iterator<Item = Seq> + '_ {
        (0..=self.depth()).map(move |n| self.restrict(n))
    }

    /// `a @ α`: `β(0) = a`, `β(n+1) = α(n)`.
    pub fn cons(&self, a: Elem) -> Branch {
        let mut values = Vec::with_capacity(self.values.len() + 1);
        values.push(a);
        values.extend_from_slice(&self.values);
        Branch { values }
    }

    /// `β(n) = α(n+1)`.
    pub fn tail(&self) -> Branch {
        Branch {
            values: self.values.iter().skip(1).copied().collect(),
        }
    }

    /// All branches of the given depth, in lexicographic order.
    pub fn all(alphabet: Alphabet, depth: usize) -> impl Iterator<Item = Branch> {
        let n = alphabet.size();
        let total = n.checked_pow(depth as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut k| {
            let mut values = vec![0; depth];
            for slot in values.iter_mut().rev() {
                *slot = (k % n) as Elem;
                k /= n;
            }
            Branch { values }
        })
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// `a @ α`.
pub fn cons_branch(a: Elem, alpha: &Branch) -> Branch {
    alpha.cons(a)
}

/// Every sequence of length at most `depth`, shortest first.
pub fn all_seqs(alphabet: Alphabet, depth: usize) -> Vec<Seq> {
    let mut out = vec![Seq::empty()];
    let mut frontier = vec![Seq::empty()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * alphabet.size());
        for u in &frontier {
            for a in alphabet.elements() {
                next.push(u.push(a));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(items: &[Elem]) -> Seq {
        Seq::from_vec_unchecked(items.to_vec())
    }

    fn b(values: &[Elem]) -> Branch {
        Branch::from_vec_unchecked(values.to_vec())
    }

    #[test]
    fn extend_appends() {
        let bin = Alphabet::boolean();
        assert_eq!(Seq::empty().extend(1, bin).unwrap(), s(&[1]));
        assert_eq!(s(&[0, 1]).extend(0, bin).unwrap(), s(&[0, 1, 0]));
        assert_eq!(
            s(&[1]).extend(2, bin),
            Err(Error::InvalidElement {
                element: 2,
                size: 2
            })
        );
    }

    #[test]
    fn prefix_examples() {
        assert!(is_prefix(&s(&[]), &s(&[0, 1])));
        assert!(is_prefix(&s(&[0, 1]), &s(&[0, 1])));
        assert!(!is_prefix(&s(&[1]), &s(&[0, 1])));
    }

    #[test]
    fn branch_prefix_examples() {
        let alpha = b(&[1, 0, 1]);
        assert!(s(&[]).is_prefix_of_branch(&alpha).unwrap());
        assert!(s(&[1, 0]).is_prefix_of_branch(&alpha).unwrap());
        assert!(!s(&[1, 1]).is_prefix_of_branch(&alpha).unwrap());
        assert_eq!(
            s(&[1, 0, 1, 0]).is_prefix_of_branch(&alpha),
            Err(Error::DepthExceeded { len: 4, depth: 3 })
        );
    }

    #[test]
    fn cons_examples() {
        assert_eq!(cons_branch(1, &b(&[0, 0])), b(&[1, 0, 0]));
        assert_eq!(cons_branch(0, &b(&[])), b(&[0]));
        assert!(s(&[0]).is_prefix_of_branch(&b(&[0, 1])).unwrap());
        assert!(s(&[1, 0])
            .is_prefix_of_branch(&cons_branch(1, &b(&[0, 1])))
            .unwrap());
    }

    #[test]
    fn empty_alphabet_rejected() {
        assert_eq!(Alphabet::new(0), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn prefix_order_is_partial_order() {
        for n in 1..=3 {
            let alphabet = Alphabet::new(n).unwrap();
            let all = all_seqs(alphabet, 3);
            for u in &all {
                assert!(is_prefix(u, u));
                for v in &all {
                    if is_prefix(u, v) && is_prefix(v, u) {
                        assert_eq!(u, v);
                    }
                    if !is_prefix(u, v) {
                        continue;
                    }
                    for w in &all {
                        if is_prefix(v, w) {
                            assert!(is_prefix(u, w));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn prefix_of_branch_closed_under_restriction() {
        for n in 1..=3 {
            let alphabet = Alphabet::new(n).unwrap();
            let all = all_seqs(alphabet, 3);
            for alpha in Branch::all(alphabet, 3) {
                for u in &all {
                    if !u.is_prefix_of_branch(&alpha).unwrap() {
                        continue;
                    }
                    for v in &all {
                        if is_prefix(v, u) {
                            assert!(v.is_prefix_of_branch(&alpha).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn prepend_preserves_branch_prefix() {
        for n in 1..=3 {
            let alphabet = Alphabet::new(n).unwrap();
            for depth in 0..=3 {
                let all = all_seqs(alphabet, depth);
                for alpha in Branch::all(alphabet, depth) {
                    for u in all
                        .iter()
                        .filter(|u| u.is_prefix_of_branch(&alpha).unwrap())
                    {
                        for a in alphabet.elements() {
                            assert!(u
                                .prepend(a)
                                .is_prefix_of_branch(&cons_branch(a, &alpha))
                                .unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_branches_enumerated() {
        let v: Vec<_> = Branch::all(Alphabet::boolean(), 2).collect();
        assert_eq!(v, vec![b(&[0, 0]), b(&[0, 1]), b(&[1, 0]), b(&[1, 1])]);
        assert_eq!(Branch::all(Alphabet::boolean(), 0).count(), 1);
    }
}
