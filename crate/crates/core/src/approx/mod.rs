//! Finite approximations of functions `A → B` and predicates over them.
//!
//! An approximation is a finite sequence of pairs `(a, b)`. Predicates are
//! required to be invariant under permutation and duplication, so every
//! approximation is represented by its set of pairs: a `u64` mask with bit
//! `a * |B| + b` for the pair `(a, b)`. Sets with two pairs on the same `a`
//! are legal approximations; they are below no function.
//!
//! The closures are taken with respect to set inclusion: `⌄T` holds at `v`
//! when every subset of `v` is in `T`, `↑T` when some subset is.

mod demo;
mod encode;
mod engine;

pub use demo::{
    encode_ternary, encoded_ternary_experiment, injectivity, pigeonhole_demo, EncodingExperiment,
    PigeonholeReport,
};
pub use encode::{lift, ord, ordered, relation_alignment, relation_neg_alignment};
pub use engine::{
    approximable, approximable_from, approximable_to_depth, barred, check_gbi, check_gdc,
    find_choice_function, inductively_barred, inductively_barred_from, BarTree, GeneralReport,
};

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{Alphabet, Elem};

/// Largest `|A| · |B|` for which a predicate is stored as a full table.
pub const TABLE_MAX_PAIRS: usize = 24;

/// `|A| · |B|` must fit in a mask.
pub const MAX_PAIRS: usize = 64;

/// Domain `{0..m-1}` and codomain of an approximation space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    domain: usize,
    codomain: Alphabet,
}

impl Shape {
    pub fn new(domain: usize, codomain: Alphabet) -> Result<Self> {
        if domain * codomain.size() > MAX_PAIRS {
            return Err(Error::Limit(format!(
                "{domain} × {} pairs exceed {MAX_PAIRS}",
                codomain.size()
            )));
        }
        Ok(Shape { domain, codomain })
    }

    pub fn domain(self) -> usize {
        self.domain
    }

    pub fn codomain(self) -> Alphabet {
        self.codomain
    }

    pub fn pairs(self) -> usize {
        self.domain * self.codomain.size()
    }

    pub fn bit(self, a: usize, b: Elem) -> u64 {
        1 << (a * self.codomain.size() + b as usize)
    }

    /// Mask of all pairs on `a`.
    pub fn column(self, a: usize) -> u64 {
        let k = self.codomain.size();
        ((1u64 << k) - 1) << (a * k)
    }

    pub fn full_mask(self) -> u64 {
        if self.pairs() == 64 {
            u64::MAX
        } else {
            (1 << self.pairs()) - 1
        }
    }

    pub fn pair_of_bit(self, i: usize) -> (usize, Elem) {
        let k = self.codomain.size();
        (i / k, (i % k) as Elem)
    }

    /// `dom(v)` as a bitset over `A`.
    pub fn dom(self, v: u64) -> u64 {
        (0..self.domain)
            .filter(|&a| v & self.column(a) != 0)
            .fold(0, |acc, a| acc | 1 << a)
    }

    /// Graph of a total function.
    pub fn graph(self, alpha: &[Elem]) -> u64 {
        alpha
            .iter()
            .enumerate()
            .fold(0, |acc, (a, &b)| acc | self.bit(a, b))
    }
}

/// An approximation as an explicit sequence of pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Approx {
    pairs: Vec<(usize, Elem)>,
}

impl Approx {
    pub fn new(pairs: Vec<(usize, Elem)>) -> Self {
        Approx { pairs }
    }

    pub fn pairs(&self) -> &[(usize, Elem)] {
        &self.pairs
    }

    pub fn push(&mut self, a: usize, b: Elem) {
        self.pairs.push((a, b));
    }

    /// The set of pairs, or an error if a pair is outside the shape.
    pub fn mask(&self, shape: Shape) -> Result<u64> {
        self.pairs.iter().try_fold(0u64, |acc, &(a, b)| {
            if a >= shape.domain() {
                return Err(Error::InvalidArguments(format!(
                    "domain index {a} outside 0..{}",
                    shape.domain()
                )));
            }
            shape.codomain().check(b)?;
            Ok(acc | shape.bit(a, b))
        })
    }

    /// Duplicate-free, sorted representative.
    pub fn from_mask(shape: Shape, mask: u64) -> Approx {
        Approx {
            pairs: (0..shape.pairs())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| shape.pair_of_bit(i))
                .collect(),
        }
    }

    pub fn canonical(&self, shape: Shape) -> Result<Approx> {
        Ok(Approx::from_mask(shape, self.mask(shape)?))
    }

    /// Equal as finite sets.
    pub fn equivalent(&self, other: &Approx) -> bool {
        let mut x = self.pairs.clone();
        let mut y = other.pairs.clone();
        x.sort_unstable();
        x.dedup();
        y.sort_unstable();
        y.dedup();
        x == y
    }

    /// `v ≺ α`.
    pub fn below(&self, alpha: &[Elem]) -> bool {
        self.pairs.iter().all(|&(a, b)| alpha.get(a) == Some(&b))
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("⟩")
    }
}

type Oracle = Arc<dyn Fn(u64) -> bool + Send + Sync>;

#[derive(Clone)]
enum Backend {
    Table(FixedBitSet),
    Oracle(Oracle),
}

/// A predicate on approximations, queried on pair sets.
#[derive(Clone)]
pub struct ApproxPred {
    shape: Shape,
    backend: Backend,
}

impl fmt::Debug for ApproxPred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("ApproxPred");
        s.field("shape", &self.shape);
        match &self.backend {
            Backend::Table(bits) => s.field("members", &bits.count_ones(..)),
            Backend::Oracle(_) => s.field("members", &"oracle"),
        };
        s.finish()
    }
}

impl ApproxPred {
    /// Tabulated when the shape is small enough, otherwise kept as an oracle.
    pub fn from_fn(shape: Shape, f: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        if shape.pairs() <= TABLE_MAX_PAIRS {
            let mut bits = FixedBitSet::with_capacity(1 << shape.pairs());
            for v in 0..1u64 << shape.pairs() {
                bits.set(v as usize, f(v));
            }
            ApproxPred {
                shape,
                backend: Backend::Table(bits),
            }
        } else {
            ApproxPred::oracle(shape, f)
        }
    }

    /// Never tabulated.
    pub fn oracle(shape: Shape, f: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        ApproxPred {
            shape,
            backend: Backend::Oracle(Arc::new(f)),
        }
    }

    /// Table indexed by pair masks; bit `v` of `table` is membership of `v`.
    pub fn from_table(shape: Shape, table: u64) -> Result<Self> {
        if shape.pairs() > 6 {
            return Err(Error::Limit("64-bit tables need at most 6 pairs".into()));
        }
        Ok(ApproxPred::from_fn(shape, move |v| table >> v & 1 == 1))
    }

    pub fn full(shape: Shape) -> Self {
        ApproxPred::from_fn(shape, |_| true)
    }

    pub fn empty(shape: Shape) -> Self {
        ApproxPred::from_fn(shape, |_| false)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.backend, Backend::Table(_))
    }

    /// Membership of a pair set.
    pub fn contains_mask(&self, v: u64) -> bool {
        match &self.backend {
            Backend::Table(bits) => bits.contains(v as usize),
            Backend::Oracle(f) => f(v),
        }
    }

    pub fn contains(&self, v: &Approx) -> Result<bool> {
        Ok(self.contains_mask(v.mask(self.shape)?))
    }

    pub fn complement(&self) -> ApproxPred {
        let this = self.clone();
        ApproxPred::from_fn(self.shape, move |v| !this.contains_mask(v))
    }

    /// Every subset of `v` is in `T`.
    pub fn down_arborify(&self) -> ApproxPred {
        match &self.backend {
            Backend::Table(bits) => {
                let n = 1usize << self.shape.pairs();
                let mut out = bits.clone();
                for v in 0..n {
                    if out.contains(v) && !bits_of(v as u64).all(|p| out.contains(v & !(1 << p))) {
                        out.set(v, false);
                    }
                }
                ApproxPred {
                    shape: self.shape,
                    backend: Backend::Table(out),
                }
            }
            Backend::Oracle(_) => {
                let this = self.clone();
                ApproxPred::oracle(self.shape, move |v| {
                    subsets(v).all(|w| this.contains_mask(w))
                })
            }
        }
    }

    /// Some subset of `v` is in `T`.
    pub fn up_monotonise(&self) -> ApproxPred {
        self.complement().down_arborify().complement()
    }

    /// Some superset of `v` (within the shape) is in `T`.
    pub fn up_arborify(&self) -> Result<ApproxPred> {
        self.down_monotonise_inner(true)
    }

    /// Every superset of `v` (within the shape) is in `T`.
    pub fn down_monotonise(&self) -> Result<ApproxPred> {
        self.down_monotonise_inner(false)
    }

    fn down_monotonise_inner(&self, complement: bool) -> Result<ApproxPred> {
        let Backend::Table(bits) = &self.backend else {
            return Err(Error::Limit(format!(
                "superset closures need a tabulated predicate (at most {TABLE_MAX_PAIRS} pairs)"
            )));
        };
        let full = self.shape.full_mask();
        let n = 1usize << self.shape.pairs();
        let mut src = bits.clone();
        if complement {
            src.toggle_range(..);
        }
        let mut out = src.clone();
        for v in (0..n).rev() {
            let missing = full & !(v as u64);
            if out.contains(v) && !bits_of(missing).all(|p| out.contains(v | 1 << p)) {
                out.set(v, false);
            }
        }
        if complement {
            out.toggle_range(..);
        }
        Ok(ApproxPred {
            shape: self.shape,
            backend: Backend::Table(out),
        })
    }

    /// Membership is unchanged by subsets (closed under restriction).
    pub fn is_down_closed(&self) -> bool {
        self.all_masks(|v| {
            !self.contains_mask(v) || bits_of(v).all(|p| self.contains_mask(v & !(1 << p)))
        })
    }

    /// Membership is unchanged by supersets (closed under extension).
    pub fn is_up_closed(&self) -> bool {
        let full = self.shape.full_mask();
        self.all_masks(|v| {
            !self.contains_mask(v) || bits_of(full & !v).all(|p| self.contains_mask(v | 1 << p))
        })
    }

    fn all_masks(&self, f: impl Fn(u64) -> bool) -> bool {
        assert!(
            self.shape.pairs() <= TABLE_MAX_PAIRS,
            "exhaustive scan over too many pairs"
        );
        (0..1u64 << self.shape.pairs()).all(f)
    }

    /// Extensional equality; requires a tabulable shape.
    pub fn same_as(&self, other: &ApproxPred) -> bool {
        self.shape == other.shape
            && self.all_masks(|v| self.contains_mask(v) == other.contains_mask(v))
    }
}

/// Indices of set bits.
pub(crate) fn bits_of(v: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| v >> i & 1 == 1)
}

/// All subsets of `v`, including `v` and `0`.
pub(crate) fn subsets(v: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(v);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & v) };
        Some(cur)
    })
}

/// A total function `A → B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChoiceFun {
    values: Vec<Elem>,
}

impl ChoiceFun {
    pub fn new(values: Vec<Elem>, codomain: Alphabet) -> Result<Self> {
        for &b in &values {
            codomain.check(b)?;
        }
        Ok(ChoiceFun { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<Elem>) -> Self {
        ChoiceFun { values }
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn apply(&self, a: usize) -> Elem {
        self.values[a]
    }

    pub fn graph(&self, shape: Shape) -> u64 {
        shape.graph(&self.values)
    }

    /// Every function `A → B`, lexicographically.
    pub fn all(shape: Shape) -> impl Iterator<Item = ChoiceFun> {
        let k = shape.codomain().size();
        let m = shape.domain();
        let total = (k as u128).pow(m as u32);
        (0..total).map(move |mut i| {
            let mut values = vec![0; m];
            for slot in values.iter_mut().rev() {
                *slot = (i % k as u128) as Elem;
                i /= k as u128;
            }
            ChoiceFun { values }
        })
    }
}

impl fmt::Display for ChoiceFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(a, b)| format!("{a}↦{b}"))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(m: usize, n: usize) -> Shape {
        Shape::new(m, Alphabet::new(n).unwrap()).unwrap()
    }

    #[test]
    fn masks_and_representatives() {
        let sh = shape(2, 2);
        let v = Approx::new(vec![(1, 0), (0, 1), (1, 0)]);
        assert_eq!(v.mask(sh).unwrap(), sh.bit(0, 1) | sh.bit(1, 0));
        assert_eq!(v.canonical(sh).unwrap(), Approx::new(vec![(0, 1), (1, 0)]));
        assert!(v.equivalent(&Approx::new(vec![(0, 1), (1, 0)])));
        assert!(Approx::new(vec![(2, 0)]).mask(sh).is_err());
        assert_eq!(sh.dom(v.mask(sh).unwrap()), 0b11);
        assert!(v.below(&[1, 0]));
        assert!(!v.below(&[0, 0]));
    }

    #[test]
    fn subsets_enumerates_all() {
        assert_eq!(
            subsets(0b101).collect::<Vec<_>>(),
            vec![0b101, 0b100, 0b001, 0]
        );
        assert_eq!(subsets(0).count(), 1);
    }

    #[test]
    fn closures_match_definitions() {
        // Oracle: the set-inclusion quantifiers evaluated literally.
        let sh = shape(2, 2);
        let full = sh.full_mask();
        for table in (0..1u64 << 16).step_by(97) {
            let t = ApproxPred::from_fn(sh, move |v| table >> v & 1 == 1);
            let da = t.down_arborify();
            let um = t.up_monotonise();
            let ua = t.up_arborify().unwrap();
            let dm = t.down_monotonise().unwrap();
            for v in 0..=full {
                let supers = (0..=full).filter(|w| w & v == v);
                assert_eq!(da.contains_mask(v), subsets(v).all(|w| t.contains_mask(w)));
                assert_eq!(um.contains_mask(v), subsets(v).any(|w| t.contains_mask(w)));
                assert_eq!(
                    ua.contains_mask(v),
                    supers.clone().any(|w| t.contains_mask(w))
                );
                assert_eq!(
                    dm.contains_mask(v),
                    supers.clone().all(|w| t.contains_mask(w))
                );
            }
            assert!(da.is_down_closed() && um.is_up_closed());
            assert!(ua.is_down_closed() && dm.is_up_closed());
        }
    }

    #[test]
    fn oracle_closures_agree_with_tables() {
        let sh = shape(2, 2);
        let f = |v: u64| v.count_ones() != 2 || v == 0b0110;
        let tab = ApproxPred::from_fn(sh, f);
        let orc = ApproxPred::oracle(sh, f);
        assert!(!orc.is_tabulated());
        assert!(tab.down_arborify().same_as(&orc.down_arborify()));
        assert!(tab.up_monotonise().same_as(&orc.up_monotonise()));
        assert!(orc.up_arborify().is_err());
    }

    #[test]
    fn all_functions() {
        let fs: Vec<_> = ChoiceFun::all(shape(2, 3)).collect();
        assert_eq!(fs.len(), 9);
        assert_eq!(fs[5].values(), &[1, 2]);
        assert_eq!(ChoiceFun::all(shape(0, 2)).count(), 1);
    }

    proptest! {
        #[test]
        fn membership_is_invariant_under_permutation_and_duplication(
            table in any::<u64>(),
            pairs in prop::collection::vec((0usize..2, 0u16..3), 0..8),
            seed in any::<u64>(),
        ) {
            let sh = shape(2, 3);
            let t = ApproxPred::from_fn(sh, move |v| (table.rotate_left((v % 61) as u32) ^ v) & 1 == 1);
            let v = Approx::new(pairs.clone());
            let mut w = pairs.clone();
            if !w.is_empty() {
                let i = (seed as usize) % w.len();
                w.push(w[i]);
            }
            w.reverse();
            let w = Approx::new(w);
            prop_assert!(v.equivalent(&w));
            prop_assert_eq!(t.contains(&v).unwrap(), t.contains(&w).unwrap());
        }
    }
}
