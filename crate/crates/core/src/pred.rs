//! Predicates over the bounded universe `U(B, d)` of sequences of length at
//! most `d`, and the four arborification/monotonisation closures.
//!
//! Nodes are indexed by breadth-first rank: every sequence of length `k`
//! comes before every sequence of length `k+1`, and within a level the
//! order is lexicographic. A predicate is a flat bit table over ranks.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::seq::{Alphabet, Elem, Seq};

const MAX_DEPTH: usize = 32;
const MAX_NODES: usize = 1 << 26;

/// The bounded universe `U(B, d)`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Universe {
    alphabet: Alphabet,
    depth: usize,
    offsets: [usize; MAX_DEPTH + 2],
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Universe")
            .field("alphabet", &self.alphabet.size())
            .field("depth", &self.depth)
            .finish()
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U(B{},{})", self.alphabet.size(), self.depth)
    }
}

impl Universe {
    pub fn new(alphabet: Alphabet, depth: usize) -> Result<Self> {
        if depth > MAX_DEPTH {
            return Err(Error::Limit(format!("depth {depth} exceeds {MAX_DEPTH}")));
        }
        let mut offsets = [0usize; MAX_DEPTH + 2];
        let mut width = 1usize;
        for k in 0..=depth {
            offsets[k + 1] = offsets[k]
                .checked_add(width)
                .filter(|&n| n <= MAX_NODES)
                .ok_or_else(|| {
                    Error::Limit(format!(
                        "universe over {} letters at depth {depth} has too many nodes",
                        alphabet.size()
                    ))
                })?;
            width = width.saturating_mul(alphabet.size());
        }
        Ok(Universe {
            alphabet,
            depth,
            offsets,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of nodes, `Σ_{k≤d} |B|^k`.
    pub fn len(&self) -> usize {
        self.offsets[self.depth + 1]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn width(&self) -> usize {
        self.alphabet.size()
    }

    /// Rank range of the sequences of length `k`.
    pub fn level(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn level_of(&self, rank: usize) -> usize {
        debug_assert!(rank < self.len());
        (0..=self.depth)
            .find(|&k| rank < self.offsets[k + 1])
            .expect("rank within universe")
    }

    pub fn is_leaf(&self, rank: usize) -> bool {
        rank >= self.offsets[self.depth]
    }

    pub fn contains_seq(&self, u: &Seq) -> bool {
        u.len() <= self.depth && u.items().iter().all(|&a| self.alphabet.contains(a))
    }

    pub fn rank(&self, u: &Seq) -> Result<usize> {
        if u.len() > self.depth {
            return Err(Error::DepthExceeded {
                len: u.len(),
                depth: self.depth,
            });
        }
        let mut value = 0usize;
        for &a in u.items() {
            self.alphabet.check(a)?;
            value = value * self.width() + a as usize;
        }
        Ok(self.offsets[u.len()] + value)
    }

    pub fn unrank(&self, rank: usize) -> Seq {
        let k = self.level_of(rank);
        let mut value = rank - self.offsets[k];
        let mut items = vec![0 as Elem; k];
        for slot in items.iter_mut().rev() {
            *slot = (value % self.width()) as Elem;
            value /= self.width();
        }
        Seq::from_vec_unchecked(items)
    }

    /// Ranks of `u ⋆ a` for every `a`; empty for leaves.
    pub fn children(&self, rank: usize) -> std::ops::Range<usize> {
        let k = self.level_of(rank);
        if k == self.depth {
            return 0..0;
        }
        let start = self.offsets[k + 1] + (rank - self.offsets[k]) * self.width();
        start..start + self.width()
    }

    /// Ranks of the extensions of `rank` that have length `k` (contiguous).
    pub fn descendants_at(&self, rank: usize, k: usize) -> std::ops::Range<usize> {
        let j = self.level_of(rank);
        if k < j || k > self.depth {
            return 0..0;
        }
        let span = self.width().pow((k - j) as u32);
        let start = self.offsets[k] + (rank - self.offsets[j]) * span;
        start..start + span
    }

    pub fn parent(&self, rank: usize) -> Option<usize> {
        let k = self.level_of(rank);
        if k == 0 {
            return None;
        }
        Some(self.offsets[k - 1] + (rank - self.offsets[k]) / self.width())
    }

    pub fn seqs(&self) -> impl Iterator<Item = Seq> + '_ {
        (0..self.len()).map(move |r| self.unrank(r))
    }

    /// Every predicate on this universe, indexed by a bit mask over ranks.
    /// Only available for universes of at most 24 nodes.
    pub fn all_preds(&self) -> Result<impl Iterator<Item = Pred> + '_> {
        if self.len() > 24 {
            return Err(Error::Limit(format!(
                "{} has {} nodes; exhaustive enumeration is limited to 24",
                self,
                self.len()
            )));
        }
        Ok((0..1u64 << self.len()).map(move |mask| Pred::from_mask(*self, mask)))
    }
}

/// A predicate `T ⊆ U(B, d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pred {
    universe: Universe,
    bits: FixedBitSet,
}

impl std::hash::Hash for Universe {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.alphabet.hash(state);
        self.depth.hash(state);
    }
}

impl fmt::Debug for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pred{{")?;
        for (i, u) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}")?;
        }
        write!(f, "}}")
    }
}

impl Pred {
    pub fn empty(universe: Universe) -> Self {
        Pred {
            universe,
            bits: FixedBitSet::with_capacity(universe.len()),
        }
    }

    pub fn full(universe: Universe) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe.len());
        bits.insert_range(..);
        Pred { universe, bits }
    }

    pub fn from_fn(universe: Universe, mut f: impl FnMut(&Seq) -> bool) -> Self {
        let mut p = Pred::empty(universe);
        for r in 0..universe.len() {
            if f(&universe.unrank(r)) {
                p.bits.insert(r);
            }
        }
        p
    }

    pub fn from_rank_fn(universe: Universe, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut p = Pred::empty(universe);
        for r in 0..universe.len() {
            if f(r) {
                p.bits.insert(r);
            }
        }
        p
    }

    pub fn from_seqs<'a>(
        universe: Universe,
        seqs: impl IntoIterator<Item = &'a Seq>,
    ) -> Result<Self> {
        let mut p = Pred::empty(universe);
        for u in seqs {
            p.bits.insert(universe.rank(u)?);
        }
        Ok(p)
    }

    /// Bit `i` of `mask` is membership of the node of rank `i`.
    pub fn from_mask(universe: Universe, mask: u64) -> Self {
        Pred::from_rank_fn(universe, |r| r < 64 && mask >> r & 1 == 1)
    }

    pub fn to_mask(&self) -> Option<u64> {
        if self.universe.len() > 64 {
            return None;
        }
        Some(self.bits.ones().fold(0u64, |m, r| m | 1 << r))
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn contains(&self, u: &Seq) -> bool {
        match self.universe.rank(u) {
            Ok(r) => self.bits.contains(r),
            Err(_) => false,
        }
    }

    pub fn contains_rank(&self, rank: usize) -> bool {
        self.bits.contains(rank)
    }

    pub fn contains_root(&self) -> bool {
        self.bits.contains(0)
    }

    pub fn set_rank(&mut self, rank: usize, value: bool) {
        self.bits.set(rank, value);
    }

    pub fn insert(&mut self, u: &Seq) -> Result<()> {
        let r = self.universe.rank(u)?;
        self.bits.insert(r);
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn members(&self) -> impl Iterator<Item = Seq> + '_ {
        self.bits.ones().map(move |r| self.universe.unrank(r))
    }

    pub fn complement(&self) -> Pred {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Pred {
            universe: self.universe,
            bits,
        }
    }

    pub fn union(&self, other: &Pred) -> Pred {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Pred {
            universe: self.universe,
            bits,
        }
    }

    pub fn intersection(&self, other: &Pred) -> Pred {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Pred {
            universe: self.universe,
            bits,
        }
    }

    pub fn is_subset(&self, other: &Pred) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Closed under restriction: `u ⋆ a ∈ T ⇒ u ∈ T`.
    pub fn is_tree(&self) -> bool {
        let u = self.universe;
        (1..u.len()).all(|r| !self.contains_rank(r) || self.contains_rank(u.parent(r).unwrap()))
    }

    /// Closed under extension within the universe: `u ∈ T ⇒ u ⋆ a ∈ T`.
    pub fn is_monotone(&self) -> bool {
        let u = self.universe;
        (1..u.len()).all(|r| !self.contains_rank(u.parent(r).unwrap()) || self.contains_rank(r))
    }

    /// `⌄T`: every prefix of `u` is in `T`.
    pub fn down_arborify(&self) -> Pred {
        let u = self.universe;
        let mut out = Pred::empty(u);
        for r in 0..u.len() {
            let parent_ok = u.parent(r).is_none_or(|p| out.contains_rank(p));
            if parent_ok && self.contains_rank(r) {
                out.bits.insert(r);
            }
        }
        out
    }

    /// `↑T`: some prefix of `u` is in `T`.
    pub fn up_monotonise(&self) -> Pred {
        let u = self.universe;
        let mut out = Pred::empty(u);
        for r in 0..u.len() {
            let parent_in = u.parent(r).is_some_and(|p| out.contains_rank(p));
            if parent_in || self.contains_rank(r) {
                out.bits.insert(r);
            }
        }
        out
    }

    /// Upwards arborification: some extension of `u` (within depth) is in `T`.
    pub fn up_arborify(&self) -> Pred {
        let u = self.universe;
        let mut out = Pred::empty(u);
        for r in (0..u.len()).rev() {
            if self.contains_rank(r) || u.children(r).any(|c| out.contains_rank(c)) {
                out.bits.insert(r);
            }
        }
        out
    }

    /// Downwards monotonisation: every extension of `u` (within depth) is in `T`.
    pub fn down_monotonise(&self) -> Pred {
        let u = self.universe;
        let mut out = Pred::empty(u);
        for r in (0..u.len()).rev() {
            if self.contains_rank(r) && u.children(r).all(|c| out.contains_rank(c)) {
                out.bits.insert(r);
            }
        }
        out
    }

    /// `λu'. u @ u' ∈ T` as a predicate on the universe of depth `d - |u|`.
    pub fn shift(&self, u: &Seq) -> Result<Pred> {
        let base = self.universe;
        if u.len() > base.depth() {
            return Err(Error::DepthExceeded {
                len: u.len(),
                depth: base.depth(),
            });
        }
        let sub = Universe::new(base.alphabet(), base.depth() - u.len())?;
        Ok(Pred::from_fn(sub, |v| self.contains(&u.concat(v))))
    }
}

/// Reads a predicate file: one member per line as a digit string (`.`
/// separating letters when the alphabet exceeds 10), `ε` or `<>` for the
/// empty sequence; blank lines and `#` comments are skipped.
pub fn parse_pred(text: &str, universe: Universe) -> Result<Pred> {
    let mut p = Pred::empty(universe);
    let size = universe.alphabet().size();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let entry = line.trim();
        if entry.is_empty() {
            continue;
        }
        let column = line.find(entry).unwrap_or(0) + 1;
        let err = |col: usize, message: String| Error::Parse {
            line: i + 1,
            column: col,
            message,
        };
        let items: Vec<Elem> = if entry == "ε" || entry == "<>" {
            Vec::new()
        } else {
            let parts: Vec<&str> = if entry.contains('.') {
                entry.split('.').collect()
            } else {
                entry.split("").filter(|s| !s.is_empty()).collect()
            };
            let mut items = Vec::with_capacity(parts.len());
            let mut col = column;
            for part in parts {
                let a: Elem = part
                    .parse()
                    .map_err(|_| err(col, format!("`{part}` is not a letter")))?;
                if a as usize >= size {
                    return Err(err(
                        col,
                        format!("letter {a} is outside the alphabet of size {size}"),
                    ));
                }
                items.push(a);
                col += part.chars().count() + usize::from(entry.contains('.'));
            }
            items
        };
        if items.len() > universe.depth() {
            return Err(err(
                column,
                format!(
                    "sequence of length {} exceeds depth {}",
                    items.len(),
                    universe.depth()
                ),
            ));
        }
        let u = Seq::new(items, universe.alphabet())?;
        p.insert(&u)?;
    }
    Ok(p)
}
