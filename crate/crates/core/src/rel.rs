//! Relations as predicates on sequences: chainings, alignments and their
//! duals, dependent and countable choice with their bar-induction duals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::found::{self, Boundary, FoundReport, Property};
use crate::pred::{Pred, Universe};
use crate::seq::{Alphabet, Branch, Elem, Seq};

/// A relation on a finite carrier, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomRel {
    carrier: Alphabet,
    table: Vec<bool>,
}

impl HomRel {
    pub fn from_fn(carrier: Alphabet, mut f: impl FnMut(Elem, Elem) -> bool) -> Self {
        let table = carrier
            .elements()
            .flat_map(|b| carrier.elements().map(move |c| (b, c)))
            .map(|(b, c)| f(b, c))
            .collect();
        HomRel { carrier, table }
    }

    pub fn from_pairs(carrier: Alphabet, pairs: &[(Elem, Elem)]) -> Result<Self> {
        for &(b, c) in pairs {
            carrier.check(b)?;
            carrier.check(c)?;
        }
        Ok(HomRel::from_fn(carrier, |b, c| pairs.contains(&(b, c))))
    }

    /// Row-major bits: bit `b * k + c` is `R(b, c)`. Requires `k * k ≤ 64`.
    pub fn from_mask(carrier: Alphabet, mask: u64) -> Self {
        let k = carrier.size();
        HomRel::from_fn(carrier, |b, c| {
            mask >> (b as usize * k + c as usize) & 1 == 1
        })
    }

    pub fn empty(carrier: Alphabet) -> Self {
        HomRel::from_fn(carrier, |_, _| false)
    }

    pub fn full(carrier: Alphabet) -> Self {
        HomRel::from_fn(carrier, |_, _| true)
    }

    pub fn identity(carrier: Alphabet) -> Self {
        HomRel::from_fn(carrier, |b, c| b == c)
    }

    pub fn carrier(&self) -> Alphabet {
        self.carrier
    }

    pub fn related(&self, b: Elem, c: Elem) -> bool {
        let k = self.carrier.size();
        self.table[b as usize * k + c as usize]
    }

    pub fn complement(&self) -> HomRel {
        HomRel {
            carrier: self.carrier,
            table: self.table.iter().map(|x| !x).collect(),
        }
    }

    /// `∀b ∃b' R(b, b')`.
    pub fn is_serial(&self) -> bool {
        self.carrier
            .elements()
            .all(|b| self.carrier.elements().any(|c| self.related(b, c)))
    }

    /// `∀b ∃b' ¬R(b, b')`.
    pub fn is_left_not_full(&self) -> bool {
        self.complement().is_serial()
    }

    /// Some `b` with `∀b' R(b, b')`.
    pub fn least(&self) -> Option<Elem> {
        self.carrier
            .elements()
            .find(|&b| self.carrier.elements().all(|c| self.related(b, c)))
    }

    /// Some `b` with `∀b' ¬R(b, b')`.
    pub fn maximal(&self) -> Option<Elem> {
        self.complement().least()
    }

    fn check_seed(&self, b0: Elem, universe: Universe) -> Result<()> {
        self.carrier.check(b0)?;
        if universe.alphabet() != self.carrier {
            return Err(Error::UniverseMismatch(format!(
                "relation carrier has {} elements, universe alphabet has {}",
                self.carrier.size(),
                universe.alphabet().size()
            )));
        }
        Ok(())
    }

    /// Steps `b0 → u₀ → u₁ → …` along `u`.
    fn steps<'a>(&self, b0: Elem, u: &'a Seq) -> impl Iterator<Item = (Elem, Elem)> + 'a {
        std::iter::once(b0)
            .chain(u.items().iter().copied())
            .zip(u.items().iter().copied())
    }

    /// Every step from `b0` through `u` is in `R`.
    pub fn chaining(&self, b0: Elem, universe: Universe) -> Result<Pred> {
        self.check_seed(b0, universe)?;
        Ok(Pred::from_fn(universe, |u| {
            self.steps(b0, u).all(|(b, c)| self.related(b, c))
        }))
    }

    /// Some step from `b0` through `u` is in `R`; `⟨⟩` is excluded.
    pub fn antichaining(&self, b0: Elem, universe: Universe) -> Result<Pred> {
        self.check_seed(b0, universe)?;
        Ok(Pred::from_fn(universe, |u| {
            self.steps(b0, u).any(|(b, c)| self.related(b, c))
        }))
    }

    fn last_step(&self, b0: Elem, u: &Seq) -> Option<bool> {
        let items = u.items();
        match items.len() {
            0 => None,
            1 => Some(self.related(b0, items[0])),
            n => Some(self.related(items[n - 2], items[n - 1])),
        }
    }

    /// `⟨⟩ ↦ ⊤`, otherwise the last step of `u` from `b0` is in `R`.
    pub fn alignment(&self, b0: Elem, universe: Universe) -> Result<Pred> {
        self.check_seed(b0, universe)?;
        Ok(Pred::from_fn(universe, |u| {
            self.last_step(b0, u).unwrap_or(true)
        }))
    }

    /// `⟨⟩ ↦ ⊥`, otherwise the last step of `u` from `b0` is in `R`.
    pub fn blockings(&self, b0: Elem, universe: Universe) -> Result<Pred> {
        self.check_seed(b0, universe)?;
        Ok(Pred::from_fn(universe, |u| {
            self.last_step(b0, u).unwrap_or(false)
        }))
    }
}

/// `R serial ⇒ alignment(R, b0)` has an infinite branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelPrincipleReport {
    pub hypothesis: bool,
    pub conclusion: bool,
    /// Branch for dependent choice, bar level for the dual.
    pub witness: Option<found::Witness>,
    pub least: Option<Elem>,
}

impl RelPrincipleReport {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

pub fn check_dc_serial(r: &HomRel, b0: Elem, universe: Universe) -> Result<RelPrincipleReport> {
    let t = r.alignment(b0, universe)?;
    let FoundReport { holds, witness, .. } =
        found::decide(&t, Property::InfiniteBranch, Boundary::Open);
    Ok(RelPrincipleReport {
        hypothesis: r.is_serial(),
        conclusion: holds,
        witness,
        least: None,
    })
}

/// `blockings(R, b0)` barred ⇒ `R` has a least element.
pub fn check_bi_least(r: &HomRel, b0: Elem, universe: Universe) -> Result<RelPrincipleReport> {
    let t = r.blockings(b0, universe)?;
    let FoundReport { holds, witness, .. } = found::decide(&t, Property::Barred, Boundary::Open);
    let least = r.least();
    Ok(RelPrincipleReport {
        hypothesis: holds,
        conclusion: least.is_some(),
        witness,
        least,
    })
}

/// The serial relation read off a productive predicate: its carrier is the
/// set of nodes from which `T` is productive, related by one-letter
/// extension. Leaves of the universe relate to themselves so that the
/// relation stays serial; branches of length `d` from the root never take
/// that step.
#[derive(Debug, Clone)]
pub struct ProductiveRelation {
    pub relation: HomRel,
    /// `nodes[i]` is the sequence represented by carrier element `i`.
    pub nodes: Vec<Seq>,
    /// Carrier element of `⟨⟩`.
    pub root: Elem,
}

impl ProductiveRelation {
    /// `None` when `T` is not productive.
    pub fn from_pred(t: &Pred) -> Result<Option<Self>> {
        let productive = found::pruning(t, Boundary::Open);
        if !productive.contains_root() {
            return Ok(None);
        }
        let nodes: Vec<Seq> = productive.members().collect();
        if nodes.len() > Elem::MAX as usize {
            return Err(Error::Limit("too many productive nodes".into()));
        }
        let carrier = Alphabet::new(nodes.len())?;
        let depth = t.universe().depth();
        let relation = HomRel::from_fn(carrier, |i, j| {
            let (u, v) = (&nodes[i as usize], &nodes[j as usize]);
            if u.len() == depth {
                i == j
            } else {
                v.len() == u.len() + 1 && u.is_prefix_of(v)
            }
        });
        Ok(Some(ProductiveRelation {
            relation,
            nodes,
            root: 0,
        }))
    }

    /// The letters of `T` picked out by a branch of carrier elements: the
    /// `n`-th letter is the last letter of `β(n)`.
    pub fn transport(&self, beta: &Branch) -> Branch {
        Branch::from_vec_unchecked(
            beta.values()
                .iter()
                .map(|&i| self.nodes[i as usize].last().unwrap_or(0))
                .collect(),
        )
    }
}

/// A relation between `{0..m-1}` and a finite codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HetRel {
    domain: usize,
    codomain: Alphabet,
    table: Vec<bool>,
}

impl HetRel {
    pub fn from_fn(
        domain: usize,
        codomain: Alphabet,
        mut f: impl FnMut(usize, Elem) -> bool,
    ) -> Self {
        let table = (0..domain)
            .flat_map(|a| codomain.elements().map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        HetRel {
            domain,
            codomain,
            table,
        }
    }

    /// Row-major bits: bit `a * |B| + b` is `R(a, b)`.
    pub fn from_mask(domain: usize, codomain: Alphabet, mask: u64) -> Self {
        let k = codomain.size();
        HetRel::from_fn(domain, codomain, |a, b| {
            mask >> (a * k + b as usize) & 1 == 1
        })
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> Alphabet {
        self.codomain
    }

    pub fn related(&self, a: usize, b: Elem) -> bool {
        self.table[a * self.codomain.size() + b as usize]
    }

    /// `∀a ∃b R(a, b)`.
    pub fn is_left_total(&self) -> bool {
        (0..self.domain).all(|a| self.codomain.elements().any(|b| self.related(a, b)))
    }

    /// Some `a` with `∀b R(a, b)`.
    pub fn grounded(&self) -> Option<usize> {
        (0..self.domain).find(|&a| self.codomain.elements().all(|b| self.related(a, b)))
    }

    /// `α` with `R(a, α(a))` for every `a`.
    pub fn choice_function(&self) -> Option<Vec<Elem>> {
        (0..self.domain)
            .map(|a| self.codomain.elements().find(|&b| self.related(a, b)))
            .collect()
    }

    pub fn is_choice_function(&self, alpha: &[Elem]) -> bool {
        alpha.len() == self.domain && alpha.iter().enumerate().all(|(a, &b)| self.related(a, b))
    }

    /// `∀α ∃a R(a, α(a))`; on failure, an `α` avoiding `R` everywhere.
    pub fn barred(&self) -> Result<(), Vec<Elem>> {
        let avoiding: Option<Vec<Elem>> = (0..self.domain)
            .map(|a| self.codomain.elements().find(|&b| !self.related(a, b)))
            .collect();
        match avoiding {
            Some(alpha) => Err(alpha),
            None => Ok(()),
        }
    }

    fn check_universe(&self, universe: Universe) -> Result<()> {
        if universe.alphabet() != self.codomain {
            return Err(Error::UniverseMismatch(
                "codomain differs from universe alphabet".into(),
            ));
        }
        if universe.depth() > self.domain {
            return Err(Error::InvalidArguments(format!(
                "universe depth {} exceeds relation domain {}",
                universe.depth(),
                self.domain
            )));
        }
        Ok(())
    }

    /// `⟨⟩ ↦ ⊤`, `u⋆b ↦ R(|u|, b)`.
    pub fn seq_alignment(&self, universe: Universe) -> Result<Pred> {
        self.check_universe(universe)?;
        Ok(Pred::from_fn(universe, |u| match u.last() {
            None => true,
            Some(b) => self.related(u.len() - 1, b),
        }))
    }

    /// `⟨⟩ ↦ ⊥`, `u⋆b ↦ R(|u|, b)`.
    pub fn seq_neg_alignment(&self, universe: Universe) -> Result<Pred> {
        self.check_universe(universe)?;
        Ok(Pred::from_fn(universe, |u| match u.last() {
            None => false,
            Some(b) => self.related(u.len() - 1, b),
        }))
    }
}

/// Left-total ⇒ choice function.
pub fn check_cc(r: &HetRel) -> RelPrincipleReport {
    let alpha = r.choice_function();
    RelPrincipleReport {
        hypothesis: r.is_left_total(),
        conclusion: alpha.is_some(),
        witness: alpha.map(|a| found::Witness::Branch {
            branch: Branch::from_vec_unchecked(a),
        }),
        least: None,
    }
}

/// Barred ⇒ grounded.
pub fn check_wbi(r: &HetRel) -> RelPrincipleReport {
    let barred = r.barred();
    let grounded = r.grounded();
    RelPrincipleReport {
        hypothesis: barred.is_ok(),
        conclusion: grounded.is_some(),
        witness: barred.err().map(|a| found::Witness::Branch {
            branch: Branch::from_vec_unchecked(a),
        }),
        least: grounded.map(|a| a as Elem),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(items: &[Elem]) -> Seq {
        Seq::from_vec_unchecked(items.to_vec())
    }

    fn alternation() -> HomRel {
        HomRel::from_fn(Alphabet::boolean(), |b, c| c == 1 - b)
    }

    fn bin(d: usize) -> Universe {
        Universe::new(Alphabet::boolean(), d).unwrap()
    }

    #[test]
    fn seriality_examples() {
        let b = Alphabet::boolean();
        assert!(HomRel::identity(b).is_serial());
        assert!(!HomRel::empty(b).is_serial());
        assert!(alternation().is_serial());
        assert_eq!(HomRel::full(b).least(), Some(0));
        assert_eq!(HomRel::empty(b).maximal(), Some(0));
        assert!(alternation().is_left_not_full());
    }

    #[test]
    fn chaining_examples() {
        let c = alternation().chaining(0, bin(2)).unwrap();
        assert_eq!(
            c,
            Pred::from_seqs(bin(2), &[s(&[]), s(&[1]), s(&[1, 0])]).unwrap()
        );
        let e = HomRel::empty(Alphabet::boolean())
            .chaining(0, bin(2))
            .unwrap();
        assert!(e.contains(&s(&[])));
        assert!(!e.contains(&s(&[1])));
    }

    #[test]
    fn alignment_examples() {
        let a = alternation().alignment(0, bin(2)).unwrap();
        assert!(a.contains(&s(&[1, 0])));
        assert!(a.contains(&s(&[])));
        assert!(!a.contains(&s(&[0])));
        // ⟨0,1⟩ has an aligned last step but an unaligned first one.
        assert!(a.contains(&s(&[0, 1])));
    }

    #[test]
    fn carrier_mismatch() {
        let r = HomRel::full(Alphabet::new(3).unwrap());
        assert!(matches!(
            r.chaining(0, bin(2)),
            Err(Error::UniverseMismatch(_))
        ));
        assert!(r.chaining(5, bin(2)).is_err());
    }

    #[test]
    fn chaining_is_arborified_alignment() {
        // Oracle: step-by-step definitions above against the closures, for
        // every relation on carriers of size 2 and 3.
        for k in [2usize, 3] {
            let b = Alphabet::new(k).unwrap();
            for d in 0..=3 {
                let u = Universe::new(b, d).unwrap();
                for mask in 0..1u64 << (k * k) {
                    let r = HomRel::from_mask(b, mask);
                    for b0 in b.elements() {
                        assert_eq!(
                            r.chaining(b0, u).unwrap(),
                            r.alignment(b0, u).unwrap().down_arborify()
                        );
                        assert_eq!(
                            r.antichaining(b0, u).unwrap(),
                            r.blockings(b0, u).unwrap().up_monotonise()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dc_serial_examples() {
        let r = check_dc_serial(&alternation(), 0, bin(3)).unwrap();
        assert!(r.hypothesis && r.conclusion);
        assert_eq!(
            r.witness,
            Some(found::Witness::Branch {
                branch: Branch::from_vec_unchecked(vec![1, 0, 1])
            })
        );
        let full = check_dc_serial(&HomRel::full(Alphabet::boolean()), 1, bin(3)).unwrap();
        assert!(full.conclusion);
        let empty = check_dc_serial(&HomRel::empty(Alphabet::boolean()), 0, bin(3)).unwrap();
        assert!(!empty.hypothesis && empty.holds());
    }

    #[test]
    fn serial_alignment_is_productive_and_dual() {
        for k in [2usize, 3] {
            let b = Alphabet::new(k).unwrap();
            for d in 1..=3 {
                let u = Universe::new(b, d).unwrap();
                for mask in 0..1u64 << (k * k) {
                    let r = HomRel::from_mask(b, mask);
                    for b0 in b.elements() {
                        let al = r.alignment(b0, u).unwrap();
                        if r.is_serial() {
                            assert!(found::is_productive(&al, Boundary::Open));
                        }
                        let bl = r.blockings(b0, u).unwrap();
                        if found::is_inductively_barred(&bl, Boundary::Open) {
                            assert!(r.least().is_some());
                        }
                        assert!(check_dc_serial(&r, b0, u).unwrap().holds());
                        assert!(check_bi_least(&r, b0, u).unwrap().holds());
                    }
                }
            }
        }
    }

    #[test]
    fn productive_relation_transports_branches() {
        let u = bin(3);
        for t in u.all_preds().unwrap().step_by(5) {
            let Some(pr) = ProductiveRelation::from_pred(&t).unwrap() else {
                assert!(!found::is_productive(&t, Boundary::Open));
                continue;
            };
            assert!(pr.relation.is_serial());
            let carrier_universe = Universe::new(pr.relation.carrier(), 3).unwrap();
            let report = check_dc_serial(&pr.relation, pr.root, carrier_universe).unwrap();
            let Some(found::Witness::Branch { branch: beta }) = report.witness else {
                panic!("serial relation without branch on {t:?}");
            };
            let alpha = pr.transport(&beta);
            assert!(
                alpha.prefixes().all(|v| t.contains(&v)),
                "{alpha} not a branch of {t:?}"
            );
        }
    }

    #[test]
    fn seq_alignment_examples() {
        let b = Alphabet::boolean();
        let parity = HetRel::from_fn(2, b, |n, x| x as usize == n % 2);
        let t = parity.seq_alignment(bin(2)).unwrap();
        assert!(t.contains(&s(&[0, 1])));
        assert!(t.contains(&s(&[])));
        let bottom = HetRel::from_fn(2, b, |_, _| false);
        assert!(!bottom.seq_alignment(bin(2)).unwrap().contains(&s(&[0])));
        assert!(bottom.seq_alignment(bin(3)).is_err());
    }

    #[test]
    fn countable_choice_correspondence() {
        for k in [2usize, 3] {
            let b = Alphabet::new(k).unwrap();
            for m in 1..=3usize {
                if m * k > 9 {
                    continue;
                }
                let u = Universe::new(b, m).unwrap();
                let branches: Vec<Branch> = Branch::all(b, m).collect();
                for mask in 0..1u64 << (m * k) {
                    let r = HetRel::from_mask(m, b, mask);
                    let pos = r.seq_alignment(u).unwrap();
                    let neg = r.seq_neg_alignment(u).unwrap();
                    assert_eq!(
                        r.is_left_total(),
                        found::is_productive(&pos, Boundary::Open)
                    );
                    for alpha in &branches {
                        let is_branch = alpha.prefixes().all(|v| pos.contains(&v));
                        assert_eq!(is_branch, r.is_choice_function(alpha.values()));
                    }
                    assert_eq!(r.barred().is_ok(), found::is_barred(&neg));
                    assert_eq!(
                        r.grounded().is_some(),
                        found::is_inductively_barred(&neg, Boundary::Open)
                    );
                    assert!(check_cc(&r).holds());
                    assert!(check_wbi(&r).holds());
                }
            }
        }
    }
}
