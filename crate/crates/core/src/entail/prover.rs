//! Proof search for `Γ ⊢_T Δ` with the rules
//!
//! ```text
//!   Γ )( Δ            (Γ' ▷ Δ') ∈ T, Γ' ⊆ Γ, Δ' ⊆ Δ        Γ ⊢ Δ, F    Γ, F ⊢ Δ
//! ---------- Ax      ------------------------------- AxT  ---------------------- Cut (F ∉ Γ ∪ Δ)
//!   Γ ⊢ Δ                       Γ ⊢ Δ                            Γ ⊢ Δ
//! ```
//!
//! Cut is invertible: `Γ ⊢ Δ` holds iff both premises hold, for any free
//! `F`. The search therefore commits to one split atom per sequent, and a
//! failed premise means the sequent is underivable.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{Sequent, Theory, Valuation};
use crate::error::Result;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitRule {
    /// Lowest-index free atom.
    #[default]
    Lowest,
    /// The free atom occurring in the most clauses that can still fire.
    MostFrequent,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProverOptions {
    pub split: SplitRule,
    /// Prefer the free atom of a clause that is one atom away from firing.
    pub unit_first: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Derivation {
    Ax {
        sequent: Sequent,
        atom: usize,
    },
    AxT {
        sequent: Sequent,
        clause: Sequent,
    },
    Cut {
        sequent: Sequent,
        atom: usize,
        /// `Γ ⊢ Δ, F`.
        left: Box<Derivation>,
        /// `Γ, F ⊢ Δ`.
        right: Box<Derivation>,
    },
}

impl Derivation {
    pub fn conclusion(&self) -> Sequent {
        match self {
            Derivation::Ax { sequent, .. }
            | Derivation::AxT { sequent, .. }
            | Derivation::Cut { sequent, .. } => *sequent,
        }
    }

    /// Every rule instance is correct for `theory`.
    pub fn check(&self, theory: &Theory) -> bool {
        match self {
            Derivation::Ax { sequent, atom } => {
                *atom < 64 && (sequent.gamma & sequent.delta) >> atom & 1 == 1
            }
            Derivation::AxT { sequent, clause } => {
                theory.clauses().contains(clause) && sequent.subsumed_by(*clause)
            }
            Derivation::Cut {
                sequent,
                atom,
                left,
                right,
            } => {
                let f = 1u64 << atom;
                *atom < theory.num_atoms()
                    && sequent.atoms() & f == 0
                    && left.conclusion() == Sequent::new(sequent.gamma, sequent.delta | f)
                    && right.conclusion() == Sequent::new(sequent.gamma | f, sequent.delta)
                    && left.check(theory)
                    && right.check(theory)
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Derivation::Cut { left, right, .. } => 1 + left.size() + right.size(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Derivation::Cut { left, right, .. } => 1 + left.depth().max(right.depth()),
            _ => 0,
        }
    }

    /// Nested records tagged `AX`, `AXT` and `CUT`, with atom names.
    pub fn to_json(&self, theory: &Theory) -> Value {
        let seq = |s: &Sequent| {
            json!({
                "antecedent": theory.names(s.gamma),
                "succedent": theory.names(s.delta),
            })
        };
        match self {
            Derivation::Ax { sequent, atom } => json!({
                "rule": "AX",
                "sequent": seq(sequent),
                "atom": theory.atoms()[*atom],
            }),
            Derivation::AxT { sequent, clause } => json!({
                "rule": "AXT",
                "sequent": seq(sequent),
                "clause": seq(clause),
            }),
            Derivation::Cut {
                sequent,
                atom,
                left,
                right,
            } => json!({
                "rule": "CUT",
                "sequent": seq(sequent),
                "atom": theory.atoms()[*atom],
                "premises": [left.to_json(theory), right.to_json(theory)],
            }),
        }
    }

    /// Indented rendering, one rule per line.
    pub fn render(&self, theory: &Theory) -> String {
        let mut out = String::new();
        self.render_into(theory, 0, &mut out);
        out
    }

    fn render_into(&self, theory: &Theory, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        let s = theory.show_sequent(self.conclusion());
        match self {
            Derivation::Ax { atom, .. } => {
                out.push_str(&format!("{pad}{s}   [Ax {}]\n", theory.atoms()[*atom]));
            }
            Derivation::AxT { clause, .. } => {
                out.push_str(&format!(
                    "{pad}{s}   [AxT {}]\n",
                    theory.show_sequent(*clause)
                ));
            }
            Derivation::Cut {
                atom, left, right, ..
            } => {
                out.push_str(&format!("{pad}{s}   [Cut {}]\n", theory.atoms()[*atom]));
                left.render_into(theory, indent + 1, out);
                right.render_into(theory, indent + 1, out);
            }
        }
    }
}

struct Prover<'a> {
    theory: &'a Theory,
    options: ProverOptions,
    memo: HashMap<Sequent, bool>,
}

impl<'a> Prover<'a> {
    fn new(theory: &'a Theory, options: ProverOptions) -> Self {
        Prover {
            theory,
            options,
            memo: HashMap::new(),
        }
    }

    fn subsuming(&self, s: Sequent) -> Option<Sequent> {
        self.theory
            .clauses()
            .iter()
            .copied()
            .find(|&c| s.subsumed_by(c))
    }

    /// Clauses that some extension of `s` can still weaken to.
    fn alive(&self, s: Sequent) -> impl Iterator<Item = Sequent> + '_ {
        self.theory
            .clauses()
            .iter()
            .copied()
            .filter(move |c| c.gamma & s.delta == 0 && c.delta & s.gamma == 0)
    }

    fn split_atom(&self, s: Sequent) -> Option<usize> {
        let free = self.theory.all_atoms() & !s.atoms();
        if free == 0 {
            return None;
        }
        if self.options.unit_first {
            let unit = self.alive(s).find_map(|c| {
                let missing = c.atoms() & free;
                (missing.count_ones() == 1).then(|| missing.trailing_zeros() as usize)
            });
            if unit.is_some() {
                return unit;
            }
        }
        match self.options.split {
            SplitRule::Lowest => Some(free.trailing_zeros() as usize),
            SplitRule::MostFrequent => {
                let mut counts = [0u32; 64];
                for c in self.alive(s) {
                    let mut m = c.atoms() & free;
                    while m != 0 {
                        counts[m.trailing_zeros() as usize] += 1;
                        m &= m - 1;
                    }
                }
                (0..self.theory.num_atoms())
                    .filter(|a| free >> a & 1 == 1)
                    .max_by_key(|&a| (counts[a], std::cmp::Reverse(a)))
            }
        }
    }

    fn decide(&mut self, s: Sequent) -> bool {
        if s.is_axiom() || self.subsuming(s).is_some() {
            return true;
        }
        if let Some(&x) = self.memo.get(&s) {
            return x;
        }
        let x = self.alive(s).next().is_some()
            && match self.split_atom(s) {
                None => false,
                Some(a) => {
                    let f = 1u64 << a;
                    self.decide(Sequent::new(s.gamma, s.delta | f))
                        && self.decide(Sequent::new(s.gamma | f, s.delta))
                }
            };
        self.memo.insert(s, x);
        x
    }

    fn derivation(&mut self, s: Sequent) -> Option<Derivation> {
        if s.is_axiom() {
            let atom = (s.gamma & s.delta).trailing_zeros() as usize;
            return Some(Derivation::Ax { sequent: s, atom });
        }
        if let Some(clause) = self.subsuming(s) {
            return Some(Derivation::AxT { sequent: s, clause });
        }
        if !self.decide(s) {
            return None;
        }
        let atom = self.split_atom(s)?;
        let f = 1u64 << atom;
        let left = self.derivation(Sequent::new(s.gamma, s.delta | f))?;
        let right = self.derivation(Sequent::new(s.gamma | f, s.delta))?;
        Some(Derivation::Cut {
            sequent: s,
            atom,
            left: Box::new(left),
            right: Box::new(right),
        })
    }
}

/// A derivation of `s` from `theory`, with the default split rule.
pub fn derivable(theory: &Theory, s: Sequent) -> Result<Option<Derivation>> {
    derivable_with(theory, s, ProverOptions::default())
}

pub fn derivable_with(
    theory: &Theory,
    s: Sequent,
    options: ProverOptions,
) -> Result<Option<Derivation>> {
    theory.check_sequent(s)?;
    Ok(Prover::new(theory, options).derivation(s))
}

/// Verdict only; avoids building the derivation tree.
pub fn is_derivable(theory: &Theory, s: Sequent, options: ProverOptions) -> Result<bool> {
    theory.check_sequent(s)?;
    Ok(Prover::new(theory, options).decide(s))
}

/// A valuation making `Γ` true and `Δ` false that falsifies no clause,
/// found by splitting on the lowest free atom, true before false.
/// `None` when `Γ )( Δ`, when a clause already fires, or when every
/// extension eventually fires one.
pub fn positively_disprovable(theory: &Theory, s: Sequent) -> Result<Option<Valuation>> {
    theory.check_sequent(s)?;
    let prover = Prover::new(theory, ProverOptions::default());
    fn go(p: &Prover, s: Sequent) -> Option<Valuation> {
        if s.is_axiom() || p.subsuming(s).is_some() {
            return None;
        }
        let free = p.theory.all_atoms() & !s.atoms();
        if p.alive(s).next().is_none() || free == 0 {
            return Some(Valuation::new(p.theory.num_atoms(), s.gamma | free));
        }
        let f = 1u64 << free.trailing_zeros();
        go(p, Sequent::new(s.gamma | f, s.delta))
            .or_else(|| go(p, Sequent::new(s.gamma, s.delta | f)))
    }
    Ok(go(&prover, s))
}

/// A model of the theory, if one exists.
pub fn find_model(theory: &Theory) -> Option<Valuation> {
    positively_disprovable(theory, Sequent::default()).expect("empty sequent is always well formed")
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_models, satisfies, tests::shape};
    use super::*;
    use proptest::prelude::*;

    fn theory(atoms: &[&str], clauses: &[(&[&str], &[&str])]) -> Theory {
        let names: Vec<String> = atoms.iter().map(|s| s.to_string()).collect();
        let probe = Theory::new(names.clone(), vec![]).unwrap();
        let cs = clauses
            .iter()
            .map(|(g, d)| probe.sequent(g, d).unwrap())
            .collect();
        Theory::new(names, cs).unwrap()
    }

    #[test]
    fn axiom_example() {
        let t = theory(&["a"], &[]);
        let d = derivable(&t, t.sequent(&["a"], &["a"]).unwrap())
            .unwrap()
            .unwrap();
        assert!(matches!(d, Derivation::Ax { atom: 0, .. }));
    }

    #[test]
    fn cut_example() {
        let t = theory(&["a"], &[(&["a"], &[]), (&[], &["a"])]);
        let d = derivable(&t, Sequent::default()).unwrap().unwrap();
        match &d {
            Derivation::Cut {
                atom: 0,
                left,
                right,
                ..
            } => {
                assert!(matches!(**left, Derivation::AxT { .. }));
                assert!(matches!(**right, Derivation::AxT { .. }));
            }
            other => panic!("unexpected derivation {other:?}"),
        }
        assert!(d.check(&t));
        assert!(enumerate_models(&t).unwrap().is_empty());
        let j = d.to_json(&t);
        assert_eq!(j["rule"], "CUT");
        assert_eq!(j["atom"], "a");
        assert_eq!(j["premises"][0]["rule"], "AXT");
    }

    #[test]
    fn underivable_example() {
        let t = theory(&["a", "b"], &[(&[], &["a", "b"])]);
        assert!(derivable(&t, Sequent::default()).unwrap().is_none());
        let w = positively_disprovable(&t, Sequent::default())
            .unwrap()
            .unwrap();
        assert!(w.get(0));
    }

    #[test]
    fn disprovability_examples() {
        let empty = theory(&["a"], &[]);
        assert!(positively_disprovable(&empty, Sequent::default())
            .unwrap()
            .is_some());
        let bad = theory(&["a"], &[(&["a"], &[]), (&[], &["a"])]);
        assert!(positively_disprovable(&bad, Sequent::default())
            .unwrap()
            .is_none());
        let t = theory(&["a"], &[]);
        assert!(
            positively_disprovable(&t, t.sequent(&["a"], &["a"]).unwrap())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn model_examples() {
        assert!(find_model(&theory(&["a"], &[])).is_some());
        let t = theory(&["a", "b"], &[(&[], &["a"]), (&["a"], &["b"])]);
        let m = find_model(&t).unwrap();
        assert!(m.get(0) && m.get(1));
        assert!(find_model(&theory(&["a"], &[(&["a"], &[]), (&[], &["a"])])).is_none());
    }

    #[test]
    fn invalid_sequents_are_rejected() {
        let t = theory(&["a"], &[]);
        assert!(derivable(&t, Sequent::new(2, 0)).is_err());
    }

    /// Derivability against the semantic oracle: `Γ ⊢ Δ` iff every model
    /// of the theory satisfies `Γ ▷ Δ`.
    fn semantic(t: &Theory, s: Sequent) -> bool {
        enumerate_models(t)
            .unwrap()
            .iter()
            .all(|m| m.satisfies_sequent(s))
    }

    #[test]
    fn all_two_atom_theories() {
        let options = [
            ProverOptions::default(),
            ProverOptions {
                split: SplitRule::MostFrequent,
                unit_first: false,
            },
            ProverOptions {
                split: SplitRule::Lowest,
                unit_first: true,
            },
        ];
        for set in 0..1u32 << 9 {
            let clauses = (0..9)
                .filter(|i| set >> i & 1 == 1)
                .map(|i| shape(2, i))
                .collect();
            let t = Theory::anonymous(2, clauses).unwrap();
            for g in 0..4 {
                for d in 0..4 {
                    let s = Sequent::new(g, d);
                    let want = semantic(&t, s);
                    for o in options {
                        let got = derivable_with(&t, s, o).unwrap();
                        assert_eq!(got.is_some(), want, "{t} {s:?} {o:?}");
                        if let Some(der) = got {
                            assert!(der.check(&t));
                        }
                    }
                    let w = positively_disprovable(&t, s).unwrap();
                    assert_eq!(w.is_some(), !want);
                    if let Some(w) = w {
                        assert!(satisfies(w, &t) && w.falsifies_sequent(s));
                    }
                }
            }
        }
    }

    fn arb_theory(n: usize) -> impl Strategy<Value = Theory> {
        let shapes = 3u32.pow(n as u32);
        prop::collection::vec(0..shapes, 0..7).prop_map(move |cs| {
            Theory::anonymous(n, cs.into_iter().map(|i| shape(n, i)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn soundness_and_completeness(t in arb_theory(4), g in 0u64..16, d in 0u64..16) {
            let s = Sequent::new(g, d);
            let der = derivable(&t, s).unwrap();
            prop_assert_eq!(der.is_some(), semantic(&t, s));
            if let Some(der) = der {
                prop_assert!(der.check(&t));
            }
        }

        #[test]
        fn weakening_is_admissible(t in arb_theory(4), g in 0u64..16, d in 0u64..16, g2 in 0u64..16, d2 in 0u64..16) {
            let s = Sequent::new(g, d);
            if derivable(&t, s).unwrap().is_some() {
                prop_assert!(derivable(&t, Sequent::new(g | g2, d | d2)).unwrap().is_some());
            }
        }

        #[test]
        fn split_heuristics_do_not_change_verdicts(t in arb_theory(5), g in 0u64..32, d in 0u64..32) {
            let s = Sequent::new(g, d);
            let base = is_derivable(&t, s, ProverOptions::default()).unwrap();
            for split in [SplitRule::Lowest, SplitRule::MostFrequent] {
                for unit_first in [false, true] {
                    let o = ProverOptions { split, unit_first };
                    prop_assert_eq!(is_derivable(&t, s, o).unwrap(), base);
                }
            }
        }

        #[test]
        fn models_from_search_are_models(t in arb_theory(5)) {
            let m = find_model(&t);
            prop_assert_eq!(m.is_some(), !enumerate_models(&t).unwrap().is_empty());
            if let Some(m) = m {
                prop_assert!(satisfies(m, &t));
            }
        }
    }
}
