//! Clause theories over a finite atom set, the entailment relation they
//! generate, and models.
//!
//! Atom sets are `u64` masks over the theory's atoms, so theories have at
//! most 64 atoms. A clause `Γ ▷ Δ` reads `⋀Γ → ⋁Δ`.

mod compl;
mod file;
mod prover;

pub use compl::{
    check_completeness, translate_sequent, translate_theory, valuation_of, CompletenessReport,
    MAX_COMPLETENESS_ATOMS,
};
pub use file::{parse_sequent, parse_theory, theory_to_yaml};
pub use prover::{
    derivable, derivable_with, find_model, is_derivable, positively_disprovable, Derivation,
    ProverOptions, SplitRule,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ATOMS: usize = 64;

/// `Γ ▷ Δ` with `Γ` and `Δ` as atom sets.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Sequent {
    pub gamma: u64,
    pub delta: u64,
}

impl Sequent {
    pub fn new(gamma: u64, delta: u64) -> Self {
        Sequent { gamma, delta }
    }

    pub fn atoms(self) -> u64 {
        self.gamma | self.delta
    }

    /// `Γ )( Δ`: an atom occurs on both sides.
    pub fn is_axiom(self) -> bool {
        self.gamma & self.delta != 0
    }

    /// The `i`-th of the `3^n` disjoint sequents over `n` atoms, reading `i`
    /// in base 3 with digit 0 for absent, 1 for `Γ`, 2 for `Δ`.
    pub fn from_ternary(n: usize, mut i: u64) -> Sequent {
        let mut s = Sequent::default();
        for a in 0..n {
            match i % 3 {
                1 => s.gamma |= 1 << a,
                2 => s.delta |= 1 << a,
                _ => {}
            }
            i /= 3;
        }
        s
    }

    /// `self` is a weakening of `other`.
    pub fn subsumed_by(self, other: Sequent) -> bool {
        other.gamma & !self.gamma == 0 && other.delta & !self.delta == 0
    }
}

/// A finite set of clauses over named atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Theory {
    atoms: Vec<String>,
    clauses: Vec<Sequent>,
}

impl Theory {
    /// Clauses are kept as a sorted set; duplicates collapse.
    pub fn new(atoms: Vec<String>, clauses: Vec<Sequent>) -> Result<Self> {
        if atoms.len() > MAX_ATOMS {
            return Err(Error::Limit(format!(
                "{} atoms exceed {MAX_ATOMS}",
                atoms.len()
            )));
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(Error::InvalidArguments(format!("duplicate atom `{a}`")));
            }
        }
        let all = mask_of(atoms.len());
        if let Some(c) = clauses.iter().find(|c| c.atoms() & !all != 0) {
            return Err(Error::InvalidArguments(format!(
                "clause {:?} mentions atoms beyond the {} declared",
                c,
                atoms.len()
            )));
        }
        let mut clauses = clauses;
        clauses.sort_unstable();
        clauses.dedup();
        Ok(Theory { atoms, clauses })
    }

    /// Atoms named `p0`, `p1`, ….
    pub fn anonymous(n: usize, clauses: Vec<Sequent>) -> Result<Self> {
        Theory::new((0..n).map(|i| format!("p{i}")).collect(), clauses)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn all_atoms(&self) -> u64 {
        mask_of(self.atoms.len())
    }

    pub fn clauses(&self) -> &[Sequent] {
        &self.clauses
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// Atom set from names.
    pub fn atom_set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<u64> {
        names.into_iter().try_fold(0u64, |acc, n| {
            self.atom_index(n)
                .map(|i| acc | 1 << i)
                .ok_or_else(|| Error::InvalidArguments(format!("unknown atom `{n}`")))
        })
    }

    pub fn sequent(&self, gamma: &[&str], delta: &[&str]) -> Result<Sequent> {
        Ok(Sequent::new(
            self.atom_set(gamma.iter().copied())?,
            self.atom_set(delta.iter().copied())?,
        ))
    }

    pub fn check_sequent(&self, s: Sequent) -> Result<()> {
        if s.atoms() & !self.all_atoms() != 0 {
            return Err(Error::InvalidArguments(
                "sequent mentions undeclared atoms".into(),
            ));
        }
        Ok(())
    }

    pub fn names(&self, set: u64) -> Vec<&str> {
        (0..self.atoms.len())
            .filter(|i| set >> i & 1 == 1)
            .map(|i| self.atoms[i].as_str())
            .collect()
    }

    pub fn show_sequent(&self, s: Sequent) -> String {
        format!(
            "{} ▷ {}",
            self.names(s.gamma).join(", "),
            self.names(s.delta).join(", ")
        )
        .trim()
        .to_string()
    }
}

pub(crate) fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// A total valuation; bit `a` is the truth value of atom `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Valuation {
    atoms: usize,
    truth: u64,
}

impl Valuation {
    pub fn new(atoms: usize, truth: u64) -> Self {
        Valuation {
            atoms,
            truth: truth & mask_of(atoms),
        }
    }

    pub fn num_atoms(self) -> usize {
        self.atoms
    }

    pub fn truth(self) -> u64 {
        self.truth
    }

    pub fn falsity(self) -> u64 {
        !self.truth & mask_of(self.atoms)
    }

    pub fn get(self, a: usize) -> bool {
        self.truth >> a & 1 == 1
    }

    /// `Γ ⊂ α ⇒ Δ )( α`.
    pub fn satisfies_sequent(self, s: Sequent) -> bool {
        s.gamma & !self.truth != 0 || s.delta & self.truth != 0
    }

    /// `Γ ⊂ α ∧ Δ ⊂ ᾱ`.
    pub fn falsifies_sequent(self, s: Sequent) -> bool {
        !self.satisfies_sequent(s)
    }

    pub fn show(self, theory: &Theory) -> String {
        let parts: Vec<String> = theory
            .atoms()
            .iter()
            .enumerate()
            .map(|(i, a)| format!("{a}={}", u8::from(self.get(i))))
            .collect();
        parts.join(" ")
    }
}

/// `α ⊨ T`.
pub fn satisfies(alpha: Valuation, theory: &Theory) -> bool {
    theory.clauses().iter().all(|&c| alpha.satisfies_sequent(c))
}

/// Some clause has its antecedent true and its succedent false under `α`.
pub fn positively_falsifies(alpha: Valuation, theory: &Theory) -> bool {
    theory.clauses().iter().any(|&c| alpha.falsifies_sequent(c))
}

/// Brute-force model enumeration, for at most 20 atoms.
pub fn enumerate_models(theory: &Theory) -> Result<Vec<Valuation>> {
    let n = theory.num_atoms();
    if n > 20 {
        return Err(Error::Limit(format!("enumerating models over {n} atoms")));
    }
    Ok((0..1u64 << n)
        .map(|t| Valuation::new(n, t))
        .filter(|&a| satisfies(a, theory))
        .collect())
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "atoms: {}", self.atoms.join(", "))?;
        for &c in &self.clauses {
            writeln!(f, "  {}", self.show_sequent(c))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn theories_are_sets() {
        let t = Theory::new(
            ab(),
            vec![Sequent::new(0, 1), Sequent::new(0, 1), Sequent::new(1, 0)],
        )
        .unwrap();
        assert_eq!(t.clauses().len(), 2);
        assert!(Theory::new(vec!["a".into(), "a".into()], vec![]).is_err());
        assert!(Theory::new(ab(), vec![Sequent::new(4, 0)]).is_err());
        assert_eq!(t.show_sequent(Sequent::new(1, 2)), "a ▷ b");
    }

    #[test]
    fn satisfaction_examples() {
        let empty = Theory::new(ab(), vec![]).unwrap();
        assert!(satisfies(Valuation::new(2, 0), &empty));
        let t = Theory::new(vec!["a".into()], vec![Sequent::new(0, 1)]).unwrap();
        assert!(satisfies(Valuation::new(1, 1), &t));
        assert!(!satisfies(Valuation::new(1, 0), &t));
    }

    #[test]
    fn truth_is_absence_of_positive_falsity() {
        // All theories over 2 atoms (9 clause shapes) and every valuation;
        // plus a sample of 4-atom theories.
        for set in 0..1u32 << 9 {
            let clauses = (0..9)
                .filter(|i| set >> i & 1 == 1)
                .map(|i| shape(2, i))
                .collect();
            let t = Theory::anonymous(2, clauses).unwrap();
            for v in 0..4 {
                let a = Valuation::new(2, v);
                assert_eq!(satisfies(a, &t), !positively_falsifies(a, &t));
            }
        }
        for seed in 0..200u64 {
            let clauses = (0..5)
                .map(|j| shape(4, ((seed * 7919 + j * 104729) % 81) as u32))
                .collect();
            let t = Theory::anonymous(4, clauses).unwrap();
            for v in 0..16 {
                let a = Valuation::new(4, v);
                assert_eq!(satisfies(a, &t), !positively_falsifies(a, &t));
            }
        }
    }

    pub(crate) fn shape(n: usize, i: u32) -> Sequent {
        Sequent::from_ternary(n, i as u64)
    }
}
