//! Entailment as inductive barredness on approximations `A ⇀ 𝔹`.
//!
//! A clause `Γ ▷ Δ` becomes the approximation sending `Γ` to 1 and `Δ` to 0.
//! A valuation falsifies the clause exactly when its graph extends that
//! approximation, so models are the choice functions of the complement and
//! derivable sequents are the approximations from which the translated
//! theory is inductively barred.

use std::collections::HashSet;

use serde::Serialize;

use super::{derivable, find_model, satisfies, Derivation, Sequent, Theory, Valuation};
use crate::approx::{
    find_choice_function, inductively_barred, ApproxPred, BarTree, ChoiceFun, Shape,
};
use crate::error::{Error, Result};
use crate::seq::{Alphabet, Elem};

/// Beyond this the bar search over `2^n` valuations is impractical.
pub const MAX_COMPLETENESS_ATOMS: usize = 16;

/// Pair mask over `Shape(n, 𝔹)`: bit `2a+1` for `a ∈ Γ`, bit `2a` for `a ∈ Δ`.
pub fn translate_sequent(s: Sequent) -> u64 {
    spread(s.gamma) << 1 | spread(s.delta)
}

/// Bit `i` of `x` moved to bit `2i`; only the low 32 bits survive.
fn spread(x: u64) -> u64 {
    (0..32)
        .filter(|i| x >> i & 1 == 1)
        .fold(0, |acc, i| acc | 1 << (2 * i))
}

/// The clause set as a predicate on approximations: exact membership of
/// translated clauses.
pub fn translate_theory(theory: &Theory) -> Result<ApproxPred> {
    if theory.num_atoms() > 32 {
        return Err(Error::Limit(format!(
            "{} atoms do not fit a 64-pair shape",
            theory.num_atoms()
        )));
    }
    let shape = Shape::new(theory.num_atoms(), Alphabet::boolean())?;
    let members: HashSet<u64> = theory
        .clauses()
        .iter()
        .map(|&c| translate_sequent(c))
        .collect();
    Ok(ApproxPred::oracle(shape, move |v| members.contains(&v)))
}

/// The valuation whose graph is `α`'s.
pub fn valuation_of(alpha: &ChoiceFun) -> Valuation {
    let truth = alpha
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .fold(0, |acc, (a, _)| acc | 1 << a);
    Valuation::new(alpha.values().len(), truth)
}

/// Both sides of the correspondence on one theory, with their witnesses.
#[derive(Debug, Clone, Serialize)]
pub struct CompletenessReport {
    pub atoms: usize,
    pub clauses: usize,
    /// `∅ ▷ ∅` is not derivable.
    pub consistent: bool,
    #[serde(skip)]
    pub derivation: Option<Derivation>,
    pub model: Option<Valuation>,
    /// The translated theory is inductively barred.
    pub barred: bool,
    #[serde(skip)]
    pub bar: Option<BarTree>,
    /// A choice function of the translated complement.
    pub choice: Option<Vec<Elem>>,
    /// Every witness re-checks.
    pub witnesses_valid: bool,
}

impl CompletenessReport {
    pub fn holds(&self) -> bool {
        self.consistent != self.barred
            && self.model.is_some() == self.choice.is_some()
            && self.consistent == self.model.is_some()
            && self.witnesses_valid
    }
}

/// Runs the prover and the approximation engines on `theory` and compares.
pub fn check_completeness(theory: &Theory) -> Result<CompletenessReport> {
    if theory.num_atoms() > MAX_COMPLETENESS_ATOMS {
        return Err(Error::Limit(format!(
            "completeness check over {} atoms exceeds {MAX_COMPLETENESS_ATOMS}",
            theory.num_atoms()
        )));
    }
    let t = translate_theory(theory)?;
    let derivation = derivable(theory, Sequent::default())?;
    let model = find_model(theory);
    let bar = inductively_barred(&t);
    let choice = find_choice_function(&t.complement());

    let mut valid = true;
    if let Some(d) = &derivation {
        valid &= d.check(theory) && d.conclusion() == Sequent::default();
    }
    if let Some(m) = model {
        valid &= satisfies(m, theory);
    }
    if let Some(b) = &bar {
        valid &= b.check(&t, 0);
    }
    if let Some(c) = &choice {
        valid &= satisfies(valuation_of(c), theory);
    }
    Ok(CompletenessReport {
        atoms: theory.num_atoms(),
        clauses: theory.clauses().len(),
        consistent: derivation.is_none(),
        derivation,
        model,
        barred: bar.is_some(),
        bar,
        choice: choice.map(|c| c.values().to_vec()),
        witnesses_valid: valid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::inductively_barred_from;
    use crate::entail::tests::shape;
    use proptest::prelude::*;

    #[test]
    fn translation_bits() {
        assert_eq!(translate_sequent(Sequent::new(0b01, 0b10)), 0b0110);
        assert_eq!(translate_sequent(Sequent::new(0b10, 0)), 0b1000);
    }

    #[test]
    fn two_atom_theories_exhaustive() {
        for set in 0..1u32 << 9 {
            let clauses = (0..9)
                .filter(|i| set >> i & 1 == 1)
                .map(|i| shape(2, i))
                .collect();
            let theory = Theory::anonymous(2, clauses).unwrap();
            let report = check_completeness(&theory).unwrap();
            assert!(report.holds(), "{theory}");
            let t = translate_theory(&theory).unwrap();
            for i in 0..9 {
                let s = shape(2, i);
                let proved = derivable(&theory, s).unwrap().is_some();
                let bar = inductively_barred_from(&t, translate_sequent(s)).unwrap();
                assert_eq!(proved, bar.is_some(), "{theory} {}", theory.show_sequent(s));
            }
        }
    }

    #[test]
    fn examples() {
        let empty = Theory::anonymous(2, vec![]).unwrap();
        assert!(check_completeness(&empty).unwrap().consistent);
        let contradiction =
            Theory::anonymous(1, vec![Sequent::new(0, 1), Sequent::new(1, 0)]).unwrap();
        let r = check_completeness(&contradiction).unwrap();
        assert!(!r.consistent && r.barred && r.holds());
        assert!(check_completeness(&Theory::anonymous(17, vec![]).unwrap()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn four_atom_correspondence(raw in proptest::collection::vec(0u32..81, 0..8)) {
            let theory = Theory::anonymous(4, raw.iter().map(|&i| shape(4, i)).collect()).unwrap();
            prop_assert!(check_completeness(&theory).unwrap().holds());
            let t = translate_theory(&theory).unwrap();
            for i in 0..81 {
                let s = shape(4, i);
                let proved = derivable(&theory, s).unwrap().is_some();
                prop_assert_eq!(proved, inductively_barred_from(&t, translate_sequent(s)).unwrap().is_some());
            }
        }
    }
}
