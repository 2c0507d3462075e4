//! Choice and bar-induction principles evaluated on a single predicate.
//!
//! Each principle is an implication `hypothesis(T) ⇒ conclusion(T)`. A
//! scheme-level equivalence between two principles is the statement that
//! their verdicts agree on every `T`, which the harness checks by
//! quantifying over a universe.

use serde::{Deserialize, Serialize};

use super::{decide, is_barred, Boundary, FoundReport, Property};
use crate::error::{Error, Result};
use crate::pred::Pred;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Principle {
    DcSpread,
    DcProductive,
    BiBarricaded,
    BiInd,
    KlSpread,
    KlProductive,
    KlUnbounded,
    KlStaged,
    FtBarricaded,
    FtInd,
    FtUniform,
    FtStaged,
}

impl Principle {
    pub const ALL: [Principle; 12] = [
        Principle::DcSpread,
        Principle::DcProductive,
        Principle::BiBarricaded,
        Principle::BiInd,
        Principle::KlSpread,
        Principle::KlProductive,
        Principle::KlUnbounded,
        Principle::KlStaged,
        Principle::FtBarricaded,
        Principle::FtInd,
        Principle::FtUniform,
        Principle::FtStaged,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Principle::DcSpread => "DC^spread",
            Principle::DcProductive => "DC^productive",
            Principle::BiBarricaded => "BI^barricaded",
            Principle::BiInd => "BI^ind",
            Principle::KlSpread => "KL^spread",
            Principle::KlProductive => "KL^productive",
            Principle::KlUnbounded => "KL^unbounded",
            Principle::KlStaged => "KL^staged",
            Principle::FtBarricaded => "FT^barricaded",
            Principle::FtInd => "FT^ind",
            Principle::FtUniform => "FT^uniform",
            Principle::FtStaged => "FT^staged",
        }
    }

    /// Accepts `DC^spread`, `dc-spread`, `DC_spread` and similar spellings.
    pub fn parse(name: &str) -> Result<Principle> {
        let norm: String = name
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        Principle::ALL
            .into_iter()
            .find(|p| {
                p.name()
                    .chars()
                    .filter(|c| c.is_ascii_alphanumeric())
                    .collect::<String>()
                    .to_ascii_lowercase()
                    == norm
            })
            .ok_or_else(|| Error::UnknownPrinciple(name.to_string()))
    }

    /// Whether the principle is ill-foundedness-style (concludes a branch).
    pub fn is_choice(self) -> bool {
        matches!(
            self,
            Principle::DcSpread
                | Principle::DcProductive
                | Principle::KlSpread
                | Principle::KlProductive
                | Principle::KlUnbounded
                | Principle::KlStaged
        )
    }

    /// The finite-alphabet name for a principle stated over arbitrary `B`.
    pub fn finite_alias(self) -> Principle {
        match self {
            Principle::DcSpread => Principle::KlSpread,
            Principle::DcProductive => Principle::KlProductive,
            Principle::BiBarricaded => Principle::FtBarricaded,
            Principle::BiInd => Principle::FtInd,
            other => other,
        }
    }

    fn conclusion(self) -> Property {
        match self {
            p if p.is_choice() => Property::InfiniteBranch,
            Principle::BiBarricaded | Principle::FtBarricaded => Property::Barricaded,
            Principle::BiInd | Principle::FtInd => Property::InductivelyBarred,
            Principle::FtUniform => Property::UniformlyBarred,
            _ => Property::StagedBarred,
        }
    }

    fn hypothesis(self, t: &Pred, boundary: Boundary) -> bool {
        let holds = |p| decide(t, p, boundary).holds;
        match self {
            Principle::DcSpread | Principle::KlSpread => holds(Property::Spread),
            Principle::DcProductive | Principle::KlProductive => holds(Property::Productive),
            Principle::KlUnbounded => holds(Property::UnboundedPaths),
            Principle::KlStaged => t.is_tree() && holds(Property::StagedInfinite),
            Principle::FtStaged => t.is_monotone() && is_barred(t),
            _ => is_barred(t),
        }
    }
}

impl std::fmt::Display for Principle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipleReport {
    pub principle: Principle,
    pub hypothesis: bool,
    /// Verdict and witness for the conclusion.
    pub conclusion: FoundReport,
}

impl PrincipleReport {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion.holds
    }
}

/// Evaluates the named principle on `t`.
pub fn check_principle(name: &str, t: &Pred, boundary: Boundary) -> Result<PrincipleReport> {
    let principle = Principle::parse(name)?;
    Ok(evaluate(principle, t, boundary))
}

pub fn evaluate(principle: Principle, t: &Pred, boundary: Boundary) -> PrincipleReport {
    PrincipleReport {
        principle,
        hypothesis: principle.hypothesis(t, boundary),
        conclusion: decide(t, principle.conclusion(), boundary),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pred::Universe;
    use crate::seq::{Alphabet, Seq};

    #[test]
    fn parse_spellings() {
        assert_eq!(Principle::parse("DC^spread").unwrap(), Principle::DcSpread);
        assert_eq!(Principle::parse("bi-ind").unwrap(), Principle::BiInd);
        assert_eq!(
            Principle::parse("FT_uniform").unwrap(),
            Principle::FtUniform
        );
        assert!(matches!(
            Principle::parse("AC"),
            Err(Error::UnknownPrinciple(_))
        ));
    }

    #[test]
    fn examples() {
        let u = Universe::new(Alphabet::boolean(), 2).unwrap();
        let full = Pred::full(u);
        let r = check_principle("DC^spread", &full, Boundary::Open).unwrap();
        assert!(r.hypothesis && r.holds());
        assert!(r.conclusion.witness.is_some());

        let bar = Pred::from_seqs(
            u,
            &[
                Seq::from_vec_unchecked(vec![0]),
                Seq::from_vec_unchecked(vec![1]),
            ],
        )
        .unwrap();
        let r = check_principle("BI^ind", &bar, Boundary::Open).unwrap();
        assert!(r.hypothesis && r.conclusion.holds);
    }

    #[test]
    fn every_principle_holds_at_finite_depth() {
        for (b, d) in [(2, 1), (2, 2), (2, 3), (3, 2)] {
            let u = Universe::new(Alphabet::new(b).unwrap(), d).unwrap();
            for (i, t) in u.all_preds().unwrap().enumerate() {
                if b == 3 && i % 97 != 0 {
                    continue;
                }
                for p in Principle::ALL {
                    let r = evaluate(p, &t, Boundary::Open);
                    assert!(r.holds(), "{p} fails on {t:?}");
                }
            }
        }
    }

    #[test]
    fn finite_aliases_agree() {
        let u = Universe::new(Alphabet::boolean(), 2).unwrap();
        for t in u.all_preds().unwrap() {
            for p in Principle::ALL {
                let a = evaluate(p, &t, Boundary::Open);
                let b = evaluate(p.finite_alias(), &t, Boundary::Open);
                assert_eq!(a.hypothesis, b.hypothesis);
                assert_eq!(a.conclusion.holds, b.conclusion.holds);
            }
        }
    }
}
