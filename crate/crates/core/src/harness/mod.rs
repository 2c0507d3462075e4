//! Check suites: each quantifies a family of theorem instances over a small
//! universe and records one [`Record`] per instance.
//!
//! Instances are enumerated exhaustively when the family is small enough and
//! sampled with a seeded generator otherwise. Evaluation is parallel; records
//! come back in instance order.

mod choice;
mod found;
mod logic;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::entail::{Sequent, Theory};
use crate::error::{Error, Result};
use crate::found::Boundary;
use crate::pred::{Pred, Universe};
use crate::seq::Alphabet;

/// Universes with at most this many nodes are enumerated exhaustively.
pub const EXHAUSTIVE_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Foundedness,
    DcBi,
    KlFt,
    CcAc,
    GdcGbi,
    Completeness,
    Bpf,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Foundedness,
        Suite::DcBi,
        Suite::KlFt,
        Suite::CcAc,
        Suite::GdcGbi,
        Suite::Completeness,
        Suite::Bpf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Foundedness => "foundedness",
            Suite::DcBi => "dc-bi",
            Suite::KlFt => "kl-ft",
            Suite::CcAc => "cc-ac",
            Suite::GdcGbi => "gdc-gbi",
            Suite::Completeness => "completeness",
            Suite::Bpf => "bpf",
        }
    }

    /// A suite name, or `all`.
    pub fn parse_many(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Ok(vec![name.parse()?])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArguments(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub alphabet: usize,
    pub depth: usize,
    pub boundary: Boundary,
    /// Atom count for the theory suites.
    pub atoms: usize,
    /// Instance count when a family is sampled.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            alphabet: 2,
            depth: 3,
            boundary: Boundary::Open,
            atoms: 2,
            samples: 10_000,
            seed: 0,
        }
    }
}

impl Config {
    pub fn universe(&self) -> Result<Universe> {
        if self.depth == 0 {
            return Err(Error::InvalidArguments("depth must be at least 1".into()));
        }
        Universe::new(Alphabet::new(self.alphabet)?, self.depth)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub holds: bool,
}

/// The verdicts of every theorem checked on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub index: usize,
    pub universe: String,
    pub instance: String,
    pub checks: Vec<CheckResult>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub micros: u64,
}

/// Accumulates the checks of one instance.
pub(crate) struct Checks {
    checks: Vec<CheckResult>,
    witness: Option<Value>,
}

impl Checks {
    pub(crate) fn new() -> Self {
        Checks {
            checks: Vec::new(),
            witness: None,
        }
    }

    pub(crate) fn check(&mut self, id: &'static str, holds: bool) {
        self.checks.push(CheckResult { id, holds });
    }

    pub(crate) fn witness(&mut self, w: Value) {
        self.witness = Some(w);
    }
}

/// Runs `f` on every item in parallel; records keep item order.
pub(crate) fn par_records<I: Sync>(
    suite: Suite,
    universe: &str,
    items: &[I],
    describe: impl Fn(&I) -> String + Sync,
    f: impl Fn(&I, &mut Checks) -> Result<()> + Sync,
) -> Result<Vec<Record>> {
    items
        .par_iter()
        .enumerate()
        .map(|(index, item)| {
            let start = Instant::now();
            let mut checks = Checks::new();
            f(item, &mut checks)?;
            Ok(Record {
                suite: suite.name(),
                index,
                universe: universe.to_string(),
                instance: describe(item),
                holds: checks.checks.iter().all(|c| c.holds),
                checks: checks.checks,
                witness: checks.witness,
                micros: start.elapsed().as_micros() as u64,
            })
        })
        .collect()
}

/// Every predicate when the universe is small, else `samples` random ones.
pub(crate) fn predicates(universe: Universe, config: &Config, salt: u64) -> Result<Vec<Pred>> {
    if universe.len() <= EXHAUSTIVE_NODES {
        return Ok(universe.all_preds()?.collect());
    }
    let mut rng = config.rng(salt);
    Ok((0..config.samples)
        .map(|_| Pred::from_rank_fn(universe, |_| rng.gen()))
        .collect())
}

/// Every theory over `n ≤ 2` atoms built from disjoint clauses, else
/// `samples` random theories with up to `2n + 2` such clauses.
pub(crate) fn theories(n: usize, config: &Config, salt: u64) -> Result<Vec<Theory>> {
    let shapes = 3u64.pow(n as u32);
    if shapes <= 9 {
        return (0..1u64 << shapes)
            .map(|set| {
                let clauses = (0..shapes)
                    .filter(|i| set >> i & 1 == 1)
                    .map(|i| Sequent::from_ternary(n, i))
                    .collect();
                Theory::anonymous(n, clauses)
            })
            .collect();
    }
    let mut rng = config.rng(salt);
    (0..config.samples)
        .map(|_| {
            let count = rng.gen_range(0..=2 * n + 2);
            let clauses = (0..count)
                .map(|_| Sequent::from_ternary(n, rng.gen_range(0..shapes)))
                .collect();
            Theory::anonymous(n, clauses)
        })
        .collect()
}

pub(crate) fn describe_pred(t: &Pred) -> String {
    format!("{t:?}").trim_start_matches("Pred").to_string()
}

pub(crate) fn describe_theory(t: &Theory) -> String {
    let clauses: Vec<String> = t.clauses().iter().map(|&c| t.show_sequent(c)).collect();
    format!("{{{}}}", clauses.join("; "))
}

/// Runs one suite.
pub fn run(suite: Suite, config: &Config) -> Result<Vec<Record>> {
    match suite {
        Suite::Foundedness => found::foundedness(config),
        Suite::DcBi => found::dc_bi(config),
        Suite::KlFt => found::kl_ft(config),
        Suite::CcAc => choice::cc_ac(config),
        Suite::GdcGbi => choice::gdc_gbi(config),
        Suite::Completeness => logic::completeness(config),
        Suite::Bpf => logic::bpf(config),
    }
}

/// Runs a suite by name, `all` running every suite in order.
pub fn run_named(name: &str, config: &Config) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for suite in Suite::parse_many(name)? {
        out.extend(run(suite, config)?);
    }
    Ok(out)
}

/// Pass counts per suite and check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub suite: &'static str,
    pub check: &'static str,
    pub passed: usize,
    pub total: usize,
}

pub fn tally(records: &[Record]) -> Vec<Tally> {
    let mut map: BTreeMap<(usize, usize), Tally> = BTreeMap::new();
    let mut suite_order: Vec<&'static str> = Vec::new();
    let mut check_order: Vec<&'static str> = Vec::new();
    let pos =
        |order: &mut Vec<&'static str>, s: &'static str| match order.iter().position(|&x| x == s) {
            Some(i) => i,
            None => {
                order.push(s);
                order.len() - 1
            }
        };
    for r in records {
        let si = pos(&mut suite_order, r.suite);
        for c in &r.checks {
            let ci = pos(&mut check_order, c.id);
            let t = map.entry((si, ci)).or_insert(Tally {
                suite: r.suite,
                check: c.id,
                passed: 0,
                total: 0,
            });
            t.total += 1;
            t.passed += usize::from(c.holds);
        }
    }
    map.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_many("all").unwrap().len(), 7);
        assert!(Suite::parse_many("bogus").is_err());
    }

    #[test]
    fn every_suite_passes_on_small_universes() {
        let config = Config {
            depth: 2,
            samples: 200,
            ..Config::default()
        };
        for suite in Suite::ALL {
            let records = run(suite, &config).unwrap();
            assert!(!records.is_empty(), "{suite}");
            let failing: Vec<_> = records.iter().filter(|r| !r.holds).take(3).collect();
            assert!(failing.is_empty(), "{suite}: {failing:#?}");
            assert!(records.iter().enumerate().all(|(i, r)| r.index == i));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let config = Config {
            depth: 4,
            samples: 50,
            ..Config::default()
        };
        let u = config.universe().unwrap();
        assert_eq!(
            predicates(u, &config, 1).unwrap(),
            predicates(u, &config, 1).unwrap()
        );
        let t = theories(3, &config, 2).unwrap();
        assert_eq!(t.len(), 50);
        assert_eq!(t, theories(3, &config, 2).unwrap());
    }

    #[test]
    fn closed_boundary_is_reported_not_hidden() {
        // Under the closed convention no finite predicate is productive, so
        // the identity with unbounded paths fails on the full predicate.
        let config = Config {
            depth: 1,
            boundary: Boundary::Closed,
            ..Config::default()
        };
        let records = run(Suite::Foundedness, &config).unwrap();
        assert!(records.iter().any(|r| !r.holds));
    }
}
