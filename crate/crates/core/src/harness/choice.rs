use rand::Rng;
use serde_json::json;

use super::{par_records, Config, Record, Suite};
use crate::approx::{
    approximable, barred, check_gbi, check_gdc, find_choice_function, inductively_barred,
    relation_alignment, relation_neg_alignment, ApproxPred, Shape,
};
use crate::error::{Error, Result};
use crate::found::{decide, Boundary, Property};
use crate::pred::Universe;
use crate::rel::{check_cc, check_wbi, HetRel};
use crate::seq::Alphabet;

/// Families with at most this many members are enumerated outright.
const EXHAUSTIVE_MASKS: u64 = 1 << 16;

/// All masks on `bits` bits, or `samples` random ones.
fn masks(bits: usize, config: &Config, salt: u64) -> Vec<u64> {
    if bits < 64 && 1u64 << bits <= EXHAUSTIVE_MASKS {
        return (0..1u64 << bits).collect();
    }
    let mut rng = config.rng(salt);
    let keep = if bits >= 64 {
        u64::MAX
    } else {
        (1 << bits) - 1
    };
    (0..config.samples)
        .map(|_| rng.gen::<u64>() & keep)
        .collect()
}

/// Relations `{0..d-1} × B`: countable choice on the sequence encoding and
/// the choice instance on approximations.
pub(super) fn cc_ac(config: &Config) -> Result<Vec<Record>> {
    let un = config.universe()?;
    let (m, b) = (un.depth(), un.alphabet());
    if m * b.size() > 64 {
        return Err(Error::Limit(format!(
            "{m}×{} relation exceeds 64 pairs",
            b.size()
        )));
    }
    let shape = Shape::new(m, b)?;
    let rels = masks(m * b.size(), config, 4);
    par_records(
        Suite::CcAc,
        &format!("{m}→B{}", b.size()),
        &rels,
        |&mask| format!("R=0x{mask:x}"),
        |&mask, c| {
            let r = HetRel::from_mask(m, b, mask);
            let cc = check_cc(&r);
            c.check("cc", cc.holds());
            let al = r.seq_alignment(un)?;
            let branch = decide(&al, Property::InfiniteBranch, Boundary::Open);
            c.check(
                "cc-transport",
                r.is_left_total() == branch.holds
                    && match &branch.witness {
                        Some(crate::found::Witness::Branch { branch }) => {
                            r.is_choice_function(branch.values())
                        }
                        _ => !branch.holds,
                    },
            );
            c.check("wbi", check_wbi(&r).holds());
            let neg = r.seq_neg_alignment(un)?;
            c.check(
                "wbi-transport",
                r.barred().is_ok() == crate::found::is_barred(&neg),
            );
            let pos = relation_alignment(&r)?;
            let choice = find_choice_function(&pos);
            c.check(
                "ac",
                approximable(&pos) == r.is_left_total()
                    && choice.is_some() == r.is_left_total()
                    && choice
                        .as_ref()
                        .is_none_or(|a| r.is_choice_function(a.values())),
            );
            let neg = relation_neg_alignment(&r)?;
            c.check(
                "ac-dual",
                barred(&neg).is_ok() == r.barred().is_ok()
                    && inductively_barred(&neg).is_some() == r.grounded().is_some(),
            );
            if let Some(a) = choice {
                c.witness(json!({ "choice": a.values(), "graph": a.graph(shape) }));
            }
            Ok(())
        },
    )
}

/// Approximation predicates on `d` points with values in `B`.
pub(super) fn gdc_gbi(config: &Config) -> Result<Vec<Record>> {
    let un: Universe = config.universe()?;
    let shape = Shape::new(un.depth(), Alphabet::new(config.alphabet)?)?;
    if shape.pairs() > crate::approx::TABLE_MAX_PAIRS {
        return Err(Error::Limit(format!(
            "{} pairs exceed the {} tabulated pairs",
            shape.pairs(),
            crate::approx::TABLE_MAX_PAIRS
        )));
    }
    let tables: Vec<u64> = if shape.pairs() <= 4 {
        (0..1u64 << (1 << shape.pairs())).collect()
    } else {
        let mut rng = config.rng(5);
        (0..config.samples).map(|_| rng.gen()).collect()
    };
    let exhaustive = shape.pairs() <= 4;
    par_records(
        Suite::GdcGbi,
        &format!("{}→B{}", shape.domain(), shape.codomain().size()),
        &tables,
        |&t| format!("T=0x{t:x}"),
        |&table, c| {
            // Sampled tables seed a per-approximation hash instead.
            let t = if exhaustive {
                ApproxPred::from_fn(shape, move |v| table >> v & 1 == 1)
            } else {
                ApproxPred::from_fn(shape, move |v| mix(table ^ v) & 1 == 1)
            };
            let gdc = check_gdc(&t);
            let gbi = check_gbi(&t);
            c.check("gdc", gdc.holds());
            c.check("gbi", gbi.holds());
            let below = |g: u64| crate::approx::subsets(g).all(|w| t.contains_mask(w));
            let above = |g: u64| crate::approx::subsets(g).any(|w| t.contains_mask(w));
            c.check(
                "witnesses",
                gdc.choice.as_ref().is_none_or(|a| below(a.graph(shape)))
                    && gbi
                        .counterexample
                        .as_ref()
                        .is_none_or(|a| !above(a.graph(shape)))
                    && gbi.derivation.as_ref().is_none_or(|d| d.check(&t, 0)),
            );
            if let Some(a) = &gdc.choice {
                c.witness(json!({ "choice": a.values() }));
            }
            Ok(())
        },
    )
}

/// SplitMix64 finalizer.
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
