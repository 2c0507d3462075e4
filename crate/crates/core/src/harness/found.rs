use serde_json::json;

use super::{describe_pred, par_records, predicates, Config, Record, Suite};
use crate::approx::{
    approximable, barred, find_choice_function, inductively_barred, lift, ordered,
};
use crate::error::Result;
use crate::found::{
    self, classify, evaluate, has_infinite_branch, has_unbounded_paths, hereditary_closure,
    infinite_branch, is_barred, is_barricaded, is_inductively_barred, is_productive, is_spread,
    is_staged_barred, is_staged_infinite, is_uniformly_barred, pruning, Boundary, Principle,
    Witness,
};
use crate::pred::{Pred, Universe};
use crate::rel::{check_bi_least, check_dc_serial, HomRel, ProductiveRelation};
use crate::seq::Branch;

/// Subsets and supersets are enumerated outright up to this many nodes.
const QUANTIFY_NODES: usize = 7;

/// The predicate of all prefixes of `b`.
fn path_pred(universe: Universe, b: &Branch) -> Pred {
    Pred::from_seqs(universe, b.prefixes().collect::<Vec<_>>().iter())
        .expect("branch fits its universe")
}

/// Some spread inside `t`, by enumerating subsets on small universes and by
/// trying the pruning and a branch otherwise.
fn spread_within(t: &Pred, boundary: Boundary) -> Option<Pred> {
    let un = t.universe();
    if un.len() <= QUANTIFY_NODES {
        let ranks: Vec<usize> = t.ranks().collect();
        return (0..1u64 << ranks.len())
            .map(|sub| {
                Pred::from_rank_fn(un, |r| {
                    ranks
                        .iter()
                        .position(|&x| x == r)
                        .is_some_and(|i| sub >> i & 1 == 1)
                })
            })
            .find(|u| is_spread(u, boundary));
    }
    let p = pruning(t, boundary);
    if is_spread(&p, boundary) {
        return Some(p);
    }
    infinite_branch(t)
        .map(|b| path_pred(un, &b))
        .filter(|u| is_spread(u, boundary))
}

/// Some non-barricaded superset of `t`, by enumeration on small universes and
/// by trying `t` and its hereditary closure otherwise.
fn unbarricaded_above(t: &Pred, boundary: Boundary) -> Option<Pred> {
    let un = t.universe();
    if un.len() <= QUANTIFY_NODES {
        let free: Vec<usize> = (0..un.len()).filter(|&r| !t.contains_rank(r)).collect();
        return (0..1u64 << free.len())
            .map(|sup| {
                Pred::from_rank_fn(un, |r| {
                    t.contains_rank(r)
                        || free
                            .iter()
                            .position(|&x| x == r)
                            .is_some_and(|i| sup >> i & 1 == 1)
                })
            })
            .find(|u| !is_barricaded(u, boundary));
    }
    [t.clone(), hereditary_closure(t, boundary)]
        .into_iter()
        .find(|u| !is_barricaded(u, boundary))
}

fn branch_or_level(t: &Pred) -> serde_json::Value {
    match infinite_branch(t) {
        Some(b) => json!({ "branch": b.to_string() }),
        None => match found::decide(t, found::Property::Barred, Boundary::Open).witness {
            Some(Witness::Level { n }) => json!({ "bar_level": n }),
            _ => json!(null),
        },
    }
}

pub(super) fn foundedness(config: &Config) -> Result<Vec<Record>> {
    let un = config.universe()?;
    let b = config.boundary;
    let preds = predicates(un, config, 1)?;
    par_records(
        Suite::Foundedness,
        &un.to_string(),
        &preds,
        describe_pred,
        |t, c| {
            let productive = is_productive(t, b);
            let indbarred = is_inductively_barred(t, b);
            c.check(
                "tree-unbounded",
                (!t.is_tree() || has_unbounded_paths(t) == is_staged_infinite(t))
                    && (!t.is_monotone() || is_uniformly_barred(t) == is_staged_barred(t)),
            );
            let p = pruning(t, b);
            c.check(
                "productive-pruning-spread",
                !productive || (is_spread(&p, b) && p.is_subset(t)),
            );
            c.check(
                "barricaded-closure-dual",
                indbarred == is_barricaded(&hereditary_closure(t, b), b),
            );
            let spread = spread_within(t, b);
            c.check(
                "spread-productive",
                productive == spread.is_some()
                    && spread.is_none_or(|u| u.is_subset(t) && is_spread(&u, b)),
            );
            let open = unbarricaded_above(t, b);
            c.check(
                "ind-barred-barricaded-supersets",
                indbarred == open.is_none() && open.is_none_or(|u| t.is_subset(&u)),
            );
            c.check(
                "productive-unbounded",
                productive == has_unbounded_paths(t) && indbarred == is_uniformly_barred(t),
            );
            c.check(
                "converse",
                (!indbarred || is_barred(t)) && (!has_infinite_branch(t) || productive),
            );
            c.check("witnesses", classify(t, b).iter().all(|r| r.verify(t, b)));
            c.witness(branch_or_level(t));
            Ok(())
        },
    )
}

pub(super) fn dc_bi(config: &Config) -> Result<Vec<Record>> {
    let un = config.universe()?;
    let b = config.boundary;
    let preds = predicates(un, config, 2)?;
    // The transport lemmas need tabulated superset closures on `d·|B|` pairs.
    let transport = un.depth() * un.alphabet().size() <= crate::approx::TABLE_MAX_PAIRS;
    let mut records = par_records(
        Suite::DcBi,
        &un.to_string(),
        &preds,
        describe_pred,
        |t, c| {
            let holds = |p| evaluate(p, t, b).holds();
            let verdict = |p| evaluate(p, t, b).conclusion.holds;
            c.check(
                "dc-spread-productive",
                holds(Principle::DcSpread) && holds(Principle::DcProductive),
            );
            c.check(
                "bi-barricaded-ind",
                holds(Principle::BiBarricaded)
                    && holds(Principle::BiInd)
                    && verdict(Principle::BiBarricaded) == is_barricaded(t, b)
                    && verdict(Principle::BiInd) == is_inductively_barred(t, b),
            );
            let dc = match ProductiveRelation::from_pred(t)? {
                None => !is_productive(t, Boundary::Open),
                Some(pr) => {
                    let carrier = Universe::new(pr.relation.carrier(), un.depth())?;
                    let report = check_dc_serial(&pr.relation, pr.root, carrier)?;
                    match report.witness {
                        Some(Witness::Branch { branch }) => {
                            let alpha = pr.transport(&branch);
                            pr.relation.is_serial() && alpha.prefixes().all(|v| t.contains(&v))
                        }
                        _ => false,
                    }
                }
            };
            c.check("dc-relation-transport", dc);
            if transport {
                let l = lift(t)?;
                c.check("ord-round-trip", ordered(&l, un)? == *t);
                let tree = t.down_arborify();
                let ua = lift(&tree)?.up_arborify()?;
                let choice = find_choice_function(&ua);
                c.check(
                    "transport-productive",
                    approximable(&ua) == is_productive(&tree, Boundary::Open),
                );
                c.check(
                    "transport-branch",
                    choice.is_some() == has_infinite_branch(&tree)
                        && choice.is_none_or(|a| {
                            let br = Branch::new(a.values().to_vec(), un.alphabet())
                                .expect("values in alphabet");
                            let all_in = br.prefixes().all(|v| tree.contains(&v));
                            all_in
                        }),
                );
                let mono = t.up_monotonise();
                let um = lift(&mono)?.up_monotonise();
                c.check(
                    "transport-ind-barred",
                    inductively_barred(&um).is_some()
                        == is_inductively_barred(&mono, Boundary::Open),
                );
                c.check("transport-barred", barred(&um).is_ok() == is_barred(&mono));
            }
            Ok(())
        },
    )?;

    // Relations on the alphabet, one record per (R, b0).
    let k = un.alphabet().size();
    if k * k <= 16 {
        let rels: Vec<(u64, crate::seq::Elem)> = (0..1u64 << (k * k))
            .flat_map(|m| un.alphabet().elements().map(move |b0| (m, b0)))
            .collect();
        let offset = records.len();
        let more = par_records(
            Suite::DcBi,
            &un.to_string(),
            &rels,
            |&(m, b0)| format!("R=0x{m:x} b0={b0}"),
            |&(m, b0), c| {
                let r = HomRel::from_mask(un.alphabet(), m);
                c.check("dc-serial", check_dc_serial(&r, b0, un)?.holds());
                c.check("bi-least", check_bi_least(&r, b0, un)?.holds());
                c.check(
                    "chaining-arborified",
                    r.chaining(b0, un)? == r.alignment(b0, un)?.down_arborify()
                        && r.antichaining(b0, un)? == r.blockings(b0, un)?.up_monotonise(),
                );
                Ok(())
            },
        )?;
        records.extend(more.into_iter().map(|mut r| {
            r.index += offset;
            r
        }));
    }
    Ok(records)
}

pub(super) fn kl_ft(config: &Config) -> Result<Vec<Record>> {
    let un = config.universe()?;
    let b = config.boundary;
    let preds = predicates(un, config, 3)?;
    par_records(
        Suite::KlFt,
        &un.to_string(),
        &preds,
        describe_pred,
        |t, c| {
            let holds = |p, t: &Pred| evaluate(p, t, b).holds();
            let verdict = |p| evaluate(p, t, b).conclusion.holds;
            c.check(
                "kl-principles",
                [
                    Principle::KlSpread,
                    Principle::KlProductive,
                    Principle::KlUnbounded,
                ]
                .into_iter()
                .all(|p| holds(p, t)),
            );
            c.check(
                "ft-principles",
                [
                    Principle::FtBarricaded,
                    Principle::FtInd,
                    Principle::FtUniform,
                ]
                .into_iter()
                .all(|p| holds(p, t)),
            );
            let tree = t.down_arborify();
            c.check(
                "kl-staged-unbounded",
                holds(Principle::KlStaged, &tree)
                    && has_unbounded_paths(t) == is_staged_infinite(&tree)
                    && holds(Principle::KlStaged, t),
            );
            let mono = t.up_monotonise();
            c.check(
                "ft-staged-uniform",
                holds(Principle::FtStaged, &mono)
                    && is_uniformly_barred(t) == is_staged_barred(&mono)
                    && holds(Principle::FtStaged, t),
            );
            c.check(
                "finite-aliases",
                Principle::ALL
                    .into_iter()
                    .all(|p| verdict(p) == verdict(p.finite_alias())),
            );
            Ok(())
        },
    )
}
