//! The free Boolean algebra on finitely many generators, filters and ideals
//! built from clause theories, and prime filters given by valuations.
//!
//! Elements are truth tables: bit `v` of a table is the value under the
//! valuation whose bit `i` is generator `i`. Two expressions denote the same
//! element iff their tables are equal, and `b ⊢̇ b'` is table inclusion.

mod expr;

pub use expr::{parse_expr, BoolExpr};

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::approx::{approximable, find_choice_function, inductively_barred};
use crate::entail::{
    derivable, find_model, satisfies, translate_theory, Sequent, Theory, Valuation,
};
use crate::error::{Error, Result};
use crate::seq::Elem;

pub const MAX_GENERATORS: usize = 16;
/// Largest generator count whose algebra (`2^2^n` elements) is enumerated.
pub const ENUM_MAX_GENERATORS: usize = 4;
/// Largest generator count for saturated explicit filters.
pub const EXPLICIT_MAX_GENERATORS: usize = 3;
/// Largest generator count for `theory_from_filter` (`4^n` candidate clauses).
pub const FILTER_THEORY_MAX_GENERATORS: usize = 6;

fn check_generators(n: usize, max: usize, what: &str) -> Result<()> {
    if n > max {
        return Err(Error::Limit(format!(
            "{what} over {n} generators exceeds {max}"
        )));
    }
    Ok(())
}

/// An element of the free algebra on `n` generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonExpr {
    n: usize,
    table: FixedBitSet,
}

pub fn canon(e: &BoolExpr, n: usize) -> Result<CanonExpr> {
    check_generators(n, MAX_GENERATORS, "canonical form")?;
    if e.arity() > n {
        return Err(Error::InvalidArguments(format!(
            "expression uses generator {} of {n}",
            e.arity() - 1
        )));
    }
    let mut table = FixedBitSet::with_capacity(1 << n);
    for v in 0..1u64 << n {
        table.set(v as usize, e.eval(v));
    }
    Ok(CanonExpr { n, table })
}

impl CanonExpr {
    pub fn bot(n: usize) -> Self {
        CanonExpr {
            n,
            table: FixedBitSet::with_capacity(1 << n),
        }
    }

    pub fn top(n: usize) -> Self {
        let mut table = FixedBitSet::with_capacity(1 << n);
        table.insert_range(..);
        CanonExpr { n, table }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut table = FixedBitSet::with_capacity(1 << n);
        for v in 0..1usize << n {
            table.set(v, v >> i & 1 == 1);
        }
        CanonExpr { n, table }
    }

    /// Table given as a `u64`, for at most 6 generators.
    pub fn from_u64(n: usize, table: u64) -> Result<Self> {
        check_generators(n, 6, "u64 table")?;
        let mut bits = FixedBitSet::with_capacity(1 << n);
        for v in 0..1usize << n {
            bits.set(v, table >> v & 1 == 1);
        }
        Ok(CanonExpr { n, table: bits })
    }

    pub fn to_u64(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.table.ones().fold(0, |acc, v| acc | 1 << v))
    }

    /// Every element, for at most [`ENUM_MAX_GENERATORS`] generators.
    pub fn all(n: usize) -> Result<impl Iterator<Item = CanonExpr>> {
        check_generators(n, ENUM_MAX_GENERATORS, "enumerating the algebra")?;
        Ok((0..1u64 << (1 << n)).map(move |t| CanonExpr::from_u64(n, t).expect("n ≤ 4")))
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    fn same_algebra(&self, other: &CanonExpr) {
        assert_eq!(self.n, other.n, "elements of different algebras");
    }

    pub fn meet(&self, other: &CanonExpr) -> CanonExpr {
        self.same_algebra(other);
        let mut table = self.table.clone();
        table.intersect_with(&other.table);
        CanonExpr { n: self.n, table }
    }

    pub fn join(&self, other: &CanonExpr) -> CanonExpr {
        self.same_algebra(other);
        let mut table = self.table.clone();
        table.union_with(&other.table);
        CanonExpr { n: self.n, table }
    }

    pub fn negate(&self) -> CanonExpr {
        let mut table = self.table.clone();
        table.toggle_range(..);
        CanonExpr { n: self.n, table }
    }

    /// `self ⊢̇ other`.
    pub fn leq(&self, other: &CanonExpr) -> bool {
        self.same_algebra(other);
        self.table.is_subset(&other.table)
    }

    pub fn eval(&self, valuation: u64) -> bool {
        self.table.contains(valuation as usize)
    }

    pub fn is_top(&self) -> bool {
        self.table.is_full()
    }

    pub fn is_bot(&self) -> bool {
        self.table.is_clear()
    }

    /// The canonical CNF: one maxterm `(⋁¬Γ) ∨ (⋁Δ)` per falsifying
    /// valuation `v`, with `Γ = v` and `Δ` its complement.
    pub fn maxterms(&self) -> Vec<Sequent> {
        let all = (1u64 << self.n) - 1;
        (0..1u64 << self.n)
            .filter(|&v| !self.eval(v))
            .map(|v| Sequent::new(v, all & !v))
            .collect()
    }

    /// The canonical DNF: one minterm `(⋀Γ) ∧ (⋀¬Δ)` per satisfying valuation.
    pub fn minterms(&self) -> Vec<Sequent> {
        self.negate().maxterms()
    }

    /// A normal-form expression, the join of the minterms.
    pub fn to_expr(&self) -> BoolExpr {
        BoolExpr::join_all(
            self.minterms()
                .into_iter()
                .map(|s| term_bool_expr(s, self.n)),
        )
    }
}

impl fmt::Display for CanonExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..1usize << self.n {
            write!(f, "{}", u8::from(self.table.contains(v)))?;
        }
        Ok(())
    }
}

fn literals(set: u64, n: usize) -> impl Iterator<Item = BoolExpr> {
    (0..n).filter(move |i| set >> i & 1 == 1).map(BoolExpr::Var)
}

/// `(⋁¬Γ) ∨ (⋁Δ)`.
pub fn clause_bool_expr(s: Sequent, n: usize) -> BoolExpr {
    BoolExpr::join_all(
        literals(s.gamma, n)
            .map(BoolExpr::not)
            .chain(literals(s.delta, n)),
    )
}

/// `(⋀Γ) ∧ (⋀¬Δ)`.
pub fn term_bool_expr(s: Sequent, n: usize) -> BoolExpr {
    BoolExpr::meet_all(literals(s.gamma, n).chain(literals(s.delta, n).map(BoolExpr::not)))
}

pub fn clause_expr(s: Sequent, n: usize) -> Result<CanonExpr> {
    canon(&clause_bool_expr(s, n), n)
}

pub fn term_expr(s: Sequent, n: usize) -> Result<CanonExpr> {
    canon(&term_bool_expr(s, n), n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// Nonempty, closed under `∧̇` and upward.
    #[default]
    Filter,
    /// Nonempty, closed under `∨̇` and downward.
    Ideal,
}

#[derive(Debug, Clone)]
enum Origin {
    /// Bit `v`: the sequent `v ▷ ∁v` is derivable.
    Theory {
        theory: Theory,
        derivable: FixedBitSet,
    },
    /// Members indexed by `u64` table.
    Explicit { members: FixedBitSet },
}

/// A filter or ideal of the free algebra on named generators.
#[derive(Debug, Clone)]
pub struct FilterSpec {
    names: Vec<String>,
    polarity: Polarity,
    origin: Origin,
}

impl FilterSpec {
    /// `F_T` (a CNF whose clauses are all derivable) or `I_T` (a DNF whose
    /// terms, read as sequents, are all derivable).
    pub fn from_theory(theory: &Theory, polarity: Polarity) -> Result<Self> {
        let n = theory.num_atoms();
        check_generators(n, MAX_GENERATORS, "theory filter")?;
        let all = (1u64 << n) - 1;
        let mut bits = FixedBitSet::with_capacity(1 << n);
        for v in 0..1u64 << n {
            bits.set(
                v as usize,
                derivable(theory, Sequent::new(v, all & !v))?.is_some(),
            );
        }
        Ok(FilterSpec {
            names: theory.atoms().to_vec(),
            polarity,
            origin: Origin::Theory {
                theory: theory.clone(),
                derivable: bits,
            },
        })
    }

    /// The filter (ideal) generated by `gens`, saturated under meet (join)
    /// and upward (downward) closure.
    pub fn generated(names: Vec<String>, polarity: Polarity, gens: &[CanonExpr]) -> Result<Self> {
        let n = names.len();
        check_generators(n, EXPLICIT_MAX_GENERATORS, "explicit filter")?;
        if let Some(g) = gens.iter().find(|g| g.n != n) {
            return Err(Error::InvalidArguments(format!(
                "generator over {} generators in an algebra over {n}",
                g.n
            )));
        }
        let size = 1usize << (1 << n);
        let full = size as u64 - 1;
        let unit = match polarity {
            Polarity::Filter => full,
            Polarity::Ideal => 0,
        };
        let mut members: HashSet<u64> = gens.iter().map(|g| g.to_u64().expect("n ≤ 3")).collect();
        members.insert(unit);
        loop {
            let current: Vec<u64> = members.iter().copied().collect();
            let before = members.len();
            for &x in &current {
                for &y in &current {
                    members.insert(match polarity {
                        Polarity::Filter => x & y,
                        Polarity::Ideal => x | y,
                    });
                }
                for z in 0..=full {
                    let reached = match polarity {
                        Polarity::Filter => x & !z == 0,
                        Polarity::Ideal => z & !x == 0,
                    };
                    if reached {
                        members.insert(z);
                    }
                }
            }
            if members.len() == before {
                break;
            }
        }
        let mut bits = FixedBitSet::with_capacity(size);
        for m in members {
            bits.insert(m as usize);
        }
        Ok(FilterSpec {
            names,
            polarity,
            origin: Origin::Explicit { members: bits },
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> usize {
        self.names.len()
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn theory(&self) -> Option<&Theory> {
        match &self.origin {
            Origin::Theory { theory, .. } => Some(theory),
            Origin::Explicit { .. } => None,
        }
    }

    pub fn contains(&self, e: &CanonExpr) -> Result<bool> {
        if e.n != self.generators() {
            return Err(Error::InvalidArguments(format!(
                "element over {} generators, filter over {}",
                e.n,
                self.generators()
            )));
        }
        Ok(match &self.origin {
            Origin::Theory { derivable, .. } => {
                let terms = match self.polarity {
                    Polarity::Filter => e.maxterms(),
                    Polarity::Ideal => e.minterms(),
                };
                terms.iter().all(|s| derivable.contains(s.gamma as usize))
            }
            Origin::Explicit { members } => members.contains(e.to_u64().expect("n ≤ 3") as usize),
        })
    }

    /// A filter is proper without `⊥`, an ideal without `⊤`.
    pub fn is_proper(&self) -> bool {
        let n = self.generators();
        let absorbing = match self.polarity {
            Polarity::Filter => CanonExpr::bot(n),
            Polarity::Ideal => CanonExpr::top(n),
        };
        !self.contains(&absorbing).expect("same algebra")
    }

    pub fn members(&self) -> Result<Vec<CanonExpr>> {
        let n = self.generators();
        if let (Origin::Theory { derivable, .. }, true) = (&self.origin, n <= ENUM_MAX_GENERATORS) {
            // Bitwise form of `contains`: the valuations a member is false
            // (filter) or true (ideal) on all have derivable maxterms.
            let full = (1u64 << (1 << n)) - 1;
            let d = derivable.ones().fold(0u64, |acc, v| acc | 1 << v);
            let tables = (0..=full).filter(|&t| {
                let terms = match self.polarity {
                    Polarity::Filter => !t & full,
                    Polarity::Ideal => t,
                };
                terms & !d == 0
            });
            return tables.map(|t| CanonExpr::from_u64(n, t)).collect();
        }
        let mut out = Vec::new();
        for e in CanonExpr::all(self.generators())? {
            if self.contains(&e)? {
                out.push(e);
            }
        }
        Ok(out)
    }
}

/// Membership of a parsed expression.
pub fn in_filter(spec: &FilterSpec, e: &BoolExpr) -> Result<bool> {
    spec.contains(&canon(e, spec.generators())?)
}

/// The prime filter (ideal) of elements true (false) under a valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeFilter {
    pub alpha: Valuation,
    pub polarity: Polarity,
}

impl PrimeFilter {
    pub fn contains(&self, e: &CanonExpr) -> bool {
        e.eval(self.alpha.truth()) == (self.polarity == Polarity::Filter)
    }

    /// Every member of `spec` is a member of `self`.
    pub fn extends(&self, spec: &FilterSpec) -> Result<bool> {
        Ok(spec.members()?.iter().all(|e| self.contains(e)))
    }
}

pub fn prime_filter_from_model(alpha: Valuation) -> PrimeFilter {
    PrimeFilter {
        alpha,
        polarity: Polarity::Filter,
    }
}

pub fn prime_ideal_from_model(alpha: Valuation) -> PrimeFilter {
    PrimeFilter {
        alpha,
        polarity: Polarity::Ideal,
    }
}

/// Exhaustively checks that `contains` is a filter (ideal) of the algebra
/// on `n ≤ 3` generators.
pub fn is_filter(
    n: usize,
    polarity: Polarity,
    contains: impl Fn(&CanonExpr) -> bool,
) -> Result<bool> {
    check_generators(n, EXPLICIT_MAX_GENERATORS, "filter check")?;
    let elems: Vec<CanonExpr> = CanonExpr::all(n)?.collect();
    let member: Vec<bool> = elems.iter().map(&contains).collect();
    let unit = match polarity {
        Polarity::Filter => elems.len() - 1,
        Polarity::Ideal => 0,
    };
    if !member[unit] {
        return Ok(false);
    }
    for x in elems
        .iter()
        .zip(&member)
        .filter(|(_, &m)| m)
        .map(|(x, _)| x)
    {
        for (j, y) in elems.iter().enumerate() {
            let (op, closed_dir) = match polarity {
                Polarity::Filter => (x.meet(y), x.leq(y)),
                Polarity::Ideal => (x.join(y), y.leq(x)),
            };
            if member[j] && !contains(&op) {
                return Ok(false);
            }
            if closed_dir && !member[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A proper filter (ideal) where membership of a join (meet) is membership
/// of one side.
pub fn is_prime(
    n: usize,
    polarity: Polarity,
    contains: impl Fn(&CanonExpr) -> bool,
) -> Result<bool> {
    if !is_filter(n, polarity, &contains)? {
        return Ok(false);
    }
    let elems: Vec<CanonExpr> = CanonExpr::all(n)?.collect();
    let absorbing = match polarity {
        Polarity::Filter => CanonExpr::bot(n),
        Polarity::Ideal => CanonExpr::top(n),
    };
    if contains(&absorbing) {
        return Ok(false);
    }
    for x in &elems {
        for y in &elems {
            let op = match polarity {
                Polarity::Filter => x.join(y),
                Polarity::Ideal => x.meet(y),
            };
            if contains(&op) != (contains(x) || contains(y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `𝒯_F`: the sequents whose clause expression lies in `F`, or, for an
/// ideal, whose term expression lies in `I`.
pub fn theory_from_filter(spec: &FilterSpec) -> Result<Theory> {
    let n = spec.generators();
    check_generators(n, FILTER_THEORY_MAX_GENERATORS, "theory from filter")?;
    let mut clauses = Vec::new();
    for gamma in 0..1u64 << n {
        for delta in 0..1u64 << n {
            let s = Sequent::new(gamma, delta);
            let e = match spec.polarity() {
                Polarity::Filter => clause_expr(s, n)?,
                Polarity::Ideal => term_expr(s, n)?,
            };
            if spec.contains(&e)? {
                clauses.push(s);
            }
        }
    }
    Theory::new(spec.names().to_vec(), clauses)
}

/// Prime filter and ideal extension on one theory, next to the
/// approximation-side verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BpfReport {
    pub atoms: usize,
    /// `⊥ ∉ F_T`.
    pub filter_proper: bool,
    /// `⊤ ∉ I_T`.
    pub ideal_proper: bool,
    /// `𝒯^C` is approximable.
    pub complement_approximable: bool,
    /// `𝒯` is inductively barred.
    pub inductively_barred: bool,
    pub model: Option<Valuation>,
    /// A choice function of `𝒯^C`.
    pub choice: Option<Vec<Elem>>,
    /// First valuation whose prime filter extends `F_T`.
    pub prime_filter: Option<Valuation>,
    /// First valuation whose prime ideal extends `I_T`.
    pub prime_ideal: Option<Valuation>,
    /// For every valuation: model ⇔ its prime filter extends `F_T` ⇔ its
    /// prime ideal extends `I_T`.
    pub extensions_are_models: bool,
    /// `F_T` and `I_T` pass the exhaustive filter/ideal check (only run for
    /// at most 3 atoms; `true` otherwise).
    pub closure_ok: bool,
}

impl BpfReport {
    pub fn bpf(&self) -> bool {
        !self.filter_proper || self.prime_filter.is_some()
    }

    pub fn bpi(&self) -> bool {
        !self.ideal_proper || self.prime_ideal.is_some()
    }

    pub fn co_bpf(&self) -> bool {
        self.prime_filter.is_some() || !self.filter_proper
    }

    pub fn co_bpi(&self) -> bool {
        self.prime_ideal.is_some() || !self.ideal_proper
    }

    pub fn holds(&self) -> bool {
        let proper = self.filter_proper;
        self.bpf()
            && self.bpi()
            && self.co_bpf()
            && self.co_bpi()
            && self.ideal_proper == proper
            && self.complement_approximable == proper
            && self.inductively_barred != proper
            && self.model.is_some() == proper
            && self.choice.is_some() == proper
            && self.prime_filter.is_some() == proper
            && self.prime_ideal.is_some() == proper
            && self.extensions_are_models
            && self.closure_ok
    }
}

pub fn check_bpf(theory: &Theory) -> Result<BpfReport> {
    let n = theory.num_atoms();
    check_generators(n, ENUM_MAX_GENERATORS, "prime filter check")?;
    let f = FilterSpec::from_theory(theory, Polarity::Filter)?;
    let i = FilterSpec::from_theory(theory, Polarity::Ideal)?;
    let t = translate_theory(theory)?;

    let (f_members, i_members) = (f.members()?, i.members()?);
    let mut prime_filter = None;
    let mut prime_ideal = None;
    let mut extensions_are_models = true;
    for v in 0..1u64 << n {
        let alpha = Valuation::new(n, v);
        let model = satisfies(alpha, theory);
        let (pf, pi) = (
            prime_filter_from_model(alpha),
            prime_ideal_from_model(alpha),
        );
        let pf = f_members.iter().all(|e| pf.contains(e));
        let pi = i_members.iter().all(|e| pi.contains(e));
        extensions_are_models &= model == pf && model == pi;
        if pf && prime_filter.is_none() {
            prime_filter = Some(alpha);
        }
        if pi && prime_ideal.is_none() {
            prime_ideal = Some(alpha);
        }
    }
    let closure_ok = n > EXPLICIT_MAX_GENERATORS
        || (is_filter(n, Polarity::Filter, |e| {
            f.contains(e).expect("same algebra")
        })? && is_filter(n, Polarity::Ideal, |e| i.contains(e).expect("same algebra"))?);
    Ok(BpfReport {
        atoms: n,
        filter_proper: f.is_proper(),
        ideal_proper: i.is_proper(),
        complement_approximable: approximable(&t.complement()),
        inductively_barred: inductively_barred(&t).is_some(),
        model: find_model(theory),
        choice: find_choice_function(&t.complement()).map(|c| c.values().to_vec()),
        prime_filter,
        prime_ideal,
        extensions_are_models,
        closure_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entail::enumerate_models;
    use proptest::prelude::*;

    fn names(n: usize) -> Vec<String> {
        ["a", "b", "c", "d"][..n]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    fn c(text: &str, n: usize) -> CanonExpr {
        canon(&parse_expr(text, &names(n)).unwrap(), n).unwrap()
    }

    fn theories(n: usize) -> impl Iterator<Item = Theory> {
        let shapes = 3u32.pow(n as u32);
        (0..1u64 << shapes).map(move |set| {
            let clauses = (0..shapes)
                .filter(|i| set >> i & 1 == 1)
                .map(|i| Sequent::from_ternary(n, i as u64))
                .collect();
            Theory::new(names(n), clauses).unwrap()
        })
    }

    #[test]
    fn canon_examples() {
        assert!(c("!a | a", 1).is_top());
        assert!(c("a & F", 1).is_bot());
        assert_eq!(c("(a | b) & !a", 2), c("b & !a", 2));
        assert!(c("a & b", 2).leq(&c("a", 2)));
        assert!(canon(&BoolExpr::var(3), 2).is_err());
        assert!(canon(&BoolExpr::Top, 17).is_err());
    }

    fn arb_expr(n: usize) -> impl Strategy<Value = BoolExpr> {
        let leaf = prop_oneof![
            (0..n).prop_map(BoolExpr::Var),
            Just(BoolExpr::Top),
            Just(BoolExpr::Bot)
        ];
        leaf.prop_recursive(6, 64, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(BoolExpr::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
                (inner.clone(), inner).prop_map(|(a, b)| a.or(b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn canon_is_a_homomorphism(a in arb_expr(8), b in arb_expr(8)) {
            let (ca, cb) = (canon(&a, 8).unwrap(), canon(&b, 8).unwrap());
            prop_assert_eq!(canon(&a.clone().and(b.clone()), 8).unwrap(), ca.meet(&cb));
            prop_assert_eq!(canon(&a.clone().or(b), 8).unwrap(), ca.join(&cb));
            prop_assert_eq!(canon(&a.not(), 8).unwrap(), ca.negate());
        }

        #[test]
        fn normal_form_round_trips(a in arb_expr(4)) {
            let ca = canon(&a, 4).unwrap();
            prop_assert_eq!(canon(&ca.to_expr(), 4).unwrap(), ca);
        }

        /// Membership does not depend on the CNF: any clause list whose
        /// conjunction is `e` is all-derivable iff `e ∈ F_T`.
        #[test]
        fn filter_membership_is_cnf_independent(
            raw in proptest::collection::vec(0u32..27, 0..5),
            cnf in proptest::collection::vec(0u32..27, 0..5),
        ) {
            let theory = Theory::new(names(3), raw.iter().map(|&i| Sequent::from_ternary(3, i as u64)).collect()).unwrap();
            let f = FilterSpec::from_theory(&theory, Polarity::Filter).unwrap();
            let clauses: Vec<Sequent> = cnf.iter().map(|&i| Sequent::from_ternary(3, i as u64)).collect();
            let e = BoolExpr::meet_all(clauses.iter().map(|&s| clause_bool_expr(s, 3)));
            let all_derivable = clauses.iter().all(|&s| derivable(&theory, s).unwrap().is_some());
            prop_assert_eq!(in_filter(&f, &e).unwrap(), all_derivable);
        }
    }

    #[test]
    fn filter_examples() {
        let t = Theory::new(names(1), vec![Sequent::new(0, 1)]).unwrap();
        let f = FilterSpec::from_theory(&t, Polarity::Filter).unwrap();
        assert!(in_filter(&f, &BoolExpr::var(0)).unwrap());
        assert!(in_filter(&f, &BoolExpr::Top).unwrap());
        assert!(!in_filter(&f, &BoolExpr::var(0).not()).unwrap());
        assert!(f.is_proper());
        let inconsistent =
            Theory::new(names(1), vec![Sequent::new(0, 1), Sequent::new(1, 0)]).unwrap();
        assert!(!FilterSpec::from_theory(&inconsistent, Polarity::Filter)
            .unwrap()
            .is_proper());
    }

    #[test]
    fn theory_filters_are_semantic_consequences() {
        // e ∈ F_T iff every model makes e true; e ∈ I_T iff every model makes
        // e false.
        for theory in theories(2) {
            let models = enumerate_models(&theory).unwrap();
            let f = FilterSpec::from_theory(&theory, Polarity::Filter).unwrap();
            let i = FilterSpec::from_theory(&theory, Polarity::Ideal).unwrap();
            for e in CanonExpr::all(2).unwrap() {
                assert_eq!(
                    f.contains(&e).unwrap(),
                    models.iter().all(|m| e.eval(m.truth()))
                );
                assert_eq!(
                    i.contains(&e).unwrap(),
                    models.iter().all(|m| !e.eval(m.truth()))
                );
            }
        }
    }

    #[test]
    fn prime_filters_from_valuations() {
        for n in 0..=3 {
            for v in 0..1u64 << n {
                let alpha = Valuation::new(n, v);
                let pf = prime_filter_from_model(alpha);
                let pi = prime_ideal_from_model(alpha);
                assert!(is_prime(n, Polarity::Filter, |e| pf.contains(e)).unwrap());
                assert!(is_prime(n, Polarity::Ideal, |e| pi.contains(e)).unwrap());
                for e in CanonExpr::all(n).unwrap() {
                    assert_eq!(pi.contains(&e), !pf.contains(&e));
                    assert_eq!(pf.contains(&e.negate()), !pf.contains(&e));
                }
            }
        }
        let pf = prime_filter_from_model(Valuation::new(1, 1));
        assert!(pf.contains(&c("a", 1)) && !pf.contains(&c("!a", 1)));
        // Non-prime filters are rejected.
        let principal =
            FilterSpec::generated(names(2), Polarity::Filter, &[c("a | b", 2)]).unwrap();
        assert!(!is_prime(2, Polarity::Filter, |e| principal.contains(e).unwrap()).unwrap());
    }

    #[test]
    fn saturation_matches_principal_filters() {
        // The filter generated by finitely many elements is the up-set of
        // their meet; ideals dually.
        let n = 2;
        let elems: Vec<CanonExpr> = CanonExpr::all(n).unwrap().collect();
        for x in &elems {
            for y in &elems {
                let f = FilterSpec::generated(names(n), Polarity::Filter, &[x.clone(), y.clone()])
                    .unwrap();
                let i = FilterSpec::generated(names(n), Polarity::Ideal, &[x.clone(), y.clone()])
                    .unwrap();
                let m = x.meet(y);
                let j = x.join(y);
                for z in &elems {
                    assert_eq!(f.contains(z).unwrap(), m.leq(z));
                    assert_eq!(i.contains(z).unwrap(), z.leq(&j));
                }
                assert!(is_filter(n, Polarity::Filter, |e| f.contains(e).unwrap()).unwrap());
                assert!(is_filter(n, Polarity::Ideal, |e| i.contains(e).unwrap()).unwrap());
            }
        }
        let empty = FilterSpec::generated(names(3), Polarity::Filter, &[]).unwrap();
        assert_eq!(empty.members().unwrap(), vec![CanonExpr::top(3)]);
        assert!(FilterSpec::generated(names(4), Polarity::Filter, &[]).is_err());
    }

    #[test]
    fn bpf_examples() {
        let empty = check_bpf(&Theory::new(names(2), vec![]).unwrap()).unwrap();
        assert!(empty.holds() && empty.filter_proper);
        let inconsistent = check_bpf(
            &Theory::new(names(1), vec![Sequent::new(0, 1), Sequent::new(1, 0)]).unwrap(),
        )
        .unwrap();
        assert!(
            inconsistent.holds()
                && !inconsistent.filter_proper
                && inconsistent.prime_filter.is_none()
        );
        let t = Theory::new(names(2), vec![Sequent::new(0, 0b11)]).unwrap();
        let r = check_bpf(&t).unwrap();
        assert!(r.holds() && r.filter_proper);
        let alpha = Valuation::new(2, 0b01);
        let f = FilterSpec::from_theory(&t, Polarity::Filter).unwrap();
        assert!(prime_filter_from_model(alpha).extends(&f).unwrap());
    }

    #[test]
    fn bpf_exhaustive_two_atoms() {
        for theory in theories(2) {
            let r = check_bpf(&theory).unwrap();
            assert!(r.holds(), "{theory}{r:?}");
        }
    }

    #[test]
    fn filter_theory_examples() {
        let n = 2;
        let top = FilterSpec::generated(names(n), Polarity::Filter, &[]).unwrap();
        let t = theory_from_filter(&top).unwrap();
        assert!(t.clauses().iter().all(|s| s.is_axiom()));
        assert_eq!(t.clauses().len(), 16 - 9);
        let full = FilterSpec::generated(names(n), Polarity::Filter, &[CanonExpr::bot(n)]).unwrap();
        assert!(
            derivable(&theory_from_filter(&full).unwrap(), Sequent::default())
                .unwrap()
                .is_some()
        );
        let a = FilterSpec::generated(names(n), Polarity::Filter, &[CanonExpr::generator(n, 0)])
            .unwrap();
        assert!(theory_from_filter(&a)
            .unwrap()
            .clauses()
            .contains(&Sequent::new(0, 1)));
    }

    #[test]
    fn filter_theory_derivability_is_membership() {
        // Every explicit filter and ideal on 2 generators is principal.
        let n = 2;
        for g in CanonExpr::all(n).unwrap() {
            for polarity in [Polarity::Filter, Polarity::Ideal] {
                let spec =
                    FilterSpec::generated(names(n), polarity, std::slice::from_ref(&g)).unwrap();
                let t = theory_from_filter(&spec).unwrap();
                for gamma in 0..4 {
                    for delta in 0..4 {
                        let s = Sequent::new(gamma, delta);
                        let e = match polarity {
                            Polarity::Filter => clause_expr(s, n).unwrap(),
                            Polarity::Ideal => term_expr(s, n).unwrap(),
                        };
                        assert_eq!(
                            derivable(&t, s).unwrap().is_some(),
                            spec.contains(&e).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn round_trip_through_filter() {
        for theory in theories(2) {
            let f = FilterSpec::from_theory(&theory, Polarity::Filter).unwrap();
            let back = theory_from_filter(&f).unwrap();
            for i in 0..16 {
                let s = Sequent::new(i & 3, i >> 2);
                assert_eq!(
                    derivable(&back, s).unwrap().is_some(),
                    derivable(&theory, s).unwrap().is_some(),
                    "{theory}"
                );
            }
        }
    }
}
