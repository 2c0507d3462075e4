//! Small demonstrations built on the approximation engines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    approximable, approximable_to_depth, bits_of, find_choice_function, inductively_barred,
    ApproxPred, ChoiceFun, Shape,
};
use crate::error::{Error, Result};
use crate::seq::Alphabet;

/// Injectivity over `m > n` points: approximable for a while, never total.
#[derive(Debug, Clone, Serialize)]
pub struct PigeonholeReport {
    pub domain: usize,
    pub codomain: usize,
    /// Largest `k` such that every strategy-built approximation with domain
    /// size at most `k` can be kept injective.
    pub max_depth: usize,
    pub approximable: bool,
    pub choice_function: Option<ChoiceFun>,
    pub explanation: String,
}

/// No two pairs of `v` share a value on different arguments.
pub fn injectivity(shape: Shape) -> ApproxPred {
    let k = shape.codomain().size();
    ApproxPred::from_fn(shape, move |v| {
        (0..k).all(|b| {
            let column = bits_of(v).filter(|i| i % k == b).map(|i| i / k);
            let mut args = column.collect::<Vec<_>>();
            args.dedup();
            args.len() <= 1
        })
    })
}

pub fn pigeonhole_demo(m: usize, n: usize) -> Result<PigeonholeReport> {
    if n == 0 || m <= n {
        return Err(Error::InvalidArguments(format!(
            "pigeonhole needs more points than values, got {m} and {n}"
        )));
    }
    let shape = Shape::new(m, Alphabet::new(n)?)?;
    let t = injectivity(shape);
    let max_depth = (0..=m)
        .take_while(|&k| approximable_to_depth(&t, k))
        .last()
        .unwrap_or(0);
    let approximable = approximable(&t);
    let choice_function = find_choice_function(&t);
    let explanation = format!(
        "Each of the first {max_depth} extension steps can pick a value not used yet, so the \
         injectivity constraint survives {max_depth} rounds of the approximability unfolding. \
         Step {} has only used values left, every extension collides, and no injective function \
         from {m} points to {n} values exists. With an infinite codomain a fresh value is always \
         available: the unfolding never fails, while a domain larger than the codomain still \
         rules out an injective total function.",
        max_depth + 1
    );
    Ok(PigeonholeReport {
        domain: m,
        codomain: n,
        max_depth,
        approximable,
        choice_function,
        explanation,
    })
}

/// Agreement between a predicate over a three-letter codomain and its
/// binary encoding, over random samples.
#[derive(Debug, Clone, Default, Serialize)]
pub struct EncodingExperiment {
    pub samples: usize,
    pub choice_agree: usize,
    pub approximable_agree: usize,
    pub barred_agree: usize,
}

/// Encodes `(a, b)` with `b < 3` as the two bits of `b` on points `2a` and
/// `2a + 1`. An encoded approximation is accepted iff no point pair carries
/// the unused code `3` and the pairs it fully determines are accepted by
/// `t`.
pub fn encode_ternary(t: &ApproxPred) -> Result<ApproxPred> {
    let src = t.shape();
    if src.codomain().size() != 3 {
        return Err(Error::InvalidArguments(
            "encoding expects a three-letter codomain".into(),
        ));
    }
    let dst = Shape::new(2 * src.domain(), Alphabet::boolean())?;
    let t = t.clone();
    Ok(ApproxPred::from_fn(dst, move |w| {
        let mut v = 0u64;
        for a in 0..src.domain() {
            let hi = (w >> (4 * a)) & 0b11;
            let lo = (w >> (4 * a + 2)) & 0b11;
            for h in bits_of(hi) {
                for l in bits_of(lo) {
                    let b = 2 * h + l;
                    if b == 3 {
                        return false;
                    }
                    v |= src.bit(a, b as u16);
                }
            }
        }
        t.contains_mask(v)
    }))
}

/// Compares choice functions (which must correspond), approximability and
/// inductive barredness on `samples` random predicates over `m` points.
pub fn encoded_ternary_experiment(
    m: usize,
    samples: usize,
    seed: u64,
) -> Result<EncodingExperiment> {
    let shape = Shape::new(m, Alphabet::new(3)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = EncodingExperiment {
        samples,
        ..Default::default()
    };
    for _ in 0..samples {
        let density: f64 = rng.gen_range(0.5..1.0);
        let members: Vec<bool> = (0..1u64 << shape.pairs())
            .map(|_| rng.gen_bool(density))
            .collect();
        let t = ApproxPred::from_fn(shape, move |v| members[v as usize]);
        let e = encode_ternary(&t)?;
        let c = find_choice_function(&t);
        let ce = find_choice_function(&e);
        let decoded = ce.as_ref().map(|f| {
            f.values()
                .chunks(2)
                .map(|p| 2 * p[0] + p[1])
                .collect::<Vec<_>>()
        });
        if c.is_some() == ce.is_some() && decoded.is_none_or(|d| d.iter().all(|&b| b < 3)) {
            out.choice_agree += 1;
        }
        if approximable(&t) == approximable(&e) {
            out.approximable_agree += 1;
        }
        if inductively_barred(&t).is_some() == inductively_barred(&e).is_some() {
            out.barred_agree += 1;
        }
    }
    Ok(out)
}
