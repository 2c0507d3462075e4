use serde_json::json;

use super::{describe_theory, par_records, theories, Config, Record, Suite};
use crate::approx::inductively_barred_from;
use crate::boolalg::{check_bpf, theory_from_filter, FilterSpec, Polarity, ENUM_MAX_GENERATORS};
use crate::entail::{
    check_completeness, derivable, enumerate_models, positively_disprovable, satisfies,
    translate_sequent, translate_theory, Sequent, MAX_COMPLETENESS_ATOMS,
};
use crate::error::{Error, Result};

pub(super) fn completeness(config: &Config) -> Result<Vec<Record>> {
    let n = config.atoms;
    if n > MAX_COMPLETENESS_ATOMS {
        return Err(Error::Limit(format!(
            "{n} atoms exceed {MAX_COMPLETENESS_ATOMS}"
        )));
    }
    let theories = theories(n, config, 6)?;
    let sequents: Vec<Sequent> = (0..3u64.pow(n as u32))
        .map(|i| Sequent::from_ternary(n, i))
        .collect();
    par_records(
        Suite::Completeness,
        &format!("{n} atoms"),
        &theories,
        describe_theory,
        |theory, c| {
            let report = check_completeness(theory)?;
            c.check("compl", report.holds());
            let t = translate_theory(theory)?;
            let mut agree = true;
            let mut disprove = true;
            for &s in &sequents {
                let d = derivable(theory, s)?;
                agree &=
                    d.is_some() == inductively_barred_from(&t, translate_sequent(s))?.is_some();
                agree &= d
                    .as_ref()
                    .is_none_or(|d| d.check(theory) && d.conclusion() == s);
                let cm = positively_disprovable(theory, s)?;
                disprove &= cm.is_some() != d.is_some()
                    && cm.is_none_or(|v| satisfies(v, theory) && v.falsifies_sequent(s));
            }
            c.check("sequents-barred", agree);
            c.check("positive-disprovability", disprove);
            if n <= 20 {
                c.check(
                    "models-oracle",
                    enumerate_models(theory)?.is_empty() != report.consistent,
                );
            }
            match (&report.model, &report.derivation) {
                (Some(m), _) => c.witness(json!({ "model": m.show(theory) })),
                (None, Some(d)) => c.witness(d.to_json(theory)),
                _ => {}
            }
            Ok(())
        },
    )
}

pub(super) fn bpf(config: &Config) -> Result<Vec<Record>> {
    let n = config.atoms;
    if n > ENUM_MAX_GENERATORS {
        return Err(Error::Limit(format!(
            "{n} atoms exceed {ENUM_MAX_GENERATORS}"
        )));
    }
    let theories = theories(n, config, 7)?;
    par_records(
        Suite::Bpf,
        &format!("{n} atoms"),
        &theories,
        describe_theory,
        |theory, c| {
            let report = check_bpf(theory)?;
            c.check("bpf", report.bpf() && report.bpi());
            c.check("co-bpf", report.co_bpf() && report.co_bpi());
            c.check("gdc-correspondence", report.holds());
            let f = FilterSpec::from_theory(theory, Polarity::Filter)?;
            let back = theory_from_filter(&f)?;
            let mut round_trip = true;
            for gamma in 0..1u64 << n {
                for delta in 0..1u64 << n {
                    let s = Sequent::new(gamma, delta);
                    round_trip &= derivable(&back, s)?.is_some() == derivable(theory, s)?.is_some();
                }
            }
            c.check("filter-round-trip", round_trip);
            if let Some(alpha) = report.prime_filter {
                c.witness(json!({ "prime_filter": alpha.show(theory) }));
            }
            Ok(())
        },
    )
}
