//! Theory files: a YAML (or JSON) document
//!
//! ```yaml
//! atoms: [a, b]
//! clauses:
//!   - antecedent: [a]
//!     succedent: [b]
//! ```
//!
//! Each clause `antecedent ▷ succedent` reads `⋀antecedent → ⋁succedent`.

use serde::{Deserialize, Serialize};

use super::{Sequent, Theory};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TheoryDoc {
    atoms: Vec<String>,
    #[serde(default)]
    clauses: Vec<ClauseDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClauseDoc {
    #[serde(default)]
    antecedent: Vec<String>,
    #[serde(default)]
    succedent: Vec<String>,
}

/// Line and column (both 1-based) of the first whole-word occurrence of
/// `word` in `text`.
fn locate(text: &str, word: &str) -> (usize, usize) {
    let is_ident = |c: char| c.is_alphanumeric() || c == '_';
    for (i, line) in text.lines().enumerate() {
        let mut from = 0;
        while let Some(pos) = line[from..].find(word) {
            let start = from + pos;
            let end = start + word.len();
            let before = line[..start].chars().next_back();
            let after = line[end..].chars().next();
            if !before.is_some_and(is_ident) && !after.is_some_and(is_ident) {
                return (i + 1, line[..start].chars().count() + 1);
            }
            from = end;
        }
    }
    (0, 0)
}

pub fn parse_theory(text: &str) -> Result<Theory> {
    let doc: TheoryDoc = serde_yaml::from_str(text).map_err(|e| {
        let (line, column) = e.location().map_or((0, 0), |l| (l.line(), l.column()));
        Error::Parse {
            line,
            column,
            message: e.to_string(),
        }
    })?;
    for (i, a) in doc.atoms.iter().enumerate() {
        if a.is_empty() || doc.atoms[..i].contains(a) {
            let (line, column) = locate(text, a);
            return Err(Error::Parse {
                line,
                column,
                message: format!("duplicate or empty atom name `{a}`"),
            });
        }
    }
    let index = |name: &String| -> Result<u64> {
        match doc.atoms.iter().position(|a| a == name) {
            Some(i) => Ok(1 << i),
            None => {
                let (line, column) = locate(text, name);
                Err(Error::Parse {
                    line,
                    column,
                    message: format!("clause mentions undeclared atom `{name}`"),
                })
            }
        }
    };
    let mut clauses = Vec::with_capacity(doc.clauses.len());
    for c in &doc.clauses {
        let gamma = c
            .antecedent
            .iter()
            .try_fold(0, |acc, n| Ok::<_, Error>(acc | index(n)?))?;
        let delta = c
            .succedent
            .iter()
            .try_fold(0, |acc, n| Ok::<_, Error>(acc | index(n)?))?;
        clauses.push(Sequent::new(gamma, delta));
    }
    Theory::new(doc.atoms, clauses)
}

pub fn theory_to_yaml(theory: &Theory) -> String {
    let doc = TheoryDoc {
        atoms: theory.atoms().to_vec(),
        clauses: theory
            .clauses()
            .iter()
            .map(|c| ClauseDoc {
                antecedent: theory
                    .names(c.gamma)
                    .into_iter()
                    .map(String::from)
                    .collect(),
                succedent: theory
                    .names(c.delta)
                    .into_iter()
                    .map(String::from)
                    .collect(),
            })
            .collect(),
    };
    serde_yaml::to_string(&doc).expect("theory documents serialize")
}

/// `a, b |- c` (or `▷` for `|-`) over the atoms of `theory`.
pub fn parse_sequent(theory: &Theory, text: &str) -> Result<Sequent> {
    let (sep, width) = match (text.find("|-"), text.find('▷')) {
        (Some(i), _) => (i, 2),
        (None, Some(i)) => (i, '▷'.len_utf8()),
        (None, None) => {
            return Err(Error::Parse {
                line: 1,
                column: text.chars().count() + 1,
                message: "expected `|-` between antecedent and succedent".into(),
            })
        }
    };
    let side = |part: &str, offset: usize| -> Result<u64> {
        let mut set = 0;
        let mut pos = offset;
        for name in part.split(',') {
            let trimmed = name.trim();
            if !trimmed.is_empty() {
                let i = theory.atom_index(trimmed).ok_or_else(|| Error::Parse {
                    line: 1,
                    column: text[..pos + name.find(trimmed).unwrap_or(0)]
                        .chars()
                        .count()
                        + 1,
                    message: format!("unknown atom `{trimmed}`"),
                })?;
                set |= 1 << i;
            }
            pos += name.len() + 1;
        }
        Ok(set)
    };
    Ok(Sequent::new(
        side(&text[..sep], 0)?,
        side(&text[sep + width..], sep + width)?,
    ))
}
