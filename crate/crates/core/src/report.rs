//! Rendering of check runs: a human summary or a JSON-lines record stream.

use std::io::{self, Write};
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::error::Error;
use crate::harness::{tally, Record, Tally};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    JsonLines,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "human" => Ok(Format::Human),
            "json-lines" | "jsonl" | "json" => Ok(Format::JsonLines),
            _ => Err(Error::InvalidArguments(format!("unknown format `{s}`"))),
        }
    }
}

/// Closing record of a JSON-lines run.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub kind: &'static str,
    pub instances: usize,
    pub failures: usize,
    pub seconds: f64,
    pub checks: Vec<Tally>,
}

pub fn summarize(records: &[Record], elapsed: Duration) -> Summary {
    Summary {
        kind: "summary",
        instances: records.len(),
        failures: records.iter().filter(|r| !r.holds).count(),
        seconds: elapsed.as_secs_f64(),
        checks: tally(records),
    }
}

/// Failing instances listed in human output.
const SHOWN_FAILURES: usize = 20;

/// Writes a run; returns whether every instance passed.
pub fn write_run(
    out: &mut impl Write,
    records: &[Record],
    format: Format,
    elapsed: Duration,
) -> io::Result<bool> {
    let summary = summarize(records, elapsed);
    match format {
        Format::JsonLines => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
            serde_json::to_writer(&mut *out, &summary)?;
            writeln!(out)?;
        }
        Format::Human => {
            for t in &summary.checks {
                let verdict = if t.passed == t.total { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{verdict}  {:<13} {:<32} {}/{}",
                    t.suite, t.check, t.passed, t.total
                )?;
            }
            for r in records.iter().filter(|r| !r.holds).take(SHOWN_FAILURES) {
                let failed: Vec<&str> =
                    r.checks.iter().filter(|c| !c.holds).map(|c| c.id).collect();
                writeln!(
                    out,
                    "  failed {}#{} on {} {}: {}",
                    r.suite,
                    r.index,
                    r.universe,
                    r.instance,
                    failed.join(", ")
                )?;
            }
            if summary.failures > SHOWN_FAILURES {
                writeln!(
                    out,
                    "  … {} more failing instances",
                    summary.failures - SHOWN_FAILURES
                )?;
            }
            writeln!(
                out,
                "{} instances, {} failing, {:.2}s",
                summary.instances, summary.failures, summary.seconds
            )?;
        }
    }
    Ok(summary.failures == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run, Config, Suite};

    #[test]
    fn json_lines_end_with_summary() {
        let config = Config {
            depth: 1,
            ..Config::default()
        };
        let records = run(Suite::Foundedness, &config).unwrap();
        let mut buf = Vec::new();
        assert!(write_run(&mut buf, &records, Format::JsonLines, Duration::ZERO).unwrap());
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<serde_json::Value> = text
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(lines.len(), records.len() + 1);
        assert_eq!(lines.last().unwrap()["kind"], "summary");
        assert_eq!(lines[0]["suite"], "foundedness");
    }

    #[test]
    fn human_output_lists_checks() {
        let config = Config {
            depth: 1,
            ..Config::default()
        };
        let records = run(Suite::Foundedness, &config).unwrap();
        let mut buf = Vec::new();
        write_run(&mut buf, &records, Format::Human, Duration::ZERO).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("PASS  foundedness"));
        assert!(text.contains("8 instances, 0 failing"));
    }
}
