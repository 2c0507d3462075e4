use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use wellfound::approx::{encoded_ternary_experiment, pigeonhole_demo};
use wellfound::boolalg::{in_filter, parse_expr, FilterSpec, Polarity};
use wellfound::entail::{
    derivable, find_model, parse_sequent, parse_theory, positively_disprovable, satisfies, Sequent,
    Theory,
};
use wellfound::found::{classify, itree_to_extensional, realises, Boundary, ITree};
use wellfound::harness::{self, Config};
use wellfound::pred::{parse_pred, Universe};
use wellfound::report::{self, Format};
use wellfound::seq::Alphabet;
use wellfound::Error;

/// Decides well-foundedness properties, choice and bar principles, and
/// clause entailment on finite instances.
#[derive(Parser)]
#[command(name = "wellfound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a theorem suite: foundedness, dc-bi, kl-ft, cc-ac, gdc-gbi,
    /// completeness, bpf, or all.
    Check {
        suite: String,
        #[command(flatten)]
        universe: UniverseArgs,
        /// Atom count for the completeness and bpf suites.
        #[arg(long, default_value_t = 2)]
        atoms: usize,
        /// Instances drawn when a family is too large to enumerate.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
    },
    /// Decide consistency of a theory file, or derivability of a sequent.
    Solve {
        file: PathBuf,
        /// A sequent such as `a, b |- c`; defaults to the empty sequent.
        #[arg(long)]
        sequent: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
    },
    /// Search a model of a theory file.
    Sat {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
    },
    /// Test whether a Boolean expression lies in the filter (or ideal) of a
    /// theory file.
    Filter {
        file: PathBuf,
        expr: String,
        #[arg(long)]
        ideal: bool,
    },
    /// Classify the predicate listed in a file, one member per line.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        universe: UniverseArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
    },
    /// Demonstrations: pigeonhole, realiser, encoding.
    Demo {
        name: String,
        /// Domain size.
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Codomain size.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Human)]
        format: FormatArg,
    },
}

#[derive(Args)]
struct UniverseArgs {
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Open)]
    boundary: BoundaryArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    JsonLines,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Human => Format::Human,
            FormatArg::JsonLines => Format::JsonLines,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Open,
    Closed,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Boundary {
        match b {
            BoundaryArg::Open => Boundary::Open,
            BoundaryArg::Closed => Boundary::Closed,
        }
    }
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

enum Failure {
    Usage(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Run = Result<Outcome, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli.command, &mut out) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> Run {
    match command {
        Command::Check {
            suite,
            universe,
            atoms,
            samples,
            seed,
            format,
        } => {
            let config = Config {
                alphabet: universe.alphabet,
                depth: universe.depth,
                boundary: universe.boundary.into(),
                atoms,
                samples,
                seed,
            };
            let start = Instant::now();
            let records = harness::run_named(&suite, &config)?;
            let ok = report::write_run(out, &records, format.into(), start.elapsed())?;
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Solve {
            file,
            sequent,
            format,
        } => solve(&file, sequent.as_deref(), format.into(), out),
        Command::Sat { file, format } => sat(&file, format.into(), out),
        Command::Filter { file, expr, ideal } => {
            let theory = read_theory(&file)?;
            let polarity = if ideal {
                Polarity::Ideal
            } else {
                Polarity::Filter
            };
            let spec = FilterSpec::from_theory(&theory, polarity)?;
            let e = parse_expr(&expr, theory.atoms())?;
            let member = in_filter(&spec, &e)?;
            let name = if ideal { "I_T" } else { "F_T" };
            writeln!(out, "{} {name}", if member { "IN" } else { "NOT IN" })?;
            Ok(Outcome::Pass)
        }
        Command::Classify {
            file,
            universe,
            format,
        } => {
            let un = Universe::new(Alphabet::new(universe.alphabet)?, universe.depth)?;
            if universe.depth == 0 {
                return Err(Error::InvalidArguments("depth must be at least 1".into()).into());
            }
            let t = parse_pred(&read(&file)?, un)?;
            classify_cmd(&t, universe.boundary.into(), format.into(), out)
        }
        Command::Demo {
            name,
            m,
            n,
            alphabet,
            depth,
            samples,
            format,
        } => demo(&name, m, n, alphabet, depth, samples, format.into(), out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn read_theory(path: &Path) -> Result<Theory, Failure> {
    Ok(parse_theory(&read(path)?)?)
}

fn solve(path: &Path, sequent: Option<&str>, format: Format, out: &mut impl Write) -> Run {
    let theory = read_theory(path)?;
    let s = match sequent {
        Some(text) => parse_sequent(&theory, text)?,
        None => Sequent::default(),
    };
    let (yes, no) = if sequent.is_some() {
        ("DERIVABLE", "NOT DERIVABLE")
    } else {
        ("INCONSISTENT", "CONSISTENT")
    };
    match derivable(&theory, s)? {
        Some(d) => {
            let valid = d.check(&theory) && d.conclusion() == s;
            match format {
                Format::Human => write!(out, "{yes}\n{}", d.render(&theory))?,
                Format::JsonLines => writeln!(
                    out,
                    "{}",
                    json!({ "verdict": yes, "derivation": d.to_json(&theory), "verified": valid })
                )?,
            }
            Ok(if valid { Outcome::Pass } else { Outcome::Fail })
        }
        None => {
            let model = positively_disprovable(&theory, s)?;
            let valid = model.is_some_and(|m| satisfies(m, &theory) && m.falsifies_sequent(s));
            let shown = model.map(|m| m.show(&theory)).unwrap_or_default();
            match format {
                Format::Human => writeln!(out, "{no}\nmodel: {shown}")?,
                Format::JsonLines => writeln!(
                    out,
                    "{}",
                    json!({ "verdict": no, "model": shown, "verified": valid })
                )?,
            }
            Ok(if valid { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn sat(path: &Path, format: Format, out: &mut impl Write) -> Run {
    let theory = read_theory(path)?;
    let (verdict, shown, valid) = match find_model(&theory) {
        Some(m) => ("SAT", m.show(&theory), satisfies(m, &theory)),
        // A refutation certifies unsatisfiability.
        None => (
            "UNSAT",
            String::new(),
            derivable(&theory, Sequent::default())?.is_some_and(|d| d.check(&theory)),
        ),
    };
    match format {
        Format::Human if shown.is_empty() => writeln!(out, "{verdict}")?,
        Format::Human => writeln!(out, "{verdict}\n{shown}")?,
        Format::JsonLines => writeln!(
            out,
            "{}",
            json!({ "verdict": verdict, "model": shown, "verified": valid })
        )?,
    }
    Ok(if valid { Outcome::Pass } else { Outcome::Fail })
}

fn classify_cmd(
    t: &wellfound::pred::Pred,
    boundary: Boundary,
    format: Format,
    out: &mut impl Write,
) -> Run {
    let mut all_valid = true;
    for r in classify(t, boundary) {
        let valid = r.verify(t, boundary);
        all_valid &= valid;
        match format {
            Format::Human => {
                let witness = match &r.witness {
                    Some(w) => serde_json::to_string(w).unwrap_or_default(),
                    None => String::new(),
                };
                let mark = if r.holds { "✓" } else { "✗" };
                writeln!(out, "{:<20} {mark}  {witness}", r.property.name())?;
            }
            Format::JsonLines => writeln!(
                out,
                "{}",
                json!({
                    "property": r.property.name(),
                    "holds": r.holds,
                    "witness": r.witness,
                    "verified": valid,
                })
            )?,
        }
    }
    Ok(if all_valid {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

#[allow(clippy::too_many_arguments)]
fn demo(
    name: &str,
    m: usize,
    n: usize,
    alphabet: usize,
    depth: usize,
    samples: usize,
    format: Format,
    out: &mut impl Write,
) -> Run {
    match name {
        "pigeonhole" => {
            let r = pigeonhole_demo(m, n)?;
            match format {
                Format::Human => {
                    writeln!(out, "injective functions from {m} points to {n} values")?;
                    writeln!(out, "largest approximable size k = {}", r.max_depth)?;
                    writeln!(out, "approximable: {}", r.approximable)?;
                    match &r.choice_function {
                        Some(c) => writeln!(out, "choice function: {c}")?,
                        None => writeln!(out, "choice function: none")?,
                    }
                    writeln!(out, "{}", r.explanation)?;
                }
                Format::JsonLines => {
                    writeln!(out, "{}", serde_json::to_string(&r).unwrap_or_default())?
                }
            }
            Ok(if r.choice_function.is_none() {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        "realiser" => {
            let b = Alphabet::new(alphabet)?;
            if b.size() > 2 || depth > 4 {
                return Err(Error::Limit(
                    "realiser demo enumerates trees over at most 2 letters and depth 4".into(),
                )
                .into());
            }
            let un = Universe::new(b, depth)?;
            let trees = ITree::all(b, depth);
            let mut failures = 0;
            for t in &trees {
                if !realises(t, &itree_to_extensional(t, un)?) {
                    failures += 1;
                }
            }
            match format {
                Format::Human => writeln!(
                    out,
                    "{} trees of depth ≤ {depth} over {} letters; {} realise their extension",
                    trees.len(),
                    b.size(),
                    trees.len() - failures
                )?,
                Format::JsonLines => writeln!(
                    out,
                    "{}",
                    json!({ "trees": trees.len(), "depth": depth, "alphabet": b.size(), "failures": failures })
                )?,
            }
            Ok(if failures == 0 {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        "encoding" => {
            let r = encoded_ternary_experiment(m, samples, 0)?;
            match format {
                Format::Human => writeln!(
                    out,
                    "{} samples over {m} points: choice functions agree {}, approximability {}, barredness {}",
                    r.samples, r.choice_agree, r.approximable_agree, r.barred_agree
                )?,
                Format::JsonLines => writeln!(out, "{}", serde_json::to_string(&r).unwrap_or_default())?,
            }
            Ok(if r.choice_agree == r.samples {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        other => Err(Error::InvalidArguments(format!("unknown demo `{other}`")).into()),
    }
}
