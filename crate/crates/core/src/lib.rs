//! Decision procedures for ill- and well-foundedness properties of
//! predicates on finite sequences, for choice and bar principles on finite
//! relations and approximations, and for entailment in clause theories.
//!
//! Infinite objects are studied through truncations: a predicate lives on
//! the universe `U(B, d)` of sequences over an alphabet `B` of length at
//! most `d`, and every property is decided exactly on that universe.
//!
//! - [`seq`], [`pred`]: sequences, universes and bitset predicates.
//! - [`found`]: foundedness properties, their fixpoints and witnesses, and
//!   the principle statements over them.
//! - [`rel`]: relations, their sequence encodings, and dependent and
//!   countable choice.
//! - [`approx`]: predicates on finite approximations of functions, with
//!   approximability and inductive barredness.
//! - [`entail`]: clause theories, the splitting prover and the translation
//!   to approximation predicates.
//! - [`boolalg`]: the free Boolean algebra, theory filters and prime filters.
//! - [`harness`], [`report`]: check suites and their output.

pub mod approx;
pub mod boolalg;
pub mod entail;
pub mod error;
pub mod found;
pub mod harness;
pub mod pred;
pub mod rel;
pub mod report;
pub mod seq;

pub use error::{Error, Result};
