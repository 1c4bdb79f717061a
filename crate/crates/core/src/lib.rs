//! Resolution-based reasoning for first-order clauses whose literals carry
//! truth values from a linear symmetrical hedge algebra.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`]: the truth-value domain, its total order and connectives
//! - [`syntax`]: terms, literals, clauses and formulas
//! - [`parser`]: text format for problems and algebra configurations
//! - [`normalize`]: negation normal form, Skolemization, clausification
//! - [`unify`]: substitutions and most general unifiers
//! - [`saturate`]: reliability-weighted resolution and proof search
//! - [`ground_oracle`]: brute-force semantics used to cross-check the prover

pub mod algebra;
pub mod ground_oracle;
pub mod normalize;
pub mod parser;
pub mod saturate;
pub mod syntax;
pub mod unify;
