//! Computational playground for Markoff-type solution graphs over prime
//! fields, linear recurrence value sets and Fibonacci residues.
//!
//! The crate is organized around a small field-arithmetic substrate
//! ([`ff`]) and four experiment modules on top of it:
//!
//! * [`markoff`] — solutions of `x^2 + y^2 + z^2 = Axyz + B` over `F_p`,
//!   their transformation graph and connected-component reports;
//! * [`hurwitz`] — the n-variable Markoff-Hurwitz equation, reduced
//!   three-variable equations, fiber counts and reduction chains;
//! * [`recurrence`] — second-order linear recurrences, closed forms and
//!   intersection bounds against multiplicative subgroups;
//! * [`fibonacci`] — Pisano periods, the Binet parameterization of
//!   Fibonacci residues and the derived intersection bounds.
//!
//! [`cli`] drives parameter sweeps and JSON-lines/CSV reporting; the
//! `markoff-lab` binary is a thin wrapper around it. Each major
//! capability also has a runnable example under `examples/`.

pub mod cli;
pub mod ff;
pub mod fibonacci;
pub mod graph;
pub mod hurwitz;
pub mod markoff;
pub mod recurrence;
