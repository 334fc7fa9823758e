//! A workbench for finite monoids given by Cayley tables.
//!
//! The crate decides aperiodicity, Green's relations and the linearity of
//! principal right ideals, and builds on those to classify monoids as
//! Ramsey or Y-controllable. It also checks the finite dynamics behind the
//! classification (controlled idempotents in finite semigroups), runs
//! bounded combinatorial searches over words, and computes syntactic monoids
//! of regular expressions.
//!
//! Start with [`monoid`] for constructing monoids and [`classify`] for
//! verdicts. The `examples/` directory has one runnable program per area.

pub mod classify;
pub mod cli;
pub mod corpus;
pub mod dynamics;
pub mod green;
pub mod monoid;
pub mod oracle;
pub mod syntactic;
pub mod words;
pub mod yspace;

pub use classify::{classify, ClassificationReport, YVerdict};
pub use monoid::{Elem, FiniteMonoid, FiniteSemigroup, MonoidError};
