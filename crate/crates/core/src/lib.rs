//! Quantified logic of formal inconsistency over a three-valued matrix.

pub mod cli;
pub mod hilbert;
pub mod matrix;
pub mod modeltheory;
pub mod search;
pub mod structures;
pub mod syntax;
pub mod triples;
pub mod twist;
