//! Abelian groups built from cyclic, Prufer and localized atoms.
//!
//! Elements carry one rational value per (slot, copy) coordinate: localized
//! coordinates live in Q, torsion coordinates in Q/Z (a residue r of Z(p^e)
//! is stored as r/p^e). Subgroups are given by handles, and the orders of
//! sections between handles are computed exactly on integer lattices.

pub mod canonical;
pub mod descriptor;
pub mod element;
pub mod handle;
pub mod json;
pub mod lattice;
pub mod parse;
pub mod primes;
pub mod rational;
pub mod section;

pub use canonical::{component, divisible_part, n_socle, torsion_part};
pub use descriptor::{Atom, Coord, GroupDescriptor, Mult, Presentation, Slot};
pub use element::Element;
pub use handle::{DivClosure, SubgroupHandle};
pub use primes::PrimeSet;
pub use rational::Q;
pub use section::{section_order, SectionSize, DEFAULT_PRECISION, DEFAULT_THRESHOLD};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("arithmetic: {0}")]
    Arithmetic(String),
}
