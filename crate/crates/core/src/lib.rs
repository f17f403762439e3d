//! Symbolic dynamics over ℤ and ℤ^d: subshift languages, sofic
//! presentations, filler-length certificates and the construction of
//! periodic points carrying a given word or pattern.

pub mod error;
pub mod graph;
pub mod language;
pub mod lattice;
pub mod wdensity;
pub mod word;
pub mod zoo;

pub use error::{Error, Result};
pub use graph::{LabeledGraph, SlidingBlockCode};
pub use language::{Language, Oracle1d, PeriodicVerdict, Sft1d, Sofic1d, SubshiftHandle};
pub use lattice::{CellSet, Pattern, PeriodLattice, SftZd, TorusConfig};
pub use word::{Alphabet, PeriodicWord, Symbol, Word};
