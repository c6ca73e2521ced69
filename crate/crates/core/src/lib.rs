//! Ridge-chordality, shellability and k-decomposability of pure simplicial
//! complexes, with builders for the glued counterexample family Δ²ₖ and the
//! duals of its clique complexes.

pub mod chordality;
pub mod complex;
pub mod constructibility;
pub mod constructions;
pub mod decomposability;
pub mod error;
pub mod face;
pub mod homology;
pub mod io;
pub mod report;
pub mod search;
pub mod shelling;
pub mod theorem_a;

pub use complex::{ComplexStats, SimplicialComplex};
pub use error::{Error, Result};
pub use face::Face;
