//! Acyclic categories, posets, nerves, chain complexes and integral homology.

mod category;
mod chain;
mod homology;
mod poset;
pub mod snf;
mod trisp;

pub use category::{AcyclicCategory, Morphism, Object, ValidationReport, Violation};
pub use chain::{chain_complex, ChainComplex, SparseMatrix};
pub use homology::{homology, nerve_homology, HomologyResult};
pub use poset::Poset;
pub(crate) use poset::escape;
pub use trisp::{barycentric_subdivision, euler_characteristic, nerve, Simplex, Trisp};
