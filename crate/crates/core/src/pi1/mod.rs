//! Fundamental group presentations from 2-skeletons and finite covers from
//! permutation representations.

mod cover;
mod presentation;
mod two_complex;

pub use cover::{build_cover, cyclic_representations, Cover, CoverVerification, PermutationCover};
pub use presentation::{abelianization, pi1_presentation, Abelianization, GroupPresentation, Letter};
pub use two_complex::{salvetti_two_complex, ArrangementGraph, Step, TwoComplex};
