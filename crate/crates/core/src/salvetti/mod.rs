//! Salvetti categories and posets, their cell structures, and the maps ψ, ι_C.
//!
//! Salvetti morphisms run from chamber-grade objects toward deeper faces. In
//! the regular case `(F₂, C₂) < (F₁, C₁)` iff `F₁ < F₂` and `F₂∘C₁ = C₂`.

mod action;
mod category;
mod cells;
mod checks;
mod cw;

pub use category::{salvetti_category, salvetti_poset, SalvettiCategory, SalvettiObject, SalvettiPoset};
pub use cells::{Cell, CellGraphComplex};
pub use checks::{
    bounded_chambers, local_embedding_check, psi_iota, BoundedReport, EmbeddingReport, PsiIotaReport,
};
pub use cw::{dual_complex, salvetti_cw, two_cell_paths, TwoCellPaths};
