//! Combinatorial models of arrangements of codimension-1 submanifolds.
//!
//! The crate builds face categories for three model classes (affine hyperplane
//! arrangements, great-sphere arrangements and periodic arrangements in the
//! torus), derives Salvetti categories and complexes from them, and computes
//! integral homology, metrical-hemisphere checks, fundamental group
//! presentations and finite covers.
//!
//! ```
//! use arrangement_core::models::{periodic_quotient, PeriodicModel, PeriodicOptions};
//! use arrangement_core::salvetti::salvetti_category;
//! use arrangement_core::Strategy;
//!
//! let model = PeriodicModel::from_json_str(
//!     r#"{"model":"periodic","dim":1,"families":[{"normal":[1],"offset":"0"}]}"#,
//! ).unwrap();
//! let fd = periodic_quotient(&model, &PeriodicOptions::default(), Strategy::default()).unwrap();
//! let sal = salvetti_category(&fd, Strategy::default()).unwrap();
//! assert_eq!(sal.category.num_objects(), 3);
//! assert_eq!(sal.category.num_morphisms(), 4);
//! ```

pub mod complex;
pub mod error;
pub mod exec;
pub mod face_ops;
pub mod mh;
pub mod models;
pub mod pi1;
pub mod rational;
pub mod salvetti;
mod bitset;

pub use error::{Error, ErrorKind, Result};
pub use exec::Strategy;

/// Version tag written into every JSON artifact.
pub const SCHEMA_VERSION: u32 = 1;
