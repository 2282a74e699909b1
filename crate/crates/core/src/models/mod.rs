//! Face categories of hyperplane, sphere and periodic models.

mod face_data;
pub mod feasibility;
mod hyperplane;
mod input;
mod lattice;
mod oracle;
mod periodic;
mod sign;
mod sphere;

pub use face_data::{Face, FaceData, LiftData, ModelKind, SidePartition};
pub use hyperplane::{
    enumerate_faces, enumerate_sign_vectors, essentialize, feasible, EnumerationOptions, Hyperplane,
    HyperplaneArrangement, DEFAULT_MAX_HYPERPLANES,
};
pub use input::{BuildOptions, Model};
pub use lattice::intersection_poset;
pub use oracle::{whitney_oracle, FlatEntry, WhitneyReport};
pub use periodic::{periodic_quotient, window_arrangement, Family, PeriodicModel, PeriodicOptions};
pub use sign::{Sign, SignVector};
pub use sphere::{sphere_faces, SphereModel};
