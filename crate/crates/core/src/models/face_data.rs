use std::collections::HashMap;

use serde::Serialize;

use super::sign::SignVector;
use crate::bitset::BitSet;
use crate::complex::AcyclicCategory;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Hyperplane,
    Sphere,
    Periodic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub dim: usize,
    pub label: String,
    /// Relative-interior point (of the canonical lift for periodic models).
    #[serde(serialize_with = "rational::ser_vec")]
    pub sample: Vec<Rational>,
    /// Submanifolds containing the face.
    pub containing: Vec<usize>,
    /// Sign vector for hyperplane and sphere models.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<SignVector>,
}

/// The chambers on either side of one submanifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SidePartition {
    pub submanifold: usize,
    pub negative: Vec<usize>,
    pub positive: Vec<usize>,
}

/// Lift bookkeeping for periodic models.
#[derive(Clone, Debug, Serialize)]
pub struct LiftData {
    pub window_low: i64,
    pub window_high: i64,
    /// Normal and offset of each window hyperplane, with its family.
    pub window: super::HyperplaneArrangement,
    pub family_of: Vec<usize>,
    /// Sign vector of the canonical lift of each face on the window arrangement.
    pub canonical: Vec<SignVector>,
    /// Deck translation of the target lift of each morphism.
    pub translations: Vec<Vec<i64>>,
    #[serde(skip)]
    pub(crate) lifts: Vec<(SignVector, usize, Vec<i64>)>,
    #[serde(skip)]
    pub(crate) by_sign: HashMap<SignVector, usize>,
    #[serde(skip)]
    pub(crate) by_orbit: HashMap<(usize, Vec<i64>), usize>,
}

impl LiftData {
    /// Face and translation of a window face lying in the validated region.
    pub fn identify(&self, sign: &SignVector) -> Option<(usize, &[i64])> {
        self.by_sign.get(sign).map(|&i| (self.lifts[i].1, self.lifts[i].2.as_slice()))
    }

    /// Window sign vector of the translate `face + translation`, if validated.
    pub fn lift(&self, face: usize, translation: &[i64]) -> Option<&SignVector> {
        self.by_orbit
            .get(&(face, translation.to_vec()))
            .map(|&i| &self.lifts[i].0)
    }

    /// Window sign vector of the target lift of a morphism.
    pub fn target_lift(&self, fd: &FaceData, morphism: usize) -> &SignVector {
        let m = fd.category.morphism(morphism);
        self.lift(m.target, &self.translations[morphism])
            .expect("morphism targets are validated lifts")
    }

    /// Window hyperplanes containing the canonical lift of `face`.
    pub fn local_hyperplanes(&self, face: usize) -> Vec<usize> {
        self.canonical[face].zero_set()
    }
}

/// A face category with sample points, incidence data and side partitions.
#[derive(Clone, Debug, Serialize)]
pub struct FaceData {
    pub kind: ModelKind,
    /// Dimension of the ambient manifold.
    pub manifold_dim: usize,
    pub submanifolds: usize,
    pub faces: Vec<Face>,
    pub category: AcyclicCategory,
    pub regular: bool,
    /// Present iff every submanifold separates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sides: Option<Vec<SidePartition>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lifts: Option<LiftData>,
    #[serde(skip)]
    up: Vec<BitSet>,
    #[serde(skip)]
    chambers: Vec<usize>,
}

impl FaceData {
    pub(crate) fn new(
        kind: ModelKind,
        manifold_dim: usize,
        submanifolds: usize,
        faces: Vec<Face>,
        category: AcyclicCategory,
        sides: Option<Vec<SidePartition>>,
        lifts: Option<LiftData>,
    ) -> Result<Self> {
        category
            .ensure_valid()
            .map_err(|e| Error::Consistency(format!("face category: {e}")))?;
        let n = faces.len();
        let mut up = vec![BitSet::new(n); n];
        for (i, u) in up.iter_mut().enumerate() {
            u.insert(i);
            for &m in category.outgoing(i) {
                u.insert(category.morphism(m).target);
            }
        }
        let chambers: Vec<usize> = (0..n).filter(|&i| faces[i].dim == manifold_dim).collect();
        let fd = FaceData {
            kind,
            manifold_dim,
            submanifolds,
            regular: category.is_poset(),
            faces,
            category,
            sides,
            lifts,
            up,
            chambers,
        };
        fd.check_structure()?;
        Ok(fd)
    }

    fn check_structure(&self) -> Result<()> {
        let n = self.faces.len();
        if self.chambers.is_empty() {
            return Err(Error::Consistency("no chambers".into()));
        }
        for i in 0..n {
            let d = self.faces[i].dim;
            if d > self.manifold_dim {
                return Err(Error::Consistency(format!("face {i} exceeds the manifold dimension")));
            }
            if self.category.object(i).dim != d {
                return Err(Error::Consistency(format!("face {i} grading mismatch")));
            }
            if d < self.manifold_dim && !self.chambers.iter().any(|&c| self.up[i].contains(c)) {
                return Err(Error::Consistency(format!("face {i} lies below no chamber")));
            }
        }
        if self.kind != ModelKind::Hyperplane {
            for i in 0..n {
                let d = self.faces[i].dim;
                let mut below = vec![false; d];
                for &m in self.category.incoming(i) {
                    below[self.faces[self.category.morphism(m).source].dim] = true;
                }
                if let Some(k) = below.iter().position(|b| !b) {
                    return Err(Error::NotCellular(format!(
                        "face {} of dimension {d} has no boundary face of dimension {k}",
                        self.faces[i].label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn chambers(&self) -> &[usize] {
        &self.chambers
    }

    pub fn is_chamber(&self, f: usize) -> bool {
        self.faces[f].dim == self.manifold_dim
    }

    pub fn codim(&self, f: usize) -> usize {
        self.manifold_dim - self.faces[f].dim
    }

    /// `f <= g`: some morphism `f -> g` exists, or `f == g`.
    pub fn leq(&self, f: usize, g: usize) -> bool {
        self.up[f].contains(g)
    }

    /// Faces `g` with `f <= g`, in id order.
    pub fn star(&self, f: usize) -> Vec<usize> {
        self.up[f].iter().collect()
    }

    pub fn chambers_above(&self, f: usize) -> Vec<usize> {
        self.up[f].iter().filter(|&g| self.is_chamber(g)).collect()
    }

    pub fn is_separating(&self) -> bool {
        self.sides.is_some()
    }

    /// Number of faces per dimension.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.manifold_dim + 1];
        for f in &self.faces {
            c[f.dim] += 1;
        }
        c
    }

    pub fn sign(&self, f: usize) -> Option<&SignVector> {
        self.faces[f].sign.as_ref()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("face data serializes");
        let obj = v.as_object_mut().unwrap();
        obj.insert("schema_version".into(), crate::SCHEMA_VERSION.into());
        obj.insert("counts".into(), serde_json::to_value(self.counts()).unwrap());
        obj.insert("separating".into(), self.is_separating().into());
        v
    }
}
