use num_traits::Zero;

use super::face_data::{Face, FaceData, ModelKind};
use super::hyperplane::{enumerate_sign_vectors, sign_poset_face_data, EnumerationOptions, HyperplaneArrangement};
use super::sign::SignVector;
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::rational;

/// Great spheres `H ∩ S^l` of a central arrangement in `R^{l+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereModel {
    arrangement: HyperplaneArrangement,
}

impl SphereModel {
    pub fn new(arrangement: HyperplaneArrangement) -> Result<Self> {
        if !arrangement.is_central() {
            return Err(Error::InvalidModel("sphere models need central hyperplanes (offset 0)".into()));
        }
        if arrangement.dim() < 2 {
            return Err(Error::InvalidModel("sphere models live in R^{l+1} with l >= 1".into()));
        }
        let s = SphereModel { arrangement };
        if s.lineality() == 1 && s.arrangement.len() < 2 {
            return Err(Error::InvalidModel(
                "a sphere model with one-dimensional lineality needs at least two great spheres".into(),
            ));
        }
        Ok(s)
    }

    pub fn arrangement(&self) -> &HyperplaneArrangement {
        &self.arrangement
    }

    /// Dimension `l` of the sphere.
    pub fn sphere_dim(&self) -> usize {
        self.arrangement.dim() - 1
    }

    /// Dimension of the common intersection of all hyperplanes.
    pub fn lineality(&self) -> usize {
        self.arrangement.dim() - self.arrangement.rank()
    }
}

/// Face poset of the induced stratification of the sphere.
pub fn sphere_faces(s: &SphereModel, options: &EnumerationOptions, strategy: Strategy) -> Result<FaceData> {
    let a = &s.arrangement;
    if a.len() > options.max_hyperplanes {
        return Err(Error::BoundExceeded {
            count: a.len(),
            max: options.max_hyperplanes,
        });
    }
    let d = s.lineality();
    if d >= 2 {
        return Err(Error::NotCellular(format!(
            "the great spheres share a subsphere of dimension {}",
            d - 1
        )));
    }
    let mut faces: Vec<(usize, SignVector, String, Vec<rational::Rational>)> = enumerate_sign_vectors(a, strategy)
        .into_iter()
        .filter(|(sign, _)| !sign.is_zero())
        .map(|(sign, w)| (a.face_dim(&sign) - 1, sign.clone(), sign.to_string(), w))
        .collect();
    if d == 1 {
        let kernel = rational::kernel(&a.normals(), a.dim());
        let k = kernel.into_iter().next().expect("one-dimensional kernel");
        let zero = SignVector(vec![super::Sign::Zero; a.len()]);
        let minus: Vec<_> = k.iter().map(|x| -x).collect();
        faces.push((0, zero.clone(), "v+".into(), k));
        faces.push((0, zero, "v-".into(), minus));
    }
    faces.sort_by(|x, y| (x.0, &x.1, &x.2).cmp(&(y.0, &y.1, &y.2)));
    let faces: Vec<Face> = faces
        .into_iter()
        .map(|(dim, sign, label, sample)| Face {
            dim,
            label,
            sample,
            containing: sign.zero_set(),
            sign: Some(sign),
        })
        .collect();
    debug_assert!(faces.iter().all(|f| !f.sample.iter().all(Zero::is_zero)));
    sign_poset_face_data(ModelKind::Sphere, s.sphere_dim(), a.len(), faces, |f, g| {
        f.sign.as_ref().unwrap().conforms_to(g.sign.as_ref().unwrap())
    })
}
