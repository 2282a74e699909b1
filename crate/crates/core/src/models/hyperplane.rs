use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::face_data::{Face, FaceData, ModelKind, SidePartition};
use super::feasibility::{self, Constraint, Relation};
use super::sign::{Sign, SignVector};
use crate::complex::{AcyclicCategory, Object};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::rational::{self, Rational};

/// Default bound on the number of hyperplanes accepted by [`enumerate_faces`].
pub const DEFAULT_MAX_HYPERPLANES: usize = 12;

/// The hyperplane `normal · x = offset`; its positive side is `normal · x > offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    #[serde(serialize_with = "rational::ser_vec", deserialize_with = "rational::de_vec")]
    pub normal: Vec<Rational>,
    #[serde(serialize_with = "rational::ser", deserialize_with = "rational::de")]
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Hyperplane { normal, offset }
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        Hyperplane::new(normal.iter().map(|&c| rational::int(c)).collect(), rational::int(offset))
    }

    pub fn side(&self, x: &[Rational]) -> Sign {
        Sign::of(&(rational::dot(&self.normal, x) - &self.offset))
    }

    /// Representative scaled so the first nonzero normal entry is 1.
    fn normalized(&self) -> (Vec<Rational>, Rational) {
        let lead = self.normal.iter().find(|c| !c.is_zero()).expect("nonzero normal").clone();
        (
            self.normal.iter().map(|c| c / &lead).collect(),
            &self.offset / &lead,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneArrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl HyperplaneArrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidModel("ambient dimension must be at least 1".into()));
        }
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(Error::InvalidModel(format!(
                    "hyperplane {i} has a normal of length {}, expected {dim}",
                    h.normal.len()
                )));
            }
            if h.normal.iter().all(Zero::is_zero) {
                return Err(Error::InvalidModel(format!("hyperplane {i} has a zero normal")));
            }
        }
        let keys: Vec<_> = hyperplanes.iter().map(Hyperplane::normalized).collect();
        for i in 0..keys.len() {
            for j in 0..i {
                if keys[i] == keys[j] {
                    return Err(Error::InvalidModel(format!("hyperplanes {j} and {i} coincide")));
                }
            }
        }
        Ok(HyperplaneArrangement { dim, hyperplanes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.offset.is_zero())
    }

    pub fn rank(&self) -> usize {
        rational::rank(&self.normals())
    }

    pub fn normals(&self) -> Vec<Vec<Rational>> {
        self.hyperplanes.iter().map(|h| h.normal.clone()).collect()
    }

    pub fn sign_vector(&self, x: &[Rational]) -> SignVector {
        SignVector(self.hyperplanes.iter().map(|h| h.side(x)).collect())
    }

    /// Constraints realizing the first `sigma.len()` entries of a sign vector.
    pub fn constraints(&self, sigma: &[Sign]) -> Vec<Constraint> {
        sigma
            .iter()
            .zip(&self.hyperplanes)
            .map(|(s, h)| match s {
                Sign::Zero => Constraint::new(h.normal.clone(), Relation::Eq, h.offset.clone()),
                Sign::Pos => Constraint::new(h.normal.clone(), Relation::Gt, h.offset.clone()),
                Sign::Neg => Constraint::lt(&h.normal, &h.offset),
            })
            .collect()
    }

    /// Constraints of the closure of the face with sign vector `sigma`.
    pub fn closure_constraints(&self, sigma: &SignVector) -> Vec<Constraint> {
        sigma
            .0
            .iter()
            .zip(&self.hyperplanes)
            .map(|(s, h)| match s {
                Sign::Zero => Constraint::new(h.normal.clone(), Relation::Eq, h.offset.clone()),
                Sign::Pos => Constraint::new(h.normal.clone(), Relation::Ge, h.offset.clone()),
                Sign::Neg => Constraint::le(&h.normal, &h.offset),
            })
            .collect()
    }

    /// Dimension of the face with sign vector `sigma` (assumed feasible).
    pub fn face_dim(&self, sigma: &SignVector) -> usize {
        let rows: Vec<Vec<Rational>> = sigma
            .zero_set()
            .into_iter()
            .map(|i| self.hyperplanes[i].normal.clone())
            .collect();
        self.dim - rational::rank(&rows)
    }
}

/// Realizability of a sign vector with a witness point.
pub fn feasible(sigma: &SignVector, a: &HyperplaneArrangement) -> Option<Vec<Rational>> {
    assert_eq!(sigma.len(), a.len(), "sign vector length mismatch");
    feasibility::solve(a.dim(), &a.constraints(&sigma.0))
}

/// All realizable sign vectors with witnesses, in sign-vector order.
///
/// Prefixes are extended one hyperplane at a time and pruned by feasibility,
/// which yields exactly the realizable vectors of the full `3^k` search.
pub fn enumerate_sign_vectors(
    a: &HyperplaneArrangement,
    strategy: Strategy,
) -> Vec<(SignVector, Vec<Rational>)> {
    let mut frontier: Vec<(Vec<Sign>, Vec<Rational>)> = vec![(Vec::new(), vec![Rational::zero(); a.dim()])];
    for i in 0..a.len() {
        let h = &a.hyperplanes[i];
        let next: Vec<Vec<(Vec<Sign>, Vec<Rational>)>> = strategy.map(&frontier, |(prefix, witness)| {
            let here = h.side(witness);
            [Sign::Neg, Sign::Zero, Sign::Pos]
                .into_iter()
                .filter_map(|s| {
                    let mut p = prefix.clone();
                    p.push(s);
                    if s == here {
                        return Some((p, witness.clone()));
                    }
                    feasibility::solve(a.dim(), &a.constraints(&p)).map(|w| (p, w))
                })
                .collect()
        });
        frontier = next.into_iter().flatten().collect();
    }
    frontier.into_iter().map(|(s, w)| (SignVector(s), w)).collect()
}

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub max_hyperplanes: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_hyperplanes: DEFAULT_MAX_HYPERPLANES,
        }
    }
}

/// Face poset of an affine arrangement.
pub fn enumerate_faces(
    a: &HyperplaneArrangement,
    options: &EnumerationOptions,
    strategy: Strategy,
) -> Result<FaceData> {
    if a.len() > options.max_hyperplanes {
        return Err(Error::BoundExceeded {
            count: a.len(),
            max: options.max_hyperplanes,
        });
    }
    let mut faces: Vec<(usize, SignVector, Vec<Rational>)> = enumerate_sign_vectors(a, strategy)
        .into_iter()
        .map(|(s, w)| (a.face_dim(&s), s, w))
        .collect();
    faces.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    let faces: Vec<Face> = faces
        .into_iter()
        .map(|(dim, sign, sample)| Face {
            dim,
            label: if sign.is_empty() { "R".into() } else { sign.to_string() },
            sample,
            containing: sign.zero_set(),
            sign: Some(sign),
        })
        .collect();
    sign_poset_face_data(ModelKind::Hyperplane, a.dim(), a.len(), faces, |f, g| {
        f.sign.as_ref().unwrap().conforms_to(g.sign.as_ref().unwrap())
    })
}

/// Face data for a model whose faces are ordered by a relation on faces.
pub(crate) fn sign_poset_face_data<P>(
    kind: ModelKind,
    manifold_dim: usize,
    submanifolds: usize,
    faces: Vec<Face>,
    leq: P,
) -> Result<FaceData>
where
    P: Fn(&Face, &Face) -> bool,
{
    let mut pairs = std::collections::BTreeSet::new();
    for (i, f) in faces.iter().enumerate() {
        for (j, g) in faces.iter().enumerate() {
            if i != j && f.dim < g.dim && leq(f, g) {
                pairs.insert((i, j));
            }
        }
    }
    let objects = faces
        .iter()
        .map(|f| Object {
            dim: f.dim,
            label: f.label.clone(),
        })
        .collect();
    let category = AcyclicCategory::from_strict_order(objects, &pairs);
    let chambers: Vec<usize> = (0..faces.len()).filter(|&i| faces[i].dim == manifold_dim).collect();
    let sides = (0..submanifolds)
        .map(|h| {
            let mut part = SidePartition {
                submanifold: h,
                negative: Vec::new(),
                positive: Vec::new(),
            };
            for &c in &chambers {
                match faces[c].sign.as_ref().unwrap().0[h] {
                    Sign::Neg => part.negative.push(c),
                    Sign::Pos => part.positive.push(c),
                    Sign::Zero => unreachable!("chambers avoid every hyperplane"),
                }
            }
            part
        })
        .collect();
    FaceData::new(kind, manifold_dim, submanifolds, faces, category, Some(sides), None)
}

/// Restriction to the span of the normals, in the coordinates `y_j = n_{b_j} · x`
/// for a basis `n_{b_1}, ...` chosen among the normals.
pub fn essentialize(a: &HyperplaneArrangement) -> Result<HyperplaneArrangement> {
    let normals = a.normals();
    let r = rational::rank(&normals);
    if r == 0 {
        return Err(Error::InvalidModel("essentialization needs at least one hyperplane".into()));
    }
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..normals.len() {
        let mut trial: Vec<Vec<Rational>> = basis.iter().map(|&b| normals[b].clone()).collect();
        trial.push(normals[i].clone());
        if rational::rank(&trial) > basis.len() {
            basis.push(i);
        }
    }
    // Solve Σ_j c_j n_{b_j} = n_i through the transposed system.
    let hyperplanes = normals
        .iter()
        .zip(a.hyperplanes())
        .map(|(n, h)| {
            let coeffs = express_in_basis(&basis.iter().map(|&b| normals[b].clone()).collect::<Vec<_>>(), n);
            Hyperplane::new(coeffs, h.offset.clone())
        })
        .collect();
    HyperplaneArrangement::new(r, hyperplanes)
}

fn express_in_basis(basis: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    let k = basis.len();
    let n = v.len();
    // Rows: coordinates; columns: basis vectors, augmented by v.
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let ech = rational::row_echelon(&rows);
    let mut c = vec![Rational::zero(); k];
    for (p, row) in &ech {
        assert!(*p < k, "vector outside the span of the basis");
        c[*p] = row[k].clone();
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cross() -> HyperplaneArrangement {
        HyperplaneArrangement::new(2, vec![Hyperplane::from_ints(&[1, 0], 0), Hyperplane::from_ints(&[0, 1], 0)])
            .unwrap()
    }

    #[test]
    fn feasibility_examples() {
        let a = cross();
        assert_eq!(feasible(&"00".parse().unwrap(), &a), Some(vec![rational::int(0), rational::int(0)]));
        let slab = HyperplaneArrangement::new(1, vec![Hyperplane::from_ints(&[1], 0), Hyperplane::from_ints(&[1], 1)])
            .unwrap();
        assert_eq!(
            feasible(&"+-".parse().unwrap(), &slab),
            Some(vec![Rational::new(1.into(), 2.into())])
        );
        assert_eq!(feasible(&"-+".parse().unwrap(), &slab), None);
    }

    #[test]
    fn duplicate_hyperplanes_rejected() {
        let r = HyperplaneArrangement::new(
            2,
            vec![Hyperplane::from_ints(&[1, 1], 1), Hyperplane::from_ints(&[-2, -2], -2)],
        );
        assert!(matches!(r, Err(Error::InvalidModel(_))));
    }

    #[test]
    fn cross_faces() {
        let fd = enumerate_faces(&cross(), &EnumerationOptions::default(), Strategy::Sequential).unwrap();
        assert_eq!(fd.counts(), vec![1, 4, 4]);
        assert!(fd.regular);
    }

    #[test]
    fn bound_is_enforced() {
        let hs = (0..13).map(|i| Hyperplane::from_ints(&[1], i)).collect();
        let a = HyperplaneArrangement::new(1, hs).unwrap();
        let r = enumerate_faces(&a, &EnumerationOptions::default(), Strategy::Sequential);
        assert!(matches!(r, Err(Error::BoundExceeded { count: 13, max: 12 })));
    }

    #[test]
    fn essentialize_examples() {
        let a = HyperplaneArrangement::new(3, vec![Hyperplane::from_ints(&[1, 0, 0], 0)]).unwrap();
        let e = essentialize(&a).unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(e.hyperplanes()[0], Hyperplane::from_ints(&[1], 0));
        let b = HyperplaneArrangement::new(2, vec![Hyperplane::from_ints(&[1, 0], 0), Hyperplane::from_ints(&[1, 0], 1)])
            .unwrap();
        let e = essentialize(&b).unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(e.len(), 2);
        let empty = HyperplaneArrangement::new(2, vec![]).unwrap();
        assert!(essentialize(&empty).is_err());
    }
}
