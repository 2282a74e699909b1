use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::face_data::{Face, FaceData, LiftData, ModelKind};
use super::feasibility::{self, Constraint, Relation};
use super::hyperplane::{enumerate_sign_vectors, Hyperplane, HyperplaneArrangement};
use super::sign::{Sign, SignVector};
use crate::complex::{AcyclicCategory, Morphism, Object};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::rational::{self, Rational};

/// The `Z^n`-periodic family `{x : normal · x ∈ offset + Z}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Family {
    pub normal: Vec<i64>,
    #[serde(serialize_with = "rational::ser")]
    pub offset: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicModel {
    dim: usize,
    families: Vec<Family>,
}

impl PeriodicModel {
    pub fn new(dim: usize, families: Vec<Family>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidModel("torus dimension must be at least 1".into()));
        }
        let mut keys = Vec::new();
        for (i, f) in families.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(Error::InvalidModel(format!("family {i} has a normal of the wrong length")));
            }
            let g = f.normal.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g == 0 {
                return Err(Error::InvalidModel(format!("family {i} has a zero normal")));
            }
            if g != 1 {
                return Err(Error::InvalidModel(format!("family {i} has a non-primitive normal")));
            }
            if !rational::is_unit_interval(&f.offset) {
                return Err(Error::InvalidModel(format!("family {i} has an offset outside [0, 1)")));
            }
            let flip = f.normal.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
            let key = if flip {
                let o = -&f.offset;
                let o = &o - Rational::from_integer(rational::floor(&o));
                (f.normal.iter().map(|x| -x).collect::<Vec<_>>(), o)
            } else {
                (f.normal.clone(), f.offset.clone())
            };
            if keys.contains(&key) {
                return Err(Error::InvalidModel(format!("family {i} duplicates an earlier family")));
            }
            keys.push(key);
        }
        Ok(PeriodicModel { dim, families })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicOptions {
    pub window_low: i64,
    pub window_high: i64,
}

impl Default for PeriodicOptions {
    fn default() -> Self {
        PeriodicOptions {
            window_low: -1,
            window_high: 2,
        }
    }
}

/// Hyperplanes of every family meeting the closed window, with their family.
pub fn window_arrangement(p: &PeriodicModel, options: &PeriodicOptions) -> Result<(HyperplaneArrangement, Vec<usize>)> {
    let (lo_w, hi_w) = (options.window_low, options.window_high);
    let mut hs = Vec::new();
    let mut family_of = Vec::new();
    for (fi, f) in p.families.iter().enumerate() {
        let lo: i64 = f.normal.iter().map(|&m| (m * lo_w).min(m * hi_w)).sum();
        let hi: i64 = f.normal.iter().map(|&m| (m * lo_w).max(m * hi_w)).sum();
        let first = (rational::int(lo) - &f.offset).ceil().to_integer().to_i64().unwrap();
        let last = rational::floor(&(rational::int(hi) - &f.offset)).to_i64().unwrap();
        for c in first..=last {
            hs.push(Hyperplane::new(
                f.normal.iter().map(|&m| rational::int(m)).collect(),
                &f.offset + rational::int(c),
            ));
            family_of.push(fi);
        }
    }
    Ok((HyperplaneArrangement::new(p.dim, hs)?, family_of))
}

/// Face category of the quotient stratification of the torus.
pub fn periodic_quotient(p: &PeriodicModel, options: &PeriodicOptions, strategy: Strategy) -> Result<FaceData> {
    let n = p.dim;
    if options.window_low >= options.window_high || options.window_low > 0 || options.window_high < 1 {
        return Err(Error::InvalidModel("the window must contain [0, 1]".into()));
    }
    let normals: Vec<Vec<Rational>> = p
        .families
        .iter()
        .map(|f| f.normal.iter().map(|&m| rational::int(m)).collect())
        .collect();
    if rational::rank(&normals) < n {
        return Err(Error::NotCellular(
            "the family normals do not span, so translations along the common direction fix faces".into(),
        ));
    }
    let (window, family_of) = window_arrangement(p, options)?;
    let wfaces = enumerate_sign_vectors(&window, strategy);
    let dims: Vec<usize> = strategy.map(&wfaces, |(s, _)| window.face_dim(s));
    let vertices: Vec<usize> = (0..wfaces.len()).filter(|&i| dims[i] == 0).collect();

    let cube: Vec<Constraint> = (0..n)
        .flat_map(|j| {
            let e: Vec<Rational> = (0..n).map(|k| rational::int((k == j) as i64)).collect();
            [
                Constraint::new(e.clone(), Relation::Ge, Rational::zero()),
                Constraint::le(&e, &rational::int(1)),
            ]
        })
        .collect();
    let relevant: Vec<usize> = strategy
        .map_range(wfaces.len(), |i| {
            let mut cs = window.closure_constraints(&wfaces[i].0);
            cs.extend(cube.iter().cloned());
            feasibility::solve(n, &cs).map(|_| i)
        })
        .into_iter()
        .flatten()
        .collect();

    let (lo, hi) = (rational::int(options.window_low), rational::int(options.window_high));
    let checked: Vec<Result<Vec<Rational>>> = strategy.map(&relevant, |&i| {
        let sign = &wfaces[i].0;
        if !bounded(&window, sign) {
            return Err(Error::WindowInsufficient(format!(
                "face {sign} meets the unit cube but is unbounded in the window arrangement"
            )));
        }
        let vs: Vec<&Vec<Rational>> = vertices
            .iter()
            .filter(|&&v| wfaces[v].0.conforms_to(sign))
            .map(|&v| &wfaces[v].1)
            .collect();
        if vs.iter().any(|x| x.iter().any(|c| c < &lo || c > &hi)) {
            return Err(Error::WindowInsufficient(format!("face {sign} leaves the window")));
        }
        let count = rational::int(vs.len() as i64);
        Ok((0..n)
            .map(|j| vs.iter().map(|x| x[j].clone()).sum::<Rational>() / &count)
            .collect())
    });
    let barycenters: Vec<Vec<Rational>> = checked.into_iter().collect::<Result<_>>()?;

    let mut canonical: Vec<usize> = (0..relevant.len())
        .filter(|&r| barycenters[r].iter().all(rational::is_unit_interval))
        .collect();
    canonical.sort_by(|&a, &b| (dims[relevant[a]], &barycenters[a]).cmp(&(dims[relevant[b]], &barycenters[b])));
    let object_of_bary: HashMap<&Vec<Rational>, usize> =
        canonical.iter().enumerate().map(|(o, &r)| (&barycenters[r], o)).collect();

    let mut lifts = Vec::with_capacity(relevant.len());
    let mut by_sign = HashMap::new();
    let mut by_orbit = HashMap::new();
    for (r, &i) in relevant.iter().enumerate() {
        let shift: Vec<i64> = barycenters[r].iter().map(|c| rational::floor(c).to_i64().unwrap()).collect();
        let reduced: Vec<Rational> = barycenters[r]
            .iter()
            .zip(&shift)
            .map(|(c, &s)| c - rational::int(s))
            .collect();
        let Some(&o) = object_of_bary.get(&reduced) else {
            return Err(Error::WindowInsufficient(format!(
                "face {} has no canonical translate in the window",
                wfaces[i].0
            )));
        };
        if dims[relevant[canonical[o]]] != dims[i] {
            return Err(Error::Consistency("translates of a face differ in dimension".into()));
        }
        by_sign.insert(wfaces[i].0.clone(), lifts.len());
        by_orbit.insert((o, shift.clone()), lifts.len());
        lifts.push((wfaces[i].0.clone(), o, shift));
    }

    let canon_sign: Vec<SignVector> = canonical.iter().map(|&r| wfaces[relevant[r]].0.clone()).collect();
    let mut morphs: Vec<(usize, usize, Vec<i64>)> = Vec::new();
    for (o, f) in canon_sign.iter().enumerate() {
        for (sign, target, shift) in &lifts {
            if sign != f && f.conforms_to(sign) {
                morphs.push((o, *target, shift.clone()));
            }
        }
    }
    morphs.sort();
    let index: BTreeMap<(usize, usize, &[i64]), usize> = morphs
        .iter()
        .enumerate()
        .map(|(i, (s, t, v))| ((*s, *t, v.as_slice()), i))
        .collect();
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); canonical.len()];
    for (i, m) in morphs.iter().enumerate() {
        outgoing[m.0].push(i);
    }
    let mut composition = BTreeMap::new();
    for (a, (s, t, v)) in morphs.iter().enumerate() {
        for &b in &outgoing[*t] {
            let (_, u, w) = &morphs[b];
            let sum: Vec<i64> = v.iter().zip(w).map(|(x, y)| x + y).collect();
            let Some(&c) = index.get(&(*s, *u, sum.as_slice())) else {
                return Err(Error::WindowInsufficient("a composite lift leaves the window".into()));
            };
            composition.insert((a, b), c);
        }
    }

    let top = n;
    let mut per_dim = vec![0usize; n + 1];
    let faces: Vec<Face> = canonical
        .iter()
        .enumerate()
        .map(|(o, &r)| {
            let dim = dims[relevant[r]];
            let k = per_dim[dim];
            per_dim[dim] += 1;
            let mut containing: Vec<usize> = canon_sign[o].zero_set().into_iter().map(|h| family_of[h]).collect();
            containing.dedup();
            Face {
                dim,
                label: label(dim, top, k),
                sample: barycenters[r].clone(),
                containing,
                sign: None,
            }
        })
        .collect();
    let objects = faces
        .iter()
        .map(|f| Object {
            dim: f.dim,
            label: f.label.clone(),
        })
        .collect();
    let morphisms = morphs
        .iter()
        .map(|(s, t, _)| Morphism { source: *s, target: *t })
        .collect();
    let category = AcyclicCategory::new(objects, morphisms, composition);
    let lift_data = LiftData {
        window_low: options.window_low,
        window_high: options.window_high,
        window,
        family_of,
        canonical: canon_sign,
        translations: morphs.into_iter().map(|m| m.2).collect(),
        lifts,
        by_sign,
        by_orbit,
    };
    FaceData::new(ModelKind::Periodic, n, p.families.len(), faces, category, None, Some(lift_data))
}

fn label(dim: usize, top: usize, k: usize) -> String {
    match dim {
        d if d == top => format!("C{k}"),
        0 => format!("v{k}"),
        1 => format!("e{k}"),
        d => format!("f{d}.{k}"),
    }
}

/// Whether the closure of a face has trivial recession cone.
fn bounded(a: &HyperplaneArrangement, sign: &SignVector) -> bool {
    let n = a.dim();
    let cone: Vec<Constraint> = sign
        .0
        .iter()
        .zip(a.hyperplanes())
        .map(|(s, h)| match s {
            Sign::Zero => Constraint::new(h.normal.clone(), Relation::Eq, Rational::zero()),
            Sign::Pos => Constraint::new(h.normal.clone(), Relation::Ge, Rational::zero()),
            Sign::Neg => Constraint::le(&h.normal, &Rational::zero()),
        })
        .collect();
    (0..n).all(|j| {
        [1i64, -1].iter().all(|&s| {
            let mut cs = cone.clone();
            let e: Vec<Rational> = (0..n).map(|k| rational::int(if k == j { s } else { 0 })).collect();
            cs.push(Constraint::new(e, Relation::Ge, rational::int(1)));
            feasibility::solve(n, &cs).is_none()
        })
    })
}
