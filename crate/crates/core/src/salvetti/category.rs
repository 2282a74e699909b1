use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::action::Action;
use crate::complex::{nerve_homology, AcyclicCategory, HomologyResult, Morphism, Object, Poset};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::models::FaceData;

/// Cells `(F, C)` with `F <= C`, graded by codimension of `F`.
#[derive(Clone, Debug, Serialize)]
pub struct SalvettiPoset {
    pub cells: Vec<(usize, usize)>,
    pub grades: Vec<usize>,
    pub poset: Poset,
    #[serde(skip)]
    index: HashMap<(usize, usize), usize>,
}

impl SalvettiPoset {
    pub fn index(&self, face: usize, chamber: usize) -> Option<usize> {
        self.index.get(&(face, chamber)).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn grade_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.grades.iter().max().map_or(0, |m| m + 1)];
        for &g in &self.grades {
            c[g] += 1;
        }
        c
    }
}

fn faces_by_codim(fd: &FaceData) -> Vec<usize> {
    let mut order: Vec<usize> = (0..fd.num_faces()).collect();
    order.sort_by_key(|&f| (fd.codim(f), f));
    order
}

pub fn salvetti_poset(fd: &FaceData, strategy: Strategy) -> Result<SalvettiPoset> {
    let action = Action::new(fd, strategy)?;
    let mut cells = Vec::new();
    for f in faces_by_codim(fd) {
        for c in fd.chambers_above(f) {
            cells.push((f, c));
        }
    }
    let index: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let below: Vec<Vec<(usize, usize)>> = strategy
        .map_range(cells.len(), |x| {
            let (f1, c1) = cells[x];
            fd.star(f1)
                .into_iter()
                .filter(|&g| g != f1)
                .map(|g| {
                    let d = action.act(f1, g, c1)?;
                    index
                        .get(&(g, d))
                        .map(|&y| (y, x))
                        .ok_or_else(|| Error::Consistency(format!("action result ({g}, {d}) is not a cell")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let relation: BTreeSet<(usize, usize)> = below.into_iter().flatten().collect();
    if !Poset::relation_is_transitive(cells.len(), &relation) {
        return Err(Error::Consistency("Salvetti order is not transitive".into()));
    }
    let grades: Vec<usize> = cells.iter().map(|&(f, _)| fd.codim(f)).collect();
    let labels = cells
        .iter()
        .map(|&(f, c)| format!("[{},{}]", fd.faces[f].label, fd.faces[c].label))
        .collect();
    let poset = Poset::from_relation(labels, grades.iter().map(|&g| Some(g)).collect(), relation)?;
    Ok(SalvettiPoset {
        cells,
        grades,
        poset,
        index,
    })
}

/// An object `(F, α)`: a face with a morphism to a chamber (`None` when `F` is one).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SalvettiObject {
    pub face: usize,
    pub arrow: Option<usize>,
    pub chamber: usize,
    pub grade: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SalvettiCategory {
    pub category: AcyclicCategory,
    pub objects: Vec<SalvettiObject>,
    /// Underlying face morphism of each Salvetti morphism, from the deeper
    /// face to the shallower one.
    pub face_morphisms: Vec<usize>,
}

impl SalvettiCategory {
    pub fn grade_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.objects.iter().map(|o| o.grade + 1).max().unwrap_or(0)];
        for o in &self.objects {
            c[o.grade] += 1;
        }
        c
    }

    pub fn homology(&self, strategy: Strategy) -> Result<HomologyResult> {
        nerve_homology(&self.category, strategy)
    }

    /// True when this category is the poset category of `p` under the
    /// correspondence `(F, α) ↦ (F, target of α)`.
    pub fn matches_poset(&self, p: &SalvettiPoset) -> bool {
        if self.objects.len() != p.len() {
            return false;
        }
        let map: Option<Vec<usize>> = self.objects.iter().map(|o| p.index(o.face, o.chamber)).collect();
        let Some(map) = map else { return false };
        if map.iter().collect::<BTreeSet<_>>().len() != map.len() {
            return false;
        }
        let pairs: BTreeSet<(usize, usize)> = self
            .category
            .morphisms()
            .iter()
            .map(|m| (map[m.source], map[m.target]))
            .collect();
        pairs.len() == self.category.num_morphisms()
            && pairs.len() == p.poset.num_relations()
            && pairs.iter().all(|&(a, b)| p.poset.lt(a, b))
    }

    pub fn to_json(&self, fd: &FaceData) -> serde_json::Value {
        let objects: Vec<serde_json::Value> = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| {
                serde_json::json!({
                    "id": i,
                    "face": o.face,
                    "chamber": o.chamber,
                    "morphism": o.arrow,
                    "grade": o.grade,
                    "label": self.category.object(i).label,
                })
            })
            .collect();
        let morphisms: Vec<serde_json::Value> = self
            .category
            .morphisms()
            .iter()
            .zip(&self.face_morphisms)
            .enumerate()
            .map(|(i, (m, &phi))| {
                serde_json::json!({
                    "id": i,
                    "source": m.source,
                    "target": m.target,
                    "face_morphism": phi,
                    "face_morphism_ends": [fd.category.morphism(phi).source, fd.category.morphism(phi).target],
                })
            })
            .collect();
        serde_json::json!({
            "schema_version": crate::SCHEMA_VERSION,
            "objects": objects,
            "morphisms": morphisms,
            "composition": self.category.composition().iter().map(|(&(f, g), &h)| [f, g, h]).collect::<Vec<_>>(),
            "grade_counts": self.grade_counts(),
        })
    }
}

/// The Salvetti category. Periodic models are built from lifts in the window
/// arrangement and quotiented by deck translations; other regular models go
/// through the Salvetti poset.
pub fn salvetti_category(fd: &FaceData, strategy: Strategy) -> Result<SalvettiCategory> {
    if fd.lifts.is_some() {
        periodic_category(fd)
    } else {
        from_poset(fd, &salvetti_poset(fd, strategy)?)
    }
}

fn from_poset(fd: &FaceData, p: &SalvettiPoset) -> Result<SalvettiCategory> {
    let category = p.poset.to_category();
    let objects = p
        .cells
        .iter()
        .map(|&(f, c)| SalvettiObject {
            face: f,
            arrow: if f == c { None } else { Some(fd.category.hom(f, c)[0]) },
            chamber: c,
            grade: fd.codim(f),
        })
        .collect::<Vec<_>>();
    let face_morphisms = category
        .morphisms()
        .iter()
        .map(|m| fd.category.hom(objects[m.target].face, objects[m.source].face)[0])
        .collect();
    category.ensure_valid()?;
    Ok(SalvettiCategory {
        category,
        objects,
        face_morphisms,
    })
}

fn periodic_category(fd: &FaceData) -> Result<SalvettiCategory> {
    let lifts = fd.lifts.as_ref().unwrap();
    let cat = &fd.category;
    let mut objects = Vec::new();
    for f in faces_by_codim(fd) {
        if fd.is_chamber(f) {
            objects.push(SalvettiObject {
                face: f,
                arrow: None,
                chamber: f,
                grade: 0,
            });
            continue;
        }
        for &m in cat.outgoing(f) {
            let t = cat.morphism(m).target;
            if fd.is_chamber(t) {
                objects.push(SalvettiObject {
                    face: f,
                    arrow: Some(m),
                    chamber: t,
                    grade: fd.codim(f),
                });
            }
        }
    }
    let index: HashMap<(usize, Option<usize>), usize> =
        objects.iter().enumerate().map(|(i, o)| ((o.face, o.arrow), i)).collect();
    let by_lift: HashMap<(usize, usize, Vec<i64>), usize> = cat
        .morphisms()
        .iter()
        .enumerate()
        .map(|(m, mo)| ((mo.source, mo.target, lifts.translations[m].clone()), m))
        .collect();

    // (source object, target object, face morphism)
    let mut morphs: Vec<(usize, usize, usize)> = Vec::new();
    for (y, obj) in objects.iter().enumerate() {
        let chamber_lift = match obj.arrow {
            None => &lifts.canonical[obj.face],
            Some(a) => lifts.target_lift(fd, a),
        };
        for &phi in cat.outgoing(obj.face) {
            let g = cat.morphism(phi).target;
            let u = &lifts.translations[phi];
            let composed = lifts.target_lift(fd, phi).compose(chamber_lift);
            let (d, w) = lifts.identify(&composed).ok_or_else(|| {
                Error::WindowInsufficient(format!("composite {composed} lies outside the validated window"))
            })?;
            if !fd.is_chamber(d) {
                return Err(Error::Consistency(format!("lift composite {composed} is not a chamber")));
            }
            let rel: Vec<i64> = w.iter().zip(u).map(|(a, b)| a - b).collect();
            let beta = if fd.is_chamber(g) {
                if d != g || rel.iter().any(|&x| x != 0) {
                    return Err(Error::Consistency("chamber lift moved under composition".into()));
                }
                None
            } else {
                Some(*by_lift.get(&(g, d, rel)).ok_or_else(|| {
                    Error::Consistency(format!(
                        "no face morphism from {} to the composite chamber",
                        fd.faces[g].label
                    ))
                })?)
            };
            morphs.push((index[&(g, beta)], y, phi));
        }
    }
    morphs.sort();
    let key: HashMap<(usize, usize), usize> = morphs.iter().enumerate().map(|(i, &(_, y, phi))| ((y, phi), i)).collect();
    let mut composition = BTreeMap::new();
    for (i, &(x, y, phi1)) in morphs.iter().enumerate() {
        for &(j_src, z, phi2) in morphs.iter().filter(|m| m.0 == y) {
            debug_assert_eq!(j_src, y);
            let j = key[&(z, phi2)];
            let phi = cat
                .compose(phi2, phi1)
                .ok_or_else(|| Error::Consistency("face morphisms do not compose".into()))?;
            let h = *key
                .get(&(z, phi))
                .ok_or_else(|| Error::Consistency("Salvetti composite is missing".into()))?;
            if morphs[h].0 != x {
                return Err(Error::Consistency("Salvetti composite has the wrong source".into()));
            }
            composition.insert((i, j), h);
        }
    }
    let labels: Vec<Object> = objects
        .iter()
        .map(|o| {
            let t = o.arrow.map_or_else(Vec::new, |a| lifts.translations[a].clone());
            let shift = if t.iter().all(|&x| x == 0) {
                String::new()
            } else {
                format!("{t:?}")
            };
            Object {
                dim: o.grade,
                label: format!("[{},{}{}]", fd.faces[o.face].label, fd.faces[o.chamber].label, shift),
            }
        })
        .collect();
    let category = AcyclicCategory::new(
        labels,
        morphs.iter().map(|&(s, t, _)| Morphism { source: s, target: t }).collect(),
        composition,
    );
    category.ensure_valid()?;
    Ok(SalvettiCategory {
        category,
        objects,
        face_morphisms: morphs.iter().map(|m| m.2).collect(),
    })
}
