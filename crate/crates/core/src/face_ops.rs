//! Separation sets, chamber distance, local projections and the face actions
//! `F∘C` (nearest chamber) and `F∗C` (farthest chamber).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::complex::{AcyclicCategory, Morphism, Object};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::models::{FaceData, SignVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationSet {
    pub submanifolds: Vec<usize>,
}

impl SeparationSet {
    pub fn distance(&self) -> usize {
        self.submanifolds.len()
    }
}

/// π_F-classes of chambers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalClass {
    pub face: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl LocalClass {
    pub fn block_of(&self, chamber: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&chamber))
    }
}

/// Precomputed side data of a separated face poset.
pub struct FaceOps<'a> {
    fd: &'a FaceData,
    /// Positive sides per chamber.
    sides: HashMap<usize, BitSet>,
    /// Codimension-1 faces with their two chambers.
    walls: Vec<(usize, usize, usize)>,
    containing: Vec<BitSet>,
}

impl<'a> FaceOps<'a> {
    pub fn new(fd: &'a FaceData) -> Result<Self> {
        let partitions = fd.sides.as_ref().ok_or_else(|| {
            Error::Restriction("separation data needs every submanifold to separate".into())
        })?;
        if !fd.regular {
            return Err(Error::Restriction("face actions need a regular face poset".into()));
        }
        let m = fd.submanifolds;
        let mut sides: HashMap<usize, BitSet> = fd.chambers().iter().map(|&c| (c, BitSet::new(m))).collect();
        for p in partitions {
            for &c in &p.positive {
                sides.get_mut(&c).unwrap().insert(p.submanifold);
            }
        }
        let mut walls = Vec::new();
        for f in 0..fd.num_faces() {
            if fd.codim(f) != 1 {
                continue;
            }
            let cs = fd.chambers_above(f);
            if cs.len() != 2 {
                return Err(Error::Consistency(format!(
                    "codimension-1 face {} has {} incident chambers",
                    fd.faces[f].label,
                    cs.len()
                )));
            }
            walls.push((f, cs[0], cs[1]));
        }
        let containing = fd
            .faces
            .iter()
            .map(|f| {
                let mut b = BitSet::new(m);
                for &i in &f.containing {
                    b.insert(i);
                }
                b
            })
            .collect();
        Ok(FaceOps {
            fd,
            sides,
            walls,
            containing,
        })
    }

    pub fn face_data(&self) -> &FaceData {
        self.fd
    }

    fn chamber_sides(&self, c: usize) -> Result<&BitSet> {
        self.sides
            .get(&c)
            .ok_or_else(|| Error::InvalidModel(format!("face {c} is not a chamber")))
    }

    pub fn separation(&self, c: usize, d: usize) -> Result<SeparationSet> {
        let x = self.chamber_sides(c)?.xor(self.chamber_sides(d)?);
        Ok(SeparationSet {
            submanifolds: x.iter().collect(),
        })
    }

    pub fn distance(&self, c: usize, d: usize) -> Result<usize> {
        Ok(self.chamber_sides(c)?.xor(self.chamber_sides(d)?).count())
    }

    /// Components of the crossing graph restricted to walls avoiding `A_F`.
    pub fn local_class(&self, f: usize) -> LocalClass {
        let chambers = self.fd.chambers();
        let pos: BTreeMap<usize, usize> = chambers.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut parent: Vec<usize> = (0..chambers.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let af = &self.containing[f];
        for &(g, a, b) in &self.walls {
            if self.containing[g].iter().any(|i| af.contains(i)) {
                continue;
            }
            let (ra, rb) = (find(&mut parent, pos[&a]), find(&mut parent, pos[&b]));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &c) in chambers.iter().enumerate() {
            let r = find(&mut parent, i);
            blocks.entry(r).or_default().push(c);
        }
        LocalClass {
            face: f,
            blocks: blocks.into_values().collect(),
        }
    }

    /// The chamber above `f` in the π_F-class of `c` nearest to `c`.
    pub fn face_action(&self, f: usize, c: usize) -> Result<usize> {
        self.chamber_sides(c)?;
        let classes = self.local_class(f);
        self.face_action_with(&classes, f, c)
    }

    fn face_action_with(&self, classes: &LocalClass, f: usize, c: usize) -> Result<usize> {
        let block = &classes.blocks[classes.block_of(c).expect("chamber belongs to a block")];
        let candidates: Vec<usize> = block.iter().copied().filter(|&d| self.fd.leq(f, d)).collect();
        self.extreme(f, c, &candidates, false)
    }

    /// The chamber above `f` farthest from `c`.
    pub fn far_action(&self, f: usize, c: usize) -> Result<usize> {
        self.chamber_sides(c)?;
        let candidates = self.fd.chambers_above(f);
        self.extreme(f, c, &candidates, true)
    }

    fn extreme(&self, f: usize, c: usize, candidates: &[usize], farthest: bool) -> Result<usize> {
        let scored: Vec<(usize, usize)> = candidates
            .iter()
            .map(|&d| Ok((self.distance(c, d)?, d)))
            .collect::<Result<_>>()?;
        let best = if farthest {
            scored.iter().map(|s| s.0).max()
        } else {
            scored.iter().map(|s| s.0).min()
        };
        let Some(best) = best else {
            return Err(Error::ActionMissing { face: f, chamber: c });
        };
        let winners: Vec<usize> = scored.iter().filter(|s| s.0 == best).map(|s| s.1).collect();
        if winners.len() != 1 {
            return Err(Error::ActionNotUnique {
                face: f,
                chamber: c,
                candidates: winners,
            });
        }
        Ok(winners[0])
    }

    /// `table[f][i]` is `f ∘ chambers()[i]`.
    pub fn action_table(&self, strategy: Strategy) -> Result<Vec<Vec<usize>>> {
        let chambers = self.fd.chambers();
        strategy
            .map_range(self.fd.num_faces(), |f| {
                let classes = self.local_class(f);
                chambers
                    .iter()
                    .map(|&c| self.face_action_with(&classes, f, c))
                    .collect::<Result<Vec<_>>>()
            })
            .into_iter()
            .collect()
    }
}

pub fn separation(fd: &FaceData, c: usize, d: usize) -> Result<SeparationSet> {
    FaceOps::new(fd)?.separation(c, d)
}

pub fn local_class(fd: &FaceData, f: usize) -> Result<LocalClass> {
    Ok(FaceOps::new(fd)?.local_class(f))
}

pub fn face_action(fd: &FaceData, f: usize, c: usize) -> Result<usize> {
    FaceOps::new(fd)?.face_action(f, c)
}

pub fn far_action(fd: &FaceData, f: usize, c: usize) -> Result<usize> {
    FaceOps::new(fd)?.far_action(f, c)
}

/// The comma category of morphisms out of a face.
#[derive(Clone, Debug, Serialize)]
pub struct LocalCategory {
    pub face: usize,
    pub category: AcyclicCategory,
    /// Underlying face morphism of each object; `None` for the identity.
    pub arrows: Vec<Option<usize>>,
    /// Target face of each object.
    pub targets: Vec<usize>,
    /// Local submanifolds (window hyperplanes for periodic models).
    pub local_submanifolds: Vec<usize>,
    /// Sign of each object on the local submanifolds.
    pub signs: Vec<SignVector>,
}

impl LocalCategory {
    pub fn object_of(&self, arrow: Option<usize>) -> Option<usize> {
        self.arrows.iter().position(|&a| a == arrow)
    }

    pub fn is_chamber(&self, fd: &FaceData, object: usize) -> bool {
        fd.is_chamber(self.targets[object])
    }
}

pub fn local_category(fd: &FaceData, f: usize) -> LocalCategory {
    let cat = &fd.category;
    let mut arrows = vec![None];
    arrows.extend(cat.outgoing(f).iter().map(|&m| Some(m)));
    let targets: Vec<usize> = arrows
        .iter()
        .map(|a| a.map_or(f, |m| cat.morphism(m).target))
        .collect();
    let index: HashMap<Option<usize>, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let then = |a: Option<usize>, mu: usize| -> Option<usize> {
        match a {
            None => Some(mu),
            Some(a) => Some(cat.compose(a, mu).expect("composable")),
        }
    };
    let mut morphs: Vec<(usize, usize, usize)> = Vec::new();
    for (x, &a) in arrows.iter().enumerate() {
        for &mu in cat.outgoing(targets[x]) {
            morphs.push((x, index[&then(a, mu)], mu));
        }
    }
    morphs.sort();
    let by_key: HashMap<(usize, usize), usize> =
        morphs.iter().enumerate().map(|(i, &(x, _, mu))| ((x, mu), i)).collect();
    let mut composition = BTreeMap::new();
    for (i, &(x, _, mu)) in morphs.iter().enumerate() {
        let mid = cat.morphism(mu).target;
        for (j, &(y, _, nu)) in morphs.iter().enumerate() {
            if y == index[&then(arrows[x], mu)] && cat.morphism(nu).source == mid {
                let c = cat.compose(mu, nu).expect("composable");
                composition.insert((i, j), by_key[&(x, c)]);
            }
        }
    }
    let objects = targets
        .iter()
        .map(|&t| Object {
            dim: fd.faces[t].dim,
            label: fd.faces[t].label.clone(),
        })
        .collect();
    let morphisms = morphs
        .iter()
        .map(|&(s, t, _)| Morphism { source: s, target: t })
        .collect();
    let category = AcyclicCategory::new(objects, morphisms, composition);
    let (local_submanifolds, signs) = match &fd.lifts {
        Some(l) => {
            let hs = l.local_hyperplanes(f);
            let signs = arrows
                .iter()
                .map(|a| match a {
                    None => l.canonical[f].restrict(&hs),
                    Some(m) => l.target_lift(fd, *m).restrict(&hs),
                })
                .collect();
            (hs, signs)
        }
        None => {
            let hs = fd.faces[f].containing.clone();
            let signs = targets
                .iter()
                .map(|&t| fd.sign(t).expect("sign vectors").restrict(&hs))
                .collect();
            (hs, signs)
        }
    };
    LocalCategory {
        face: f,
        category,
        arrows,
        targets,
        local_submanifolds,
        signs,
    }
}
