use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::action::Action;
use super::category::salvetti_poset;
use crate::complex::{nerve_homology, Poset};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::face_ops::{local_category, LocalCategory};
use crate::models::FaceData;

#[derive(Clone, Debug, Serialize)]
pub struct PsiIotaReport {
    /// `psi[i]` is the face underlying Salvetti cell `i`.
    pub psi: Vec<usize>,
    /// `iota[k][f]` is the Salvetti cell `[f, f∘C]` for the `k`-th chamber `C`.
    pub iota: Vec<Vec<usize>>,
    /// Size of `ψ⁻¹(F*)` per face.
    pub fibres: Vec<usize>,
    pub psi_iota_identity: bool,
    pub images_cover: bool,
    pub vertex_bijection: bool,
    pub cellular: bool,
}

impl PsiIotaReport {
    pub fn ok(&self) -> bool {
        self.psi_iota_identity && self.images_cover && self.vertex_bijection && self.cellular
    }
}

/// Builds ψ and every ι_C and checks their defining identities.
pub fn psi_iota(fd: &FaceData, strategy: Strategy) -> Result<PsiIotaReport> {
    let sp = salvetti_poset(fd, strategy)?;
    let action = Action::new(fd, strategy)?;
    let psi: Vec<usize> = sp.cells.iter().map(|c| c.0).collect();
    let iota: Vec<Vec<usize>> = fd
        .chambers()
        .iter()
        .map(|&c| {
            (0..fd.num_faces())
                .map(|f| {
                    let d = action.act(f, f, c)?;
                    sp.index(f, d)
                        .ok_or_else(|| Error::Consistency(format!("[{f}, {d}] is not a Salvetti cell")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut fibres = vec![0; fd.num_faces()];
    for &f in &psi {
        fibres[f] += 1;
    }
    let psi_iota_identity = iota.iter().all(|i| (0..fd.num_faces()).all(|f| psi[i[f]] == f));
    let covered: BTreeSet<usize> = iota.iter().flatten().copied().collect();
    let images_cover = covered.len() == sp.len();
    let vertex_cells: Vec<usize> = (0..sp.len()).filter(|&i| sp.grades[i] == 0).collect();
    let vertex_images: BTreeSet<usize> = vertex_cells.iter().map(|&i| psi[i]).collect();
    let vertex_bijection = vertex_images.len() == vertex_cells.len()
        && vertex_images.iter().copied().eq(fd.chambers().iter().copied());
    // ψ sends closures into closures; ι_C does too.
    let psi_cellular = (0..sp.len()).all(|i| sp.poset.strictly_below(i).iter().all(|&j| fd.leq(psi[i], psi[j])));
    let iota_cellular = iota.iter().all(|img| {
        (0..fd.num_faces()).all(|f| {
            fd.star(f)
                .into_iter()
                .filter(|&g| g != f)
                .all(|g| sp.poset.lt(img[g], img[f]))
        })
    });
    Ok(PsiIotaReport {
        psi,
        iota,
        fibres,
        psi_iota_identity,
        images_cover,
        vertex_bijection,
        cellular: psi_cellular && iota_cellular,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedReport {
    pub bounded: Vec<usize>,
    pub unbounded: Vec<usize>,
}

/// Classifies chambers by the homology of their links: a sphere `S^{l−1}`
/// means bounded, a ball means unbounded.
pub fn bounded_chambers(fd: &FaceData, strategy: Strategy) -> Result<BoundedReport> {
    if !fd.regular {
        return Err(Error::Restriction("link classification needs a regular face poset".into()));
    }
    let l = fd.manifold_dim;
    let verdicts = strategy.map(fd.chambers(), |&c| -> Result<bool> {
        let below: Vec<usize> = (0..fd.num_faces()).filter(|&f| f != c && fd.leq(f, c)).collect();
        if below.is_empty() {
            // The chamber is the whole ambient space.
            return Ok(l == 0);
        }
        let rel = below.iter().enumerate().flat_map(|(i, &a)| {
            below
                .iter()
                .enumerate()
                .filter(move |&(_, &b)| a != b && fd.leq(a, b))
                .map(move |(j, _)| (i, j))
        });
        let labels = below.iter().map(|&f| fd.faces[f].label.clone()).collect();
        let link = Poset::from_relation(labels, vec![None; below.len()], rel)?;
        let h = nerve_homology(&link.to_category(), strategy)?;
        let mut reduced = h.betti.clone();
        reduced[0] -= 1;
        let ball = reduced.iter().all(|&b| b == 0);
        let sphere = l >= 1 && (0..reduced.len()).all(|k| reduced[k] == usize::from(k == l - 1));
        if !h.is_torsion_free() || ball == sphere {
            return Err(Error::Consistency(format!(
                "link of chamber {} is neither a ball nor a sphere: betti {:?}",
                fd.faces[c].label, h.betti
            )));
        }
        Ok(sphere)
    });
    let mut report = BoundedReport {
        bounded: Vec::new(),
        unbounded: Vec::new(),
    };
    for (&c, v) in fd.chambers().iter().zip(verdicts) {
        if v? {
            report.bounded.push(c);
        } else {
            report.unbounded.push(c);
        }
    }
    Ok(report)
}

/// Local Salvetti poset of a comma category: pairs `(x, y)` with `y` a chamber
/// object above `x`, ordered through local sign composition.
struct LocalSalvetti {
    cells: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    relation: BTreeSet<(usize, usize)>,
}

fn local_salvetti(fd: &FaceData, lc: &LocalCategory) -> Result<LocalSalvetti> {
    let cat = &lc.category;
    if !cat.is_poset() {
        return Err(Error::Consistency(format!(
            "local category at {} is not a poset",
            fd.faces[lc.face].label
        )));
    }
    let n = cat.num_objects();
    let lt = |a: usize, b: usize| !cat.hom(a, b).is_empty();
    let le = |a: usize, b: usize| a == b || lt(a, b);
    let mut cells = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lc.is_chamber(fd, y) && le(x, y) {
                cells.push((x, y));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut relation = BTreeSet::new();
    for (a, &(x2, y2)) in cells.iter().enumerate() {
        for (b, &(x1, y1)) in cells.iter().enumerate() {
            if lt(x1, x2) && lc.signs[x2].compose(&lc.signs[y1]) == lc.signs[y2] {
                relation.insert((a, b));
            }
        }
    }
    Ok(LocalSalvetti {
        cells,
        index,
        relation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub face: usize,
    pub star_face: usize,
    /// Face morphisms along which the embedding was checked.
    pub morphisms: Vec<Option<usize>>,
    pub source_objects: usize,
    pub target_objects: usize,
    pub source_morphisms: usize,
    pub target_morphisms: usize,
    pub injective: bool,
    pub order_preserving: bool,
    pub order_reflecting: bool,
}

impl EmbeddingReport {
    pub fn ok(&self) -> bool {
        self.injective && self.order_preserving && self.order_reflecting
    }
}

/// Checks that the local Salvetti poset at `star_face` embeds into the one at
/// `face` along every face morphism `face -> star_face`.
pub fn local_embedding_check(fd: &FaceData, face: usize, star_face: usize) -> Result<EmbeddingReport> {
    if face >= fd.num_faces() || star_face >= fd.num_faces() || !fd.leq(face, star_face) {
        return Err(Error::InvalidModel(format!("face {face} is not below face {star_face}")));
    }
    let big = local_category(fd, face);
    let small = local_category(fd, star_face);
    let sb = local_salvetti(fd, &big)?;
    let ss = local_salvetti(fd, &small)?;
    let morphisms: Vec<Option<usize>> = if face == star_face {
        vec![None]
    } else {
        fd.category.hom(face, star_face).into_iter().map(Some).collect()
    };
    let mut injective = true;
    let mut order_preserving = true;
    let mut order_reflecting = true;
    for &mu in &morphisms {
        let object_map: Vec<usize> = small
            .arrows
            .iter()
            .map(|&a| {
                let arrow = match (mu, a) {
                    (None, a) => a,
                    (Some(m), None) => Some(m),
                    (Some(m), Some(a)) => Some(fd.category.compose(m, a).expect("composable")),
                };
                big.object_of(arrow).expect("composite arrow is an object")
            })
            .collect();
        let cell_map: Vec<Option<usize>> = ss
            .cells
            .iter()
            .map(|&(x, y)| sb.index.get(&(object_map[x], object_map[y])).copied())
            .collect();
        if cell_map.iter().any(Option::is_none) {
            injective = false;
            continue;
        }
        let cell_map: Vec<usize> = cell_map.into_iter().flatten().collect();
        injective &= cell_map.iter().collect::<BTreeSet<_>>().len() == cell_map.len();
        for a in 0..ss.cells.len() {
            for b in 0..ss.cells.len() {
                let here = ss.relation.contains(&(a, b));
                let there = sb.relation.contains(&(cell_map[a], cell_map[b]));
                order_preserving &= !here || there;
                order_reflecting &= here || !there;
            }
        }
    }
    Ok(EmbeddingReport {
        face,
        star_face,
        morphisms,
        source_objects: ss.cells.len(),
        target_objects: sb.cells.len(),
        source_morphisms: ss.relation.len(),
        target_morphisms: sb.relation.len(),
        injective,
        order_preserving,
        order_reflecting,
    })
}

