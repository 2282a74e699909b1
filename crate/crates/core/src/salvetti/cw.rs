use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::category::salvetti_poset;
use super::cells::{Cell, CellGraphComplex};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::models::FaceData;

/// Dual cells `F*` with `dim F* = codim F`, ordered by codimension.
pub fn dual_complex(fd: &FaceData) -> Result<CellGraphComplex> {
    if !fd.regular {
        return Err(Error::Restriction("the dual complex needs a regular face poset".into()));
    }
    let mut order: Vec<usize> = (0..fd.num_faces()).collect();
    order.sort_by_key(|&f| (fd.codim(f), f));
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut cells = Vec::with_capacity(order.len());
    for &f in &order {
        let mut subcells: Vec<usize> = fd.star(f).iter().map(|g| pos[g]).collect();
        subcells.sort_unstable();
        let mut vertices: Vec<usize> = fd.chambers_above(f).iter().map(|c| pos[c]).collect();
        vertices.sort_unstable();
        let ends = if fd.codim(f) == 1 {
            if vertices.len() != 2 {
                return Err(Error::Consistency(format!(
                    "codimension-1 face {} has {} incident chambers",
                    fd.faces[f].label,
                    vertices.len()
                )));
            }
            Some((vertices[0], vertices[1]))
        } else {
            None
        };
        cells.push(Cell {
            dim: fd.codim(f),
            label: format!("{}*", fd.faces[f].label),
            vertices,
            subcells,
            ends,
        });
    }
    CellGraphComplex::new(cells, true)
}

/// Cells `⟨F, C⟩` in Salvetti poset order; edges leave `⟨C, C⟩`.
pub fn salvetti_cw(fd: &FaceData, strategy: Strategy) -> Result<CellGraphComplex> {
    let sp = salvetti_poset(fd, strategy)?;
    let mut cells = Vec::with_capacity(sp.len());
    for (i, &(f, c)) in sp.cells.iter().enumerate() {
        let mut subcells = sp.poset.strictly_below(i);
        subcells.push(i);
        subcells.sort_unstable();
        let vertices: Vec<usize> = subcells.iter().copied().filter(|&j| sp.grades[j] == 0).collect();
        let ends = if sp.grades[i] == 1 {
            let start = sp.index(c, c).expect("chamber cell");
            let other: Vec<usize> = vertices.iter().copied().filter(|&v| v != start).collect();
            if other.len() != 1 || !vertices.contains(&start) {
                return Err(Error::Consistency(format!("edge {} is not a regular 1-cell", sp.poset.label(i))));
            }
            Some((start, other[0]))
        } else {
            None
        };
        cells.push(Cell {
            dim: sp.grades[i],
            label: format!("<{},{}>", fd.faces[f].label, fd.faces[c].label),
            vertices,
            subcells,
            ends,
        });
    }
    CellGraphComplex::new(cells, true)
}

/// Boundary of a 2-cell as two directed edge paths with common ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoCellPaths {
    pub cell: usize,
    pub source: usize,
    pub sink: usize,
    pub paths: [Vec<usize>; 2],
}

/// Splits every 2-cell boundary into two directed paths of equal length.
pub fn two_cell_paths(q: &CellGraphComplex) -> Result<Vec<TwoCellPaths>> {
    q.cells_of_dim(2)
        .into_iter()
        .map(|e| {
            let fail = |why: &str| Error::Consistency(format!("2-cell {}: {why}", q.cells[e].label));
            let edges: Vec<(usize, usize, usize)> = q.cells[e]
                .subcells
                .iter()
                .filter_map(|&j| q.cells[j].ends.map(|(a, b)| (j, a, b)))
                .collect();
            if edges.len() % 2 != 0 {
                return Err(fail("odd number of boundary edges"));
            }
            let mut out: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
            let mut indeg: BTreeMap<usize, usize> = BTreeMap::new();
            for &v in &q.cells[e].vertices {
                out.insert(v, Vec::new());
                indeg.insert(v, 0);
            }
            for &(j, a, b) in &edges {
                out.get_mut(&a).unwrap().push((j, b));
                *indeg.get_mut(&b).unwrap() += 1;
            }
            let sources: Vec<usize> = indeg.iter().filter(|x| *x.1 == 0).map(|x| *x.0).collect();
            let sinks: Vec<usize> = out.iter().filter(|x| x.1.is_empty()).map(|x| *x.0).collect();
            let (&[source], &[sink]) = (sources.as_slice(), sinks.as_slice()) else {
                return Err(fail("boundary does not have one source and one sink"));
            };
            if out[&source].len() != 2 {
                return Err(fail("source does not start two paths"));
            }
            let mut paths: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
            for (k, &(first, next)) in out[&source].iter().enumerate() {
                paths[k].push(first);
                let mut v = next;
                while v != sink {
                    let step = &out[&v];
                    if step.len() != 1 || indeg[&v] != 1 {
                        return Err(fail("boundary branches away from the two paths"));
                    }
                    paths[k].push(step[0].0);
                    v = step[0].1;
                    if paths[k].len() > edges.len() {
                        return Err(fail("boundary contains a directed cycle"));
                    }
                }
            }
            if paths[0].len() + paths[1].len() != edges.len() {
                return Err(fail("boundary has edges off the two paths"));
            }
            if paths[0].len() != paths[1].len() {
                return Err(fail("boundary paths differ in length"));
            }
            Ok(TwoCellPaths {
                cell: e,
                source,
                sink,
                paths,
            })
        })
        .collect()
}
