use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::complex::{homology, ChainComplex, HomologyResult, SparseMatrix, Trisp};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::models::FaceData;
use crate::salvetti::{salvetti_category, salvetti_cw, two_cell_paths, CellGraphComplex, SalvettiCategory};

/// One edge traversal in a boundary word: `forward` follows the orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

/// A 2-dimensional complex with oriented edges and closed boundary walks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoComplex {
    pub vertex_labels: Vec<String>,
    /// `(tail, head)` per edge.
    pub edges: Vec<(usize, usize)>,
    pub edge_labels: Vec<String>,
    pub faces: Vec<Vec<Step>>,
}

impl TwoComplex {
    pub fn new(
        vertex_labels: Vec<String>,
        edges: Vec<(usize, usize)>,
        edge_labels: Vec<String>,
        faces: Vec<Vec<Step>>,
    ) -> Result<Self> {
        let t = TwoComplex {
            vertex_labels,
            edges,
            edge_labels,
            faces,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.num_vertices();
        if self.edge_labels.len() != self.edges.len() {
            return Err(Error::InvalidCategory("edge label count differs from edge count".into()));
        }
        if self.edges.iter().any(|&(a, b)| a >= nv || b >= nv) {
            return Err(Error::InvalidCategory("edge endpoint out of range".into()));
        }
        for (i, w) in self.faces.iter().enumerate() {
            if w.is_empty() || w.iter().any(|s| s.edge >= self.edges.len()) {
                return Err(Error::InvalidCategory(format!("2-cell {i} has an invalid boundary")));
            }
            for k in 0..w.len() {
                if self.head(w[k]) != self.tail(w[(k + 1) % w.len()]) {
                    return Err(Error::InvalidCategory(format!("boundary of 2-cell {i} is not a closed walk")));
                }
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn tail(&self, s: Step) -> usize {
        let (a, b) = self.edges[s.edge];
        if s.forward {
            a
        } else {
            b
        }
    }

    pub fn head(&self, s: Step) -> usize {
        let (a, b) = self.edges[s.edge];
        if s.forward {
            b
        } else {
            a
        }
    }

    pub fn counts(&self) -> [usize; 3] {
        [self.num_vertices(), self.edges.len(), self.faces.len()]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let d1 = SparseMatrix::from_columns(
            self.num_vertices(),
            self.edges.iter().map(|&(a, b)| vec![(b, 1), (a, -1)]).collect(),
        );
        let d2 = SparseMatrix::from_columns(
            self.edges.len(),
            self.faces
                .iter()
                .map(|w| w.iter().map(|s| (s.edge, if s.forward { 1 } else { -1 })).collect())
                .collect(),
        );
        ChainComplex::new(vec![self.num_vertices(), self.edges.len(), self.faces.len()], vec![d1, d2])
    }

    /// Cellular homology.
    pub fn homology(&self, strategy: Strategy) -> Result<HomologyResult> {
        Ok(homology(&self.chain_complex()?, strategy))
    }

    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.num_vertices()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut n = self.num_vertices();
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                n -= 1;
            }
        }
        n
    }

    /// The 2-skeleton of a regular cell complex whose 2-cells are polygons.
    pub fn from_cw(q: &CellGraphComplex) -> Result<Self> {
        let verts = q.cells_of_dim(0);
        let vpos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edge_cells = q.cells_of_dim(1);
        let epos: BTreeMap<usize, usize> = edge_cells.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let edges = edge_cells
            .iter()
            .map(|&e| {
                let (a, b) = q.cells[e].ends.expect("edges are oriented");
                (vpos[&a], vpos[&b])
            })
            .collect();
        let faces = q
            .cells_of_dim(2)
            .into_iter()
            .map(|f| polygon_walk(q, f, &epos))
            .collect::<Result<Vec<_>>>()?;
        TwoComplex::new(
            verts.iter().map(|&v| q.cells[v].label.clone()).collect(),
            edges,
            edge_cells.iter().map(|&e| q.cells[e].label.clone()).collect(),
            faces,
        )
    }

    /// The 2-skeleton of a trisp: each 2-simplex `[v0 v1 v2]` gives the walk
    /// along `d₂` and `d₀` forward, then `d₁` backward.
    pub fn from_trisp(t: &Trisp) -> Result<Self> {
        let level = |k: usize| t.levels.get(k).map_or(&[][..], |l| l.as_slice());
        let vertex_labels = (0..level(0).len()).map(|i| format!("s{i}")).collect();
        let edges = level(1).iter().map(|s| (s.vertices[0], s.vertices[1])).collect();
        let edge_labels = (0..level(1).len()).map(|i| format!("t{i}")).collect();
        let faces = level(2)
            .iter()
            .map(|s| {
                vec![
                    Step { edge: s.faces[2], forward: true },
                    Step { edge: s.faces[0], forward: true },
                    Step { edge: s.faces[1], forward: false },
                ]
            })
            .collect();
        TwoComplex::new(vertex_labels, edges, edge_labels, faces)
    }

    /// The 1-dimensional Salvetti complex: grade-0 objects as vertices and
    /// grade-1 objects as edges, leaving the chamber the object's own arrow
    /// points to.
    pub fn from_salvetti_graph(sal: &SalvettiCategory) -> Result<Self> {
        if sal.objects.iter().any(|o| o.grade > 1) {
            return Err(Error::Restriction("graph realization needs grades at most 1".into()));
        }
        let verts: Vec<usize> = (0..sal.objects.len()).filter(|&i| sal.objects[i].grade == 0).collect();
        let vpos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        for (i, o) in sal.objects.iter().enumerate().filter(|(_, o)| o.grade == 1) {
            let incoming = sal.category.incoming(i);
            if incoming.len() != 2 {
                return Err(Error::Consistency(format!("edge object {i} has {} ends", incoming.len())));
            }
            let arrow = o.arrow.expect("edge objects carry an arrow");
            let (first, second) = if sal.face_morphisms[incoming[0]] == arrow {
                (incoming[0], incoming[1])
            } else {
                (incoming[1], incoming[0])
            };
            if sal.face_morphisms[first] != arrow {
                return Err(Error::Consistency(format!("edge object {i} has no initial end")));
            }
            let end = |m: usize| vpos[&sal.category.morphism(m).source];
            edges.push((end(first), end(second)));
            labels.push(sal.category.object(i).label.clone());
        }
        TwoComplex::new(
            verts.iter().map(|&v| sal.category.object(v).label.clone()).collect(),
            edges,
            labels,
            Vec::new(),
        )
    }
}

/// Boundary of a polygonal 2-cell as a closed walk, starting at its lowest
/// vertex along the lower-numbered edge.
fn polygon_walk(q: &CellGraphComplex, f: usize, epos: &BTreeMap<usize, usize>) -> Result<Vec<Step>> {
    let edges: Vec<usize> = q.cells[f].subcells.iter().copied().filter(|&j| q.cells[j].dim == 1).collect();
    let fail = || Error::Consistency(format!("2-cell {} is not a polygon", q.cells[f].label));
    let mut walk = Vec::with_capacity(edges.len());
    let mut used = vec![false; edges.len()];
    let start = *q.cells[f].vertices.first().ok_or_else(fail)?;
    let mut at = start;
    for _ in 0..edges.len() {
        let k = (0..edges.len())
            .find(|&k| {
                let (a, b) = q.cells[edges[k]].ends.unwrap();
                !used[k] && (a == at || b == at)
            })
            .ok_or_else(fail)?;
        used[k] = true;
        let (a, b) = q.cells[edges[k]].ends.unwrap();
        let forward = a == at;
        walk.push(Step {
            edge: epos[&edges[k]],
            forward,
        });
        at = if forward { b } else { a };
    }
    if at != start {
        return Err(fail());
    }
    Ok(walk)
}

/// The 2-complex used for the fundamental group of a Salvetti complex: the
/// cellular structure for regular models, a graph for 1-dimensional
/// non-regular ones and the trisp 2-skeleton otherwise.
pub fn salvetti_two_complex(fd: &FaceData, strategy: Strategy) -> Result<TwoComplex> {
    if fd.regular {
        let q = salvetti_cw(fd, strategy)?;
        let mut t = TwoComplex::from_cw(&q)?;
        // Boundary words αβ⁻¹ along the two positive paths of each 2-cell.
        let epos: BTreeMap<usize, usize> = q.cells_of_dim(1).into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        t.faces = two_cell_paths(&q)?
            .into_iter()
            .map(|p| {
                let [a, b] = p.paths;
                a.iter()
                    .map(|e| Step { edge: epos[e], forward: true })
                    .chain(b.iter().rev().map(|e| Step { edge: epos[e], forward: false }))
                    .collect()
            })
            .collect();
        t.validate()?;
        return Ok(t);
    }
    let sal = salvetti_category(fd, strategy)?;
    if fd.manifold_dim <= 1 {
        TwoComplex::from_salvetti_graph(&sal)
    } else {
        TwoComplex::from_trisp(&crate::complex::nerve(&sal.category, strategy)?)
    }
}

/// The oriented 1-skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize, String)>,
}

impl ArrangementGraph {
    pub fn of(t: &TwoComplex) -> Self {
        ArrangementGraph {
            vertices: t.vertex_labels.clone(),
            edges: t
                .edges
                .iter()
                .zip(&t.edge_labels)
                .map(|(&(a, b), l)| (a, b, l.clone()))
                .collect(),
        }
    }

    pub fn to_dot(&self, name: &str) -> String {
        let esc = crate::complex::escape;
        let mut s = String::new();
        writeln!(s, "digraph \"{}\" {{", esc(name)).unwrap();
        for (i, l) in self.vertices.iter().enumerate() {
            writeln!(s, "  v{i} [label=\"{}\"];", esc(l)).unwrap();
        }
        for (a, b, l) in &self.edges {
            writeln!(s, "  v{a} -> v{b} [label=\"{}\"];", esc(l)).unwrap();
        }
        s.push_str("}\n");
        s
    }
}
