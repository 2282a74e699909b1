//! Metrical-hemisphere checks (QMH, LMH, MH) on cell complexes.
//!
//! Lower witnesses `ω` may be non-unique; choices for a pair `(v, e)` are
//! independent of every other pair, so an exhaustive search for a compatible
//! assignment reduces to intersecting candidate sets per pair.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::salvetti::CellGraphComplex;

const INF: usize = usize::MAX / 4;

/// All-pairs distances in the 1-skeleton of a set of cells.
struct Metric {
    pos: BTreeMap<usize, usize>,
    d: Vec<Vec<usize>>,
}

impl Metric {
    fn new(vertices: &[usize], edges: impl Iterator<Item = (usize, usize)>) -> Metric {
        let pos: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for (a, b) in edges {
            adj[pos[&a]].push(pos[&b]);
            adj[pos[&b]].push(pos[&a]);
        }
        let d = (0..vertices.len())
            .map(|s| {
                let mut dist = vec![INF; vertices.len()];
                dist[s] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(x) = queue.pop_front() {
                    for &y in &adj[x] {
                        if dist[y] == INF {
                            dist[y] = dist[x] + 1;
                            queue.push_back(y);
                        }
                    }
                }
                dist
            })
            .collect();
        Metric { pos, d }
    }

    fn global(q: &CellGraphComplex) -> Metric {
        Metric::new(&q.cells_of_dim(0), q.edges().into_iter().map(|(_, a, b)| (a, b)))
    }

    fn local(q: &CellGraphComplex, cell: usize) -> Metric {
        let c = &q.cells[cell];
        let edges = c.subcells.iter().filter_map(|&j| q.cells[j].ends);
        Metric::new(&c.vertices, edges)
    }

    fn dist(&self, a: usize, b: usize) -> usize {
        self.d[self.pos[&a]][self.pos[&b]]
    }

    /// Minimizers, and the farthest vertex satisfying the hemisphere
    /// condition or, failing that, a breaking `(w, u)` per maximizer.
    fn extremes(&self, v: usize, verts: &[usize]) -> Extremes {
        let ds: Vec<usize> = verts.iter().map(|&u| self.dist(v, u)).collect();
        let lo = *ds.iter().min().expect("cells have vertices");
        let hi = *ds.iter().max().unwrap();
        let lower = verts.iter().zip(&ds).filter(|x| *x.1 == lo).map(|x| *x.0).collect();
        let mut breakers = Vec::new();
        let mut upper = None;
        for (&w, &dw) in verts.iter().zip(&ds) {
            if dw != hi {
                continue;
            }
            match verts.iter().find(|&&u| self.dist(v, u).saturating_add(self.dist(u, w)) != dw) {
                Some(&u) => breakers.push((w, u)),
                None => {
                    upper.get_or_insert(w);
                }
            }
        }
        Extremes { lower, upper, breakers }
    }
}

struct Extremes {
    lower: BTreeSet<usize>,
    upper: Option<usize>,
    breakers: Vec<(usize, usize)>,
}

/// Shortest edge-path length between two 0-cells; `None` when disconnected.
pub fn graph_distance(q: &CellGraphComplex, v: usize, w: usize) -> Option<usize> {
    let m = Metric::global(q);
    if !m.pos.contains_key(&v) || !m.pos.contains_key(&w) {
        return None;
    }
    Some(m.dist(v, w)).filter(|&d| d < INF)
}

/// Bipartiteness of the 1-skeleton.
pub fn even_circuits(q: &CellGraphComplex) -> bool {
    let verts = q.cells_of_dim(0);
    let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); verts.len()];
    for (_, a, b) in q.edges() {
        if a == b {
            return false;
        }
        adj[pos[&a]].push(pos[&b]);
        adj[pos[&b]].push(pos[&a]);
    }
    let mut colour = vec![None; verts.len()];
    for s in 0..verts.len() {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let c = colour[x].unwrap();
            for &y in &adj[x] {
                match colour[y] {
                    None => {
                        colour[y] = Some(!c);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == c => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertex: usize,
    pub cell: usize,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Lower,
    Upper,
}

/// A re-checkable reason for a failed condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Certificate {
    /// No farthest vertex of `cell` satisfies the hemisphere condition; each
    /// maximizer `w` is paired with a `u` where `d(v,w) != d(v,u) + d(u,w)`.
    /// `metric` is the cell whose 1-skeleton measures distance, if local.
    Hemisphere {
        vertex: usize,
        cell: usize,
        metric: Option<usize>,
        breakers: Vec<(usize, usize)>,
    },
    /// Witness candidates for `(vertex, cell)` under the listed metrics
    /// (`None` is the global one) have empty intersection.
    Incompatible {
        vertex: usize,
        cell: usize,
        bound: Bound,
        metrics: Vec<Option<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MhReport {
    pub qmh: bool,
    pub lmh: bool,
    pub mh: bool,
    pub bipartite: bool,
    /// Global witnesses; consistent with every local witness when `mh`.
    pub witnesses: Vec<Witness>,
    pub certificates: Vec<Certificate>,
}

fn require_regular(q: &CellGraphComplex) -> Result<()> {
    if !q.regular {
        return Err(Error::Restriction("metrical-hemisphere checks need a regular complex".into()));
    }
    q.validate()
}

struct Global {
    qmh: bool,
    lower: BTreeMap<(usize, usize), BTreeSet<usize>>,
    upper: BTreeMap<(usize, usize), usize>,
    certificates: Vec<Certificate>,
}

fn global_pass(q: &CellGraphComplex, strategy: Strategy) -> Global {
    let m = Metric::global(q);
    let verts = q.cells_of_dim(0);
    let rows = strategy.map_range(q.len(), |e| {
        verts
            .iter()
            .map(|&v| (v, m.extremes(v, &q.cells[e].vertices)))
            .collect::<Vec<_>>()
    });
    let mut g = Global {
        qmh: true,
        lower: BTreeMap::new(),
        upper: BTreeMap::new(),
        certificates: Vec::new(),
    };
    for (e, row) in rows.into_iter().enumerate() {
        for (v, x) in row {
            match x.upper {
                Some(w) => {
                    g.upper.insert((v, e), w);
                }
                None => {
                    g.qmh = false;
                    g.certificates.push(Certificate::Hemisphere {
                        vertex: v,
                        cell: e,
                        metric: None,
                        breakers: x.breakers,
                    });
                }
            }
            g.lower.insert((v, e), x.lower);
        }
    }
    g
}

fn witnesses(
    lower: &BTreeMap<(usize, usize), BTreeSet<usize>>,
    upper: &BTreeMap<(usize, usize), usize>,
) -> Vec<Witness> {
    lower
        .iter()
        .filter_map(|(&(v, e), lo)| {
            upper.get(&(v, e)).map(|&up| Witness {
                vertex: v,
                cell: e,
                lower: *lo.iter().next().expect("nonempty"),
                upper: up,
            })
        })
        .collect()
}

/// QMH only; `lmh` and `mh` are reported false.
pub fn check_qmh(q: &CellGraphComplex, strategy: Strategy) -> Result<MhReport> {
    require_regular(q)?;
    let g = global_pass(q, strategy);
    Ok(MhReport {
        qmh: g.qmh,
        lmh: false,
        mh: false,
        bipartite: even_circuits(q),
        witnesses: witnesses(&g.lower, &g.upper),
        certificates: g.certificates,
    })
}

type LocalSets = (BTreeSet<usize>, Option<usize>);

pub fn check_lmh_mh(q: &CellGraphComplex, strategy: Strategy) -> Result<MhReport> {
    require_regular(q)?;
    let g = global_pass(q, strategy);
    let mut certificates = g.certificates.clone();

    // Per cell e_i: witnesses for every v in V(e_i), e_k in Q(e_i) under d_{G(e_i)}.
    let per_cell: Vec<Vec<((usize, usize), LocalSets, Vec<(usize, usize)>)>> =
        strategy.map_range(q.len(), |ei| {
            let m = Metric::local(q, ei);
            let c = &q.cells[ei];
            let mut out = Vec::new();
            for &v in &c.vertices {
                for &ek in &c.subcells {
                    let x = m.extremes(v, &q.cells[ek].vertices);
                    out.push(((v, ek), (x.lower, x.upper), x.breakers));
                }
            }
            out
        });
    let mut local_qmh = true;
    let mut family: BTreeMap<(usize, usize), Vec<(usize, LocalSets)>> = BTreeMap::new();
    for (ei, rows) in per_cell.into_iter().enumerate() {
        for ((v, ek), sets, breakers) in rows {
            if sets.1.is_none() {
                local_qmh = false;
                certificates.push(Certificate::Hemisphere {
                    vertex: v,
                    cell: ek,
                    metric: Some(ei),
                    breakers,
                });
            }
            family.entry((v, ek)).or_default().push((ei, sets));
        }
    }

    let mut compatible = true;
    let mut agree = true;
    let mut lower = BTreeMap::new();
    let mut upper = BTreeMap::new();
    for (&(v, ek), entries) in &family {
        let metrics: Vec<Option<usize>> = entries.iter().map(|e| Some(e.0)).collect();
        let lo = entries
            .iter()
            .map(|e| e.1 .0.clone())
            .reduce(|a, b| &a & &b)
            .unwrap();
        let ups: BTreeSet<Option<usize>> = entries.iter().map(|e| e.1 .1).collect();
        let up = match (ups.len(), ups.iter().next()) {
            (1, Some(&Some(w))) => Some(w),
            _ => None,
        };
        if lo.is_empty() {
            compatible = false;
            certificates.push(Certificate::Incompatible {
                vertex: v,
                cell: ek,
                bound: Bound::Lower,
                metrics: metrics.clone(),
            });
        }
        if up.is_none() && ups.iter().all(Option::is_some) {
            compatible = false;
            certificates.push(Certificate::Incompatible {
                vertex: v,
                cell: ek,
                bound: Bound::Upper,
                metrics: metrics.clone(),
            });
        }
        let mut with_global = metrics.clone();
        with_global.insert(0, None);
        let glo = &lo & &g.lower[&(v, ek)];
        if !lo.is_empty() && glo.is_empty() {
            agree = false;
            certificates.push(Certificate::Incompatible {
                vertex: v,
                cell: ek,
                bound: Bound::Lower,
                metrics: with_global.clone(),
            });
        }
        if let Some(w) = up {
            if g.upper.get(&(v, ek)).is_some_and(|&gw| gw != w) {
                agree = false;
                certificates.push(Certificate::Incompatible {
                    vertex: v,
                    cell: ek,
                    bound: Bound::Upper,
                    metrics: with_global,
                });
            }
        }
        if let (Some(&l), Some(w)) = (glo.iter().next(), up) {
            lower.insert((v, ek), l);
            upper.insert((v, ek), w);
        }
    }
    let lmh = local_qmh && compatible;
    let mh = g.qmh && lmh && agree;
    let witnesses = if mh {
        g.lower
            .keys()
            .map(|&(v, e)| {
                let l = lower
                    .get(&(v, e))
                    .copied()
                    .unwrap_or_else(|| *g.lower[&(v, e)].iter().next().unwrap());
                Witness {
                    vertex: v,
                    cell: e,
                    lower: l,
                    upper: g.upper[&(v, e)],
                }
            })
            .collect()
    } else {
        witnesses(&g.lower, &g.upper)
    };
    Ok(MhReport {
        qmh: g.qmh,
        lmh,
        mh,
        bipartite: even_circuits(q),
        witnesses,
        certificates,
    })
}

impl Certificate {
    /// Recomputes the violation from scratch.
    pub fn recheck(&self, q: &CellGraphComplex) -> bool {
        let metric = |m: Option<usize>| match m {
            None => Metric::global(q),
            Some(c) => Metric::local(q, c),
        };
        match self {
            Certificate::Hemisphere {
                vertex,
                cell,
                metric: m,
                breakers,
            } => {
                let d = metric(*m);
                let verts = &q.cells[*cell].vertices;
                let hi = verts.iter().map(|&u| d.dist(*vertex, u)).max().unwrap();
                let maximizers: Vec<usize> =
                    verts.iter().copied().filter(|&u| d.dist(*vertex, u) == hi).collect();
                maximizers.len() == breakers.len()
                    && breakers.iter().all(|&(w, u)| {
                        maximizers.contains(&w)
                            && verts.contains(&u)
                            && d.dist(*vertex, u).saturating_add(d.dist(u, w)) != hi
                    })
            }
            Certificate::Incompatible {
                vertex,
                cell,
                bound,
                metrics,
            } => {
                let sets: Vec<Extremes> = metrics
                    .iter()
                    .map(|&m| metric(m).extremes(*vertex, &q.cells[*cell].vertices))
                    .collect();
                match bound {
                    Bound::Lower => sets
                        .into_iter()
                        .map(|x| x.lower)
                        .reduce(|a, b| &a & &b)
                        .is_some_and(|s| s.is_empty()),
                    Bound::Upper => {
                        let ups: BTreeSet<Option<usize>> = sets.iter().map(|x| x.upper).collect();
                        ups.len() > 1 && ups.iter().all(Option::is_some)
                    }
                }
            }
        }
    }
}

/// `d(v, v') = d_{G(e)}(v, v')` for all cells `e` and `v, v'` in `V(e)`.
pub fn local_distances_agree(q: &CellGraphComplex) -> bool {
    let g = Metric::global(q);
    (0..q.len()).all(|e| {
        let l = Metric::local(q, e);
        let vs = &q.cells[e].vertices;
        vs.iter().all(|&a| vs.iter().all(|&b| g.dist(a, b) == l.dist(a, b)))
    })
}

/// The two hand-built complexes: an octagon 2-cell on vertices 0..7 with
/// chords (0,3), (1,6), (2,5), (4,7); `with_trapezoid` adds the 2-cell bounded
/// by octagon edges 01, 12, 23 and the chord (0,3).
pub fn octagon_example(with_trapezoid: bool) -> CellGraphComplex {
    use crate::salvetti::Cell;
    let mut cells: Vec<Cell> = (0..8)
        .map(|i| Cell {
            dim: 0,
            label: format!("v{i}"),
            vertices: vec![i],
            subcells: vec![i],
            ends: None,
        })
        .collect();
    let edge = |cells: &mut Vec<Cell>, a: usize, b: usize, label: String| {
        let id = cells.len();
        let mut sub = vec![a, b, id];
        sub.sort_unstable();
        let mut vs = vec![a, b];
        vs.sort_unstable();
        cells.push(Cell {
            dim: 1,
            label,
            vertices: vs,
            subcells: sub,
            ends: Some((a, b)),
        });
        id
    };
    let rim: Vec<usize> = (0..8).map(|i| edge(&mut cells, i, (i + 1) % 8, format!("e{i}"))).collect();
    let chords: Vec<usize> = [(0, 3), (1, 6), (2, 5), (4, 7)]
        .iter()
        .map(|&(a, b)| edge(&mut cells, a, b, format!("c{a}{b}")))
        .collect();
    let two_cell = |cells: &mut Vec<Cell>, edges: &[usize], label: &str| {
        let id = cells.len();
        let mut sub: BTreeSet<usize> = edges.iter().copied().collect();
        for &e in edges {
            sub.extend(cells[e].vertices.iter().copied());
        }
        let vertices = sub.iter().copied().filter(|&j| j < 8).collect();
        sub.insert(id);
        cells.push(Cell {
            dim: 2,
            label: label.into(),
            vertices,
            subcells: sub.into_iter().collect(),
            ends: None,
        });
    };
    two_cell(&mut cells, &rim, "octagon");
    if with_trapezoid {
        two_cell(&mut cells, &[rim[0], rim[1], rim[2], chords[0]], "trapezoid");
    }
    CellGraphComplex {
        cells,
        regular: true,
    }
}
