use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::complex::Poset;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub dim: usize,
    pub label: String,
    /// 0-cells in the closure, sorted.
    pub vertices: Vec<usize>,
    /// Cells in the closure including the cell itself, sorted.
    pub subcells: Vec<usize>,
    /// Initial and terminal vertex of a 1-cell.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ends: Option<(usize, usize)>,
}

/// Cells with closures and an oriented 1-skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellGraphComplex {
    pub cells: Vec<Cell>,
    /// Loops and repeated closures are allowed only when false.
    pub regular: bool,
}

impl CellGraphComplex {
    pub fn new(cells: Vec<Cell>, regular: bool) -> Result<Self> {
        let q = CellGraphComplex { cells, regular };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |i: usize, why: &str| Err(Error::InvalidCategory(format!("cell {i}: {why}")));
        let n = self.cells.len();
        let closures: Vec<BTreeSet<usize>> = self.cells.iter().map(|c| c.subcells.iter().copied().collect()).collect();
        for (i, c) in self.cells.iter().enumerate() {
            if !closures[i].contains(&i) {
                return bad(i, "closure misses the cell");
            }
            for &j in &c.subcells {
                if j >= n {
                    return bad(i, "sub-cell out of range");
                }
                if j != i && self.cells[j].dim >= c.dim {
                    return bad(i, "dimension does not drop into the boundary");
                }
                if !closures[j].is_subset(&closures[i]) {
                    return bad(i, "closure is not closed");
                }
            }
            let v: Vec<usize> = c.subcells.iter().copied().filter(|&j| self.cells[j].dim == 0).collect();
            if v != c.vertices {
                return bad(i, "vertex set differs from the 0-cells of the closure");
            }
            match (c.dim, c.ends) {
                (1, Some((a, b))) => {
                    if !c.vertices.contains(&a) || !c.vertices.contains(&b) {
                        return bad(i, "edge ends are not its vertices");
                    }
                    if self.regular && (a == b || c.vertices.len() != 2) {
                        return bad(i, "loop in a regular complex");
                    }
                }
                (1, None) => return bad(i, "edge without orientation"),
                (_, Some(_)) => return bad(i, "orientation on a cell of dimension other than 1"),
                _ => {}
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.dim() + 1];
        for cell in &self.cells {
            c[cell.dim] += 1;
        }
        c
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn cells_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cells[i].dim == k).collect()
    }

    /// Oriented edges as `(cell, initial, terminal)`.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.ends.map(|(a, b)| (i, a, b)))
            .collect()
    }

    /// Closure order: `e' < e` iff `e'` is a proper sub-cell of `e`.
    pub fn face_poset(&self) -> Result<Poset> {
        let rel: Vec<(usize, usize)> = self
            .cells
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.subcells.iter().filter(move |&&j| j != i).map(move |&j| (j, i)))
            .collect();
        Poset::from_relation(
            self.cells.iter().map(|c| c.label.clone()).collect(),
            self.cells.iter().map(|c| Some(c.dim)).collect(),
            rel,
        )
    }

    /// The oriented 1-skeleton in DOT.
    pub fn to_dot(&self, name: &str) -> String {
        let esc = crate::complex::escape;
        let mut s = String::new();
        writeln!(s, "digraph \"{}\" {{", esc(name)).unwrap();
        for v in self.cells_of_dim(0) {
            writeln!(s, "  c{v} [label=\"{}\"];", esc(&self.cells[v].label)).unwrap();
        }
        for (e, a, b) in self.edges() {
            writeln!(s, "  c{a} -> c{b} [label=\"{}\"];", esc(&self.cells[e].label)).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

impl CellGraphComplex {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let q: CellGraphComplex =
            serde_json::from_str(text).map_err(|e| Error::InvalidModel(format!("cell complex JSON: {e}")))?;
        q.validate()?;
        Ok(q)
    }
}
