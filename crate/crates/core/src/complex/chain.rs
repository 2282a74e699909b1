use std::collections::BTreeMap;

use serde::Serialize;

use super::trisp::Trisp;
use crate::error::{Error, Result};

/// Integer matrix stored by columns; entries within a column are sorted by row.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let cols: Vec<Vec<(usize, i64)>> = cols
            .into_iter()
            .map(|c| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for (r, v) in c {
                    assert!(r < nrows, "row index out of range");
                    *acc.entry(r).or_default() += v;
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        SparseMatrix {
            nrows,
            ncols: cols.len(),
            cols,
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| (0..nrows).filter(|&i| rows[i][j] != 0).map(|i| (i, rows[i][j])).collect())
            .collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.ncols]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                d[i][j] = v;
            }
        }
        d
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows);
        let cols = other
            .cols
            .iter()
            .map(|c| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(k, v) in c {
                    for &(i, w) in &self.cols[k] {
                        *acc.entry(i).or_default() += v * w;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            cols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                cols[i].push((j, v));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            cols,
        }
    }
}

/// `boundaries[k]` maps k-chains to (k-1)-chains; `boundaries[0]` is the zero map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `∂∂ = 0`.
    pub fn new(ranks: Vec<usize>, mut boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if boundaries.len() + 1 == ranks.len() {
            boundaries.insert(0, SparseMatrix::zero(0, ranks.first().copied().unwrap_or(0)));
        }
        if boundaries.len() != ranks.len() {
            return Err(Error::Consistency("boundary count does not match chain ranks".into()));
        }
        for k in 1..ranks.len() {
            let b = &boundaries[k];
            if b.ncols != ranks[k] || b.nrows != ranks[k - 1] {
                return Err(Error::Consistency(format!("boundary {k} has the wrong shape")));
            }
        }
        let c = ChainComplex { ranks, boundaries };
        c.check_boundary_squared()?;
        Ok(c)
    }

    pub fn check_boundary_squared(&self) -> Result<()> {
        for k in 2..self.ranks.len() {
            if !self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero() {
                return Err(Error::Consistency(format!("boundary squared nonzero in degree {k}")));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Simplicial chains with `∂σ = Σ (-1)^i d_i σ`.
pub fn chain_complex(t: &Trisp) -> Result<ChainComplex> {
    t.check_identities()?;
    let ranks = t.counts();
    let mut boundaries = vec![SparseMatrix::zero(0, ranks.first().copied().unwrap_or(0))];
    for k in 1..t.levels.len() {
        let cols = t.levels[k]
            .iter()
            .map(|s| {
                s.faces
                    .iter()
                    .enumerate()
                    .map(|(i, &f)| (f, if i % 2 == 0 { 1 } else { -1 }))
                    .collect()
            })
            .collect();
        boundaries.push(SparseMatrix::from_columns(ranks[k - 1], cols));
    }
    ChainComplex::new(ranks, boundaries)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::complex::{nerve, AcyclicCategory, Object};
    use crate::exec::Strategy;

    #[test]
    fn triangle_boundaries() {
        let pairs: BTreeSet<_> = [(0, 1), (1, 2), (0, 2)].into_iter().collect();
        let objs = (0..3)
            .map(|d| Object {
                dim: d,
                label: String::new(),
            })
            .collect();
        let c = AcyclicCategory::from_strict_order(objs, &pairs);
        let cc = chain_complex(&nerve(&c, Strategy::Sequential).unwrap()).unwrap();
        assert_eq!(cc.ranks, vec![3, 3, 1]);
        assert_eq!(cc.boundaries[1].nrows, 3);
        assert_eq!(cc.boundaries[2].to_dense(), vec![vec![1], vec![-1], vec![1]]);
        for col in &cc.boundaries[1].cols {
            assert_eq!(col.iter().map(|e| e.1).sum::<i64>(), 0);
        }
    }

    #[test]
    fn nonzero_square_rejected() {
        let d1 = SparseMatrix::from_dense(&[vec![1]]);
        let d2 = SparseMatrix::from_dense(&[vec![1]]);
        assert!(ChainComplex::new(vec![1, 1, 1], vec![d1, d2]).is_err());
    }
}
