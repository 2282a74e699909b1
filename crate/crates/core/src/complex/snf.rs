//! Smith normal form over the integers.
//!
//! Sparse elimination on ±1 pivots in checked machine integers first, then a
//! dense arbitrary-precision pass with minimal-absolute-value pivoting on
//! whatever remains. Machine overflow restarts the whole matrix densely.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::chain::SparseMatrix;

/// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    match sparse_units(m) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::one(); units];
            out.extend(dense_invariant_factors(rest));
            out
        }
        None => dense_invariant_factors(
            m.to_dense()
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        ),
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

/// Eliminates unit pivots; returns their count and the remaining dense block,
/// or `None` on overflow.
fn sparse_units(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut cols: Vec<BTreeMap<usize, i64>> =
        m.cols.iter().map(|c| c.iter().copied().collect()).collect();
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.nrows];
    for (j, c) in m.cols.iter().enumerate() {
        for &(i, _) in c {
            rows[i].insert(j);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..cols.len()).map(|j| Reverse((cols[j].len(), j))).collect();
    let mut units = 0;
    while let Some(Reverse((nnz, c))) = heap.pop() {
        if !alive[c] || cols[c].len() != nnz {
            continue;
        }
        if nnz == 0 {
            alive[c] = false;
            continue;
        }
        let pivot = cols[c]
            .iter()
            .filter(|(_, &v)| v == 1 || v == -1)
            .min_by_key(|(&r, _)| (rows[r].len(), r))
            .map(|(&r, &v)| (r, v));
        let Some((r, a)) = pivot else {
            continue;
        };
        let others: Vec<usize> = rows[r].iter().copied().filter(|&j| j != c).collect();
        let pivot_col: Vec<(usize, i64)> = cols[c].iter().map(|(&i, &v)| (i, v)).collect();
        for j in others {
            let f = cols[j][&r].checked_mul(a)?;
            for &(i, v) in &pivot_col {
                let delta = f.checked_mul(v)?;
                let entry = cols[j].entry(i).or_insert(0);
                *entry = entry.checked_sub(delta)?;
                if *entry == 0 {
                    cols[j].remove(&i);
                    rows[i].remove(&j);
                } else {
                    rows[i].insert(j);
                }
            }
            heap.push(Reverse((cols[j].len(), j)));
        }
        for &(i, _) in &pivot_col {
            rows[i].remove(&c);
        }
        debug_assert!(rows[r].is_empty());
        cols[c].clear();
        alive[c] = false;
        units += 1;
    }
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let row_pos: BTreeMap<usize, usize> = live_rows.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (q, &j) in live_cols.iter().enumerate() {
        for (&i, &v) in &cols[j] {
            dense[row_pos[&i]][q] = BigInt::from(v);
        }
    }
    Some((units, dense))
}

/// Invariant factors of a dense matrix given by rows.
pub fn dense_invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = m.len();
    let nc = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr && t < nc {
        let Some((pi, pj)) = min_entry(&m, t, t..nr, t..nc) else {
            break;
        };
        m.swap(t, pi);
        swap_cols(&mut m, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    for j in t..nc {
                        let d = &q * &m[t][j];
                        m[i][j] -= d;
                    }
                    dirty |= !m[i][t].is_zero();
                }
            }
            if dirty {
                let (i, _) = min_entry(&m, t, t..nr, t..t + 1).unwrap();
                m.swap(t, i);
                continue;
            }
            for j in t + 1..nc {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    for i in t..nr {
                        let d = &q * &m[i][t];
                        m[i][j] -= d;
                    }
                    dirty |= !m[t][j].is_zero();
                }
            }
            if dirty {
                let (_, j) = min_entry(&m, t, t..t + 1, t..nc).unwrap();
                swap_cols(&mut m, t, j);
                continue;
            }
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
            match bad {
                Some(i) => {
                    for j in t..nc {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

fn min_entry(
    m: &[Vec<BigInt>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if m[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}
