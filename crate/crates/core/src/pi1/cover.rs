use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::presentation::GroupPresentation;
use super::two_complex::{Step, TwoComplex};
use crate::error::{Error, Result};
use crate::exec::Strategy;

/// One permutation of `0..sheets` per generator; JSON uses 1-based one-line
/// notation: `{"sheets": 2, "perms": [[2, 1], [1, 2]]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationCover {
    pub sheets: usize,
    pub perms: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PermsRepr {
    sheets: usize,
    perms: Vec<Vec<usize>>,
}

impl PermutationCover {
    pub fn new(sheets: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        if sheets == 0 {
            return Err(Error::InvalidPermutation("at least one sheet is required".into()));
        }
        for (g, p) in perms.iter().enumerate() {
            let image: BTreeSet<usize> = p.iter().copied().collect();
            if p.len() != sheets || image.len() != sheets || image.iter().any(|&x| x >= sheets) {
                return Err(Error::InvalidPermutation(format!("generator {g}: not a permutation of {sheets} sheets")));
            }
        }
        Ok(PermutationCover { sheets, perms })
    }

    pub fn trivial(sheets: usize, generators: usize) -> Self {
        PermutationCover {
            sheets,
            perms: vec![(0..sheets).collect(); generators],
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let r: PermsRepr =
            serde_json::from_str(text).map_err(|e| Error::InvalidPermutation(format!("permutation JSON: {e}")))?;
        let perms = r
            .perms
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|x| x.checked_sub(1).ok_or_else(|| Error::InvalidPermutation("entries are 1-based".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PermutationCover::new(r.sheets, perms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PermsRepr {
            sheets: self.sheets,
            perms: self.perms.iter().map(|p| p.iter().map(|x| x + 1).collect()).collect(),
        })
        .unwrap()
    }

    /// Number of orbits of the generated permutation group.
    pub fn orbits(&self) -> usize {
        let mut seen = vec![false; self.sheets];
        let mut n = 0;
        for s in 0..self.sheets {
            if seen[s] {
                continue;
            }
            n += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                for p in &self.perms {
                    if !seen[p[x]] {
                        seen[p[x]] = true;
                        stack.push(p[x]);
                    }
                }
            }
        }
        n
    }
}

struct Voltages {
    forward: Vec<Vec<usize>>,
    backward: Vec<Vec<usize>>,
}

impl Voltages {
    fn new(t: &TwoComplex, p: &GroupPresentation, rho: &PermutationCover) -> Self {
        let n = rho.sheets;
        let forward: Vec<Vec<usize>> = (0..t.edges.len())
            .map(|e| match p.generator_index(e) {
                Some(g) => rho.perms[g].clone(),
                None => (0..n).collect(),
            })
            .collect();
        let backward = forward
            .iter()
            .map(|f| {
                let mut inv = vec![0; n];
                for (s, &t) in f.iter().enumerate() {
                    inv[t] = s;
                }
                inv
            })
            .collect();
        Voltages { forward, backward }
    }

    /// Sheet at the head of `s` when starting on `sheet` at its tail.
    fn step(&self, s: Step, sheet: usize) -> usize {
        if s.forward {
            self.forward[s.edge][sheet]
        } else {
            self.backward[s.edge][sheet]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverVerification {
    pub star_bijection: bool,
    pub euler_multiplicative: bool,
    pub connected_iff_transitive: bool,
    pub components_match_orbits: bool,
}

impl CoverVerification {
    pub fn ok(&self) -> bool {
        self.star_bijection && self.euler_multiplicative && self.connected_iff_transitive && self.components_match_orbits
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Cover {
    pub sheets: usize,
    pub complex: TwoComplex,
    pub components: usize,
    pub orbits: usize,
    pub euler_characteristic: i64,
    pub base_euler_characteristic: i64,
    pub verification: CoverVerification,
}

/// Lifts every cell `sheets` times along edge voltages (tree edges carry the
/// identity) and verifies the covering property.
pub fn build_cover(t: &TwoComplex, p: &GroupPresentation, rho: &PermutationCover, strategy: Strategy) -> Result<Cover> {
    if rho.perms.len() != p.generators.len() {
        return Err(Error::InvalidPermutation(format!(
            "{} permutations for {} generators",
            rho.perms.len(),
            p.generators.len()
        )));
    }
    let n = rho.sheets;
    let volt = Voltages::new(t, p, rho);
    for (i, w) in t.faces.iter().enumerate() {
        if (0..n).any(|s| w.iter().fold(s, |x, &st| volt.step(st, x)) != s) {
            let r = p.relator_cells.iter().position(|&c| c == i).unwrap_or(i);
            return Err(Error::RelatorViolated(r));
        }
    }
    let nv = t.num_vertices();
    let lift_v = |v: usize, s: usize| v * n + s;
    let mut vertex_labels = Vec::with_capacity(nv * n);
    for v in 0..nv {
        for s in 0..n {
            vertex_labels.push(format!("{}#{}", t.vertex_labels[v], s + 1));
        }
    }
    let mut edges = Vec::with_capacity(t.edges.len() * n);
    let mut edge_labels = Vec::with_capacity(t.edges.len() * n);
    for (e, &(a, b)) in t.edges.iter().enumerate() {
        for s in 0..n {
            edges.push((lift_v(a, s), lift_v(b, volt.forward[e][s])));
            edge_labels.push(format!("{}#{}", t.edge_labels[e], s + 1));
        }
    }
    let lift_e = |e: usize, s: usize| e * n + s;
    let mut faces = Vec::with_capacity(t.faces.len() * n);
    for w in &t.faces {
        for s in 0..n {
            let mut sheet = s;
            let mut lifted = Vec::with_capacity(w.len());
            for &st in w {
                let next = volt.step(st, sheet);
                // The lifted edge is indexed by the sheet at its tail.
                let tail_sheet = if st.forward { sheet } else { next };
                lifted.push(Step {
                    edge: lift_e(st.edge, tail_sheet),
                    forward: st.forward,
                });
                sheet = next;
            }
            faces.push(lifted);
        }
    }
    let cover = TwoComplex::new(vertex_labels, edges, edge_labels, faces)?;

    let star_bijection = strategy.all_range(nv * n, |cv| {
        star(&cover, cv, |e| e / n) == star(t, cv / n, |e| e)
    });
    let components = cover.components();
    let orbits = rho.orbits();
    let chi = cover.euler_characteristic();
    let base_chi = t.euler_characteristic();
    let verification = CoverVerification {
        star_bijection,
        euler_multiplicative: chi == n as i64 * base_chi,
        connected_iff_transitive: (components == 1) == (orbits == 1),
        components_match_orbits: components == orbits * t.components(),
    };
    if !verification.ok() {
        return Err(Error::Consistency(format!("cover verification failed: {verification:?}")));
    }
    Ok(Cover {
        sheets: n,
        complex: cover,
        components,
        orbits,
        euler_characteristic: chi,
        base_euler_characteristic: base_chi,
        verification,
    })
}

/// Edge ends and 2-cell corners at `v`, with cell ids projected by `proj`.
fn star(t: &TwoComplex, v: usize, proj: impl Fn(usize) -> usize) -> Vec<(u8, usize, usize)> {
    let mut out = Vec::new();
    for (e, &(a, b)) in t.edges.iter().enumerate() {
        if a == v {
            out.push((0, proj(e), 0));
        }
        if b == v {
            out.push((0, proj(e), 1));
        }
    }
    for (f, w) in t.faces.iter().enumerate() {
        for (k, &st) in w.iter().enumerate() {
            if t.tail(st) == v {
                out.push((1, proj(f), k));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Representations through cyclic quotients: for each basis vector `x` of the
/// mod-`p` null space of the relator matrix, generator `g` acts on `Z/p` by
/// adding `x_g`.
pub fn cyclic_representations(pres: &GroupPresentation, p: usize) -> Vec<PermutationCover> {
    assert!(p >= 2, "modulus must be at least 2");
    let ng = pres.generators.len();
    let m = p as i64;
    let mut rows: Vec<Vec<i64>> = pres
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; ng];
            for l in r {
                let g = pres.generator_index(l.edge).unwrap();
                row[g] = (row[g] + l.exponent as i64).rem_euclid(m);
            }
            row
        })
        .collect();
    let pivots = echelon_mod(&mut rows, m);
    let free: Vec<usize> = (0..ng).filter(|c| !pivots.iter().any(|&(_, pc)| pc == *c)).collect();
    free.into_iter()
        .map(|fc| {
            let mut x = vec![0i64; ng];
            x[fc] = 1;
            for &(r, pc) in pivots.iter().rev() {
                x[pc] = (-rows[r][fc]).rem_euclid(m);
            }
            PermutationCover {
                sheets: p,
                perms: x.iter().map(|&xg| (0..p).map(|s| (s + xg as usize) % p).collect()).collect(),
            }
        })
        .collect()
}

/// Reduced row echelon form over `Z/m` for prime `m`; returns (row, column) pivots.
fn echelon_mod(rows: &mut [Vec<i64>], m: i64) -> Vec<(usize, usize)> {
    let inv = |a: i64| (1..m).find(|&b| (a * b).rem_euclid(m) == 1).expect("prime modulus");
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let a = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = (*x * a).rem_euclid(m);
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                let pivot_row = rows[r].clone();
                for (x, y) in rows[k].iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(m);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}
