use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::two_complex::{Step, TwoComplex};
use crate::complex::{snf, SparseMatrix};
use crate::error::{Error, Result};

/// A generator (by edge id) with exponent ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Letter {
    pub edge: usize,
    pub exponent: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub base_vertex: usize,
    pub tree: Vec<usize>,
    /// Edge ids outside the spanning tree.
    pub generators: Vec<usize>,
    pub relators: Vec<Vec<Letter>>,
    /// 2-cell each relator came from.
    pub relator_cells: Vec<usize>,
}

impl GroupPresentation {
    pub fn generator_index(&self, edge: usize) -> Option<usize> {
        self.generators.binary_search(&edge).ok()
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": crate::SCHEMA_VERSION,
            "base_vertex": self.base_vertex,
            "tree": self.tree,
            "generators": self.generators,
            "relators": self.relators.iter().map(|r| r.iter().map(|l| [l.edge as i64, l.exponent as i64]).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "relator_cells": self.relator_cells,
        })
    }
}

fn free_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for l in word {
        match out.last() {
            Some(p) if p.edge == l.edge && p.exponent == -l.exponent => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// Generators are the edges off a breadth-first spanning tree from vertex 0
/// (neighbours visited by edge id); relators are the 2-cell boundaries with
/// tree edges dropped, freely reduced, empty words omitted.
pub fn pi1_presentation(t: &TwoComplex) -> Result<GroupPresentation> {
    let nv = t.num_vertices();
    if nv == 0 {
        return Err(Error::Disconnected);
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (e, &(a, b)) in t.edges.iter().enumerate() {
        incident[a].push(e);
        if b != a {
            incident[b].push(e);
        }
    }
    let mut seen = vec![false; nv];
    let mut in_tree = vec![false; t.edges.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &e in &incident[v] {
            let (a, b) = t.edges[e];
            let w = if a == v { b } else { a };
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Disconnected);
    }
    let mut relators = Vec::new();
    let mut relator_cells = Vec::new();
    for (i, w) in t.faces.iter().enumerate() {
        let word: Vec<Letter> = w
            .iter()
            .filter(|s| !in_tree[s.edge])
            .map(|&Step { edge, forward }| Letter {
                edge,
                exponent: if forward { 1 } else { -1 },
            })
            .collect();
        let word = free_reduce(word);
        if !word.is_empty() {
            relators.push(word);
            relator_cells.push(i);
        }
    }
    Ok(GroupPresentation {
        base_vertex: 0,
        tree: (0..t.edges.len()).filter(|&e| in_tree[e]).collect(),
        generators: (0..t.edges.len()).filter(|&e| !in_tree[e]).collect(),
        relators,
        relator_cells,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub rank: usize,
    #[serde(serialize_with = "crate::rational::ser_bigints")]
    pub torsion: Vec<BigInt>,
}

/// Smith normal form of the relator exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> Abelianization {
    let cols: Vec<Vec<(usize, i64)>> = p
        .relators
        .iter()
        .map(|r| {
            r.iter()
                .map(|l| (p.generator_index(l.edge).expect("declared generator"), l.exponent as i64))
                .collect()
        })
        .collect();
    let m = SparseMatrix::from_columns(p.generators.len(), cols);
    let factors = snf::invariant_factors(&m);
    Abelianization {
        rank: p.generators.len() - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}
