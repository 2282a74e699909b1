use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write;

use serde::Serialize;

use super::category::{AcyclicCategory, Object};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite poset stored by its strict up-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    ranks: Vec<Option<usize>>,
    up: Vec<BitSet>,
    covers: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct PosetRepr<'a> {
    elements: Vec<ElementRepr<'a>>,
    covers: &'a [(usize, usize)],
}

#[derive(Serialize)]
struct ElementRepr<'a> {
    id: usize,
    label: &'a str,
    rank: Option<usize>,
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetRepr {
            elements: (0..self.len())
                .map(|i| ElementRepr {
                    id: i,
                    label: &self.labels[i],
                    rank: self.ranks[i],
                })
                .collect(),
            covers: &self.covers,
        }
        .serialize(s)
    }
}

impl Poset {
    /// Builds the transitive closure of `relation` (pairs `a < b`).
    /// Fails on reflexive pairs or cycles.
    pub fn from_relation<I>(labels: Vec<String>, ranks: Vec<Option<usize>>, relation: I) -> Result<Poset>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        assert_eq!(ranks.len(), n);
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (a, b) in relation {
            if a >= n || b >= n {
                return Err(Error::InvalidCategory(format!("relation pair ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidCategory(format!("reflexive pair at element {a}")));
            }
            succ[a].insert(b);
        }
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(a) = queue.pop_front() {
            topo.push(a);
            for &b in &succ[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push_back(b);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::InvalidCategory("relation is not antisymmetric (cycle)".into()));
        }
        let mut up = vec![BitSet::new(n); n];
        for &a in topo.iter().rev() {
            let mut set = BitSet::new(n);
            for &b in &succ[a] {
                set.insert(b);
                set.union_with(&up[b]);
            }
            up[a] = set;
        }
        let mut covers = Vec::new();
        for a in 0..n {
            let mut reach = BitSet::new(n);
            for b in up[a].iter() {
                reach.union_with(&up[b]);
            }
            covers.extend(up[a].iter().filter(|&b| !reach.contains(b)).map(|b| (a, b)));
        }
        Ok(Poset {
            labels,
            ranks,
            up,
            covers,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn rank(&self, i: usize) -> Option<usize> {
        self.ranks[i]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn strictly_above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[a].iter()
    }

    pub fn strictly_below(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.lt(b, a)).collect()
    }

    pub fn num_relations(&self) -> usize {
        self.up.iter().map(BitSet::count).sum()
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        let below_count: Vec<usize> = (0..n).map(|a| (0..n).filter(|&b| self.lt(b, a)).count()).collect();
        order.sort_by_key(|&a| below_count[a]);
        let mut h = vec![0usize; n];
        for &a in &order {
            for b in self.up[a].iter() {
                h[b] = h[b].max(h[a] + 1);
            }
        }
        h
    }

    /// Sub-poset on `elements` (kept in the given order).
    pub fn restrict(&self, elements: &[usize]) -> Poset {
        let labels = elements.iter().map(|&e| self.labels[e].clone()).collect();
        let ranks = elements.iter().map(|&e| self.ranks[e]).collect();
        let mut rel = Vec::new();
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                if self.lt(a, b) {
                    rel.push((i, j));
                }
            }
        }
        Poset::from_relation(labels, ranks, rel).expect("restriction of a poset is a poset")
    }

    /// The poset as a category; object dimensions are ranks when every rank is
    /// known and strictly increasing, heights otherwise.
    pub fn to_category(&self) -> AcyclicCategory {
        let use_ranks = self.ranks.iter().all(Option::is_some)
            && (0..self.len()).all(|a| self.up[a].iter().all(|b| self.ranks[a] < self.ranks[b]));
        let dims = if use_ranks {
            self.ranks.iter().map(|r| r.unwrap()).collect()
        } else {
            self.heights()
        };
        let objects = (0..self.len())
            .map(|i| Object {
                dim: dims[i],
                label: self.labels[i].clone(),
            })
            .collect();
        let pairs: BTreeSet<(usize, usize)> =
            (0..self.len()).flat_map(|a| self.up[a].iter().map(move |b| (a, b))).collect();
        AcyclicCategory::from_strict_order(objects, &pairs)
    }

    /// Hasse diagram in DOT, edges pointing upward.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        writeln!(s, "digraph \"{}\" {{", escape(name)).unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        for i in 0..self.len() {
            writeln!(s, "  n{} [label=\"{}\"];", i, escape(&self.labels[i])).unwrap();
        }
        for &(a, b) in &self.covers {
            writeln!(s, "  n{a} -> n{b};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// True when `relation` is already transitively closed.
    pub fn relation_is_transitive(n: usize, relation: &BTreeSet<(usize, usize)>) -> bool {
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in relation {
            succ[a].push(b);
        }
        relation
            .iter()
            .all(|&(a, b)| succ[b].iter().all(|&c| relation.contains(&(a, c))))
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
