//! Region counts and Whitney numbers from the Möbius function of the
//! intersection lattice, computed by linear algebra alone.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::hyperplane::HyperplaneArrangement;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WhitneyReport {
    pub chambers: u64,
    /// Relatively bounded chambers, `|Σ μ|`.
    pub bounded: u64,
    /// Unsigned Whitney numbers of the first kind by rank.
    pub betti: Vec<u64>,
    pub flats: Vec<FlatEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatEntry {
    pub hyperplanes: Vec<usize>,
    pub rank: usize,
    pub mobius: i64,
}

pub fn whitney_oracle(a: &HyperplaneArrangement) -> WhitneyReport {
    let hs = a.hyperplanes();
    let augmented: Vec<Vec<Rational>> = hs
        .iter()
        .map(|h| {
            let mut r = h.normal.clone();
            r.push(h.offset.clone());
            r
        })
        .collect();
    let rows = |set: &BTreeSet<usize>| -> Vec<Vec<Rational>> { set.iter().map(|&i| augmented[i].clone()).collect() };
    let normal_rank = |set: &BTreeSet<usize>| -> usize {
        rational::rank(&set.iter().map(|&i| hs[i].normal.clone()).collect::<Vec<_>>())
    };

    let mut flats: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    flats.insert(BTreeSet::new(), 0);
    let mut queue = VecDeque::from([BTreeSet::new()]);
    while let Some(set) = queue.pop_front() {
        for h in 0..hs.len() {
            if set.contains(&h) {
                continue;
            }
            let mut next = set.clone();
            next.insert(h);
            let aug_rank = rational::rank(&rows(&next));
            let r = normal_rank(&next);
            if aug_rank != r {
                continue;
            }
            let closure: BTreeSet<usize> = (0..hs.len())
                .filter(|&j| {
                    let mut t = rows(&next);
                    t.push(augmented[j].clone());
                    rational::rank(&t) == aug_rank
                })
                .collect();
            if !flats.contains_key(&closure) {
                flats.insert(closure.clone(), r);
                queue.push_back(closure);
            }
        }
    }

    let mut ordered: Vec<(&BTreeSet<usize>, usize)> = flats.iter().map(|(s, &r)| (s, r)).collect();
    ordered.sort_by_key(|&(s, r)| (r, s.clone()));
    let mut mu: Vec<i64> = Vec::with_capacity(ordered.len());
    for (i, (s, _)) in ordered.iter().enumerate() {
        if s.is_empty() {
            mu.push(1);
            continue;
        }
        let below: i64 = (0..i).filter(|&j| ordered[j].0.is_subset(s)).map(|j| mu[j]).sum();
        mu.push(-below);
    }
    let max_rank = ordered.iter().map(|o| o.1).max().unwrap_or(0);
    let mut betti = vec![0u64; max_rank + 1];
    for (k, (_, r)) in ordered.iter().enumerate() {
        betti[*r] += mu[k].unsigned_abs();
    }
    WhitneyReport {
        chambers: mu.iter().map(|m| m.unsigned_abs()).sum(),
        bounded: mu.iter().sum::<i64>().unsigned_abs(),
        betti,
        flats: ordered
            .iter()
            .zip(&mu)
            .map(|((s, r), &m)| FlatEntry {
                hyperplanes: s.iter().copied().collect(),
                rank: *r,
                mobius: m,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Hyperplane;

    fn arr(hs: &[(&[i64], i64)]) -> HyperplaneArrangement {
        HyperplaneArrangement::new(2, hs.iter().map(|(n, o)| Hyperplane::from_ints(n, *o)).collect()).unwrap()
    }

    #[test]
    fn cross() {
        let r = whitney_oracle(&arr(&[(&[1, 0], 0), (&[0, 1], 0)]));
        assert_eq!((r.chambers, r.bounded, r.betti), (4, 0, vec![1, 2, 1]));
    }

    #[test]
    fn generic_triangle() {
        let r = whitney_oracle(&arr(&[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1)]));
        assert_eq!((r.chambers, r.bounded, r.betti), (7, 1, vec![1, 3, 3]));
    }

    #[test]
    fn concurrent_lines() {
        let r = whitney_oracle(&arr(&[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0)]));
        assert_eq!((r.chambers, r.bounded, r.betti), (6, 0, vec![1, 3, 2]));
        assert_eq!(r.flats.last().unwrap().mobius, 2);
    }
}
