use std::collections::HashMap;

use serde::Serialize;

use super::category::AcyclicCategory;
use super::poset::Poset;
use crate::error::{Error, Result};
use crate::exec::Strategy;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Simplex {
    /// Ordered objects `v_0, ..., v_k`.
    pub vertices: Vec<usize>,
    /// The composable chain of `k` non-identity morphisms (empty for vertices).
    pub chain: Vec<usize>,
    /// Indices of `d_0, ..., d_k` in the previous dimension.
    pub faces: Vec<usize>,
}

/// A semi-simplicial set; `levels[k]` lists the k-simplices in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trisp {
    pub levels: Vec<Vec<Simplex>>,
}

impl Trisp {
    pub fn dim(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn num_simplices(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for all `i < j`.
    pub fn check_identities(&self) -> Result<()> {
        for k in 2..self.levels.len() {
            for (s, simplex) in self.levels[k].iter().enumerate() {
                for j in 0..=k {
                    for i in 0..j {
                        let a = self.levels[k - 1][simplex.faces[j]].faces[i];
                        let b = self.levels[k - 1][simplex.faces[i]].faces[j - 1];
                        if a != b {
                            return Err(Error::Consistency(format!(
                                "face identity d_{i} d_{j} fails on {k}-simplex {s}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The nerve: k-simplices are composable chains of k non-identity morphisms.
pub fn nerve(cat: &AcyclicCategory, strategy: Strategy) -> Result<Trisp> {
    cat.ensure_valid()?;
    let mut levels: Vec<Vec<Simplex>> = Vec::new();
    levels.push(
        (0..cat.num_objects())
            .map(|o| Simplex {
                vertices: vec![o],
                chain: Vec::new(),
                faces: Vec::new(),
            })
            .collect(),
    );
    if cat.num_morphisms() == 0 {
        return Ok(Trisp { levels });
    }
    levels.push(
        cat.morphisms()
            .iter()
            .enumerate()
            .map(|(i, m)| Simplex {
                vertices: vec![m.source, m.target],
                chain: vec![i],
                faces: vec![m.target, m.source],
            })
            .collect(),
    );
    loop {
        let prev = levels.last().unwrap();
        let k = prev[0].chain.len() + 1;
        let index: HashMap<&[usize], usize> =
            prev.iter().enumerate().map(|(i, s)| (s.chain.as_slice(), i)).collect();
        let next: Vec<Simplex> = strategy.flat_map_range(prev.len(), |p| {
            let parent = &prev[p];
            let last = *parent.vertices.last().unwrap();
            cat.outgoing(last)
                .iter()
                .map(|&m| {
                    let mut chain = parent.chain.clone();
                    chain.push(m);
                    let mut vertices = parent.vertices.clone();
                    vertices.push(cat.morphism(m).target);
                    let mut faces = Vec::with_capacity(k + 1);
                    faces.push(index[&chain[1..]]);
                    for i in 1..k {
                        let mut c = Vec::with_capacity(k - 1);
                        c.extend_from_slice(&chain[..i - 1]);
                        c.push(cat.compose(chain[i - 1], chain[i]).expect("validated composition"));
                        c.extend_from_slice(&chain[i + 1..]);
                        faces.push(index[c.as_slice()]);
                    }
                    faces.push(p);
                    Simplex {
                        vertices,
                        chain,
                        faces,
                    }
                })
                .collect()
        });
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    Ok(Trisp { levels })
}

pub fn euler_characteristic(t: &Trisp) -> i64 {
    t.levels
        .iter()
        .enumerate()
        .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
        .sum()
}

/// Face poset of the nerve: objects and composable chains, ordered by the face maps.
pub fn barycentric_subdivision(cat: &AcyclicCategory, strategy: Strategy) -> Result<Poset> {
    let t = nerve(cat, strategy)?;
    let mut offset = vec![0usize];
    for l in &t.levels {
        offset.push(offset.last().unwrap() + l.len());
    }
    let mut labels = Vec::new();
    let mut ranks = Vec::new();
    let mut rel = Vec::new();
    for (k, level) in t.levels.iter().enumerate() {
        for (i, s) in level.iter().enumerate() {
            labels.push(if k == 0 {
                cat.object(s.vertices[0]).label.clone()
            } else {
                let parts: Vec<String> = s.chain.iter().map(|m| format!("m{m}")).collect();
                parts.join(">")
            });
            ranks.push(Some(k));
            if k > 0 {
                for &f in &s.faces {
                    rel.push((offset[k - 1] + f, offset[k] + i));
                }
            }
        }
    }
    Poset::from_relation(labels, ranks, rel)
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;
    use crate::complex::{Morphism, Object};

    fn obj(dim: usize) -> Object {
        Object {
            dim,
            label: format!("o{dim}"),
        }
    }

    #[test]
    fn two_chain_gives_a_triangle() {
        let pairs: BTreeSet<_> = [(0, 1), (1, 2), (0, 2)].into_iter().collect();
        let c = AcyclicCategory::from_strict_order(vec![obj(0), obj(1), obj(2)], &pairs);
        let t = nerve(&c, Strategy::Sequential).unwrap();
        assert_eq!(t.counts(), vec![3, 3, 1]);
        t.check_identities().unwrap();
        assert_eq!(euler_characteristic(&t), 1);
    }

    #[test]
    fn one_point_on_circle_nerve_is_a_circle() {
        let c = AcyclicCategory::new(
            vec![obj(0), obj(1)],
            vec![Morphism { source: 0, target: 1 }, Morphism { source: 0, target: 1 }],
            BTreeMap::new(),
        );
        let t = nerve(&c, Strategy::Sequential).unwrap();
        assert_eq!(t.counts(), vec![2, 2]);
        let sd = barycentric_subdivision(&c, Strategy::Sequential).unwrap();
        assert_eq!(sd.len(), 4);
        assert_eq!(sd.covers().len(), 4);
    }

    #[test]
    fn discrete_category() {
        let c = AcyclicCategory::new(vec![obj(0), obj(0), obj(0)], vec![], BTreeMap::new());
        let t = nerve(&c, Strategy::Parallel).unwrap();
        assert_eq!(t.counts(), vec![3]);
        let sd = barycentric_subdivision(&c, Strategy::Parallel).unwrap();
        assert_eq!(sd.len(), 3);
        assert!(sd.covers().is_empty());
    }

    #[test]
    fn invalid_category_rejected() {
        let c = AcyclicCategory::new(
            vec![obj(0), obj(1)],
            vec![Morphism { source: 1, target: 0 }],
            BTreeMap::new(),
        );
        assert!(nerve(&c, Strategy::Sequential).is_err());
    }
}
