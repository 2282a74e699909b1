use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Object {
    pub dim: usize,
    pub label: String,
}

/// A non-identity morphism. Identities are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
}

/// A finite category whose only invertible morphisms are identities.
///
/// `composition[(f, g)]` is the composite "first `f`, then `g`".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "CategoryRepr", into = "CategoryRepr")]
pub struct AcyclicCategory {
    objects: Vec<Object>,
    morphisms: Vec<Morphism>,
    composition: BTreeMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct CategoryRepr {
    objects: Vec<Object>,
    morphisms: Vec<Morphism>,
    composition: Vec<[usize; 3]>,
}

impl From<CategoryRepr> for AcyclicCategory {
    fn from(r: CategoryRepr) -> Self {
        let comp = r.composition.into_iter().map(|[f, g, h]| ((f, g), h)).collect();
        AcyclicCategory::new(r.objects, r.morphisms, comp)
    }
}

impl From<AcyclicCategory> for CategoryRepr {
    fn from(c: AcyclicCategory) -> Self {
        CategoryRepr {
            composition: c.composition.iter().map(|(&(f, g), &h)| [f, g, h]).collect(),
            objects: c.objects,
            morphisms: c.morphisms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    DanglingEndpoint { morphism: usize },
    Endomorphism { morphism: usize },
    DimensionNotIncreasing { morphism: usize },
    Cycle { objects: Vec<usize> },
    MissingComposite { first: usize, second: usize },
    CompositeEndpoints { first: usize, second: usize, composite: usize },
    NonComposablePair { first: usize, second: usize },
    NonAssociative { f: usize, g: usize, h: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl AcyclicCategory {
    pub fn new(
        objects: Vec<Object>,
        morphisms: Vec<Morphism>,
        composition: BTreeMap<(usize, usize), usize>,
    ) -> Self {
        let n = objects.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, m) in morphisms.iter().enumerate() {
            if m.source < n && m.target < n {
                outgoing[m.source].push(i);
                incoming[m.target].push(i);
            }
        }
        AcyclicCategory {
            objects,
            morphisms,
            composition,
            outgoing,
            incoming,
        }
    }

    /// Category of a relation closed under transitivity: one morphism per pair.
    /// `pairs` must be strict and transitively closed; the composition is filled in.
    pub fn from_strict_order(objects: Vec<Object>, pairs: &BTreeSet<(usize, usize)>) -> Self {
        let morphisms: Vec<Morphism> = pairs
            .iter()
            .map(|&(s, t)| Morphism { source: s, target: t })
            .collect();
        let index: BTreeMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut outgoing = vec![Vec::new(); objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.source].push(i);
        }
        let mut composition = BTreeMap::new();
        for (f, m) in morphisms.iter().enumerate() {
            for &g in &outgoing[m.target] {
                if let Some(&h) = index.get(&(m.source, morphisms[g].target)) {
                    composition.insert((f, g), h);
                }
            }
        }
        AcyclicCategory::new(objects, morphisms, composition)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Object {
        &self.objects[i]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, i: usize) -> &Morphism {
        &self.morphisms[i]
    }

    pub fn composition(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.composition
    }

    /// First `f`, then `g`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    pub fn outgoing(&self, object: usize) -> &[usize] {
        &self.outgoing[object]
    }

    pub fn incoming(&self, object: usize) -> &[usize] {
        &self.incoming[object]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.outgoing[a]
            .iter()
            .copied()
            .filter(|&m| self.morphisms[m].target == b)
            .collect()
    }

    pub fn max_dim(&self) -> usize {
        self.objects.iter().map(|o| o.dim).max().unwrap_or(0)
    }

    /// True when every ordered pair carries at most one morphism.
    pub fn is_poset(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.morphisms.iter().all(|m| seen.insert((m.source, m.target)))
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.objects.len();
        let mut v = Vec::new();
        let mut usable = vec![true; self.morphisms.len()];
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.source >= n || m.target >= n {
                v.push(Violation::DanglingEndpoint { morphism: i });
                usable[i] = false;
                continue;
            }
            if m.source == m.target {
                v.push(Violation::Endomorphism { morphism: i });
            }
            if self.objects[m.source].dim >= self.objects[m.target].dim {
                v.push(Violation::DimensionNotIncreasing { morphism: i });
            }
        }
        if let Some(cycle) = self.find_cycle() {
            v.push(Violation::Cycle { objects: cycle });
        }
        let nm = self.morphisms.len();
        for (&(f, g), &h) in &self.composition {
            if f >= nm || g >= nm || h >= nm {
                v.push(Violation::DanglingEndpoint {
                    morphism: *[f, g, h].iter().find(|&&x| x >= nm).unwrap(),
                });
                continue;
            }
            let (mf, mg, mh) = (&self.morphisms[f], &self.morphisms[g], &self.morphisms[h]);
            if mf.target != mg.source {
                v.push(Violation::NonComposablePair { first: f, second: g });
            } else if mh.source != mf.source || mh.target != mg.target {
                v.push(Violation::CompositeEndpoints {
                    first: f,
                    second: g,
                    composite: h,
                });
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            if !usable[f] {
                continue;
            }
            for &g in &self.outgoing[mf.target] {
                if !self.composition.contains_key(&(f, g)) {
                    v.push(Violation::MissingComposite { first: f, second: g });
                }
            }
        }
        for (&(f, g), &fg) in &self.composition {
            if g >= nm || fg >= nm || self.morphisms[g].target >= n {
                continue;
            }
            for &h in &self.outgoing[self.morphisms[g].target] {
                let left = self.compose(fg, h);
                let right = self.compose(g, h).and_then(|gh| self.compose(f, gh));
                if let (Some(a), Some(b)) = (left, right) {
                    if a != b {
                        v.push(Violation::NonAssociative { f, g, h });
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(first) => Err(Error::InvalidCategory(format!(
                "{} violation(s), first: {:?}",
                report.violations.len(),
                first
            ))),
        }
    }

    fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.objects.len();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some(&mut (u, ref mut next)) = stack.last_mut() {
                if let Some(&m) = self.outgoing[u].get(*next) {
                    *next += 1;
                    let w = self.morphisms[m].target;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            parent[w] = u;
                            stack.push((w, 0));
                        }
                        1 => {
                            let mut cycle = vec![w];
                            let mut x = u;
                            while x != w {
                                cycle.push(x);
                                x = parent[x];
                            }
                            cycle.reverse();
                            let start = cycle.iter().enumerate().min_by_key(|p| p.1).unwrap().0;
                            cycle.rotate_left(start);
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[u] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Reverses every morphism; object dimensions become `max_dim - dim`.
    pub fn opposite(&self) -> AcyclicCategory {
        let top = self.max_dim();
        let objects = self
            .objects
            .iter()
            .map(|o| Object {
                dim: top - o.dim,
                label: o.label.clone(),
            })
            .collect();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                source: m.target,
                target: m.source,
            })
            .collect();
        let composition = self.composition.iter().map(|(&(f, g), &h)| ((g, f), h)).collect();
        AcyclicCategory::new(objects, morphisms, composition)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("category serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(dim: usize, label: &str) -> Object {
        Object {
            dim,
            label: label.into(),
        }
    }

    #[test]
    fn two_cycle_is_reported() {
        let c = AcyclicCategory::new(
            vec![obj(0, "a"), obj(1, "b")],
            vec![Morphism { source: 0, target: 1 }, Morphism { source: 1, target: 0 }],
            BTreeMap::new(),
        );
        let r = c.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Cycle { .. })));
    }

    #[test]
    fn point_on_a_line_is_valid() {
        let c = AcyclicCategory::new(
            vec![obj(0, "p"), obj(1, "L"), obj(1, "R")],
            vec![Morphism { source: 0, target: 1 }, Morphism { source: 0, target: 2 }],
            BTreeMap::new(),
        );
        assert!(c.validate().is_valid());
    }

    #[test]
    fn missing_composite_is_reported() {
        let c = AcyclicCategory::new(
            vec![obj(0, "a"), obj(1, "b"), obj(2, "c")],
            vec![
                Morphism { source: 0, target: 1 },
                Morphism { source: 1, target: 2 },
                Morphism { source: 0, target: 2 },
            ],
            BTreeMap::new(),
        );
        assert_eq!(
            c.validate().violations,
            vec![Violation::MissingComposite { first: 0, second: 1 }]
        );
    }

    #[test]
    fn opposite_is_an_involution() {
        let pairs: BTreeSet<_> = [(0, 1), (1, 2), (0, 2)].into_iter().collect();
        let c = AcyclicCategory::from_strict_order(vec![obj(0, "a"), obj(1, "b"), obj(2, "c")], &pairs);
        assert!(c.validate().is_valid());
        let op = c.opposite();
        assert!(op.validate().is_valid());
        assert_eq!(op.object(0).dim, 2);
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn json_round_trip() {
        let pairs: BTreeSet<_> = [(0, 1), (1, 2), (0, 2)].into_iter().collect();
        let c = AcyclicCategory::from_strict_order(vec![obj(0, "a"), obj(1, "b"), obj(2, "c")], &pairs);
        let s = serde_json::to_string(&c).unwrap();
        let back: AcyclicCategory = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
