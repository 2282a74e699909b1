use std::collections::{BTreeMap, BTreeSet};

use super::face_data::{FaceData, ModelKind};
use crate::complex::Poset;
use crate::error::Result;

/// Connected components of intersections of submanifolds, ordered by reverse
/// inclusion and ranked by codimension. Each component is represented by the
/// faces open in it.
pub fn intersection_poset(fd: &FaceData) -> Result<Poset> {
    let n = fd.num_faces();
    let mut uf = UnionFind::new(n);
    match fd.kind {
        ModelKind::Hyperplane | ModelKind::Sphere => {
            let mut by_zero: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            for f in 0..n {
                if fd.kind == ModelKind::Sphere && fd.faces[f].dim == 0 {
                    continue;
                }
                let z = fd.faces[f].sign.as_ref().unwrap().zero_set();
                match by_zero.get(&z) {
                    Some(&g) => uf.union(f, g),
                    None => {
                        by_zero.insert(z, f);
                    }
                }
            }
        }
        ModelKind::Periodic => {
            let lifts = fd.lifts.as_ref().expect("periodic face data has lifts");
            for h in 0..n {
                let mut above: Vec<(usize, Vec<usize>)> = fd
                    .category
                    .outgoing(h)
                    .iter()
                    .map(|&m| {
                        let target = fd.category.morphism(m).target;
                        (target, lifts.target_lift(fd, m).zero_set())
                    })
                    .collect();
                above.sort();
                for i in 0..above.len() {
                    for j in 0..i {
                        if above[i].1 == above[j].1 {
                            uf.union(above[i].0, above[j].0);
                        }
                    }
                }
            }
        }
    }
    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&f| (fd.codim(f), f));
    for &f in &order {
        let r = uf.find(f);
        let c = *class_of_root.entry(r).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[c].push(f);
    }
    let class: Vec<usize> = (0..n).map(|f| class_of_root[&uf.find(f)]).collect();
    let mut relation = BTreeSet::new();
    for m in fd.category.morphisms() {
        let (a, b) = (class[m.target], class[m.source]);
        if a != b {
            relation.insert((a, b));
        }
    }
    let ranks = members.iter().map(|ms| Some(fd.codim(ms[0]))).collect();
    let labels = members
        .iter()
        .map(|ms| {
            let f = &fd.faces[ms[0]];
            if fd.codim(ms[0]) == 0 {
                "ambient".to_string()
            } else if fd.kind == ModelKind::Sphere && f.dim == 0 {
                format!("point {}", f.label)
            } else {
                let c: Vec<String> = f.containing.iter().map(|i| i.to_string()).collect();
                format!("{{{}}}", c.join(","))
            }
        })
        .collect();
    Poset::from_relation(labels, ranks, relation)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}
