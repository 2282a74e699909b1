mod common;

use std::collections::{BTreeSet, VecDeque};

use arrangement_core::face_ops::{local_category, FaceOps};
use arrangement_core::models::{FaceData, ModelKind};
use arrangement_core::{ErrorKind, Strategy};

fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let a: BTreeSet<_> = a.iter().copied().collect();
    let b: BTreeSet<_> = b.iter().copied().collect();
    a.symmetric_difference(&b).copied().collect()
}

/// Chamber distance by breadth-first search across walls.
fn crossing_distance(fd: &FaceData, from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; fd.num_faces()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        for w in (0..fd.num_faces()).filter(|&w| fd.codim(w) == 1 && fd.leq(w, c)) {
            for d in fd.chambers_above(w) {
                if dist[d].is_none() {
                    dist[d] = Some(dist[c].unwrap() + 1);
                    queue.push_back(d);
                }
            }
        }
    }
    dist
}

#[test]
fn separation_sets_compose_by_symmetric_difference() {
    for (name, fd) in common::separated() {
        let ops = FaceOps::new(&fd).unwrap();
        let cs = fd.chambers();
        for &a in cs {
            for &b in cs {
                let ab = ops.separation(a, b).unwrap().submanifolds;
                for &c in cs {
                    let bc = ops.separation(b, c).unwrap().submanifolds;
                    let ac = ops.separation(a, c).unwrap().submanifolds;
                    assert_eq!(ac, sym_diff(&ab, &bc), "{name}");
                }
            }
        }
    }
}

#[test]
fn distance_is_the_crossing_metric() {
    for (name, fd) in common::separated() {
        let ops = FaceOps::new(&fd).unwrap();
        for &a in fd.chambers() {
            let bfs = crossing_distance(&fd, a);
            for &b in fd.chambers() {
                let d = ops.distance(a, b).unwrap();
                assert_eq!(d, ops.distance(b, a).unwrap(), "{name}");
                assert_eq!(d == 0, a == b, "{name}");
                assert_eq!(Some(d), bfs[b], "{name}: {a} {b}");
            }
        }
    }
}

#[test]
fn face_action_laws() {
    for (name, fd) in common::separated() {
        let ops = FaceOps::new(&fd).unwrap();
        let table = ops.action_table(Strategy::default()).unwrap();
        let cs = fd.chambers();
        let col = |c: usize| cs.iter().position(|&x| x == c).unwrap();
        for f in 0..fd.num_faces() {
            for (i, &c) in cs.iter().enumerate() {
                let fc = table[f][i];
                assert!(fd.leq(f, fc), "{name}");
                assert_eq!(ops.face_action(f, c).unwrap(), fc);
                assert_eq!(table[f][col(fc)], fc, "{name}: idempotence");
                for g in fd.star(f) {
                    assert_eq!(table[g][col(fc)], table[g][i], "{name}: G∘(F∘C) = G∘C");
                }
                // Sign-vector composition on linear models.
                let composed = fd.sign(f).unwrap().compose(fd.sign(c).unwrap());
                assert_eq!(fd.sign(fc).unwrap(), &composed, "{name}");
                let far = ops.far_action(f, c).unwrap();
                assert_eq!(
                    ops.separation(fc, far).unwrap().submanifolds,
                    fd.faces[f].containing,
                    "{name}: R(F∘C, F∗C) = A_F"
                );
            }
        }
    }
}

#[test]
fn chambers_fix_everything_and_local_classes_refine() {
    for (name, fd) in common::separated() {
        let ops = FaceOps::new(&fd).unwrap();
        for &c in fd.chambers() {
            let cl = ops.local_class(c);
            assert_eq!(cl.blocks.len(), 1, "{name}");
            for &d in fd.chambers() {
                assert_eq!(ops.face_action(c, d).unwrap(), c);
            }
        }
        for f in 0..fd.num_faces() {
            let cl = ops.local_class(f);
            let all: usize = cl.blocks.iter().map(Vec::len).sum();
            assert_eq!(all, fd.chambers().len());
            // Each block meets the star of F exactly once.
            for b in &cl.blocks {
                assert_eq!(b.iter().filter(|&&c| fd.leq(f, c)).count(), 1, "{name}: {}", fd.faces[f].label);
            }
        }
    }
}

#[test]
fn sphere_local_classes_follow_components() {
    // On a circle a great 0-sphere is a pair of antipodal points; removing it
    // leaves two arcs, hence two classes.
    let fd = common::faces("four-points-circle");
    let ops = FaceOps::new(&fd).unwrap();
    let p = (0..fd.num_faces()).find(|&f| fd.faces[f].dim == 0).unwrap();
    let cl = ops.local_class(p);
    assert_eq!(cl.blocks.len(), 2);
}

#[test]
fn face_operations_need_separation() {
    let fd = common::faces("torus3");
    let err = FaceOps::new(&fd).err().unwrap();
    assert_eq!(err.kind(), ErrorKind::Restriction);
    assert_eq!(fd.kind, ModelKind::Periodic);
}

#[test]
fn local_category_examples() {
    let fd = common::faces("boolean2");
    let c = fd.chambers()[0];
    let lc = local_category(&fd, c);
    assert_eq!(lc.category.num_objects(), 1);
    assert_eq!(lc.category.num_morphisms(), 0);
    let origin = (0..fd.num_faces()).find(|&f| fd.faces[f].dim == 0).unwrap();
    let lc = local_category(&fd, origin);
    assert_eq!(lc.category.num_objects(), 9);
    lc.category.ensure_valid().unwrap();
    assert!(lc.category.is_poset());

    let torus = common::faces("torus3");
    for v in (0..torus.num_faces()).filter(|&f| torus.faces[f].dim == 0) {
        let lc = local_category(&torus, v);
        lc.category.ensure_valid().unwrap();
        let mut dims = [0; 3];
        for o in lc.category.objects() {
            dims[o.dim] += 1;
        }
        assert_eq!(dims, [1, 6, 6]);
        assert_eq!(lc.local_submanifolds.len(), 3);
        let signs: BTreeSet<_> = lc.signs.iter().collect();
        assert_eq!(signs.len(), 13, "local faces are told apart by their signs");
        // Same local picture as three concurrent lines.
        let concurrent = common::faces("concurrent3");
        let o = (0..concurrent.num_faces()).find(|&f| concurrent.faces[f].dim == 0).unwrap();
        let lc2 = local_category(&concurrent, o);
        assert_eq!(lc2.category.num_morphisms(), lc.category.num_morphisms());
    }
}
