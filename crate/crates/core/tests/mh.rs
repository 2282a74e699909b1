mod common;

use arrangement_core::face_ops::FaceOps;
use arrangement_core::mh::*;
use arrangement_core::salvetti::{dual_complex, salvetti_cw, Cell, CellGraphComplex};
use arrangement_core::Strategy;

const S: Strategy = Strategy::Parallel;

fn vertex(i: usize) -> Cell {
    Cell {
        dim: 0,
        label: format!("v{i}"),
        vertices: vec![i],
        subcells: vec![i],
        ends: None,
    }
}

/// A polygon with `n` vertices filled by one 2-cell.
fn polygon(n: usize) -> CellGraphComplex {
    let mut cells: Vec<Cell> = (0..n).map(vertex).collect();
    for i in 0..n {
        let (a, b) = (i, (i + 1) % n);
        let mut vs = vec![a, b];
        vs.sort_unstable();
        let mut sub = vs.clone();
        sub.push(n + i);
        cells.push(Cell {
            dim: 1,
            label: format!("e{i}"),
            vertices: vs,
            subcells: sub,
            ends: Some((a, b)),
        });
    }
    cells.push(Cell {
        dim: 2,
        label: "p".into(),
        vertices: (0..n).collect(),
        subcells: (0..=2 * n).collect(),
        ends: None,
    });
    CellGraphComplex::new(cells, true).unwrap()
}

#[test]
fn distances() {
    let sq = polygon(4);
    assert_eq!(graph_distance(&sq, 0, 1), Some(1));
    assert_eq!(graph_distance(&sq, 0, 2), Some(2));
    let fd = common::faces("generic3");
    let d = dual_complex(&fd).unwrap();
    let ops = FaceOps::new(&fd).unwrap();
    // Dual vertices are the chambers in face order.
    let mut order: Vec<usize> = (0..fd.num_faces()).collect();
    order.sort_by_key(|&f| (fd.codim(f), f));
    let cs = fd.chambers();
    let mut found = false;
    for &a in cs {
        for &b in cs {
            if ops.distance(a, b).unwrap() == 3 {
                let pa = order.iter().position(|&f| f == a).unwrap();
                let pb = order.iter().position(|&f| f == b).unwrap();
                assert_eq!(graph_distance(&d, pa, pb), Some(3));
                found = true;
            }
        }
    }
    assert!(found);
}

#[test]
fn polygons() {
    let sq = polygon(4);
    let r = check_qmh(&sq, S).unwrap();
    assert!(r.qmh && r.bipartite);
    let far = r.witnesses.iter().find(|w| w.vertex == 0 && w.cell == 8).unwrap();
    assert_eq!(far.upper, 2);
    let tri = polygon(3);
    let r = check_qmh(&tri, S).unwrap();
    assert!(!r.qmh);
    assert!(!r.bipartite);
    assert!(!even_circuits(&tri));
    assert!(r.certificates.iter().all(|c| c.recheck(&tri)));
}

#[test]
fn octagon_counterexamples() {
    let nomh = octagon_example(false);
    let r = check_lmh_mh(&nomh, S).unwrap();
    assert_eq!((r.qmh, r.lmh, r.mh), (true, true, false));
    assert!(!r.certificates.is_empty());
    assert!(r.certificates.iter().all(|c| c.recheck(&nomh)));

    let nolmh = octagon_example(true);
    let r = check_lmh_mh(&nolmh, S).unwrap();
    assert_eq!((r.qmh, r.lmh, r.mh), (true, false, false));
    assert!(r.certificates.iter().all(|c| c.recheck(&nolmh)));
    assert!(check_qmh(&nolmh, S).unwrap().qmh);
}

#[test]
fn octagon_fixture_files_match() {
    for (name, trapezoid) in [("octagon-nomh", false), ("octagon-nolmh", true)] {
        let text = std::fs::read_to_string(common::fixture_path(name)).unwrap();
        let q = CellGraphComplex::from_json_str(&text).unwrap();
        assert_eq!(q, octagon_example(trapezoid));
    }
}

#[test]
fn duals_and_salvetti_complexes_are_mh() {
    let mut names = common::structured();
    names.push(("grid-torus", common::faces("grid-torus")));
    for (name, fd) in names {
        for (what, q) in [("dual", dual_complex(&fd).unwrap()), ("salvetti", salvetti_cw(&fd, S).unwrap())] {
            let r = check_lmh_mh(&q, S).unwrap();
            assert!(r.qmh && r.lmh && r.mh, "{name} {what}: {:?}", &r.certificates[..r.certificates.len().min(3)]);
            assert!(r.bipartite, "{name} {what}");
            assert!(local_distances_agree(&q), "{name} {what}");
        }
    }
}

#[test]
fn three_circle_torus_is_not_qmh() {
    // Outside the separating hypotheses: recorded, with re-checked certificates.
    let fd = common::faces("torus3");
    for q in [dual_complex(&fd).unwrap(), salvetti_cw(&fd, S).unwrap()] {
        let r = check_lmh_mh(&q, S).unwrap();
        assert!(!r.qmh);
        assert!(r.bipartite);
        assert!(r.certificates.iter().all(|c| c.recheck(&q)));
    }
}

#[test]
fn qmh_implies_even_circuits() {
    for (name, fd) in common::regular() {
        for q in [dual_complex(&fd).unwrap(), salvetti_cw(&fd, S).unwrap()] {
            let r = check_qmh(&q, S).unwrap();
            assert!(!r.qmh || even_circuits(&q), "{name}");
        }
    }
}

#[test]
fn dual_witnesses_are_face_actions() {
    for (name, fd) in common::separated() {
        let ops = FaceOps::new(&fd).unwrap();
        let d = dual_complex(&fd).unwrap();
        let mut order: Vec<usize> = (0..fd.num_faces()).collect();
        order.sort_by_key(|&f| (fd.codim(f), f));
        let r = check_lmh_mh(&d, S).unwrap();
        for w in &r.witnesses {
            let c = order[w.vertex];
            let f = order[w.cell];
            let pos = |x: usize| order.iter().position(|&y| y == x).unwrap();
            assert_eq!(w.lower, pos(ops.face_action(f, c).unwrap()), "{name}");
            assert_eq!(w.upper, pos(ops.far_action(f, c).unwrap()), "{name}");
        }
    }
}

#[test]
fn salvetti_skeleton_is_bipartite() {
    let q = salvetti_cw(&common::faces("generic3"), S).unwrap();
    assert!(even_circuits(&q));
}

#[test]
fn non_regular_complexes_are_refused() {
    let mut q = polygon(4);
    q.regular = false;
    assert!(check_lmh_mh(&q, S).is_err());
}
