//! Sequential against data-parallel execution on the heavier pipeline stages.

use std::hint::black_box;
use std::time::Duration;

use arrangement_core::complex::nerve_homology;
use arrangement_core::mh::check_lmh_mh;
use arrangement_core::models::{BuildOptions, FaceData, Model};
use arrangement_core::salvetti::{salvetti_category, salvetti_cw, salvetti_poset};
use arrangement_core::Strategy;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn model(name: &str) -> Model {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    Model::from_json_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn faces(name: &str) -> FaceData {
    model(name).build(&BuildOptions::default(), Strategy::default()).unwrap()
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumeration");
    for name in ["six-lines", "five-planes"] {
        let m = model(name);
        for (label, s) in STRATEGIES {
            g.bench_with_input(BenchmarkId::new(label, name), &m, |b, m| {
                b.iter(|| m.build(&BuildOptions::default(), s).unwrap())
            });
        }
    }
    g.finish();
}

fn salvetti(c: &mut Criterion) {
    let mut g = c.benchmark_group("salvetti_poset");
    let fd = faces("five-planes");
    for (label, s) in STRATEGIES {
        g.bench_function(label, |b| b.iter(|| salvetti_poset(black_box(&fd), s).unwrap()));
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("nerve_homology");
    let sal = salvetti_category(&faces("simplex3"), Strategy::default()).unwrap();
    for (label, s) in STRATEGIES {
        g.bench_function(label, |b| b.iter(|| nerve_homology(black_box(&sal.category), s).unwrap()));
    }
    g.finish();
}

fn mh(c: &mut Criterion) {
    let mut g = c.benchmark_group("mh_check");
    let q = salvetti_cw(&faces("four-great-circles"), Strategy::default()).unwrap();
    for (label, s) in STRATEGIES {
        g.bench_function(label, |b| b.iter(|| check_lmh_mh(black_box(&q), s).unwrap()));
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(3));
    targets = enumeration, salvetti, homology, mh
}
criterion_main!(benches);
