use arrangement_core::complex::{
    barycentric_subdivision, chain_complex, euler_characteristic, homology, nerve, nerve_homology, snf,
    Poset, SparseMatrix,
};
use arrangement_core::models::{
    enumerate_faces, whitney_oracle, EnumerationOptions, Hyperplane, HyperplaneArrangement, Sign, SignVector,
};
use arrangement_core::salvetti::{bounded_chambers, salvetti_category};
use arrangement_core::Strategy as Exec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const S: Exec = Exec::Sequential;

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term
        } else {
            total -= term
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

/// Determinantal divisors: `D_k` is the gcd of all `k x k` minors.
fn minor_gcds(m: &[Vec<i64>]) -> Vec<BigInt> {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<BigInt>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| BigInt::from(m[i][j])).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

fn stirling2(n: usize, k: usize) -> u64 {
    let mut t = vec![vec![0u64; k + 1]; n + 1];
    t[0][0] = 1;
    for i in 1..=n {
        for j in 1..=k.min(i) {
            t[i][j] = j as u64 * t[i - 1][j] + t[i - 1][j - 1];
        }
    }
    t[n][k]
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Neg), Just(Sign::Zero), Just(Sign::Pos)]
}

fn sign_vectors(len: usize) -> impl Strategy<Value = (SignVector, SignVector, SignVector)> {
    let v = || proptest::collection::vec(sign(), len).prop_map(SignVector);
    (v(), v(), v())
}

fn random_poset() -> impl Strategy<Value = Poset> {
    (1usize..7)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut rel = Vec::new();
            let mut k = 0;
            for j in 0..n {
                for i in 0..j {
                    if bits[k] {
                        rel.push((i, j));
                    }
                    k += 1;
                }
            }
            Poset::from_relation((0..n).map(|i| format!("p{i}")).collect(), vec![None; n], rel).unwrap()
        })
}

fn random_lines() -> impl Strategy<Value = HyperplaneArrangement> {
    proptest::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), 1..5).prop_filter_map("degenerate", |ls| {
        let hs = ls.into_iter().map(|(a, b, c)| Hyperplane::from_ints(&[a, b], c)).collect();
        HyperplaneArrangement::new(2, hs).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_form_matches_minor_gcds(m in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 4), 1..5)) {
        let factors = snf::invariant_factors(&SparseMatrix::from_dense(&m));
        let d = minor_gcds(&m);
        prop_assert_eq!(factors.len(), d.len());
        let mut prev = BigInt::one();
        for (f, dk) in factors.iter().zip(&d) {
            prop_assert!(f.is_positive());
            prop_assert_eq!(f * &prev, dk.clone());
            prev = dk.clone();
        }
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn sign_composition_laws((x, y, z) in sign_vectors(5)) {
        prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
        prop_assert_eq!(x.compose(&x), x.clone());
        prop_assert_eq!(x.compose(&y).compose(&x), x.compose(&y));
        prop_assert_eq!(x.compose(&y).negate(), x.negate().compose(&y.negate()));
        prop_assert!(x.conforms_to(&x.compose(&y)));
        let zeros: Vec<usize> = x.zero_set().into_iter().filter(|i| y.zero_set().contains(i)).collect();
        prop_assert_eq!(x.compose(&y).zero_set(), zeros);
    }

    #[test]
    fn subdivision_counts_follow_ordered_partitions(p in random_poset()) {
        let cat = p.to_category();
        let t = nerve(&cat, S).unwrap();
        let sd = barycentric_subdivision(&cat, S).unwrap().to_category();
        let u = nerve(&sd, S).unwrap();
        let counts = t.counts();
        let expected: Vec<u64> = (0..counts.len())
            .map(|k| {
                let mut fact = 1u64;
                for i in 1..=k + 1 {
                    fact *= i as u64;
                }
                counts.iter().enumerate().map(|(d, &n)| n as u64 * fact * stirling2(d + 1, k + 1)).sum()
            })
            .collect();
        prop_assert_eq!(u.counts().into_iter().map(|n| n as u64).collect::<Vec<_>>(), expected);
        prop_assert_eq!(nerve_homology(&cat, S).unwrap(), nerve_homology(&sd, S).unwrap());
    }

    #[test]
    fn boundaries_square_to_zero_and_euler_agrees(p in random_poset()) {
        let cat = p.to_category();
        let t = nerve(&cat, S).unwrap();
        t.check_identities().unwrap();
        let c = chain_complex(&t).unwrap();
        c.check_boundary_squared().unwrap();
        let h = homology(&c, S);
        prop_assert_eq!(c.euler_characteristic(), euler_characteristic(&t));
        prop_assert_eq!(h.euler_characteristic(), euler_characteristic(&t));
        prop_assert_eq!(h.betti(0), p.len() - union_find_merges(&p));
        prop_assert_eq!(&h, &homology(&c, Exec::Parallel));
    }

    #[test]
    fn random_line_arrangements_match_the_oracle(a in random_lines()) {
        let fd = enumerate_faces(&a, &EnumerationOptions::default(), S).unwrap();
        let w = whitney_oracle(&a);
        prop_assert_eq!(fd.chambers().len() as u64, w.chambers);
        let h = salvetti_category(&fd, S).unwrap().homology(S).unwrap();
        prop_assert!(h.is_torsion_free());
        let betti: Vec<u64> = h.betti.iter().map(|&b| b as u64).collect();
        let mut oracle = w.betti.clone();
        oracle.resize(betti.len(), 0);
        prop_assert_eq!(betti, oracle);
        if a.rank() == a.dim() {
            prop_assert_eq!(bounded_chambers(&fd, S).unwrap().bounded.len() as u64, w.bounded);
        }
    }
}

fn union_find_merges(p: &Poset) -> usize {
    let mut parent: Vec<usize> = (0..p.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let mut merges = 0;
    for &(a, b) in p.covers() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            merges += 1;
        }
    }
    merges
}
