use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::chain::ChainComplex;
use super::snf::invariant_factors;
use crate::exec::Strategy;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    #[serde(serialize_with = "crate::rational::ser_bigint_table")]
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn betti(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }
}

pub fn homology(c: &ChainComplex, strategy: Strategy) -> HomologyResult {
    let n = c.ranks.len();
    let factors: Vec<Vec<BigInt>> = strategy.map_range(n, |k| {
        if k == 0 {
            Vec::new()
        } else {
            invariant_factors(&c.boundaries[k])
        }
    });
    let rank = |k: usize| factors.get(k).map_or(0, Vec::len);
    let betti = (0..n).map(|k| c.ranks[k] - rank(k) - rank(k + 1)).collect();
    let torsion = (0..n)
        .map(|k| {
            factors
                .get(k + 1)
                .map(|f| f.iter().filter(|d| !d.is_one()).cloned().collect())
                .unwrap_or_default()
        })
        .collect();
    HomologyResult { betti, torsion }
}

/// Homology of the nerve of a category.
pub fn nerve_homology(cat: &super::AcyclicCategory, strategy: Strategy) -> crate::error::Result<HomologyResult> {
    let t = super::nerve(cat, strategy)?;
    Ok(homology(&super::chain_complex(&t)?, strategy))
}
