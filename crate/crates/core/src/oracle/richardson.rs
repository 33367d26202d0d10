use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{int, ExactMatrix};
use crate::oracle::algebra::ExactMatrixAlgebra;
use crate::oracle::jordan::jordan_type;
use crate::oracle::parabolic::ParabolicData;
use crate::partitions::Partition;

/// Coefficient range of the first sampling round; it doubles every round.
pub const BASE_COEFFICIENT_RANGE: i64 = 4;
pub const SAMPLING_ROUNDS: u32 = 3;

/// Deterministic per-task seed: splitmix64 finalizer over the combined words.
pub fn derive_seed(seed: u64, index: u64, attempt: u64) -> u64 {
    let mut z = seed
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(attempt.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random integer combination of `basis` with coefficients in `[-range, range]`.
pub fn random_combination(basis: &[ExactMatrix], size: usize, rng: &mut impl Rng, range: i64) -> ExactMatrix {
    let mut x = ExactMatrix::zeros(size);
    for b in basis {
        let c = rng.gen_range(-range..=range);
        if c != 0 {
            x.add_scaled(b, &int(c));
        }
    }
    x
}

/// Jordan type of a generic element of `p_u`, i.e. the partition of the
/// Richardson orbit of the parabolic.
///
/// Draws `trials` random elements per round over [`SAMPLING_ROUNDS`] rounds
/// with doubling coefficient ranges and returns the dominance maximum of all
/// observed Jordan types. The maximum must be attained by at least
/// `⌈trials/2⌉` samples of the final round; otherwise the call fails with
/// [`Error::Genericity`] carrying the observed spectrum.
pub fn richardson_partition(alg: &ExactMatrixAlgebra, pd: &ParabolicData, seed: u64, trials: usize) -> Result<Partition> {
    if trials < 3 {
        return Err(Error::Config(format!("trials must be at least 3, got {trials}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spectrum: BTreeMap<Partition, usize> = BTreeMap::new();
    let mut final_round = Vec::with_capacity(trials);
    for round in 0..SAMPLING_ROUNDS {
        let range = BASE_COEFFICIENT_RANGE << round;
        for _ in 0..trials {
            let x = random_combination(&pd.pu_basis, alg.ambient_dim, &mut rng, range);
            let jt = jordan_type(&x)?;
            *spectrum.entry(jt.clone()).or_default() += 1;
            if round + 1 == SAMPLING_ROUNDS {
                final_round.push(jt);
            }
        }
    }
    let observed = || spectrum.iter().map(|(p, c)| (p.to_string(), *c)).collect();
    let max = spectrum
        .keys()
        .find(|cand| spectrum.keys().all(|other| cand.dominates(other)))
        .cloned()
        .ok_or_else(|| Error::Genericity { observed: observed() })?;
    let hits = final_round.iter().filter(|p| **p == max).count();
    if hits < trials.div_ceil(2) {
        return Err(Error::Genericity { observed: observed() });
    }
    Ok(max)
}
