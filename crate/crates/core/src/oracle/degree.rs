use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{int, kernel, ExactMatrix, Rational};
use crate::oracle::algebra::ExactMatrixAlgebra;
use crate::oracle::jordan::jordan_type;
use crate::oracle::parabolic::ParabolicData;
use crate::oracle::richardson::{random_combination, BASE_COEFFICIENT_RANGE};
use crate::partitions::{Family, Partition};

const DRAWS: usize = 24;

fn apply(m: &ExactMatrix, v: &[Rational]) -> Vec<Rational> {
    (0..m.size())
        .map(|r| v.iter().enumerate().fold(Rational::zero(), |acc, (c, x)| acc + m.get(r, c) * x))
        .collect()
}

fn pairing(form: &ExactMatrix, u: &[Rational], v: &[Rational]) -> Rational {
    let fv = apply(form, v);
    u.iter().zip(&fv).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// The involution acting by −1 on one nondegenerate Jordan chain of length
/// `part` and by +1 on its orthogonal complement. It centralizes `x` and
/// represents the component of the centralizer attached to `part`.
fn chain_involution(
    form: &ExactMatrix,
    x: &ExactMatrix,
    part: usize,
    rng: &mut impl Rng,
) -> Result<ExactMatrix> {
    let m = x.size();
    let top = kernel(&x.pow(part));
    for draw in 0..DRAWS {
        let range = BASE_COEFFICIENT_RANGE << (draw / 8);
        let mut w = vec![Rational::zero(); m];
        for b in &top {
            let c = int(rng.gen_range(-range..=range));
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi += &c * bi;
            }
        }
        let mut chain = vec![w];
        for _ in 1..part {
            let next = apply(x, chain.last().expect("chain is nonempty"));
            chain.push(next);
        }
        if pairing(form, &chain[0], &chain[part - 1]).is_zero() {
            continue;
        }
        let gram = ExactMatrix::from_fn(part, |a, b| pairing(form, &chain[a], &chain[b]));
        let inv = gram.inverse().ok_or_else(|| Error::Certification("singular chain Gram matrix".into()))?;
        // g = I − 2·W·G⁻¹·Wᵀ·Φ, column by column.
        let mut g = ExactMatrix::identity(m);
        for col in 0..m {
            let mut e = vec![Rational::zero(); m];
            e[col] = int(1);
            let coords: Vec<Rational> = chain.iter().map(|c| pairing(form, c, &e)).collect();
            let solved = apply(&inv, &coords);
            for (a, s) in solved.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                for (r, cv) in chain[a].iter().enumerate() {
                    if !cv.is_zero() {
                        let cur = g.get(r, col) - int(2) * s * cv;
                        g.set(r, col, cur);
                    }
                }
            }
        }
        if &g * x != x * &g || &(&g.transpose() * form) * &g != *form {
            return Err(Error::Certification(format!("chain involution for part {part} is not an isometry centralizing x")));
        }
        return Ok(g);
    }
    Err(Error::Genericity {
        observed: vec![(format!("no nondegenerate chain of length {part}"), DRAWS)],
    })
}

/// Whether the moment map `T*(G/P) → closure of the Richardson orbit` is
/// birational.
///
/// For generic `x ∈ p_u` the fiber is `Z_G(x)/Z_P(x)` and the identity
/// components agree, so the map has degree one exactly when every component
/// of `Z_G(x)` meets `P`. Component representatives are products of chain
/// involutions: one per distinct even part in type C, one per distinct odd
/// part in type B, and products of two of them in type D so that the
/// determinant stays 1. Type A centralizers are connected.
pub fn springer_birational(
    alg: &ExactMatrixAlgebra,
    pd: &ParabolicData,
    richardson: &Partition,
    seed: u64,
) -> Result<bool> {
    let family = alg.family();
    let Some(form) = alg.form.as_ref() else {
        return Ok(true);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = None;
    for draw in 0..DRAWS {
        let candidate = random_combination(&pd.pu_basis, alg.ambient_dim, &mut rng, BASE_COEFFICIENT_RANGE << (draw / 8));
        if jordan_type(&candidate)? == *richardson {
            x = Some(candidate);
            break;
        }
    }
    let x = x.ok_or_else(|| Error::Genericity {
        observed: vec![(format!("no sample of type {richardson}"), DRAWS)],
    })?;

    let mut parts: Vec<usize> = richardson
        .parts()
        .iter()
        .copied()
        .filter(|p| (p % 2 == 0) == (family == Family::C))
        .collect();
    parts.dedup();
    let involutions = parts
        .iter()
        .map(|&p| chain_involution(form, &x, p, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let generators: Vec<ExactMatrix> = if family == Family::D {
        involutions.iter().skip(1).map(|g| &involutions[0] * g).collect()
    } else {
        involutions
    };
    Ok(generators.iter().all(|g| pd.in_p(g)))
}
