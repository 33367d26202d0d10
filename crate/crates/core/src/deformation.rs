//! The family `V_t = t·z + p_u` degenerating `G/L` (fibers `t ≠ 0`) to
//! `T*(G/P)` (fiber `t = 0`), checked with exact linear algebra at the level
//! of Lie algebras.

use num_integer::Integer;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, minimal_polynomial_is_squarefree, rational_string, span_rank, ExactMatrix, Rational};
use crate::oracle::{
    centralizer_dimension, check_membership, jordan_type, random_combination, ExactMatrixAlgebra, ParabolicData,
    BASE_COEFFICIENT_RANGE,
};
use crate::partitions::{Family, LieTypeRank, Partition};
use crate::polarizations::{levi_class_of, FlagType};

/// A block-scalar element `z` of the center of `l` whose centralizer in `g`
/// is exactly `l`.
#[derive(Debug, Clone)]
pub struct CentralElement {
    pub type_rank: LieTypeRank,
    pub z: ExactMatrix,
    pub parabolic: ParabolicData,
}

impl CentralElement {
    pub fn flag_type(&self) -> &FlagType {
        &self.parabolic.flag_type
    }
}

/// Block scalars of `z`, one per flag block.
pub fn block_scalars(t: LieTypeRank, ft: &FlagType) -> Vec<i64> {
    let k = ft.len();
    match t.family() {
        Family::A => {
            let n = t.ambient_dim() as i64;
            let mu: Vec<i64> = (0..k).map(|b| (k - 1 - b) as i64).collect();
            let weighted: i64 = ft.blocks().iter().zip(&mu).map(|(&p, &m)| p as i64 * m).sum();
            let lambda: Vec<i64> = mu.iter().map(|m| n * m - weighted).collect();
            let g = lambda.iter().fold(0i64, |acc, l| acc.gcd(l));
            if g == 0 {
                lambda
            } else {
                lambda.into_iter().map(|l| l / g).collect()
            }
        }
        _ => {
            let half = k / 2;
            (0..k)
                .map(|b| {
                    if b < half {
                        (half - b) as i64
                    } else if b >= k - half {
                        -((b - (k - half) + 1) as i64)
                    } else {
                        0
                    }
                })
                .collect()
        }
    }
}

fn certification(ft: &FlagType, what: &str) -> Error {
    Error::Certification(format!("central element for {ft}: {what}"))
}

pub fn central_element(alg: &ExactMatrixAlgebra, pd: &ParabolicData) -> Result<CentralElement> {
    let t = alg.type_rank;
    let ft = &pd.flag_type;
    let scalars = block_scalars(t, ft);
    let diag: Vec<Rational> = pd.block_of.iter().map(|&b| int(scalars[b])).collect();
    let z = ExactMatrix::diagonal(&diag);
    if !check_membership(alg, &z)? {
        return Err(certification(ft, "not in the algebra"));
    }
    if pd.l_basis.iter().any(|y| !z.bracket(y).is_zero()) {
        return Err(certification(ft, "not central in l"));
    }
    if centralizer_dimension(alg, &z)? != pd.dim_l() {
        return Err(certification(ft, "centralizer larger than l"));
    }
    Ok(CentralElement {
        type_rank: t,
        z,
        parabolic: pd.clone(),
    })
}

/// `[y, t·z + u] ∈ p_u` for all basis elements `y ∈ p`, `u ∈ p_u`: the fiber
/// is stable under `p`, and `[l, z] = 0`.
pub fn bracket_stability_check(ce: &CentralElement, t: &Rational) -> bool {
    let pd = &ce.parabolic;
    let tz = ce.z.scale(t);
    pd.l_basis.iter().all(|y| y.bracket(&ce.z).is_zero())
        && pd.p_basis.iter().all(|y| {
            pd.in_pu(&y.bracket(&tz)) && pd.pu_basis.iter().all(|u| pd.in_pu(&y.bracket(u)))
        })
}

/// Rank of `y ↦ [y, t·z]` on `p`.
pub fn tangent_rank(ce: &CentralElement, t: &Rational) -> usize {
    let tz = ce.z.scale(t);
    let images: Vec<ExactMatrix> = ce.parabolic.p_basis.iter().map(|y| y.bracket(&tz)).collect();
    span_rank(&images)
}

/// `dim [p, t·z] = dim p_u`: the `P`-orbit of `t·z` is open in its fiber.
pub fn tangent_space_check(ce: &CentralElement, t: &Rational) -> bool {
    !t.is_zero() && tangent_rank(ce, t) == ce.parabolic.dim_pu()
}

/// Random elements of the fiber share the characteristic polynomial of `t·z`.
pub fn charpoly_constancy_check(ce: &CentralElement, t: &Rational, samples: usize, seed: u64) -> bool {
    let m = ce.z.size();
    let tz = ce.z.scale(t);
    let target = tz.charpoly();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let u = random_combination(&ce.parabolic.pu_basis, m, &mut rng, BASE_COEFFICIENT_RANGE);
        (&tz + &u).charpoly() == target
    })
}

/// `dim g − dim l = 2·(dim g − dim p)` and `dim p_u = dim g − dim p`.
pub fn dimension_balance_check(alg: &ExactMatrixAlgebra, pd: &ParabolicData) -> bool {
    let g = alg.dim();
    g >= pd.dim_p() && g - pd.dim_l() == 2 * (g - pd.dim_p()) && pd.dim_pu() == g - pd.dim_p()
}

/// Generic fibers agree: both parabolics have the same Levi class.
pub fn common_levi_match(ce1: &CentralElement, ce2: &CentralElement) -> bool {
    ce1.type_rank == ce2.type_rank
        && levi_class_of(ce1.type_rank, ce1.flag_type()) == levi_class_of(ce2.type_rank, ce2.flag_type())
}

/// For `t ≠ 0`: `t·z` is semisimple (squarefree minimal polynomial).
pub fn generic_semisimplicity_check(ce: &CentralElement, t: &Rational) -> bool {
    !t.is_zero() && minimal_polynomial_is_squarefree(&ce.z.scale(t))
}

/// For `t = 0`: sampled elements of `p_u` are nilpotent with Jordan type
/// dominated by `richardson`.
pub fn central_fiber_check(ce: &CentralElement, richardson: &Partition, samples: usize, seed: u64) -> bool {
    let m = ce.z.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let u = random_combination(&ce.parabolic.pu_basis, m, &mut rng, BASE_COEFFICIENT_RANGE);
        jordan_type(&u).is_ok_and(|jt| richardson.dominates(&jt))
    })
}

/// The exact sample set of parameters used by default.
pub fn default_t_values() -> Vec<Rational> {
    vec![int(0), int(1), int(-1), int(2), Rational::new(1.into(), 2.into())]
}

/// Checks on one fiber of the family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCertificate {
    #[serde(with = "rational_string")]
    pub t: Rational,
    pub bracket_stable: bool,
    /// Not required on the central fiber.
    pub tangent_full: bool,
    pub charpoly_constant: bool,
    pub dimension_balanced: bool,
    /// `t ≠ 0`: squarefree minimal polynomial of `t·z`. `t = 0`: sampled
    /// Jordan types dominated by the Richardson partition (when supplied).
    pub fiber_structure: bool,
}

impl FiberCertificate {
    pub fn passed(&self) -> bool {
        self.bracket_stable
            && (self.t.is_zero() || self.tangent_full)
            && self.charpoly_constant
            && self.dimension_balanced
            && self.fiber_structure
    }

    /// Names of the failing checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.bracket_stable {
            out.push("bracket_stability");
        }
        if !self.t.is_zero() && !self.tangent_full {
            out.push("tangent_space");
        }
        if !self.charpoly_constant {
            out.push("charpoly_constancy");
        }
        if !self.dimension_balanced {
            out.push("dimension_balance");
        }
        if !self.fiber_structure {
            out.push(if self.t.is_zero() { "central_fiber" } else { "generic_semisimplicity" });
        }
        out
    }
}

/// Runs every fiber check at parameter `t`.
pub fn certify_fiber(
    alg: &ExactMatrixAlgebra,
    ce: &CentralElement,
    t: &Rational,
    samples: usize,
    seed: u64,
    richardson: Option<&Partition>,
) -> FiberCertificate {
    let fiber_structure = if t.is_zero() {
        richardson.is_none_or(|r| central_fiber_check(ce, r, samples, seed ^ 0x5A5A))
    } else {
        generic_semisimplicity_check(ce, t)
    };
    FiberCertificate {
        t: t.clone(),
        bracket_stable: bracket_stability_check(ce, t),
        tangent_full: !t.is_zero() && tangent_space_check(ce, t),
        charpoly_constant: charpoly_constancy_check(ce, t, samples, seed),
        dimension_balanced: dimension_balance_check(alg, &ce.parabolic),
        fiber_structure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;
    use crate::oracle::{build_algebra, parabolic_from_flag};

    fn ce(t: &str, ft: &str) -> (ExactMatrixAlgebra, CentralElement) {
        let alg = build_algebra(t.parse().unwrap());
        let pd = parabolic_from_flag(&alg, &ft.parse().unwrap()).unwrap();
        let ce = central_element(&alg, &pd).unwrap();
        (alg, ce)
    }

    fn diag(ce: &CentralElement) -> Vec<String> {
        (0..ce.z.size()).map(|i| ce.z.get(i, i).to_string()).collect()
    }

    #[test]
    fn central_element_examples() {
        assert_eq!(diag(&ce("A1", "(1,1)").1), ["1", "-1"]);
        assert_eq!(diag(&ce("A2", "(2,1)").1), ["1", "1", "-2"]);
        assert_eq!(diag(&ce("C2", "(1,2,1)").1), ["1", "0", "0", "-1"]);
        let (alg, c) = ce("C2", "(1,2,1)");
        assert_eq!(centralizer_dimension(&alg, &c.z).unwrap(), 4);
        assert_eq!(diag(&ce("A3", "(4)").1), ["0", "0", "0", "0"]);
    }

    #[test]
    fn fiber_examples() {
        let r = |s: &str| parse_rational(s).unwrap();
        let (_, b) = ce("A1", "(1,1)");
        assert!(bracket_stability_check(&b, &r("1")));
        assert!(tangent_space_check(&b, &r("1")));
        assert!(charpoly_constancy_check(&b, &r("1"), 10, 3));
        let (_, c) = ce("C2", "(1,2,1)");
        assert!(bracket_stability_check(&c, &r("3")));
        assert!(bracket_stability_check(&c, &r("0")));
        assert!(charpoly_constancy_check(&c, &r("2"), 20, 1));
        assert!(charpoly_constancy_check(&c, &r("0"), 20, 1));
        let (_, a) = ce("A2", "(2,1)");
        assert_eq!(tangent_rank(&a, &r("1")), 2);
        let (alg, c) = ce("C2", "(2,2)");
        assert_eq!(tangent_rank(&c, &r("5")), 3);
        assert!(dimension_balance_check(&alg, &c.parabolic));
        assert!(!tangent_space_check(&c, &r("0")));
    }

    #[test]
    fn levi_match_examples() {
        assert!(common_levi_match(&ce("A2", "(2,1)").1, &ce("A2", "(1,2)").1));
        assert!(!common_levi_match(&ce("A2", "(1,1,1)").1, &ce("A2", "(2,1)").1));
        assert!(common_levi_match(&ce("D4", "(4,4)").1, &ce("D4", "(4,4)").1));
    }

    #[test]
    fn certificate_passes() {
        let (alg, c) = ce("B2", "(1,3,1)");
        let rich: Partition = "[3,1,1]".parse().unwrap();
        for t in default_t_values() {
            let cert = certify_fiber(&alg, &c, &t, 5, 9, Some(&rich));
            assert!(cert.passed(), "{cert:?}");
        }
    }
}
