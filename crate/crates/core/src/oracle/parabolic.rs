use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::oracle::algebra::ExactMatrixAlgebra;
use crate::polarizations::FlagType;

/// Parabolic subalgebra stabilizing the standard coordinate flag of a given
/// type, with its Levi part and nilradical.
///
/// All three bases are positional: `l` is the block-diagonal part of `g`,
/// `p_u` the strictly block-upper part, `p = l ⊕ p_u`.
#[derive(Debug, Clone)]
pub struct ParabolicData {
    pub flag_type: FlagType,
    /// Block index of every coordinate.
    pub block_of: Vec<usize>,
    pub p_basis: Vec<ExactMatrix>,
    pub l_basis: Vec<ExactMatrix>,
    pub pu_basis: Vec<ExactMatrix>,
}

impl ParabolicData {
    pub fn dim_p(&self) -> usize {
        self.p_basis.len()
    }

    pub fn dim_l(&self) -> usize {
        self.l_basis.len()
    }

    pub fn dim_pu(&self) -> usize {
        self.pu_basis.len()
    }

    fn supported_where(&self, x: &ExactMatrix, ok: impl Fn(usize, usize) -> bool) -> bool {
        x.support().all(|(i, j)| ok(self.block_of[i], self.block_of[j]))
    }

    /// Positional test `x ∈ p_u` (for `x` already known to lie in `g`).
    pub fn in_pu(&self, x: &ExactMatrix) -> bool {
        self.supported_where(x, |a, b| a < b)
    }

    pub fn in_p(&self, x: &ExactMatrix) -> bool {
        self.supported_where(x, |a, b| a <= b)
    }

    pub fn in_l(&self, x: &ExactMatrix) -> bool {
        self.supported_where(x, |a, b| a == b)
    }
}

pub fn parabolic_from_flag(alg: &ExactMatrixAlgebra, ft: &FlagType) -> Result<ParabolicData> {
    if !ft.is_valid_for(alg.type_rank) {
        return Err(Error::InvalidFlagType {
            type_rank: alg.type_rank.to_string(),
            flag_type: ft.to_string(),
        });
    }
    let block_of: Vec<usize> = ft
        .blocks()
        .iter()
        .enumerate()
        .flat_map(|(b, &len)| std::iter::repeat_n(b, len))
        .collect();

    let mut l_basis = Vec::new();
    let mut pu_basis = Vec::new();
    for x in &alg.basis {
        let (i, j) = x.support().next().expect("basis elements are nonzero");
        let (a, b) = (block_of[i], block_of[j]);
        if a == b {
            l_basis.push(x.clone());
        } else if a < b {
            pu_basis.push(x.clone());
        }
    }
    let p_basis = l_basis.iter().chain(&pu_basis).cloned().collect();
    Ok(ParabolicData {
        flag_type: ft.clone(),
        block_of,
        p_basis,
        l_basis,
        pu_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::build_algebra;

    fn parabolic(t: &str, ft: &str) -> ParabolicData {
        let alg = build_algebra(t.parse().unwrap());
        parabolic_from_flag(&alg, &ft.parse().unwrap()).unwrap()
    }

    #[test]
    fn dimension_examples() {
        let b = parabolic("A1", "(1,1)");
        assert_eq!((b.dim_p(), b.dim_pu()), (2, 1));
        let c = parabolic("C2", "(1,2,1)");
        assert_eq!((c.dim_p(), c.dim_l(), c.dim_pu()), (7, 4, 3));
        assert_eq!(parabolic("A2", "(2,1)").dim_pu(), 2);
    }

    #[test]
    fn rejects_non_isotropic_flags() {
        let alg = build_algebra("C2".parse().unwrap());
        assert!(parabolic_from_flag(&alg, &"(1,3)".parse().unwrap()).is_err());
        assert!(parabolic_from_flag(&alg, &"(1,1,1)".parse().unwrap()).is_err());
    }

    #[test]
    fn bases_are_positional() {
        let pd = parabolic("D4", "(1,3,3,1)");
        assert!(pd.pu_basis.iter().all(|x| pd.in_pu(x)));
        assert!(pd.l_basis.iter().all(|x| pd.in_l(x)));
        assert!(pd.p_basis.iter().all(|x| pd.in_p(x)));
    }
}
