use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::partitions::Partition;

/// Ranks of `x^0, x^1, ..., x^size`.
pub fn power_ranks(x: &ExactMatrix) -> Vec<usize> {
    let n = x.size();
    let mut ranks = Vec::with_capacity(n + 1);
    let mut power = ExactMatrix::identity(n);
    ranks.push(n);
    for _ in 0..n {
        power = &power * x;
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    ranks
}

/// Jordan type of a nilpotent matrix from the rank sequence of its powers:
/// the number of blocks of size `i` is `r_{i-1} − 2 r_i + r_{i+1}`.
pub fn jordan_type(x: &ExactMatrix) -> Result<Partition> {
    let n = x.size();
    let ranks = power_ranks(x);
    if *ranks.last().unwrap() != 0 {
        return Err(Error::NotNilpotent { size: n });
    }
    let r = |i: usize| ranks.get(i).copied().unwrap_or(0);
    let mut parts = Vec::with_capacity(n);
    for i in (1..ranks.len()).rev() {
        let count = r(i - 1) + r(i + 1) - 2 * r(i);
        parts.extend(std::iter::repeat_n(i, count));
    }
    Ok(Partition::new(parts).expect("rank differences form a partition"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(jordan_type(&ExactMatrix::nilpotent_jordan(&[3])).unwrap().to_string(), "[3]");
        assert_eq!(jordan_type(&ExactMatrix::zeros(4)).unwrap().to_string(), "[1,1,1,1]");
        assert_eq!(jordan_type(&ExactMatrix::nilpotent_jordan(&[2, 1])).unwrap().to_string(), "[2,1]");
    }

    #[test]
    fn rejects_non_nilpotent() {
        assert!(matches!(
            jordan_type(&ExactMatrix::identity(2)),
            Err(Error::NotNilpotent { size: 2 })
        ));
    }

    #[test]
    fn conjugation_invariance() {
        let x = ExactMatrix::nilpotent_jordan(&[3, 2, 2]);
        let g = ExactMatrix::from_fn(7, |r, c| crate::exact::int(((r * 3 + c * 5) % 7) as i64 + i64::from(r == c) * 7));
        let g_inv = g.inverse().unwrap();
        let y = &(&g * &x) * &g_inv;
        assert_eq!(jordan_type(&y).unwrap(), jordan_type(&x).unwrap());
    }
}
