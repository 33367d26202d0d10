use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, span_rank, ExactMatrix, Rational};
use crate::partitions::{Family, LieTypeRank};

/// A classical Lie algebra realized by exact matrices on `C^m`.
///
/// Forms are anti-diagonal: `φ(e_i, e_{m-1-i}) = ε_i` with `ε_i = 1` except in
/// type C where `ε_i = −1` for `i ≥ m/2`. With this choice coordinate flags of
/// symmetric type are isotropic and their stabilizers are block upper
/// triangular.
#[derive(Debug, Clone)]
pub struct ExactMatrixAlgebra {
    pub type_rank: LieTypeRank,
    pub ambient_dim: usize,
    pub form: Option<ExactMatrix>,
    pub basis: Vec<ExactMatrix>,
}

impl ExactMatrixAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn family(&self) -> Family {
        self.type_rank.family()
    }

    /// `ε_i` of the anti-diagonal form (1 in types A, B, D).
    pub fn form_sign(&self, i: usize) -> i64 {
        form_sign(self.family(), self.ambient_dim, i)
    }

    pub fn mirror(&self, i: usize) -> usize {
        self.ambient_dim - 1 - i
    }

    /// Coefficient `c` such that membership forces `x[j'][i'] = c · x[i][j]`.
    pub fn mirror_coefficient(&self, i: usize, j: usize) -> i64 {
        -self.form_sign(self.mirror(j)) * self.form_sign(self.mirror(i))
    }

    /// Linear combination `Σ coeffs[k] · basis[k]`.
    pub fn combine(&self, coeffs: &[Rational]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.ambient_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            out.add_scaled(b, c);
        }
        out
    }
}

pub(crate) fn form_sign(family: Family, m: usize, i: usize) -> i64 {
    if family == Family::C && i >= m / 2 {
        -1
    } else {
        1
    }
}

pub fn build_algebra(t: LieTypeRank) -> ExactMatrixAlgebra {
    let m = t.ambient_dim();
    let family = t.family();
    if family == Family::A {
        let mut basis = Vec::with_capacity(m * m - 1);
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    basis.push(ExactMatrix::unit(m, i, j));
                }
            }
        }
        for i in 0..m - 1 {
            let mut h = ExactMatrix::unit(m, i, i);
            h.set(i + 1, i + 1, int(-1));
            basis.push(h);
        }
        return ExactMatrixAlgebra {
            type_rank: t,
            ambient_dim: m,
            form: None,
            basis,
        };
    }

    let form = ExactMatrix::from_fn(m, |r, c| {
        if r + c == m - 1 {
            int(form_sign(family, m, r))
        } else {
            Rational::zero()
        }
    });
    let mut alg = ExactMatrixAlgebra {
        type_rank: t,
        ambient_dim: m,
        form: Some(form),
        basis: Vec::new(),
    };
    // Each position (i, j) is tied to (j', i'); take the lexicographically
    // smaller representative of every orbit of that involution.
    for i in 0..m {
        for j in 0..m {
            let (pi, pj) = (alg.mirror(j), alg.mirror(i));
            if (pi, pj) < (i, j) {
                continue;
            }
            let c = alg.mirror_coefficient(i, j);
            let mut x = ExactMatrix::unit(m, i, j);
            if (pi, pj) == (i, j) {
                // Self-paired position: free only when the relation is trivial.
                if c != 1 {
                    continue;
                }
            } else {
                x.set(pi, pj, int(c));
            }
            alg.basis.push(x);
        }
    }
    alg
}

pub fn check_membership(alg: &ExactMatrixAlgebra, x: &ExactMatrix) -> Result<bool> {
    if x.size() != alg.ambient_dim {
        return Err(Error::SizeMismatch {
            expected: alg.ambient_dim,
            found: x.size(),
        });
    }
    Ok(match &alg.form {
        None => x.trace().is_zero(),
        Some(form) => (&(&x.transpose() * form) + &(form * x)).is_zero(),
    })
}

/// `dim ker(ad x |_g)`, by exact rank of `y ↦ [x, y]` on the basis.
pub fn centralizer_dimension(alg: &ExactMatrixAlgebra, x: &ExactMatrix) -> Result<usize> {
    if !check_membership(alg, x)? {
        return Err(Error::NotInAlgebra {
            type_rank: alg.type_rank.to_string(),
        });
    }
    let images: Vec<ExactMatrix> = alg.basis.iter().map(|b| x.bracket(b)).collect();
    Ok(alg.dim() - span_rank(&images))
}

/// A single nilpotent Jordan block on local coordinates `0..r` whose
/// anti-diagonal local form has signs `ε_a` (type C pattern if `symplectic`).
fn single_block(r: usize, symplectic: bool) -> ExactMatrix {
    let eps = |a: usize| if symplectic && a >= r / 2 { -1 } else { 1 };
    let mut x = ExactMatrix::zeros(r);
    for i in 0..r.saturating_sub(1) {
        let (pi, pj) = (r - 2 - i, r - 1 - i);
        if (pi, pj) < (i, i + 1) {
            continue;
        }
        x.set(i, i + 1, Rational::one());
        if (pi, pj) != (i, i + 1) {
            // x[j'][i'] = −ε_{j'} ε_{i'} x[i][j] with j = i + 1.
            x.set(pi, pj, int(-eps(r - 2 - i) * eps(r - 1 - i)));
        }
    }
    x
}

/// An explicit element of `alg` with Jordan type `parts`, or `None` when
/// the partition is not a nilpotent orbit label of the algebra.
///
/// The element is assembled on an orthogonal decomposition into pieces:
/// pairs of equal parts on `W ⊕ W*`, single blocks of the admissible parity
/// on nondegenerate subspaces. Two odd single blocks in types B/D are placed
/// with opposite form signs so that their middle vectors `e_h ± e_{h'}/2`
/// fit inside one hyperbolic pair.
pub fn nilpotent_of_jordan_type(alg: &ExactMatrixAlgebra, parts: &[usize]) -> Option<ExactMatrix> {
    let m = alg.ambient_dim;
    if parts.iter().sum::<usize>() != m {
        return None;
    }
    let family = alg.family();
    if family == Family::A {
        return Some(ExactMatrix::nilpotent_jordan(parts));
    }
    let good_parity = if family == Family::C { 0 } else { 1 };

    let mut pairs = Vec::new();
    let mut singles = Vec::new();
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &p in parts {
        match counts.iter_mut().find(|(q, _)| *q == p) {
            Some((_, c)) => *c += 1,
            None => counts.push((p, 1)),
        }
    }
    for (p, c) in counts {
        if p % 2 != good_parity && c % 2 == 1 {
            return None;
        }
        pairs.extend(std::iter::repeat_n(p, c / 2));
        if c % 2 == 1 {
            singles.push(p);
        }
    }
    singles.sort_unstable_by(|a, b| b.cmp(a));
    let middle_available = usize::from(family == Family::B);
    if family != Family::C && singles.len() % 2 != middle_available {
        return None;
    }

    // Local model: block-diagonal x_loc, columns of S in global coordinates.
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut x_loc = ExactMatrix::zeros(m);
    let mut next_first = 0usize;
    let mut take_first = || {
        let g = next_first;
        next_first += 1;
        g
    };
    let unit = |g: usize, s: Rational| {
        let mut v = vec![Rational::zero(); m];
        v[g] = s;
        v
    };
    let place_block = |columns: &mut Vec<Vec<Rational>>, x_loc: &mut ExactMatrix, block: &ExactMatrix| {
        let off = columns.len();
        for r in 0..block.size() {
            for c in 0..block.size() {
                x_loc.set(off + r, off + c, block.get(r, c).clone());
            }
        }
    };

    for r in pairs {
        // x w_a = w_{a-1}, x w*_b = −w*_{b+1}.
        let mut block = ExactMatrix::zeros(2 * r);
        for a in 1..r {
            block.set(a - 1, a, Rational::one());
            block.set(r + a, r + a - 1, int(-1));
        }
        let gs: Vec<usize> = (0..r).map(|_| take_first()).collect();
        place_block(&mut columns, &mut x_loc, &block);
        for &g in &gs {
            columns.push(unit(g, Rational::one()));
        }
        for &g in &gs {
            // φ(e_g, e_{g'}) = 1 for first-half g, matching φ(w_a, w*_a) = 1.
            columns.push(unit(m - 1 - g, Rational::one()));
        }
    }

    let symplectic = family == Family::C;
    let chunks: Vec<Vec<usize>> = if symplectic {
        singles.iter().map(|&r| vec![r]).collect()
    } else {
        // In type B one single goes through the middle coordinate on its own.
        let solo = if family == Family::B { singles.pop() } else { None };
        let mut c: Vec<Vec<usize>> = singles.chunks(2).map(<[usize]>::to_vec).collect();
        c.extend(solo.map(|r| vec![r]));
        c
    };
    let half = |v: usize| Rational::new(v.into(), 2.into());
    let centre = m / 2;
    let mut used_centre = false;
    for chunk in &chunks {
        if symplectic {
            for &r in chunk {
                let block = single_block(r, true);
                place_block(&mut columns, &mut x_loc, &block);
                let gs: Vec<usize> = (0..r / 2).map(|_| take_first()).collect();
                for a in 0..r {
                    let g = if a < r / 2 { gs[a] } else { m - 1 - gs[r - 1 - a] };
                    columns.push(unit(g, Rational::one()));
                }
            }
            continue;
        }
        if chunk.len() == 1 {
            if used_centre || family != Family::B {
                return None;
            }
            used_centre = true;
            let r = chunk[0];
            let block = single_block(r, false);
            place_block(&mut columns, &mut x_loc, &block);
            let gs: Vec<usize> = (0..r / 2).map(|_| take_first()).collect();
            for a in 0..r {
                let g = if a < r / 2 {
                    gs[a]
                } else if a == r / 2 {
                    centre
                } else {
                    m - 1 - gs[r - 1 - a]
                };
                columns.push(unit(g, Rational::one()));
            }
            continue;
        }
        // Two odd blocks r1 (form sign +1) and r2 (form sign −1).
        let h = take_first();
        for (k, &r) in chunk.iter().enumerate() {
            let sign = if k == 0 { Rational::one() } else { int(-1) };
            let block = single_block(r, false);
            place_block(&mut columns, &mut x_loc, &block);
            let gs: Vec<usize> = (0..r / 2).map(|_| take_first()).collect();
            for a in 0..r {
                let col = if a < r / 2 {
                    unit(gs[a], Rational::one())
                } else if a == r / 2 {
                    let mut v = unit(h, Rational::one());
                    v[m - 1 - h] = &sign * half(1);
                    v
                } else {
                    unit(m - 1 - gs[r - 1 - a], sign.clone())
                };
                columns.push(col);
            }
        }
    }
    if columns.len() != m {
        return None;
    }
    let s = ExactMatrix::from_fn(m, |r, c| columns[c][r].clone());
    let s_inv = s.inverse()?;
    let x = &(&s * &x_loc) * &s_inv;
    debug_assert!(check_membership(alg, &x).unwrap_or(false));
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> ExactMatrixAlgebra {
        build_algebra(s.parse().unwrap())
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(alg("A1").dim(), 3);
        assert_eq!(alg("C2").dim(), 10);
        assert_eq!(alg("D2").dim(), 6);
        for t in ["A3", "B2", "B3", "C3", "D3", "D4"] {
            let a = alg(t);
            assert_eq!(a.dim(), a.type_rank.algebra_dim(), "{t}");
            assert_eq!(span_rank(&a.basis), a.dim(), "{t} basis independent");
        }
    }

    #[test]
    fn forms_are_nondegenerate_with_right_symmetry() {
        for (t, symmetric) in [("B2", true), ("C3", false), ("D4", true)] {
            let a = alg(t);
            let f = a.form.as_ref().unwrap();
            assert_eq!(f.rank(), a.ambient_dim);
            let expected = if symmetric { f.clone() } else { f.scale(&int(-1)) };
            assert_eq!(f.transpose(), expected, "{t}");
        }
    }

    #[test]
    fn membership_examples() {
        let a1 = alg("A1");
        assert!(!check_membership(&a1, &ExactMatrix::identity(2)).unwrap());
        assert!(check_membership(&a1, &ExactMatrix::zeros(2)).unwrap());
        assert!(check_membership(&a1, &ExactMatrix::diagonal(&[int(1), int(-1)])).unwrap());
        assert!(check_membership(&alg("C2"), &ExactMatrix::zeros(4)).unwrap());
        assert!(matches!(
            check_membership(&a1, &ExactMatrix::zeros(3)),
            Err(Error::SizeMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn centralizer_examples() {
        let a1 = alg("A1");
        let e = ExactMatrix::unit(2, 0, 1);
        assert_eq!(centralizer_dimension(&a1, &e).unwrap(), 1);
        assert_eq!(centralizer_dimension(&a1, &ExactMatrix::diagonal(&[int(1), int(-1)])).unwrap(), 1);
        assert_eq!(centralizer_dimension(&alg("C2"), &ExactMatrix::zeros(4)).unwrap(), 10);
        assert!(centralizer_dimension(&a1, &ExactMatrix::identity(2)).is_err());
    }

    #[test]
    fn explicit_nilpotents_land_in_the_algebra() {
        let b2 = alg("B2");
        let x = nilpotent_of_jordan_type(&b2, &[3, 1, 1]).unwrap();
        assert!(check_membership(&b2, &x).unwrap());
        assert!(nilpotent_of_jordan_type(&alg("C2"), &[3, 1]).is_none());
        assert!(nilpotent_of_jordan_type(&alg("D2"), &[2, 1, 1]).is_none());
    }
}
