//! Exact rational scalars, square matrices and the linear-algebra kernels the
//! oracle is built on (rank, characteristic polynomial, polynomial gcd).
//!
//! Nothing here touches floating point.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"3"`, `"-1/2"`, `" 4/6 "` (normalized to `2/3`).
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Rational(s.to_string());
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` as a list of `"p/q"` strings.
pub mod rational_strings {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|r| parse_rational(r).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Square matrix with exact rational entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    size: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            entries: vec![Rational::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.entries[i * size + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                entries.push(f(r, c));
            }
        }
        Self { size, entries }
    }

    /// Builds from integer rows; panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "rows must form a square matrix");
        Self::from_fn(size, |r, c| int(rows[r][c]))
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Matrix unit `E_{row,col}`.
    pub fn unit(size: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(size);
        m.set(row, col, Rational::one());
        m
    }

    /// Block-diagonal Jordan matrix with nilpotent blocks of the given sizes.
    pub fn nilpotent_jordan(blocks: &[usize]) -> Self {
        let size = blocks.iter().sum();
        let mut m = Self::zeros(size);
        let mut start = 0;
        for &b in blocks {
            for i in 0..b.saturating_sub(1) {
                m.set(start + i, start + i + 1, Rational::one());
            }
            start += b;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.size + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.size + c] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Positions of nonzero entries.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(i, _)| (i / n, i % n))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |r, c| self.get(c, r).clone())
    }

    pub fn trace(&self) -> Rational {
        (0..self.size).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            size: self.size,
            entries: self.entries.iter().map(|v| v * s).collect(),
        }
    }

    /// Adds `s * other` in place.
    pub fn add_scaled(&mut self, other: &Self, s: &Rational) {
        assert_eq!(self.size, other.size);
        if s.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }

    /// Commutator `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::identity(self.size);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn rank(&self) -> usize {
        let rows = (0..self.size)
            .map(|r| self.entries[r * self.size..(r + 1) * self.size].to_vec())
            .collect();
        rank(rows)
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.size;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                let mut row = self.entries[r * n..(r + 1) * n].to_vec();
                row.extend((0..n).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v *= &inv;
            }
            let pivot = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v -= &factor * p;
                }
            }
        }
        Some(Self::from_fn(n, |r, c| a[r][n + c].clone()))
    }

    /// Coefficients of `det(λI − self)`, lowest degree first; monic.
    pub fn charpoly(&self) -> Vec<Rational> {
        charpoly_hessenberg(self)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix({}x{})", self.size, self.size)?;
        for r in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.size)
            .map(|r| (0..self.size).map(|c| self.get(r, c).to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(serde::de::Error::custom("matrix rows must be square"));
        }
        let mut entries = Vec::with_capacity(size * size);
        for v in rows.iter().flatten() {
            entries.push(parse_rational(v).map_err(serde::de::Error::custom)?);
        }
        Ok(Self { size, entries })
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.size, rhs.size);
        ExactMatrix {
            size: self.size,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.size, rhs.size);
        ExactMatrix {
            size: self.size,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut out = ExactMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Rank of a list of equal-length row vectors by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for v in rows[rank][col..].iter_mut() {
            *v *= &inv;
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&prow[col..]) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Basis of the null space `{v : m·v = 0}` from the reduced row echelon form.
pub fn kernel(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    let n = m.size();
    let mut rows: Vec<Vec<Rational>> = (0..n).map(|r| (0..n).map(|c| m.get(r, c).clone()).collect()).collect();
    let mut pivots = Vec::new();
    for col in 0..n {
        let r = pivots.len();
        let Some(pivot) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x -= &factor * p;
            }
        }
        pivots.push(col);
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][free].clone();
            }
            v
        })
        .collect()
}

/// Rank of the span of a set of matrices viewed as vectors.
pub fn span_rank<'a>(mats: impl IntoIterator<Item = &'a ExactMatrix>) -> usize {
    rank(mats.into_iter().map(|m| m.entries().to_vec()).collect())
}

/// Characteristic polynomial through reduction to upper Hessenberg form.
fn charpoly_hessenberg(a: &ExactMatrix) -> Vec<Rational> {
    let n = a.size();
    let mut h: Vec<Vec<Rational>> = (0..n)
        .map(|r| (0..n).map(|c| a.get(r, c).clone()).collect())
        .collect();

    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = h[m][m - 1].recip();
        for j in m + 1..n {
            if h[j][m - 1].is_zero() {
                continue;
            }
            let u = &h[j][m - 1] * &inv;
            let pivot = h[m].clone();
            for (v, p) in h[j].iter_mut().zip(&pivot) {
                *v -= &u * p;
            }
            for row in h.iter_mut() {
                let delta = &u * &row[j];
                row[m] += delta;
            }
        }
    }

    let mut polys: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        // (λ − h[m-1][m-1]) · p_{m-1}
        let mut next = vec![Rational::zero(); m + 1];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * &h[m - 1][m - 1];
        }
        let mut t = Rational::one();
        for i in 1..m {
            t *= &h[m - i][m - i - 1];
            if t.is_zero() {
                break;
            }
            let coef = &t * &h[m - i - 1][m - 1];
            if coef.is_zero() {
                continue;
            }
            for (d, c) in polys[m - i - 1].iter().enumerate() {
                next[d] -= &coef * c;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap_or_else(|| vec![Rational::one()])
}

/// Dense univariate polynomial helpers; coefficients lowest degree first.
pub mod poly {
    use super::*;

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    pub fn derivative(p: &[Rational]) -> Vec<Rational> {
        let mut d: Vec<Rational> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * int(i as i64))
            .collect();
        trim(&mut d);
        d
    }

    /// Remainder of `a` modulo nonzero `b`.
    pub fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        assert!(!b.is_empty(), "division by the zero polynomial");
        let lead = b.last().unwrap().clone();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let q = r.last().unwrap() / &lead;
            for (i, c) in b.iter().enumerate() {
                r[i + shift] -= &q * c;
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    /// Exact quotient `a / b`, assuming `b` divides `a`.
    pub fn div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let lead = b.last().unwrap().clone();
        if r.len() < b.len() {
            return Vec::new();
        }
        let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / &lead;
            for (i, bc) in b.iter().enumerate() {
                r[i + shift] -= &c * bc;
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        q
    }

    /// Monic gcd.
    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        if let Some(lead) = x.last().cloned() {
            for c in x.iter_mut() {
                *c /= &lead;
            }
        }
        x
    }

    /// Evaluates `p(m)` by Horner's rule.
    pub fn eval_matrix(p: &[Rational], m: &ExactMatrix) -> ExactMatrix {
        let n = m.size();
        let mut acc = ExactMatrix::zeros(n);
        for c in p.iter().rev() {
            acc = &acc * m;
            acc.add_scaled(&ExactMatrix::identity(n), c);
        }
        acc
    }
}

/// True when `x` is annihilated by the squarefree part of its characteristic
/// polynomial, i.e. its minimal polynomial has no repeated roots.
pub fn minimal_polynomial_is_squarefree(x: &ExactMatrix) -> bool {
    let cp = x.charpoly();
    let g = poly::gcd(&cp, &poly::derivative(&cp));
    let radical = poly::div_exact(&cp, &g);
    poly::eval_matrix(&radical, x).is_zero()
}
