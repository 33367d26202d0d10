//! Partitions labelling nilpotent orbits, with the per-family validity rules
//! and orbit dimensions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    /// Whether the family preserves a bilinear form (B, C, D).
    pub fn is_isotropic(self) -> bool {
        self != Family::A
    }
}

/// A classical simple Lie algebra: `A_n = sl_{n+1}`, `B_n = so_{2n+1}`,
/// `C_n = sp_{2n}`, `D_n = so_{2n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieTypeRank {
    family: Family,
    rank: usize,
}

impl LieTypeRank {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = if family == Family::D { 2 } else { 1 };
        if rank < min {
            return Err(Error::UnsupportedRank {
                family: family.letter(),
                rank,
            });
        }
        Ok(Self { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the natural representation.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }

    /// Dimension of the Lie algebra itself.
    pub fn algebra_dim(&self) -> usize {
        let m = self.ambient_dim();
        match self.family {
            Family::A => m * m - 1,
            Family::C => self.rank * (2 * self.rank + 1),
            Family::B | Family::D => m * (m - 1) / 2,
        }
    }
}

impl fmt::Display for LieTypeRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieTypeRank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(ParseError::TypeRank(s.to_string()));
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(family, rank)
    }
}

string_serde!(LieTypeRank);

/// Weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> std::result::Result<Self, ParseError> {
        let ok = !parts.is_empty()
            && parts.iter().all(|&p| p > 0)
            && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Self { parts })
        } else {
            Err(ParseError::Partition(format!("{parts:?}")))
        }
    }

    /// Sorts arbitrary positive parts into a partition, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> std::result::Result<Self, ParseError> {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// `[1, 1, ..., 1]` with `n` ones.
    pub fn ones(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Distinct parts with multiplicities, largest first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Dominance order: `self ⊵ other` when every prefix sum of `self` is at
    /// least the corresponding prefix sum of `other`. Totals must agree.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.total() != other.total() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    pub fn is_very_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }
}

/// Reverse lexicographic: `[4] < [3,1] < [2,2] < ...` in enumeration order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let bad = || ParseError::Partition(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(parts).map_err(|_| bad())
    }
}

string_serde!(Partition);

/// Distinguishes the two orbits sharing a very even partition in type D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum VeryEvenTag {
    I,
    II,
}

impl fmt::Display for VeryEvenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VeryEvenTag::I => "I",
            VeryEvenTag::II => "II",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct OrbitLabel {
    pub type_rank: LieTypeRank,
    pub partition: Partition,
    pub very_even_tag: Option<VeryEvenTag>,
}

impl OrbitLabel {
    /// Checked constructor; the tag must be present exactly for very even
    /// partitions in type D.
    pub fn new(type_rank: LieTypeRank, partition: Partition, very_even_tag: Option<VeryEvenTag>) -> Result<Self> {
        if !is_valid_nilpotent_partition(type_rank, &partition)? {
            return Err(Error::InvalidPartition {
                type_rank: type_rank.to_string(),
                partition: partition.to_string(),
            });
        }
        let needs_tag = type_rank.family() == Family::D && partition.is_very_even();
        if needs_tag != very_even_tag.is_some() {
            return Err(Error::InvalidPartition {
                type_rank: type_rank.to_string(),
                partition: format!("{partition} (very even tag {very_even_tag:?})"),
            });
        }
        Ok(Self {
            type_rank,
            partition,
            very_even_tag,
        })
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)?;
        if let Some(tag) = self.very_even_tag {
            write!(f, "#{tag}")?;
        }
        Ok(())
    }
}

/// `s_i = #{j | d_j ≥ i}`: column lengths of the Young diagram.
pub fn dual_partition(d: &Partition) -> Partition {
    let parts = (1..=d.largest())
        .map(|i| d.parts.iter().take_while(|&&p| p >= i).count())
        .collect();
    Partition { parts }
}

pub fn is_valid_nilpotent_partition(t: LieTypeRank, d: &Partition) -> Result<bool> {
    if d.total() != t.ambient_dim() {
        return Err(Error::TotalMismatch {
            type_rank: t.to_string(),
            partition: d.to_string(),
            expected: t.ambient_dim(),
            found: d.total(),
        });
    }
    let bad_parity = match t.family() {
        Family::A => return Ok(true),
        Family::C => 1,
        Family::B | Family::D => 0,
    };
    Ok(d.multiplicities()
        .iter()
        .all(|&(part, mult)| part % 2 != bad_parity || mult % 2 == 0))
}

/// All partitions of `n` in reverse lexicographic order.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Nilpotent orbits of `t`, reverse lexicographic, with very even type-D
/// partitions listed twice (tags I then II).
pub fn enumerate_orbits(t: LieTypeRank) -> Vec<OrbitLabel> {
    let mut out = Vec::new();
    for d in all_partitions(t.ambient_dim()) {
        if !is_valid_nilpotent_partition(t, &d).expect("total matches by construction") {
            continue;
        }
        if t.family() == Family::D && d.is_very_even() {
            for tag in [VeryEvenTag::I, VeryEvenTag::II] {
                out.push(OrbitLabel {
                    type_rank: t,
                    partition: d.clone(),
                    very_even_tag: Some(tag),
                });
            }
        } else {
            out.push(OrbitLabel {
                type_rank: t,
                partition: d,
                very_even_tag: None,
            });
        }
    }
    out
}

/// Number of odd parts.
pub fn q_parity_count(d: &Partition) -> usize {
    d.parts.iter().filter(|&&p| p % 2 == 1).count()
}

pub fn even_part_count(d: &Partition) -> usize {
    d.len() - q_parity_count(d)
}

/// Complex dimension of the adjoint orbit with Jordan type `d`.
pub fn orbit_dimension(t: LieTypeRank, d: &Partition) -> Result<usize> {
    if !is_valid_nilpotent_partition(t, d)? {
        return Err(Error::InvalidPartition {
            type_rank: t.to_string(),
            partition: d.to_string(),
        });
    }
    let sum_sq: usize = dual_partition(d).parts.iter().map(|s| s * s).sum();
    let odd = q_parity_count(d);
    let centralizer = match t.family() {
        Family::A => sum_sq - 1,
        Family::C => (sum_sq + odd) / 2,
        Family::B | Family::D => (sum_sq - odd) / 2,
    };
    Ok(t.algebra_dim() - centralizer)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn tr(s: &str) -> LieTypeRank {
        s.parse().unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_partition(&p(&[3, 1])), p(&[2, 1, 1]));
        assert_eq!(dual_partition(&p(&[2, 2])), p(&[2, 2]));
        assert_eq!(dual_partition(&p(&[5])), Partition::ones(5));
    }

    #[test]
    fn validity_examples() {
        assert!(!is_valid_nilpotent_partition(tr("C2"), &p(&[3, 1])).unwrap());
        assert!(is_valid_nilpotent_partition(tr("C2"), &p(&[2, 2])).unwrap());
        assert!(is_valid_nilpotent_partition(tr("B2"), &p(&[3, 1, 1])).unwrap());
        assert!(is_valid_nilpotent_partition(tr("B2"), &p(&[2, 2, 1])).unwrap());
        assert!(!is_valid_nilpotent_partition(tr("B2"), &p(&[2, 1, 1, 1])).unwrap());
        assert!(!is_valid_nilpotent_partition(tr("D2"), &p(&[2, 1, 1])).unwrap());
        assert!(matches!(
            is_valid_nilpotent_partition(tr("C2"), &p(&[2, 1])),
            Err(Error::TotalMismatch { expected: 4, found: 3, .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        let a2: Vec<String> = enumerate_orbits(tr("A2")).iter().map(|o| o.to_string()).collect();
        assert_eq!(a2, ["[3]", "[2,1]", "[1,1,1]"]);
        let c2: Vec<String> = enumerate_orbits(tr("C2")).iter().map(|o| o.to_string()).collect();
        assert_eq!(c2, ["[4]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        let d2: Vec<String> = enumerate_orbits(tr("D2")).iter().map(|o| o.to_string()).collect();
        assert_eq!(d2, ["[3,1]", "[2,2]#I", "[2,2]#II", "[1,1,1,1]"]);
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_parity_count(&p(&[3, 3, 2, 2])), 2);
        assert_eq!(q_parity_count(&p(&[2, 2])), 0);
        assert_eq!(q_parity_count(&p(&[1, 1, 1, 1])), 4);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(orbit_dimension(tr("A1"), &p(&[2])).unwrap(), 2);
        assert_eq!(orbit_dimension(tr("A2"), &p(&[2, 1])).unwrap(), 4);
        assert_eq!(orbit_dimension(tr("A2"), &p(&[3])).unwrap(), 6);
        assert_eq!(orbit_dimension(tr("A4"), &Partition::ones(5)).unwrap(), 0);
        assert_eq!(orbit_dimension(tr("B2"), &p(&[3, 1, 1])).unwrap(), 6);
        assert!(orbit_dimension(tr("C2"), &p(&[3, 1])).is_err());
    }

    #[test]
    fn rank_constraints() {
        assert!("D1".parse::<LieTypeRank>().is_err());
        assert!("A0".parse::<LieTypeRank>().is_err());
        assert!("E6".parse::<LieTypeRank>().is_err());
        assert_eq!(tr("c3").to_string(), "C3");
        assert_eq!(tr("B3").ambient_dim(), 7);
        assert_eq!(tr("D4").algebra_dim(), 28);
    }

    #[test]
    fn partition_text_format() {
        assert_eq!("[3, 2,2,1]".parse::<Partition>().unwrap(), p(&[3, 2, 2, 1]));
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
        assert!("[]".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "\"[2,1]\"");
    }

    #[test]
    fn very_even_tag_only_in_d() {
        let d4 = tr("D4");
        assert!(OrbitLabel::new(d4, p(&[2, 2, 2, 2]), None).is_err());
        assert!(OrbitLabel::new(d4, p(&[2, 2, 2, 2]), Some(VeryEvenTag::II)).is_ok());
        assert!(OrbitLabel::new(tr("C2"), p(&[2, 2]), Some(VeryEvenTag::I)).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=12).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }
}
