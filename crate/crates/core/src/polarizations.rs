//! Polarizations whose cotangent bundles resolve an orbit closure, and the
//! per-orbit verdict that all of them share a Levi class (in type D, up to
//! H-conjugacy).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::oracle::{
    build_algebra, derive_seed, parabolic_from_flag, richardson_partition, springer_birational, ExactMatrixAlgebra,
};
use crate::partitions::{dual_partition, even_part_count, orbit_dimension, q_parity_count, Family, LieTypeRank, OrbitLabel, Partition};

/// Type `(p_1, ..., p_k)` of a flag `0 ⊊ F_1 ⊊ ... ⊊ F_k = V`, `p_i = dim F_i/F_{i-1}`.
///
/// `isotropic` records whether the flag lives in a space with a form. It is
/// ignored by comparisons and by the text format.
#[derive(Debug, Clone)]
pub struct FlagType {
    blocks: Vec<usize>,
    isotropic: bool,
}

impl FlagType {
    pub fn new(blocks: Vec<usize>, isotropic: bool) -> std::result::Result<Self, ParseError> {
        let ft = Self { blocks, isotropic };
        if ft.blocks.is_empty() || ft.blocks.contains(&0) || (isotropic && !ft.is_symmetric()) {
            return Err(ParseError::FlagType(ft.to_string()));
        }
        Ok(ft)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn is_isotropic(&self) -> bool {
        self.isotropic
    }

    pub fn is_symmetric(&self) -> bool {
        self.blocks.iter().eq(self.blocks.iter().rev())
    }

    /// Middle block when the number of blocks is odd.
    pub fn middle(&self) -> Option<usize> {
        (self.len() % 2 == 1).then(|| self.blocks[self.len() / 2])
    }

    /// Blocks strictly before the middle.
    pub fn half(&self) -> &[usize] {
        &self.blocks[..self.len() / 2]
    }

    /// Whether a coordinate flag of this type is a flag (isotropic in B/C/D)
    /// of the natural representation of `t`.
    pub fn is_valid_for(&self, t: LieTypeRank) -> bool {
        if self.total() != t.ambient_dim() || self.is_empty() {
            return false;
        }
        match t.family() {
            Family::A => true,
            Family::B => self.is_symmetric(),
            Family::C | Family::D => self.is_symmetric() && self.middle().is_none_or(|m| m % 2 == 0),
        }
    }
}

impl PartialEq for FlagType {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for FlagType {}

impl Hash for FlagType {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.blocks.hash(state);
    }
}

impl Ord for FlagType {
    /// Fewer blocks first, then lexicographically descending.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| other.blocks.cmp(&self.blocks))
    }
}

impl PartialOrd for FlagType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        write!(f, "({})", strs.join(","))
    }
}

impl FromStr for FlagType {
    type Err = ParseError;

    /// Parses `(1,2,1)`; symmetric types are marked isotropic.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let bad = || ParseError::FlagType(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let blocks = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let symmetric = blocks.iter().eq(blocks.iter().rev());
        Self::new(blocks, symmetric).map_err(|_| bad())
    }
}

string_serde!(FlagType);

/// One of the two `SO(2n)`-classes sharing a split flag type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SplitTag {
    I,
    II,
}

impl fmt::Display for SplitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitTag::I => "I",
            SplitTag::II => "II",
        })
    }
}

/// A conjugacy class of parabolic subgroups (a polarization candidate).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolarizationClass {
    pub type_rank: LieTypeRank,
    pub flag_type: FlagType,
    pub split_tag: Option<SplitTag>,
}

impl fmt::Display for PolarizationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.flag_type)?;
        if let Some(tag) = self.split_tag {
            write!(f, "#{tag}")?;
        }
        Ok(())
    }
}

/// Conjugacy class of a Levi factor: `Π GL(gl_blocks) × (residual classical
/// factor of the given rank)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeviClass {
    /// Weakly decreasing.
    pub gl_blocks: Vec<usize>,
    pub residual_rank: usize,
}

impl LeviClass {
    /// Human-readable factor list, e.g. `GL2 x GL1 x Sp2`.
    pub fn describe(&self, t: LieTypeRank) -> String {
        let mut factors: Vec<String> = self.gl_blocks.iter().map(|b| format!("GL{b}")).collect();
        let r = self.residual_rank;
        match t.family() {
            Family::A => {}
            Family::B => factors.push(format!("SO{}", 2 * r + 1)),
            Family::C if r > 0 => factors.push(format!("Sp{}", 2 * r)),
            Family::D if r > 0 => factors.push(format!("SO{}", 2 * r)),
            _ => {}
        }
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join(" x ")
        }
    }
}

impl fmt::Display for LeviClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.gl_blocks.iter().map(ToString::to_string).collect();
        write!(f, "gl{{{}}}+r{}", strs.join(","), self.residual_rank)
    }
}

/// All distinct orderings of the dual partition: the flag types of the
/// polarizations of the type-A orbit `d`.
pub fn flag_types_a(d: &Partition) -> Vec<FlagType> {
    let mut blocks = dual_partition(d).parts().to_vec();
    let mut out = vec![FlagType {
        blocks: blocks.clone(),
        isotropic: false,
    }];
    // Previous lexicographic permutation, starting from the largest.
    while let Some(i) = (1..blocks.len()).rev().find(|&i| blocks[i - 1] > blocks[i]) {
        let j = (i..blocks.len()).rev().find(|&j| blocks[j] < blocks[i - 1]).unwrap();
        blocks.swap(i - 1, j);
        blocks[i..].reverse();
        out.push(FlagType {
            blocks: blocks.clone(),
            isotropic: false,
        });
    }
    out
}

/// All compositions of `n`: every flag type of `sl_n`.
pub fn compositions(n: usize) -> Vec<FlagType> {
    fn rec(remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<FlagType>) {
        if remaining == 0 {
            out.push(FlagType {
                blocks: prefix.clone(),
                isotropic: false,
            });
            return;
        }
        for p in (1..=remaining).rev() {
            prefix.push(p);
            rec(remaining - p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Symmetric compositions of the ambient dimension (middle block even in C
/// and D when the number of blocks is odd).
pub fn isotropic_flag_types(t: LieTypeRank) -> Result<Vec<FlagType>> {
    if !t.family().is_isotropic() {
        return Err(Error::WrongFamily {
            op: "isotropic_flag_types",
            type_rank: t.to_string(),
        });
    }
    let m = t.ambient_dim();
    let mut out = Vec::new();
    for half_sum in 0..=m / 2 {
        let middle = m - 2 * half_sum;
        let halves: Vec<Vec<usize>> = if half_sum == 0 {
            vec![Vec::new()]
        } else {
            compositions(half_sum).into_iter().map(|f| f.blocks).collect()
        };
        for h in halves {
            let mut blocks = h.clone();
            if middle > 0 {
                blocks.push(middle);
            }
            blocks.extend(h.iter().rev());
            let ft = FlagType { blocks, isotropic: true };
            if ft.is_valid_for(t) {
                out.push(ft);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every flag type of `t`: compositions in type A, isotropic types otherwise.
pub fn all_flag_types(t: LieTypeRank) -> Vec<FlagType> {
    match t.family() {
        Family::A => compositions(t.ambient_dim()),
        _ => isotropic_flag_types(t).expect("isotropic family"),
    }
}

/// In `so_2n` the parabolics of one flag type split into two classes exactly
/// when `k = 2t` and `p_t ≥ 2`.
pub fn split_in_d(ft: &FlagType) -> bool {
    let k = ft.len();
    k.is_multiple_of(2) && ft.blocks[k / 2 - 1] >= 2
}

/// The conjugacy classes of parabolics with flag type `ft` (two for split
/// type-D flag types).
pub fn polarization_classes(t: LieTypeRank, ft: &FlagType) -> Vec<PolarizationClass> {
    let class = |split_tag| PolarizationClass {
        type_rank: t,
        flag_type: ft.clone(),
        split_tag,
    };
    if t.family() == Family::D && split_in_d(ft) {
        vec![class(Some(SplitTag::I)), class(Some(SplitTag::II))]
    } else {
        vec![class(None)]
    }
}

/// Levi class of the stabilizer of a flag of type `ft`.
///
/// In type D a residual `SO_2` is a one-dimensional torus and is recorded as
/// a `GL_1` block, so `(…, 2, …)` and `(…, 1, 1, …)` share a class.
pub fn levi_class_of(t: LieTypeRank, ft: &FlagType) -> LeviClass {
    let (mut gl, residual_rank) = match t.family() {
        Family::A => (ft.blocks.clone(), 0),
        family => {
            let gl = ft.half().to_vec();
            let mid = ft.middle().unwrap_or(0);
            match family {
                Family::D if mid == 2 => ([gl, vec![1]].concat(), 0),
                _ => (gl, mid / 2),
            }
        }
    };
    gl.sort_unstable_by(|a, b| b.cmp(a));
    LeviClass {
        gl_blocks: gl,
        residual_rank,
    }
}

/// Membership in `Pai(2n, q)` with odd members listed first: the first `q`
/// members odd, the rest even.
pub fn pai_membership(two_n: usize, q: usize, pi: &[usize]) -> Result<bool> {
    let found: usize = pi.iter().sum();
    if found != two_n {
        return Err(Error::SumMismatch {
            values: pi.to_vec(),
            expected: two_n,
            found,
        });
    }
    let mut sorted = pi.to_vec();
    sorted.sort_by_key(|p| p % 2 == 0);
    Ok(sorted.len() >= q
        && sorted[..q].iter().all(|p| p % 2 == 1)
        && sorted[q..].iter().all(|p| p % 2 == 0))
}

/// Partition encoding of a Levi class: the dual of the multiset made of every
/// GL block twice plus the residual ambient dimension. Its first `q` members
/// are odd and the rest even, `q` being the residual ambient dimension.
pub fn levi_to_pai(t: LieTypeRank, lc: &LeviClass) -> Vec<usize> {
    let residual = match t.family() {
        Family::A => 0,
        Family::B => 2 * lc.residual_rank + 1,
        Family::C | Family::D => 2 * lc.residual_rank,
    };
    pai_from_parts(&lc.gl_blocks, residual)
}

fn pai_from_parts(gl: &[usize], residual: usize) -> Vec<usize> {
    let mut multiset: Vec<usize> = gl.iter().flat_map(|&a| [a, a]).collect();
    if residual > 0 {
        multiset.push(residual);
    }
    match Partition::from_unsorted(multiset) {
        Ok(p) => dual_partition(&p).parts().to_vec(),
        Err(_) => Vec::new(),
    }
}

/// Encoding used by the parity filter for one flag type. Equal to
/// `levi_to_pai(levi_class_of(ft))` in types B and C; in type D a middle
/// pair `(…, 1, 1, …)` is read as the equivalent middle block `2`.
pub fn flag_pai(t: LieTypeRank, ft: &FlagType) -> Vec<usize> {
    match t.family() {
        Family::A => pai_from_parts(&ft.blocks, 0),
        Family::B | Family::C => levi_to_pai(t, &levi_class_of(t, ft)),
        Family::D => {
            let mut half = ft.half().to_vec();
            let mut middle = ft.middle().unwrap_or(0);
            if middle == 0 && half.last() == Some(&1) {
                half.pop();
                middle = 2;
            }
            pai_from_parts(&half, middle)
        }
    }
}

/// Parity statistic of an encoded Levi: odd members (C, D) or even members (B).
pub fn pai_q(t: LieTypeRank, pi: &[usize]) -> usize {
    let odd = pi.iter().filter(|p| *p % 2 == 1).count();
    match t.family() {
        Family::B => pi.len() - odd,
        _ => odd,
    }
}

/// Parity statistic of an orbit: odd parts (C, D) or even parts (B).
pub fn orbit_q(t: LieTypeRank, d: &Partition) -> usize {
    match t.family() {
        Family::B => even_part_count(d),
        _ => q_parity_count(d),
    }
}

/// How the parity statistic of a polarization is compared with the orbit's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QFilter {
    #[default]
    Exact,
    /// Accepts a mismatch of one step of the statistic's lattice (2 for the
    /// even odd-part counts of C and D, 1 in B). Negative control only.
    OffByOne,
    /// Richardson match alone.
    Disabled,
}

impl QFilter {
    pub fn accepts(self, t: LieTypeRank, levi_q: usize, orbit_q: usize) -> bool {
        let step = if t.family() == Family::B { 1 } else { 2 };
        match self {
            QFilter::Exact => levi_q == orbit_q,
            QFilter::OffByOne => levi_q.abs_diff(orbit_q) <= step,
            QFilter::Disabled => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "value")]
pub enum RichardsonOutcome {
    Found(Partition),
    /// Sampling never reached genericity; carries the last observed spectrum.
    Inconclusive(Vec<(String, usize)>),
}

/// Oracle data for one flag type.
#[derive(Debug, Clone)]
pub struct FlagEntry {
    pub flag_type: FlagType,
    pub classes: Vec<PolarizationClass>,
    pub levi: LeviClass,
    pub pai: Vec<usize>,
    pub pai_q: usize,
    pub dim_pu: usize,
    pub richardson: RichardsonOutcome,
    /// Degree-one moment map onto the Richardson orbit closure; `None` when
    /// the Richardson orbit is unsettled.
    pub birational: Option<bool>,
}

/// Evidence for one flag type whose Richardson orbit is the orbit under test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub flag_type: FlagType,
    pub split: bool,
    pub richardson: Partition,
    pub levi_class: LeviClass,
    pub levi: String,
    pub pai: Vec<usize>,
    pub pai_q: usize,
    pub orbit_q: usize,
    pub birational: bool,
    pub accepted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    NoResolution,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NoResolution => "NO_RESOLUTION",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviGroup {
    pub levi_class: LeviClass,
    pub polarizations: Vec<PolarizationClass>,
}

/// Certificate that every resolution of one orbit closure comes from
/// polarizations with a common Levi class, up to H-conjugate pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub orbit: OrbitLabel,
    pub orbit_dimension: usize,
    pub resolution_polarizations: Vec<PolarizationClass>,
    pub levi_classes: Vec<LeviGroup>,
    pub d_iso_pairs: Vec<(PolarizationClass, PolarizationClass)>,
    /// Flag types whose Richardson orbit is this orbit, before the parity filter.
    pub candidates: Vec<Candidate>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Result of checking that the Richardson map is injective on the Levi
/// classes with a fixed parity statistic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub type_rank: LieTypeRank,
    pub q: usize,
    pub images: Vec<(LeviClass, Vec<usize>, Partition)>,
    /// Levi classes whose flag types disagree on the Richardson orbit.
    pub inconsistent: Vec<LeviClass>,
    pub collisions: Vec<(LeviClass, LeviClass, Partition)>,
    pub injective: bool,
}

/// Number of reseeded attempts before a flag type is declared inconclusive.
pub const RICHARDSON_ATTEMPTS: u64 = 3;
/// Attempt index reserved for the degree computation's random stream.
const DEGREE_STREAM: u64 = 1 << 16;

/// Oracle-backed verifier for one classical type: Richardson partitions of
/// every flag type are computed once and shared by all orbit queries.
#[derive(Debug, Clone)]
pub struct Verifier {
    type_rank: LieTypeRank,
    algebra: ExactMatrixAlgebra,
    entries: Vec<FlagEntry>,
    filter: QFilter,
}

impl Verifier {
    pub fn new(t: LieTypeRank, seed: u64, trials: usize) -> Result<Self> {
        let algebra = build_algebra(t);
        Self::with_algebra(algebra, seed, trials)
    }

    pub fn with_algebra(algebra: ExactMatrixAlgebra, seed: u64, trials: usize) -> Result<Self> {
        if trials < 3 {
            return Err(Error::Config(format!("trials must be at least 3, got {trials}")));
        }
        let t = algebra.type_rank;
        let flag_types = all_flag_types(t);
        let entries = flag_types
            .par_iter()
            .enumerate()
            .map(|(idx, ft)| -> Result<FlagEntry> {
                let pd = parabolic_from_flag(&algebra, ft)?;
                let mut richardson = RichardsonOutcome::Inconclusive(Vec::new());
                for attempt in 0..RICHARDSON_ATTEMPTS {
                    match richardson_partition(&algebra, &pd, derive_seed(seed, idx as u64, attempt), trials) {
                        Ok(p) => {
                            richardson = RichardsonOutcome::Found(p);
                            break;
                        }
                        Err(Error::Genericity { observed }) => {
                            richardson = RichardsonOutcome::Inconclusive(observed);
                        }
                        Err(e) => return Err(e),
                    }
                }
                let birational = match &richardson {
                    RichardsonOutcome::Found(p) => {
                        Some(springer_birational(&algebra, &pd, p, derive_seed(seed, idx as u64, DEGREE_STREAM))?)
                    }
                    RichardsonOutcome::Inconclusive(_) => None,
                };
                let levi = levi_class_of(t, ft);
                let pai = flag_pai(t, ft);
                Ok(FlagEntry {
                    flag_type: ft.clone(),
                    classes: polarization_classes(t, ft),
                    pai_q: pai_q(t, &pai),
                    pai,
                    levi,
                    dim_pu: pd.dim_pu(),
                    richardson,
                    birational,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            type_rank: t,
            algebra,
            entries,
            filter: QFilter::Exact,
        })
    }

    /// Resolution test for a flag type whose Richardson orbit is the orbit
    /// under test. B and C use the parity statistic. D has no such statistic
    /// and uses the degree of the moment map; the loosened filters drop it.
    fn accepts(&self, e: &FlagEntry, orbit_q: usize) -> bool {
        let t = self.type_rank;
        match t.family() {
            Family::A => true,
            Family::B | Family::C => e.dim_pu > 0 && self.filter.accepts(t, e.pai_q, orbit_q),
            Family::D => e.dim_pu > 0 && (self.filter != QFilter::Exact || e.birational == Some(true)),
        }
    }

    pub fn with_filter(mut self, filter: QFilter) -> Self {
        self.filter = filter;
        self
    }

    pub fn type_rank(&self) -> LieTypeRank {
        self.type_rank
    }

    pub fn algebra(&self) -> &ExactMatrixAlgebra {
        &self.algebra
    }

    pub fn entries(&self) -> &[FlagEntry] {
        &self.entries
    }

    pub fn entry(&self, ft: &FlagType) -> Option<&FlagEntry> {
        self.entries.iter().find(|e| &e.flag_type == ft)
    }

    pub fn richardson_of(&self, ft: &FlagType) -> Option<&Partition> {
        match &self.entry(ft)?.richardson {
            RichardsonOutcome::Found(p) => Some(p),
            RichardsonOutcome::Inconclusive(_) => None,
        }
    }

    fn check_orbit(&self, orbit: &OrbitLabel) -> Result<()> {
        if orbit.type_rank != self.type_rank {
            return Err(Error::InvalidPartition {
                type_rank: self.type_rank.to_string(),
                partition: format!("{orbit} of {}", orbit.type_rank),
            });
        }
        Ok(())
    }

    /// Flag types whose Richardson orbit has partition `d`, with the parity
    /// filter evaluated but not applied.
    pub fn candidates(&self, orbit: &OrbitLabel) -> Result<Vec<Candidate>> {
        self.check_orbit(orbit)?;
        let t = self.type_rank;
        let d = &orbit.partition;
        let oq = orbit_q(t, d);
        Ok(self
            .entries
            .iter()
            .filter_map(|e| match &e.richardson {
                RichardsonOutcome::Found(p) if p == d => Some(Candidate {
                    flag_type: e.flag_type.clone(),
                    split: e.classes.len() == 2,
                    richardson: p.clone(),
                    levi_class: e.levi.clone(),
                    levi: e.levi.describe(t),
                    pai: e.pai.clone(),
                    pai_q: e.pai_q,
                    orbit_q: oq,
                    birational: e.birational.unwrap_or(false),
                    accepted: self.accepts(e, oq),
                }),
                _ => None,
            })
            .collect())
    }

    /// Polarizations whose cotangent bundle resolves the orbit closure.
    ///
    /// Type A: every ordering of the dual partition. Types B, C, D: proper
    /// flag types with Richardson partition `d` that pass the parity filter
    /// (B, C) or have a birational moment map (D). Split type-D flag types
    /// contribute both classes.
    pub fn resolution_polarizations(&self, orbit: &OrbitLabel) -> Result<Vec<PolarizationClass>> {
        self.check_orbit(orbit)?;
        let t = self.type_rank;
        if t.family() == Family::A {
            return Ok(flag_types_a(&orbit.partition)
                .into_iter()
                .map(|flag_type| PolarizationClass {
                    type_rank: t,
                    flag_type,
                    split_tag: None,
                })
                .collect());
        }
        Ok(self
            .candidates(orbit)?
            .into_iter()
            .filter(|c| c.accepted)
            .flat_map(|c| polarization_classes(t, &c.flag_type))
            .collect())
    }

    pub fn verify_theorem(&self, orbit: &OrbitLabel) -> Result<TheoremReport> {
        let t = self.type_rank;
        let dim = orbit_dimension(t, &orbit.partition)?;
        let polarizations = self.resolution_polarizations(orbit)?;
        let candidates = self.candidates(orbit)?;
        let mut notes = Vec::new();

        let mut groups: BTreeMap<LeviClass, Vec<PolarizationClass>> = BTreeMap::new();
        for pc in &polarizations {
            groups
                .entry(levi_class_of(t, &pc.flag_type))
                .or_default()
                .push(pc.clone());
        }
        let levi_classes: Vec<LeviGroup> = groups
            .into_iter()
            .map(|(levi_class, polarizations)| LeviGroup {
                levi_class,
                polarizations,
            })
            .collect();

        let d_iso_pairs: Vec<(PolarizationClass, PolarizationClass)> = polarizations
            .iter()
            .filter(|pc| pc.split_tag == Some(SplitTag::I))
            .filter_map(|first| {
                polarizations
                    .iter()
                    .find(|pc| pc.flag_type == first.flag_type && pc.split_tag == Some(SplitTag::II))
                    .map(|second| (first.clone(), second.clone()))
            })
            .collect();

        // A flag type without a settled Richardson orbit matters only if its
        // Richardson orbit could have this dimension.
        let unsettled: Vec<&FlagEntry> = self
            .entries
            .iter()
            .filter(|e| matches!(e.richardson, RichardsonOutcome::Inconclusive(_)) && 2 * e.dim_pu == dim)
            .collect();
        for e in &unsettled {
            notes.push(format!("Richardson orbit of {} not settled by sampling", e.flag_type));
        }
        if orbit.very_even_tag.is_some() {
            notes.push("very even: Jordan types do not separate orbits I and II".to_string());
        }

        let verdict = if !unsettled.is_empty() && t.family() != Family::A {
            Verdict::Inconclusive
        } else if polarizations.is_empty() {
            Verdict::NoResolution
        } else if levi_classes.len() == 1 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };

        Ok(TheoremReport {
            orbit: orbit.clone(),
            orbit_dimension: dim,
            resolution_polarizations: polarizations,
            levi_classes,
            d_iso_pairs,
            candidates,
            verdict,
            notes,
        })
    }

    /// Parity values that occur among the encoded Levi classes.
    pub fn q_values(&self) -> Vec<usize> {
        let mut qs: Vec<usize> = self.entries.iter().map(|e| e.pai_q).collect();
        qs.sort_unstable();
        qs.dedup();
        qs
    }

    /// Checks that distinct Levi classes with parity statistic `q` have
    /// distinct Richardson orbits (types B and C).
    pub fn spaltenstein_injectivity_check(&self, q: usize) -> Result<InjectivityReport> {
        let t = self.type_rank;
        if !matches!(t.family(), Family::B | Family::C) {
            return Err(Error::WrongFamily {
                op: "spaltenstein_injectivity_check",
                type_rank: t.to_string(),
            });
        }
        let mut by_levi: BTreeMap<LeviClass, (Vec<usize>, Vec<Option<Partition>>)> = BTreeMap::new();
        for e in self.entries.iter().filter(|e| e.pai_q == q) {
            let slot = by_levi.entry(e.levi.clone()).or_insert_with(|| (e.pai.clone(), Vec::new()));
            slot.1.push(match &e.richardson {
                RichardsonOutcome::Found(p) => Some(p.clone()),
                RichardsonOutcome::Inconclusive(_) => None,
            });
        }
        let mut images = Vec::new();
        let mut inconsistent = Vec::new();
        for (levi, (pai, parts)) in by_levi {
            let first = parts[0].clone();
            if first.is_none() || parts.iter().any(|p| *p != first) {
                inconsistent.push(levi);
                continue;
            }
            images.push((levi, pai, first.unwrap()));
        }
        let mut collisions = Vec::new();
        for (i, a) in images.iter().enumerate() {
            for b in &images[i + 1..] {
                if a.2 == b.2 {
                    collisions.push((a.0.clone(), b.0.clone(), a.2.clone()));
                }
            }
        }
        let injective = collisions.is_empty() && inconsistent.is_empty();
        Ok(InjectivityReport {
            type_rank: t,
            q,
            images,
            inconsistent,
            collisions,
            injective,
        })
    }
}
