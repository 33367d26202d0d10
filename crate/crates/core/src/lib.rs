//! Exact, rank-by-rank verification of the combinatorics behind symplectic
//! resolutions of nilpotent orbit closures in the classical Lie algebras.
//!
//! The crate is layered bottom-up:
//!
//! - [`exact`]: rational matrices with exact rank and characteristic polynomials.
//! - [`partitions`]: orbit labels and their dimensions.
//! - [`oracle`]: matrix realizations of `sl`, `so`, `sp` with brute-force
//!   Richardson partitions and moment-map degrees.
//! - [`polarizations`]: resolution filters and per-orbit verdicts.
//! - [`deformation`]: certificates for the family `t·z + p_u` degenerating
//!   `G/L` to `T*(G/P)`.
//! - [`report`]: sweep drivers and report rendering.

/// Implements `Serialize`/`Deserialize` through `Display`/`FromStr`.
macro_rules! string_serde {
    ($ty:ty) => {
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> ::std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> ::std::result::Result<Self, D::Error> {
                let raw = <String as serde::Deserialize>::deserialize(d)?;
                raw.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

pub mod deformation;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod partitions;
pub mod polarizations;
pub mod report;

pub use error::{Error, ParseError, Result};
pub use exact::{ExactMatrix, Rational};
pub use partitions::{Family, LieTypeRank, OrbitLabel, Partition, VeryEvenTag};
pub use polarizations::{FlagType, LeviClass, PolarizationClass, SplitTag, TheoremReport, Verdict};
