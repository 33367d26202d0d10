//! Exact matrix realizations of the classical Lie algebras. Every
//! combinatorial claim elsewhere is checked against brute force here.

mod algebra;
mod degree;
mod jordan;
mod parabolic;
mod richardson;

pub use algebra::{
    build_algebra, centralizer_dimension, check_membership, nilpotent_of_jordan_type, ExactMatrixAlgebra,
};
pub use degree::springer_birational;
pub use jordan::{jordan_type, power_ranks};
pub use parabolic::{parabolic_from_flag, ParabolicData};
pub use richardson::{derive_seed, random_combination, richardson_partition, BASE_COEFFICIENT_RANGE, SAMPLING_ROUNDS};
