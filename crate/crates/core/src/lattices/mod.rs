//! Concrete graded posets: the boolean lattice of subsets of `[n]` and the
//! lattice of subspaces of `F_q^n`, each with a closed-form [`RankProfile`].
//!
//! [`RankProfile`]: crate::poset::RankProfile

mod boolean;
mod field;
mod subspace;

pub use boolean::{binomial, boolean_c2_prime, boolean_lattice, boolean_profile, MAX_BOOLEAN_N};
pub use field::{prime_power_decomposition, GaloisField};
pub use subspace::{
    enumerate_subspaces, gaussian_binomial, subspace_c2_prime, subspace_profile, Subspace,
    SubspaceLattice, MAX_SUBSPACE_ELEMENTS, MAX_VECTORS,
};
