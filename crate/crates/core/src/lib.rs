//! Exact combinatorial calculus around Grothendieck polynomials: the
//! Demazure product, double and stable Grothendieck polynomials, Lascoux
//! transition tables, and K-theoretic quiver coefficients, with verifiers
//! for the identities tying them together.

pub mod error;
pub mod groth;
pub mod hecke;
pub mod perm;
pub mod poly;
pub mod quiver;
pub mod splitting;
pub mod transition;

pub use error::{Error, Result};
pub use groth::{
    double_grothendieck, stable_for_partition, stable_grothendieck, verify_cauchy, Cache,
};
pub use hecke::{
    enumerate_factorizations, enumerate_pairs, hecke_apply, hecke_product, hecke_word_product,
    HeckeFactorization,
};
pub use perm::{symmetric_group, Partition, Permutation};
pub use poly::{Monomial, SparsePoly, Var};
pub use quiver::{
    expected_codim, quiver_coefficients, rank_conditions, LambdaKey, QuiverExpansion,
    RankConditions,
};
pub use splitting::{
    grothendieck_via_monomials, lambda_placement, monomial_coefficient, split_grothendieck,
    verify_splitting, CompatibleSplit, PlacementIndexing,
};
pub use transition::{
    a_coefficients, a_coefficients_default, transition_successors, verify_a_expansion,
    ACoefficients, GuardLimits,
};
