//! Brute-force cross-checks.
//!
//! Nothing here calls into the closed-form modules ([`crate::resolution`],
//! [`crate::powers`], [`crate::vd`]); each routine recomputes its answer from
//! definitions so it can be used to validate them.

mod facets;
mod homology;
mod order;
mod vertex_decomposable;

pub use facets::{facets_bruteforce, MAX_FACET_ORACLE_VERTICES};
pub use homology::{
    betti_bruteforce, betti_bruteforce_with, depth_bruteforce, BettiOptions, GradedBetti,
    MAX_BETTI_GENERATORS, MAX_BETTI_VARS, MAX_LCM_LATTICE,
};
pub use order::{colon_generators, is_shelling, verify_linear_quotients, LinearQuotientsReport};
pub use vertex_decomposable::{is_vertex_decomposable_bruteforce, MAX_VD_ORACLE_VERTICES};
