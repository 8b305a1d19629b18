//! Exact combinatorics of zero-dimensional monomial ideals.
//!
//! Starting from a monomial ideal `I ⊂ K[x_1, …, x_n]` that contains a pure
//! power of every variable, the crate builds
//!
//! * the polarization of `I` and the complex `Δ(I)` whose Stanley–Reisner
//!   ideal it is, with one facet per standard monomial ([`polar`]);
//! * the Alexander-dual ideal `L(I)`, an explicit linear-quotient order of
//!   its generators, its Betti numbers, the decomposition function and a
//!   shelling of `Δ(I)` ([`resolution`]);
//! * vertex-decomposition certificates for `Δ(I)` ([`vd`]);
//! * the powers `L(I)^k`, their q-invariants and the depth profile
//!   `k ↦ depth S^℘/L(I)^k` ([`powers`]).
//!
//! Every closed form has a brute-force counterpart in [`oracle`].
//!
//! ```
//! use whisker::{build_context, betti_formula, depth_profile, MonomialIdeal};
//!
//! let ideal = MonomialIdeal::parse("n 2\ngen 3 0\ngen 0 3\ngen 1 1\n").unwrap();
//! let ctx = build_context(ideal).unwrap();
//! assert_eq!(betti_formula(&ctx).unwrap().betti.0, vec![1, 5, 6, 2]);
//! let depths: Vec<usize> = depth_profile(&ctx, 3).unwrap().rows.iter().map(|r| r.depth).collect();
//! assert_eq!(depths, vec![3, 1, 1]);
//! ```

pub mod error;
pub mod ideal;
pub mod oracle;
pub mod polar;
pub mod powers;
pub mod resolution;
pub mod vd;

pub use error::{Error, Result};
pub use ideal::{
    build_context, h_vector, minimalize, random_artinian, whisker_from_complex, ArtinianContext,
    Monomial, MonomialIdeal,
};
pub use polar::{
    alexander_dual_generators, delta_facets, minimal_primes, phi, polarize, Face, PolarVar,
    SimplicialComplex,
};
pub use powers::{
    depth_profile, max_lcm_degree, power_colon_set, power_generators, q_invariant, DepthProfile,
    PowerGenerator,
};
pub use resolution::{
    admissible_order, betti_formula, check_regular, colon_set, decomposition_function,
    shelling_order, BettiSummary, LGenerator,
};
pub use vd::{derived_ideals, vd_certificate, verify_certificate, VdCertificate};
