//! Exact-arithmetic cohomology of finite topological spaces with group actions.
//!
//! A finite topological space is modelled as a finite preorder (the
//! specialization order); open sets are up-sets and a map into a discrete
//! abelian group is continuous iff it is locally constant, i.e. constant on
//! the connected components of its domain. On top of that model the crate
//! builds, degree by degree and with exact integer arithmetic throughout:
//!
//! * the standard, continuous, covering-restricted and germ-continuous
//!   cochain complexes of a space with coefficients in a module,
//!   together with their equivariant subcomplexes ([`cochain`]),
//! * the first-quadrant double complex attached to an open covering, its
//!   total complex, augmentations, row contraction and the bridge between
//!   the two augmentations ([`bicomplex`]),
//! * the column-filtration spectral sequence of the double complex and its
//!   comparison against the cohomology of the total complex ([`spectral`]),
//! * independent brute-force oracles (bar-complex group cohomology and
//!   nerve cohomology of a covering) used for cross-validation ([`oracle`]).
//!
//! All cohomology groups are finitely presented abelian groups handled by
//! Smith/Hermite normal forms over arbitrary-precision integers
//! ([`fpabelian`]). Nothing in the crate uses floating point.

pub mod fpabelian;
pub mod par;
pub mod finspace;
pub mod cochain;
pub mod bicomplex;
pub mod spectral;
pub mod oracle;
pub mod model;
pub mod report;
pub mod commands;

/// Default ceiling on the total number of ambient generators a single job
/// may allocate across all grid positions. Overridable through
/// `COHOMOLAB_SIZE_LIMIT`.
pub const DEFAULT_SIZE_LIMIT: usize = 200_000;

/// Returns the effective size limit, honoring `COHOMOLAB_SIZE_LIMIT`.
pub fn size_limit() -> usize {
    std::env::var("COHOMOLAB_SIZE_LIMIT")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SIZE_LIMIT)
}
