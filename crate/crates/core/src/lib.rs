//! Exact and floating-point algebra for configuration spaces of points in ℂ.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] — the scalar tower: arbitrary-precision rationals, the quadratic
//!   extensions ℚ(i) and ℚ(i√3), and double-precision complex numbers.
//! * [`multipoly`] — sparse multivariate polynomials over those scalars, with
//!   exact division (used by fraction-free elimination).
//! * [`unipoly`] — dense univariate polynomials with polynomial coefficients;
//!   Sylvester resultants via Bareiss elimination, discriminants, Taylor shifts,
//!   and complex root finding.
//! * [`configspace`] — point configurations, the Vieta correspondence, barycenter
//!   and balanced charts, discriminant-level membership, and the explicit chart
//!   isomorphisms and involutions (including the Möbius model of S(n+2)).
//! * [`autgroup`] — parametrized automorphisms of configuration spaces: group law,
//!   torsion, tame affine representation, canonical actions, scaling/inversion
//!   automorphisms of 𝒞ⁿ(ℂ*), and covering-degree computations.
//! * [`derivations`] — symbolic vector fields on polynomial rings: Lie brackets,
//!   local nilpotency, exponential flows, and the standard fields with their
//!   chart pushforwards.
//! * [`elliptic`] — the quartic story: cubic resolvent, Tschirnhausen reduction,
//!   the elliptic fibration of the unit-discriminant surface, j-invariants, the
//!   order-12 cyclic action, and the discriminant-squaring endomorphism.
//! * [`coxeter`] — finite permutation and signed-permutation groups with
//!   brute-force closure, conjugacy classes, normalizers, and automorphism search.
//!
//! All values are immutable and all operations are pure, so everything here is
//! safe to use from multiple threads without synchronization.

pub mod autgroup;
pub mod configspace;
pub mod coxeter;
pub mod derivations;
pub mod elliptic;
pub mod multipoly;
pub mod scalar;
pub mod unipoly;

pub use multipoly::MultiPoly;
pub use scalar::Scalar;
pub use unipoly::UniPoly;
