//! Exact computations around plane divisorial valuations.
//!
//! A divisorial valuation centred at a point `p` of the projective plane is
//! encoded by the proximity data of its sequence of point blow-ups together
//! with the number `s` of those points lying on a fixed line `L` through `p`.
//! From that data the crate derives the maximal contact values, the Picard
//! lattice of the blown-up surface with the divisors `D_0, ..., D_m` dual to
//! `L~, E_1, ..., E_m`, and decides:
//!
//! * whether the valuation is non-positive on `k[x, y]` (equivalently, the cone
//!   of curves is regular and `D_m` is nef),
//! * whether it is negative on `k[x, y] \ k`,
//! * whether the characteristic cone is closed / the Cox ring is finitely
//!   generated,
//! * whether the anticanonical Iitaka dimension is `-inf`.
//!
//! The [`germ`] module realizes configurations with explicit charts and
//! evaluates the valuation on polynomials, which gives an independent check of
//! every numerical criterion.
//!
//! All arithmetic is exact (`num-bigint` integers and rationals).

pub mod criteria;
pub mod error;
pub mod germ;
pub mod picard;
pub mod report;
pub mod valuation;

pub use error::{Error, Result};

/// Arbitrary precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational number.
pub type Rat = num_rational::BigRational;
