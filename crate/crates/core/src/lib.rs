//! Exact and machine-precision algebra of rank-1 projection varieties.
//!
//! The variety of rank-1 projections in `M_n(R)` — idempotent matrices with
//! unit trace and vanishing 2x2 minors — carries, for any commutative ring
//! with involution `R`, a symplectic form, a Hermitian form, and a
//! conjugate-linear tangent operator whose square is a negative scalar.
//! Passing to the double cover that adjoins an inverse square root of
//! `Tr(q†q)` normalizes that operator into a complex structure, and over the
//! complex numbers the whole package is the hyperkähler geometry of the
//! cotangent bundle of projective space, together with an explicit weighted
//! isometric embedding into Euclidean space.
//!
//! This crate implements the objects and verifies the identities:
//!
//! - [`rings`]: number systems with involution (rationals, Gaussian
//!   rationals, bicomplex/split-complex/dual quadratic extensions, skew
//!   quotients giving quaternion algebras, modular rings, machine complex).
//! - [`matrix`]: dense matrices over any such ring, with conjugate-transpose,
//!   trace, commutators, and 2x2-minor residuals.
//! - [`projspace`]: membership, tangent spaces, sampling, and exhaustive
//!   enumeration of rank-1 projections.
//! - [`geometry`]: the tangent operator, symplectic and Hermitian forms, the
//!   covering space with its complex structure, intertwining maps, and
//!   polarizations.
//! - [`embedding`]: the weighted isometric embedding of a punctured Hilbert
//!   space and the induced embedding of the projection variety.
//! - [`numerics`]: finite-difference oracles (exterior derivative, Nijenhuis
//!   tensor, potential Hessians) and the seeded check harness.
//!
//! The library is `no_std` (requires `alloc`); IO, JSON formats and the
//! command-line driver live in the companion `rank1-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod embedding;
pub mod geometry;
pub mod matrix;
pub mod numerics;
pub mod projspace;
pub mod rings;

/// Default tolerance for algebraic identities over machine-precision rings.
///
/// Exact rings ignore tolerances entirely; their residuals must vanish
/// structurally.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Sign of a square-root branch or embedding sheet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}
