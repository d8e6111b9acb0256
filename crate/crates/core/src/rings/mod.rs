//! Rings with involution and the concrete number systems built on them.
//!
//! Everything downstream is generic over the [`Ring`] trait: a unital ring
//! together with an additive involution `*` satisfying `(ab)* = b*a*`.
//! Elements are plain values; each ring keeps a canonical normal form so
//! that structural equality is exact equality. Machine-precision rings are
//! flagged [`Ring::exact`]` == false` and are compared through tolerances
//! carried by the caller, never by the element itself.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

mod extension;
mod machine;
mod modular;
mod rat;
mod rational;
mod skew;

pub use extension::{ExtElem, QuadraticExtension};
pub use machine::MachineComplex;
pub use modular::Zmod;
pub use rat::Rat;
pub use rational::{rational_sqrt, GaussElem, GaussianRationals, Rationals};
pub use skew::{SkewElem, SkewQuotient};

pub(crate) use machine::unit_f64 as machine_unit_f64;

/// A unital ring with an additive, product-reversing, self-inverse
/// involution.
///
/// The ring object itself is a small value (modulus, base ring, adjoined
/// relation) passed by reference to every operation; elements are owned
/// data. All operations are pure.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    /// Short human-readable tag, e.g. `gaussian-q` or `zmod:6`.
    fn tag(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// The involution `x -> x*`.
    fn star(&self, a: &Self::Elem) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Multiplicative inverse, when one exists.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn commutative(&self) -> bool;

    /// Exact rings decide equality structurally; inexact ones go through
    /// magnitudes and tolerances.
    fn exact(&self) -> bool;

    /// Whether the involution is the identity map.
    fn trivial_star(&self) -> bool {
        false
    }

    /// Nonnegative size measure used for residual reporting. Zero elements
    /// have magnitude zero; for exact rings any nonzero element has positive
    /// magnitude.
    fn magnitude(&self, a: &Self::Elem) -> f64;

    /// Draws a small element, suitable for building well-conditioned random
    /// matrices. Deterministic given the generator state.
    fn sample_small(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Zero test through the lens appropriate for the ring: structural for
    /// exact rings, `magnitude <= tol` otherwise.
    fn is_negligible(&self, a: &Self::Elem, tol: f64) -> bool {
        if self.exact() {
            self.is_zero(a)
        } else {
            self.magnitude(a) <= tol
        }
    }

    /// Residual magnitude of `a - b`.
    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64 {
        self.magnitude(&self.sub(a, b))
    }

    /// One half, when 2 is invertible.
    fn half(&self) -> Option<Self::Elem> {
        self.inv(&self.from_i64(2))
    }

    /// A central element with square -1, when the ring carries one.
    /// Implementations prefer a skew-adjoint witness (`i* = -i`) when
    /// available.
    fn imaginary_unit(&self) -> Option<Self::Elem> {
        None
    }

    /// A self-adjoint square root of `a`, when one exists in this ring.
    fn sqrt_self_adjoint(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// All elements, for finite rings only.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Number of elements, for finite rings only.
    fn size(&self) -> Option<u128> {
        None
    }
}

/// Uniform integer in `lo..=hi` from a raw generator.
pub(crate) fn rng_i64(rng: &mut dyn RngCore, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as i64
}

/// The Gaussian rationals `Q(i)` with conjugation.
pub fn gaussian_q() -> GaussianRationals {
    GaussianRationals
}

/// The bicomplex numbers over the Gaussian rationals: `Q(i)[j]/(j^2+1)` with
/// `(a + jb)* = a* + jb*` (coefficientwise conjugation, `j` self-adjoint).
pub fn bicomplex() -> QuadraticExtension<GaussianRationals> {
    QuadraticExtension::adjoin_i(GaussianRationals, "bicomplex")
}

/// The split-complex numbers over the rationals: `Q[x]/(x^2-1)` with
/// `(a + xb)* = a - xb`.
pub fn split_complex() -> QuadraticExtension<Rationals> {
    QuadraticExtension::split(Rationals, "split")
}

/// Dual-number extension `R[eps]/(eps^2)` with `(s + eps t)* = s* + eps t*`.
pub fn dual<R: Ring>(base: R) -> QuadraticExtension<R> {
    QuadraticExtension::dual(base)
}

/// Exact rational quaternions: the skew quotient `Q(i)[x,*]/(x^2+1)`.
pub fn quaternions_q() -> SkewQuotient<GaussianRationals> {
    SkewQuotient::new(GaussianRationals, GaussianRationals.one(), "quaternion-q")
}

/// Ring tags addressable from the command line and report files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingTag {
    Rationals,
    GaussianQ,
    Bicomplex,
    Split,
    Fp(u64),
    Zmod(u64),
    QuaternionQ,
    MachineComplex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TagError {
    Unknown(String),
    BadModulus(String),
    NotPrime(u64),
}

impl fmt::Display for TagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TagError::Unknown(s) => write!(f, "unknown ring tag `{s}`"),
            TagError::BadModulus(s) => write!(f, "bad modulus in ring tag `{s}`"),
            TagError::NotPrime(p) => {
                write!(f, "fp:{p} requires a prime modulus (use zmod:{p} instead)")
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl core::str::FromStr for RingTag {
    type Err = TagError;

    fn from_str(s: &str) -> Result<Self, TagError> {
        match s {
            "rationals" => return Ok(RingTag::Rationals),
            "gaussian-q" => return Ok(RingTag::GaussianQ),
            "bicomplex" => return Ok(RingTag::Bicomplex),
            "split" => return Ok(RingTag::Split),
            "quaternion-q" => return Ok(RingTag::QuaternionQ),
            "machine-complex" => return Ok(RingTag::MachineComplex),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("fp:") {
            let p: u64 = m
                .parse()
                .map_err(|_| TagError::BadModulus(String::from(s)))?;
            if !is_prime(p) {
                return Err(TagError::NotPrime(p));
            }
            return Ok(RingTag::Fp(p));
        }
        if let Some(m) = s.strip_prefix("zmod:") {
            let m: u64 = m
                .parse()
                .map_err(|_| TagError::BadModulus(String::from(s)))?;
            if m < 2 {
                return Err(TagError::BadModulus(String::from(s)));
            }
            return Ok(RingTag::Zmod(m));
        }
        Err(TagError::Unknown(String::from(s)))
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Rationals => write!(f, "rationals"),
            RingTag::GaussianQ => write!(f, "gaussian-q"),
            RingTag::Bicomplex => write!(f, "bicomplex"),
            RingTag::Split => write!(f, "split"),
            RingTag::Fp(p) => write!(f, "fp:{p}"),
            RingTag::Zmod(m) => write!(f, "zmod:{m}"),
            RingTag::QuaternionQ => write!(f, "quaternion-q"),
            RingTag::MachineComplex => write!(f, "machine-complex"),
        }
    }
}
