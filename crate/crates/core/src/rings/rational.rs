//! Exact rational scalars: `Q` and the Gaussian rationals `Q(i)`.

use alloc::string::String;
use core::fmt;

use rand_core::RngCore;

use super::rat::Rat;
use super::{rng_i64, Ring};

/// Exact square root of a nonnegative rational, when it is a perfect square.
pub fn rational_sqrt(x: &Rat) -> Option<Rat> {
    x.sqrt()
}

/// The rational numbers with the identity involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rat;

    fn tag(&self) -> String {
        String::from("rationals")
    }

    fn zero(&self) -> Rat {
        Rat::zero()
    }

    fn one(&self) -> Rat {
        Rat::one()
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a.add(b)
    }

    fn neg(&self, a: &Rat) -> Rat {
        a.neg()
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a.mul(b)
    }

    fn star(&self, a: &Rat) -> Rat {
        a.clone()
    }

    fn from_i64(&self, n: i64) -> Rat {
        Rat::from_i64(n)
    }

    fn inv(&self, a: &Rat) -> Option<Rat> {
        a.recip()
    }

    fn commutative(&self) -> bool {
        true
    }

    fn exact(&self) -> bool {
        true
    }

    fn trivial_star(&self) -> bool {
        true
    }

    fn magnitude(&self, a: &Rat) -> f64 {
        libm::fabs(a.to_f64())
    }

    fn sample_small(&self, rng: &mut dyn RngCore) -> Rat {
        let num = rng_i64(rng, -4, 4);
        let den = rng_i64(rng, 1, 2);
        Rat::new(num, den)
    }

    fn sqrt_self_adjoint(&self, a: &Rat) -> Option<Rat> {
        a.sqrt()
    }
}

/// Element of `Q(i)`: `re + i im` with rational coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct GaussElem {
    pub re: Rat,
    pub im: Rat,
}

impl GaussElem {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussElem { re, im }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        GaussElem {
            re: Rat::from_i64(re),
            im: Rat::from_i64(im),
        }
    }
}

impl fmt::Debug for GaussElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}

/// The Gaussian rationals `Q(i)` with complex conjugation as involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianRationals;

impl Ring for GaussianRationals {
    type Elem = GaussElem;

    fn tag(&self) -> String {
        String::from("gaussian-q")
    }

    fn zero(&self) -> GaussElem {
        GaussElem::new(Rat::zero(), Rat::zero())
    }

    fn one(&self) -> GaussElem {
        GaussElem::new(Rat::one(), Rat::zero())
    }

    fn add(&self, a: &GaussElem, b: &GaussElem) -> GaussElem {
        GaussElem::new(a.re.add(&b.re), a.im.add(&b.im))
    }

    fn neg(&self, a: &GaussElem) -> GaussElem {
        GaussElem::new(a.re.neg(), a.im.neg())
    }

    fn mul(&self, a: &GaussElem, b: &GaussElem) -> GaussElem {
        GaussElem::new(
            a.re.mul(&b.re).sub(&a.im.mul(&b.im)),
            a.re.mul(&b.im).add(&a.im.mul(&b.re)),
        )
    }

    fn star(&self, a: &GaussElem) -> GaussElem {
        GaussElem::new(a.re.clone(), a.im.neg())
    }

    fn from_i64(&self, n: i64) -> GaussElem {
        GaussElem::from_i64(n, 0)
    }

    fn inv(&self, a: &GaussElem) -> Option<GaussElem> {
        let nrm = a.re.mul(&a.re).add(&a.im.mul(&a.im));
        let ni = nrm.recip()?;
        Some(GaussElem::new(a.re.mul(&ni), a.im.neg().mul(&ni)))
    }

    fn commutative(&self) -> bool {
        true
    }

    fn exact(&self) -> bool {
        true
    }

    fn magnitude(&self, a: &GaussElem) -> f64 {
        libm::fabs(a.re.to_f64()) + libm::fabs(a.im.to_f64())
    }

    fn sample_small(&self, rng: &mut dyn RngCore) -> GaussElem {
        GaussElem::from_i64(rng_i64(rng, -2, 2), rng_i64(rng, -2, 2))
    }

    fn imaginary_unit(&self) -> Option<GaussElem> {
        Some(GaussElem::from_i64(0, 1))
    }

    fn sqrt_self_adjoint(&self, a: &GaussElem) -> Option<GaussElem> {
        if !a.im.is_zero() {
            return None;
        }
        a.re.sqrt().map(|r| GaussElem::new(r, Rat::zero()))
    }
}
