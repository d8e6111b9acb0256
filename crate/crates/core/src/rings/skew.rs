//! Skew-polynomial quotients `R[x,*]/(x^2 + r)` where `x s = s* x`.
//!
//! Over the Gaussian rationals with `r = 1` this is the algebra of exact
//! rational quaternions; over a base with trivial involution it degenerates
//! to a commutative quadratic extension.

use alloc::string::String;
use core::fmt;

use rand_core::RngCore;

use super::Ring;

/// Element `c0 + x c1`.
#[derive(Clone, PartialEq)]
pub struct SkewElem<E> {
    pub c0: E,
    pub c1: E,
}

impl<E> SkewElem<E> {
    pub fn new(c0: E, c1: E) -> Self {
        SkewElem { c0, c1 }
    }
}

impl<E: fmt::Debug> fmt::Debug for SkewElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})+x({:?})", self.c0, self.c1)
    }
}

/// `R[x,*]/(x^2 + r)` over a commutative base: `x s = s* x` for scalars,
/// `x^2 = -r`, with involution `(a + xb)* = a* - xb`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewQuotient<R: Ring> {
    base: R,
    r_param: R::Elem,
    label: String,
}

impl<R: Ring> SkewQuotient<R> {
    pub fn new(base: R, r_param: R::Elem, label: &str) -> Self {
        debug_assert!(base.commutative());
        debug_assert!(base.star(&r_param) == r_param, "r must be self-adjoint");
        SkewQuotient {
            base,
            r_param,
            label: String::from(label),
        }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn lift(&self, e: &R::Elem) -> SkewElem<R::Elem> {
        SkewElem::new(e.clone(), self.base.from_i64(0))
    }

    pub fn generator(&self) -> SkewElem<R::Elem> {
        SkewElem::new(self.base.from_i64(0), self.base.from_i64(1))
    }

    pub fn from_parts(&self, c0: R::Elem, c1: R::Elem) -> SkewElem<R::Elem> {
        SkewElem::new(c0, c1)
    }

    /// The norm `N(w) = w* w`, multiplicative and landing in the
    /// self-adjoint part of the base for commutative bases.
    pub fn norm(&self, w: &SkewElem<R::Elem>) -> SkewElem<R::Elem> {
        self.mul(&self.star(w), w)
    }
}

impl<R: Ring> Ring for SkewQuotient<R> {
    type Elem = SkewElem<R::Elem>;

    fn tag(&self) -> String {
        self.label.clone()
    }

    fn zero(&self) -> Self::Elem {
        SkewElem::new(self.base.from_i64(0), self.base.from_i64(0))
    }

    fn one(&self) -> Self::Elem {
        SkewElem::new(self.base.from_i64(1), self.base.from_i64(0))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        SkewElem::new(self.base.add(&a.c0, &b.c0), self.base.add(&a.c1, &b.c1))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        SkewElem::new(self.base.neg(&a.c0), self.base.neg(&a.c1))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        // (a0 + x a1)(b0 + x b1) = a0 b0 - r a1* b1 + x (a0* b1 + a1 b0)
        let c0 = self.base.sub(
            &self.base.mul(&a.c0, &b.c0),
            &self
                .base
                .mul(&self.r_param, &self.base.mul(&self.base.star(&a.c1), &b.c1)),
        );
        let c1 = self.base.add(
            &self.base.mul(&self.base.star(&a.c0), &b.c1),
            &self.base.mul(&a.c1, &b.c0),
        );
        SkewElem::new(c0, c1)
    }

    fn star(&self, a: &Self::Elem) -> Self::Elem {
        SkewElem::new(self.base.star(&a.c0), self.base.neg(&a.c1))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        SkewElem::new(self.base.from_i64(n), self.base.from_i64(0))
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // w^-1 = N(w)^-1 w* whenever the norm is an invertible central scalar
        let n = self.norm(a);
        if !self.base.is_zero(&n.c1) {
            return None;
        }
        if self.base.star(&n.c0) != n.c0 {
            return None;
        }
        let ni = self.base.inv(&n.c0)?;
        let s = self.star(a);
        let cand = SkewElem::new(self.base.mul(&ni, &s.c0), self.base.mul(&ni, &s.c1));
        if self.is_one(&self.mul(a, &cand)) && self.is_one(&self.mul(&cand, a)) {
            Some(cand)
        } else {
            None
        }
    }

    fn commutative(&self) -> bool {
        self.base.commutative() && self.base.trivial_star()
    }

    fn exact(&self) -> bool {
        self.base.exact()
    }

    fn magnitude(&self, a: &Self::Elem) -> f64 {
        self.base.magnitude(&a.c0) + self.base.magnitude(&a.c1)
    }

    fn sample_small(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let c0 = self.base.sample_small(rng);
        let c1 = self.base.sample_small(rng);
        SkewElem::new(c0, c1)
    }
}
