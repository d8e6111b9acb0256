//! Quadratic extensions `R[x]/(x^2 - s)` with a central generator.
//!
//! One constructor family covers every commutative extension used here:
//! bicomplex numbers (`x^2 = -1`, `x` self-adjoint, star on coefficients),
//! split-complex numbers (`x^2 = 1`, `x* = -x`), dual numbers (`x^2 = 0`),
//! and the formal adjunction of an inverse square root used to build exact
//! covering-space points.

use alloc::format;
use alloc::string::String;
use core::fmt;

use rand_core::RngCore;

use super::Ring;

/// Element `c0 + x c1` of a quadratic extension.
#[derive(Clone, PartialEq)]
pub struct ExtElem<E> {
    pub c0: E,
    pub c1: E,
}

impl<E> ExtElem<E> {
    pub fn new(c0: E, c1: E) -> Self {
        ExtElem { c0, c1 }
    }
}

impl<E: fmt::Debug> fmt::Debug for ExtElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})+x({:?})", self.c0, self.c1)
    }
}

/// `R[x]/(x^2 - gen_sq)` with `x` central. The involution acts on
/// coefficients through the base involution and fixes or negates `x`
/// according to `skew`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticExtension<R: Ring> {
    base: R,
    gen_sq: R::Elem,
    skew: bool,
    label: String,
}

impl<R: Ring> QuadraticExtension<R> {
    /// `x^2 = -1`, `x* = x`: bicomplex-style adjunction of a self-adjoint
    /// imaginary unit.
    pub fn adjoin_i(base: R, label: &str) -> Self {
        let gen_sq = base.from_i64(-1);
        QuadraticExtension {
            base,
            gen_sq,
            skew: false,
            label: String::from(label),
        }
    }

    /// `x^2 = -1`, `x* = -x`: adjunction of a skew-adjoint imaginary unit.
    pub fn adjoin_skew_i(base: R, label: &str) -> Self {
        let gen_sq = base.from_i64(-1);
        QuadraticExtension {
            base,
            gen_sq,
            skew: true,
            label: String::from(label),
        }
    }

    /// `x^2 = 1`, `x* = -x`: split-style extension.
    pub fn split(base: R, label: &str) -> Self {
        let gen_sq = base.from_i64(1);
        QuadraticExtension {
            base,
            gen_sq,
            skew: true,
            label: String::from(label),
        }
    }

    /// Dual numbers `R[eps]/(eps^2)` with `eps` self-adjoint.
    pub fn dual(base: R) -> Self {
        let label = format!("dual({})", base.tag());
        let gen_sq = base.from_i64(0);
        QuadraticExtension {
            base,
            gen_sq,
            skew: false,
            label,
        }
    }

    /// Adjoins a self-adjoint `x` with `x^2 = c`.
    pub fn adjoin_sqrt(base: R, c: R::Elem) -> Self {
        let label = format!("sqrt-ext({})", base.tag());
        QuadraticExtension {
            base,
            gen_sq: c,
            skew: false,
            label,
        }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn gen_squared(&self) -> &R::Elem {
        &self.gen_sq
    }

    pub fn skew(&self) -> bool {
        self.skew
    }

    /// Embeds a base element as a constant.
    pub fn lift(&self, e: &R::Elem) -> ExtElem<R::Elem> {
        ExtElem::new(e.clone(), self.base.from_i64(0))
    }

    /// The adjoined generator `x`.
    pub fn generator(&self) -> ExtElem<R::Elem> {
        ExtElem::new(self.base.from_i64(0), self.base.from_i64(1))
    }

    pub fn from_parts(&self, c0: R::Elem, c1: R::Elem) -> ExtElem<R::Elem> {
        ExtElem::new(c0, c1)
    }

    /// The canonical quotient map dropping the generator part. For dual
    /// numbers this is the ring map `s + eps t -> s`.
    pub fn constant_part(&self, e: &ExtElem<R::Elem>) -> R::Elem {
        e.c0.clone()
    }

    /// Coefficient of the generator; for dual numbers, the derivative part.
    pub fn generator_part(&self, e: &ExtElem<R::Elem>) -> R::Elem {
        e.c1.clone()
    }
}

impl<R: Ring> Ring for QuadraticExtension<R> {
    type Elem = ExtElem<R::Elem>;

    fn tag(&self) -> String {
        self.label.clone()
    }

    fn zero(&self) -> Self::Elem {
        ExtElem::new(self.base.from_i64(0), self.base.from_i64(0))
    }

    fn one(&self) -> Self::Elem {
        ExtElem::new(self.base.from_i64(1), self.base.from_i64(0))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        ExtElem::new(self.base.add(&a.c0, &b.c0), self.base.add(&a.c1, &b.c1))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        ExtElem::new(self.base.neg(&a.c0), self.base.neg(&a.c1))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        // x is central: (a0 + x a1)(b0 + x b1) = a0 b0 + s a1 b1 + x(a0 b1 + a1 b0)
        let cross = self.base.mul(&a.c1, &b.c1);
        let c0 = self.base.add(&self.base.mul(&a.c0, &b.c0), &self.base.mul(&self.gen_sq, &cross));
        let c1 = self.base.add(&self.base.mul(&a.c0, &b.c1), &self.base.mul(&a.c1, &b.c0));
        ExtElem::new(c0, c1)
    }

    fn star(&self, a: &Self::Elem) -> Self::Elem {
        let c1 = self.base.star(&a.c1);
        ExtElem::new(
            self.base.star(&a.c0),
            if self.skew { self.base.neg(&c1) } else { c1 },
        )
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        ExtElem::new(self.base.from_i64(n), self.base.from_i64(0))
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.base.commutative() {
            // (a0 + x a1)(a0 - x a1) = a0^2 - s a1^2
            let den = self.base.sub(
                &self.base.mul(&a.c0, &a.c0),
                &self.base.mul(&self.gen_sq, &self.base.mul(&a.c1, &a.c1)),
            );
            let di = self.base.inv(&den)?;
            Some(ExtElem::new(
                self.base.mul(&a.c0, &di),
                self.base.neg(&self.base.mul(&a.c1, &di)),
            ))
        } else if self.base.is_zero(&self.gen_sq) {
            // dual numbers over any base: (a0 + eps a1)^-1 = a0^-1 - eps a0^-1 a1 a0^-1
            let i0 = self.base.inv(&a.c0)?;
            let c1 = self.base.mul(&i0, &self.base.mul(&a.c1, &i0));
            Some(ExtElem::new(i0, self.base.neg(&c1)))
        } else if self.base.is_zero(&a.c1) {
            self.base.inv(&a.c0).map(|i0| self.lift(&i0))
        } else {
            None
        }
    }

    fn commutative(&self) -> bool {
        self.base.commutative()
    }

    fn exact(&self) -> bool {
        self.base.exact()
    }

    fn trivial_star(&self) -> bool {
        self.base.trivial_star() && !self.skew
    }

    fn magnitude(&self, a: &Self::Elem) -> f64 {
        self.base.magnitude(&a.c0) + self.base.magnitude(&a.c1)
    }

    fn sample_small(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let c0 = self.base.sample_small(rng);
        let c1 = self.base.sample_small(rng);
        ExtElem::new(c0, c1)
    }

    fn imaginary_unit(&self) -> Option<Self::Elem> {
        // prefer a skew-adjoint unit inherited from the base
        if let Some(i) = self.base.imaginary_unit() {
            return Some(self.lift(&i));
        }
        if self.gen_sq == self.base.from_i64(-1) {
            return Some(self.generator());
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::super::{bicomplex, dual, gaussian_q, split_complex, Ring};
    use super::*;
    use crate::rings::GaussElem;

    #[test]
    fn bicomplex_involution_conjugates_coefficients() {
        let b = bicomplex();
        // (1+i) + j*2  ->  (1-i) + j*2
        let z = b.from_parts(GaussElem::from_i64(1, 1), GaussElem::from_i64(2, 0));
        let expect = b.from_parts(GaussElem::from_i64(1, -1), GaussElem::from_i64(2, 0));
        assert_eq!(b.star(&z), expect);
    }

    #[test]
    fn split_involution_negates_generator() {
        let s = split_complex();
        // 3 + 2x -> 3 - 2x
        let z = s.from_parts(s.base().from_i64(3), s.base().from_i64(2));
        let expect = s.from_parts(s.base().from_i64(3), s.base().from_i64(-2));
        assert_eq!(s.star(&z), expect);
        let x = s.generator();
        assert!(s.is_one(&s.mul(&x, &x)));
    }

    #[test]
    fn dual_lift_examples() {
        let g = gaussian_q();
        let d = dual(g);
        let one = d.from_parts(GaussElem::from_i64(1, 0), GaussElem::from_i64(0, 0));
        assert!(d.is_one(&d.mul(&one, &one)));
        let eps = d.generator();
        assert!(d.is_zero(&d.mul(&eps, &eps)));
        // (i + eps)^2 = -1 + 2i eps
        let z = d.from_parts(GaussElem::from_i64(0, 1), GaussElem::from_i64(1, 0));
        let sq = d.mul(&z, &z);
        assert_eq!(sq.c0, GaussElem::from_i64(-1, 0));
        assert_eq!(sq.c1, GaussElem::from_i64(0, 2));
    }

    #[test]
    fn dual_inverse() {
        let d = dual(gaussian_q());
        let z = d.from_parts(GaussElem::from_i64(2, 0), GaussElem::from_i64(3, 1));
        let zi = d.inv(&z).unwrap();
        assert!(d.is_one(&d.mul(&z, &zi)));
        assert_eq!(d.inv(&d.generator()), None);
    }

    #[test]
    fn bicomplex_zero_divisors_have_no_inverse() {
        let b = bicomplex();
        // (i + j)(i - j) = 0
        let z = b.from_parts(GaussElem::from_i64(0, 1), GaussElem::from_i64(1, 0));
        let w = b.from_parts(GaussElem::from_i64(0, 1), GaussElem::from_i64(-1, 0));
        assert!(b.is_zero(&b.mul(&z, &w)));
        assert_eq!(b.inv(&z), None);
    }

    #[test]
    fn bicomplex_imaginary_unit_is_skew() {
        let b = bicomplex();
        let i = b.imaginary_unit().unwrap();
        assert_eq!(b.mul(&i, &i), b.from_i64(-1));
        assert_eq!(b.star(&i), b.neg(&i));
    }
}
