//! Property tests for the scalar systems: involution axioms on every
//! instance, the skew-commutation relation, norm multiplicativity, the
//! dual-number quotient map, and the hybrid rational against its
//! arbitrary-precision oracle.

use proptest::prelude::*;

use rank1_core::rings::{
    bicomplex, dual, gaussian_q, quaternions_q, split_complex, GaussElem, MachineComplex,
    QuadraticExtension, Rat, Rationals, Ring, SkewQuotient, Zmod,
};

fn rat() -> impl Strategy<Value = Rat> {
    (any::<i64>(), any::<i64>().prop_filter("nonzero", |d| *d != 0))
        .prop_map(|(n, d)| Rat::new(n, d))
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=9).prop_map(|(n, d)| Rat::new(n, d))
}

fn gauss() -> impl Strategy<Value = GaussElem> {
    (small_rat(), small_rat()).prop_map(|(re, im)| GaussElem::new(re, im))
}

proptest! {
    #[test]
    fn hybrid_rational_matches_the_bignum_oracle(a in rat(), b in rat()) {
        prop_assert_eq!(a.add(&b).to_big(), a.to_big() + b.to_big());
        prop_assert_eq!(a.sub(&b).to_big(), a.to_big() - b.to_big());
        prop_assert_eq!(a.mul(&b).to_big(), a.to_big() * b.to_big());
        prop_assert_eq!(a.neg().to_big(), -a.to_big());
        if !b.is_zero() {
            prop_assert_eq!(b.recip().unwrap().to_big(), b.to_big().recip());
        }
        // canonical forms make equality structural
        prop_assert_eq!(a.sub(&a), Rat::zero());
    }
}

fn involution_axioms<R: Ring>(
    ring: &R,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<(), TestCaseError> {
    // (ab)* = b* a*
    prop_assert_eq!(
        ring.star(&ring.mul(a, b)),
        ring.mul(&ring.star(b), &ring.star(a))
    );
    // additive
    prop_assert_eq!(
        ring.star(&ring.add(a, b)),
        ring.add(&ring.star(a), &ring.star(b))
    );
    // self-inverse
    prop_assert_eq!(&ring.star(&ring.star(a)), a);
    // unit fixed
    prop_assert_eq!(ring.star(&ring.one()), ring.one());
    Ok(())
}

proptest! {
    #[test]
    fn involution_axioms_gaussian(a in gauss(), b in gauss()) {
        involution_axioms(&gaussian_q(), &a, &b)?;
    }

    #[test]
    fn involution_axioms_bicomplex(a in (gauss(), gauss()), b in (gauss(), gauss())) {
        let r = bicomplex();
        involution_axioms(&r, &r.from_parts(a.0, a.1), &r.from_parts(b.0, b.1))?;
    }

    #[test]
    fn involution_axioms_split(a in (small_rat(), small_rat()), b in (small_rat(), small_rat())) {
        let r = split_complex();
        involution_axioms(&r, &r.from_parts(a.0, a.1), &r.from_parts(b.0, b.1))?;
    }

    #[test]
    fn involution_axioms_quaternion(a in (gauss(), gauss()), b in (gauss(), gauss())) {
        let r = quaternions_q();
        involution_axioms(&r, &r.from_parts(a.0, a.1), &r.from_parts(b.0, b.1))?;
    }

    #[test]
    fn involution_axioms_dual_of_bicomplex(
        a in ((gauss(), gauss()), (gauss(), gauss())),
        b in ((gauss(), gauss()), (gauss(), gauss())),
    ) {
        let base = bicomplex();
        let d = dual(base.clone());
        let lift = |p: ((GaussElem, GaussElem), (GaussElem, GaussElem))| {
            d.from_parts(base.from_parts(p.0 .0, p.0 .1), base.from_parts(p.1 .0, p.1 .1))
        };
        involution_axioms(&d, &lift(a), &lift(b))?;
    }

    #[test]
    fn involution_axioms_zmod(a in 0u64..6, b in 0u64..6) {
        involution_axioms(&Zmod::new(6), &a, &b)?;
    }

    #[test]
    fn involution_axioms_machine(a in (-1.0f64..1.0, -1.0f64..1.0), b in (-1.0f64..1.0, -1.0f64..1.0)) {
        let m = MachineComplex;
        let x = num_complex::Complex64::new(a.0, a.1);
        let y = num_complex::Complex64::new(b.0, b.1);
        // conjugation and IEEE arithmetic commute exactly
        involution_axioms(&m, &x, &y)?;
    }

    #[test]
    fn skew_commutation_relation(s in gauss()) {
        // x s = s* x in the skew quotient
        let h = quaternions_q();
        let x = h.generator();
        let lhs = h.mul(&x, &h.lift(&s));
        let rhs = h.mul(&h.lift(&h.base().star(&s)), &x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn skew_norm_is_multiplicative(
        w in (gauss(), gauss()),
        z in (gauss(), gauss()),
    ) {
        let h = quaternions_q();
        let w = h.from_parts(w.0, w.1);
        let z = h.from_parts(z.0, z.1);
        let lhs = h.norm(&h.mul(&w, &z));
        let rhs = h.mul(&h.norm(&w), &h.norm(&z));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn skew_norm_multiplicative_over_rationals(
        w in (small_rat(), small_rat()),
        z in (small_rat(), small_rat()),
        r in -9i64..=9,
    ) {
        // R[x,*]/(x^2 + r) with trivial involution on Q
        let q = SkewQuotient::new(Rationals, Rat::from_i64(r), "q-skew");
        let w = q.from_parts(w.0, w.1);
        let z = q.from_parts(z.0, z.1);
        prop_assert_eq!(q.norm(&q.mul(&w, &z)), q.mul(&q.norm(&w), &q.norm(&z)));
    }

    #[test]
    fn dual_quotient_is_a_star_ring_map(
        a in (gauss(), gauss()),
        b in (gauss(), gauss()),
    ) {
        let g = gaussian_q();
        let d = dual(g);
        let x = d.from_parts(a.0, a.1);
        let y = d.from_parts(b.0, b.1);
        // dropping the nilpotent part commutes with +, *, and the involution
        prop_assert_eq!(
            d.constant_part(&d.mul(&x, &y)),
            g.mul(&d.constant_part(&x), &d.constant_part(&y))
        );
        prop_assert_eq!(
            d.constant_part(&d.add(&x, &y)),
            g.add(&d.constant_part(&x), &d.constant_part(&y))
        );
        prop_assert_eq!(
            d.constant_part(&d.star(&x)),
            g.star(&d.constant_part(&x))
        );
    }

    #[test]
    fn quadratic_extension_inverses_verify(a in (gauss(), gauss())) {
        let b = bicomplex();
        let x = b.from_parts(a.0, a.1);
        if let Some(xi) = b.inv(&x) {
            prop_assert!(b.is_one(&b.mul(&x, &xi)));
            prop_assert!(b.is_one(&b.mul(&xi, &x)));
        }
    }

    #[test]
    fn dagger_antimultiplicative_over_bicomplex(
        a in prop::collection::vec(gauss(), 8),
        b in prop::collection::vec(gauss(), 8),
    ) {
        let r = bicomplex();
        let to_ext = |v: &[GaussElem]| {
            rank1_core::matrix::Matrix::from_fn(r.clone(), 2, 2, |i, j| {
                r.from_parts(v[2 * (2 * i + j)].clone(), v[2 * (2 * i + j) + 1].clone())
            })
        };
        let m = to_ext(&a);
        let n = to_ext(&b);
        prop_assert_eq!(m.mul(&n).dagger(), n.dagger().mul(&m.dagger()));
        let tr = r.sub(&m.mul(&n).trace(), &n.mul(&m).trace());
        prop_assert!(r.is_zero(&tr));
    }
}

#[test]
fn quadratic_extension_relation_constants() {
    // j^2 = -1 in the bicomplex numbers, x^2 = 1 split, eps^2 = 0 dual
    let b = bicomplex();
    let j = b.generator();
    assert_eq!(b.mul(&j, &j), b.from_i64(-1));

    let s = split_complex();
    let x = s.generator();
    assert!(s.is_one(&s.mul(&x, &x)));

    let d = dual(gaussian_q());
    let eps = d.generator();
    assert!(d.is_zero(&d.mul(&eps, &eps)));

    // adjoined square roots square to their defining constant
    let g = gaussian_q();
    let c = GaussElem::new(Rat::new(1, 7), Rat::zero());
    let e = QuadraticExtension::adjoin_sqrt(g, c.clone());
    let r = e.generator();
    assert_eq!(e.mul(&r, &r), e.lift(&c));
}
