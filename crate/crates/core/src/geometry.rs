//! The hyperkähler-like structure on rank-1 projections.
//!
//! At a point `q` with tangent `a`, the conjugate-linear operator
//!
//! ```text
//! L_q(a) = 2 [a†, q q† q] + [q a† q, q†]
//! ```
//!
//! preserves tangency and satisfies `L_q^2 = -4 r^3` with `r = Tr(q† q)`,
//! together with `L_q(s a) = s* L_q(a)` for central scalars. On the covering
//! space of pairs `(q, r)` with `r` self-adjoint and `r^2 Tr(q† q) = 1` it
//! normalizes to a complex structure `I = (r^3/2) L` with `I^2 = -1`. The
//! symplectic form `Omega_q(a, b) = Tr(q [a, b])` and the Hermitian forms
//! `h`, `h~` close the triple: `h = Omega(·, L ·)` and `h~ = Omega(·, I ·)`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::Matrix;
use crate::projspace::{ProjectionPoint, TangentVector};
use crate::rings::{QuadraticExtension, Ring};
use crate::{Sign, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// The ring has no admissible self-adjoint square root for this value.
    NoSquareRoot,
    NotInvertible,
    /// 2 is not invertible in this ring.
    NoHalf,
    NoImaginaryUnit,
    InvariantViolated { residual: f64 },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::NoSquareRoot => write!(f, "no self-adjoint square root in this ring"),
            GeometryError::NotInvertible => write!(f, "element is not invertible"),
            GeometryError::NoHalf => write!(f, "2 is not invertible in this ring"),
            GeometryError::NoImaginaryUnit => {
                write!(f, "ring has no central element with square -1")
            }
            GeometryError::InvariantViolated { residual } => {
                write!(f, "covering-space invariant violated (residual {residual:.3e})")
            }
        }
    }
}

/// The operator `L_q` with its `q`-dependent products precomputed, for
/// repeated application at one base point.
pub struct LOperator<R: Ring> {
    q: Matrix<R>,
    qd: Matrix<R>,
    core: Matrix<R>,
}

impl<R: Ring> LOperator<R> {
    pub fn new(q: &Matrix<R>) -> Self {
        let qd = q.dagger();
        let core = q.mul(&qd).mul(q);
        LOperator {
            q: q.clone(),
            qd,
            core,
        }
    }

    /// `L_q(a) = 2 [a†, q q† q] + [q a† q, q†]`.
    pub fn apply(&self, a: &Matrix<R>) -> Matrix<R> {
        let ring = self.q.ring().clone();
        let two = ring.from_i64(2);
        let ad = a.dagger();
        let qadq = self.q.mul(&ad).mul(&self.q);
        ad.commutator(&self.core)
            .scale(&two)
            .add(&qadq.commutator(&self.qd))
    }

    /// `q q† q`, which rank-1 points satisfy as `Tr(q† q) q`.
    pub fn core(&self) -> &Matrix<R> {
        &self.core
    }
}

/// `L_q(a) = 2 [a†, q q† q] + [q a† q, q†]` on raw matrices. Valid over any
/// ring with involution as long as `q q† q` is a central multiple of `q`,
/// which holds for rank-1 projections and their quaternionic analogues.
pub fn l_operator_raw<R: Ring>(q: &Matrix<R>, a: &Matrix<R>) -> Matrix<R> {
    LOperator::new(q).apply(a)
}

/// The same operator written through traces, valid over commutative rings:
/// `2 Tr(q† q) [a†, q] + Tr(a† q) [q, q†]`.
pub fn l_operator_trace_form<R: Ring>(q: &Matrix<R>, a: &Matrix<R>) -> Matrix<R> {
    debug_assert!(q.ring().commutative());
    let ring = q.ring().clone();
    let ad = a.dagger();
    let qd = q.dagger();
    let t = qd.mul(q).trace();
    let coeff = ring.mul(&ring.from_i64(2), &t);
    let s = ad.mul(q).trace();
    ad.commutator(q).scale(&coeff).add(&q.commutator(&qd).scale(&s))
}

/// Applies the operator to a verified tangent vector; the result is again
/// tangent.
pub fn l_operator<R: Ring>(t: &TangentVector<R>) -> TangentVector<R> {
    let out = l_operator_raw(t.base().matrix(), t.matrix());
    TangentVector::unchecked(t.base().clone(), out)
}

/// `L_q^2(a) + 4 Tr(q† q)^3 a`, which must vanish identically.
pub fn l_squared_residual<R: Ring>(q: &Matrix<R>, a: &Matrix<R>) -> Matrix<R> {
    let ring = q.ring().clone();
    let op = LOperator::new(q);
    let ll = op.apply(&op.apply(a));
    let t = q.dagger().mul(q).trace();
    let t3 = ring.mul(&t, &ring.mul(&t, &t));
    let coeff = ring.mul(&ring.from_i64(4), &t3);
    ll.add(&a.scale(&coeff))
}

/// `Omega_q(a, b) = Tr(q [a, b])`.
pub fn omega_raw<R: Ring>(q: &Matrix<R>, a: &Matrix<R>, b: &Matrix<R>) -> R::Elem {
    q.mul(&a.commutator(b)).trace()
}

pub fn omega<R: Ring>(a: &TangentVector<R>, b: &TangentVector<R>) -> R::Elem {
    debug_assert_eq!(a.base(), b.base());
    omega_raw(a.base().matrix(), a.matrix(), b.matrix())
}

/// `h_q(a, b) = 2 Tr(q† q) Tr(a b†) - Tr(q† a) Tr(q b†)`.
pub fn h_form<R: Ring>(a: &TangentVector<R>, b: &TangentVector<R>) -> R::Elem {
    debug_assert_eq!(a.base(), b.base());
    let q = a.base().matrix();
    let ring = q.ring().clone();
    let (am, bm) = (a.matrix(), b.matrix());
    let t = q.dagger().mul(q).trace();
    let first = ring.mul(
        &ring.mul(&ring.from_i64(2), &t),
        &am.mul(&bm.dagger()).trace(),
    );
    let second = ring.mul(
        &q.dagger().mul(am).trace(),
        &q.mul(&bm.dagger()).trace(),
    );
    ring.sub(&first, &second)
}

/// The alternating sum `Tr(a[b,c]) - Tr(b[a,c]) + Tr(c[a,b])`, the pullback
/// of the exterior derivative of `Omega`; it vanishes on tangent triples.
pub fn closedness_residual<R: Ring>(a: &Matrix<R>, b: &Matrix<R>, c: &Matrix<R>) -> R::Elem {
    let ring = a.ring().clone();
    let t1 = a.mul(&b.commutator(c)).trace();
    let t2 = b.mul(&a.commutator(c)).trace();
    let t3 = c.mul(&a.commutator(b)).trace();
    ring.add(&ring.sub(&t1, &t2), &t3)
}

/// `Omega_{q†}(a†, b†) + Omega_q(a, b)*`; the involution is anti-symplectic,
/// so this residual vanishes.
pub fn antisymplectic_residual<R: Ring>(
    a: &TangentVector<R>,
    b: &TangentVector<R>,
) -> R::Elem {
    let q = a.base().matrix();
    let ring = q.ring().clone();
    let lhs = omega_raw(&q.dagger(), &a.matrix().dagger(), &b.matrix().dagger());
    let rhs = ring.star(&omega(a, b));
    ring.add(&lhs, &rhs)
}

/// A point of the covering space: `(q, r)` with `r` self-adjoint and
/// `r^2 Tr(q† q) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverPoint<R: Ring> {
    q: ProjectionPoint<R>,
    r: R::Elem,
}

impl<R: Ring> CoverPoint<R> {
    pub fn new(q: ProjectionPoint<R>, r: R::Elem) -> Result<Self, GeometryError> {
        Self::with_tol(q, r, DEFAULT_TOL)
    }

    pub fn with_tol(q: ProjectionPoint<R>, r: R::Elem, tol: f64) -> Result<Self, GeometryError> {
        let ring = q.ring().clone();
        let sa = ring.sub(&ring.star(&r), &r);
        let t = q.trace_norm_sq();
        let unit = ring.sub(&ring.mul(&ring.mul(&r, &r), &t), &ring.one());
        if ring.is_negligible(&sa, tol) && ring.is_negligible(&unit, tol) {
            Ok(CoverPoint { q, r })
        } else {
            let residual = if ring.magnitude(&sa) > ring.magnitude(&unit) {
                ring.magnitude(&sa)
            } else {
                ring.magnitude(&unit)
            };
            Err(GeometryError::InvariantViolated { residual })
        }
    }

    /// Lifts `q` to the chosen branch, when `Tr(q† q)` has an invertible
    /// self-adjoint square root in the ring.
    pub fn lift(q: ProjectionPoint<R>, branch: Sign) -> Result<Self, GeometryError> {
        let ring = q.ring().clone();
        let t = q.trace_norm_sq();
        let s = ring
            .sqrt_self_adjoint(&t)
            .ok_or(GeometryError::NoSquareRoot)?;
        let si = ring.inv(&s).ok_or(GeometryError::NotInvertible)?;
        let r = match branch {
            Sign::Plus => si,
            Sign::Minus => ring.neg(&si),
        };
        CoverPoint::with_tol(q, r, DEFAULT_TOL)
    }

    /// Lifts `q` into the quadratic extension that formally adjoins the
    /// inverse square root of `Tr(q† q)`, which only needs that trace to be
    /// invertible. This realizes the covering space exactly over rings with
    /// no actual square root.
    pub fn adjoin(
        q: &ProjectionPoint<R>,
    ) -> Result<CoverPoint<QuadraticExtension<R>>, GeometryError> {
        let ring = q.ring().clone();
        let t = q.trace_norm_sq();
        let ti = ring.inv(&t).ok_or(GeometryError::NotInvertible)?;
        let ext = QuadraticExtension::adjoin_sqrt(ring, ti);
        let qe = ProjectionPoint::new(lift_matrix(&ext, q.matrix()))
            .expect("ideal residuals are preserved under ring extension");
        let r = ext.generator();
        CoverPoint::new(qe, r)
    }

    pub fn point(&self) -> &ProjectionPoint<R> {
        &self.q
    }

    pub fn q_matrix(&self) -> &Matrix<R> {
        self.q.matrix()
    }

    pub fn r(&self) -> &R::Elem {
        &self.r
    }

    pub fn ring(&self) -> &R {
        self.q.ring()
    }

    /// `r^3`.
    pub fn r_cubed(&self) -> R::Elem {
        let ring = self.ring().clone();
        ring.mul(&self.r, &ring.mul(&self.r, &self.r))
    }
}

/// Embeds a matrix entrywise into a quadratic extension of its ring.
pub fn lift_matrix<R: Ring>(
    ext: &QuadraticExtension<R>,
    m: &Matrix<R>,
) -> Matrix<QuadraticExtension<R>> {
    m.map_entries(ext.clone(), |e| ext.lift(e))
}

/// Unique `s` making `(q + eps a, r + eps s)` a covering-space point over
/// the dual numbers: `s = -(r^3/2) (Tr(q a†) + Tr(q a q†) + Tr(q q† a))`.
pub fn cover_tangent_lift<R: Ring>(
    c: &CoverPoint<R>,
    a: &TangentVector<R>,
) -> Result<R::Elem, GeometryError> {
    debug_assert_eq!(a.base(), c.point());
    let ring = c.ring().clone();
    let half = ring.half().ok_or(GeometryError::NoHalf)?;
    let q = c.q_matrix();
    let am = a.matrix();
    let qd = q.dagger();
    let ad = am.dagger();
    let total = ring.add(
        &q.mul(&ad).trace(),
        &ring.add(
            &q.mul(am).mul(&qd).trace(),
            &q.mul(&qd).mul(am).trace(),
        ),
    );
    Ok(ring.neg(&ring.mul(&ring.mul(&c.r_cubed(), &half), &total)))
}

/// Residual of the covering-space invariant for `(q + eps a, r + eps s)`
/// over the dual numbers; zero exactly when `s` is the étale lift.
pub fn dual_cover_residual<R: Ring>(
    c: &CoverPoint<R>,
    a: &TangentVector<R>,
    s: &R::Elem,
) -> <QuadraticExtension<R> as Ring>::Elem {
    let ring = c.ring().clone();
    let d = QuadraticExtension::dual(ring.clone());
    let qd = dual_matrix(&d, c.q_matrix(), a.matrix());
    let rd = d.from_parts(c.r().clone(), s.clone());
    let t = qd.dagger().mul(&qd).trace();
    d.sub(&d.mul(&d.mul(&rd, &rd), &t), &d.one())
}

/// Matrix `m + eps v` over the dual numbers.
pub fn dual_matrix<R: Ring>(
    d: &QuadraticExtension<R>,
    m: &Matrix<R>,
    v: &Matrix<R>,
) -> Matrix<QuadraticExtension<R>> {
    debug_assert_eq!((m.rows(), m.cols()), (v.rows(), v.cols()));
    Matrix::from_fn(d.clone(), m.rows(), m.cols(), |i, j| {
        d.from_parts(m.get(i, j).clone(), v.get(i, j).clone())
    })
}

/// The normalized complex structure `I_{(q,r)}(a) = (r^3/2) L_q(a)`.
pub fn complex_structure<R: Ring>(
    c: &CoverPoint<R>,
    a: &TangentVector<R>,
) -> Result<TangentVector<R>, GeometryError> {
    debug_assert_eq!(a.base(), c.point());
    let ring = c.ring().clone();
    let half = ring.half().ok_or(GeometryError::NoHalf)?;
    let coeff = ring.mul(&c.r_cubed(), &half);
    let l = l_operator_raw(c.q_matrix(), a.matrix());
    Ok(TangentVector::unchecked(c.point().clone(), l.scale(&coeff)))
}

/// The same structure in closed form: `r [a†, q] + (r^3 Tr(q a†)/2) [q, q†]`.
pub fn complex_structure_rewrite<R: Ring>(
    c: &CoverPoint<R>,
    a: &TangentVector<R>,
) -> Result<TangentVector<R>, GeometryError> {
    let ring = c.ring().clone();
    let half = ring.half().ok_or(GeometryError::NoHalf)?;
    let q = c.q_matrix();
    let ad = a.matrix().dagger();
    let first = ad.commutator(q).scale(c.r());
    let rho = q.mul(&ad).trace();
    let coeff = ring.mul(&ring.mul(&c.r_cubed(), &rho), &half);
    let second = q.commutator(&q.dagger()).scale(&coeff);
    Ok(TangentVector::unchecked(
        c.point().clone(),
        first.add(&second),
    ))
}

/// `h~_{(q,r)}(a, b) = r Tr(a b†) - (r^3/2) Tr(q† a) Tr(q b†)`.
pub fn h_tilde<R: Ring>(
    c: &CoverPoint<R>,
    a: &TangentVector<R>,
    b: &TangentVector<R>,
) -> Result<R::Elem, GeometryError> {
    let ring = c.ring().clone();
    let half = ring.half().ok_or(GeometryError::NoHalf)?;
    let q = c.q_matrix();
    let (am, bm) = (a.matrix(), b.matrix());
    let first = ring.mul(c.r(), &am.mul(&bm.dagger()).trace());
    let second = ring.mul(
        &ring.mul(&c.r_cubed(), &half),
        &ring.mul(
            &q.dagger().mul(am).trace(),
            &q.mul(&bm.dagger()).trace(),
        ),
    );
    Ok(ring.sub(&first, &second))
}

/// The Kähler potential `r^{-1}`, which on the positive branch equals the
/// trace norm `sqrt(Tr(q† q))`; also expressible as `r Tr(q† q)`.
pub fn potential<R: Ring>(c: &CoverPoint<R>) -> Result<R::Elem, GeometryError> {
    c.ring().inv(c.r()).ok_or(GeometryError::NotInvertible)
}

/// One application of the square-root twist `w -> (w + w†)/2 + (x r/2)[w, w†]`
/// for a central unit `x` of the coefficient ring.
pub fn square_root_twist<S: Ring>(
    w: &Matrix<S>,
    r: &S::Elem,
    x: &S::Elem,
) -> Result<Matrix<S>, GeometryError> {
    let ring = w.ring().clone();
    let half = ring.half().ok_or(GeometryError::NoHalf)?;
    let wd = w.dagger();
    let sym = w.add(&wd).scale(&half);
    let coeff = ring.mul(&ring.mul(x, r), &half);
    Ok(sym.add(&w.commutator(&wd).scale(&coeff)))
}

/// Image of a covering-space point in the bicomplex-style extension, with
/// the twist taken along the adjoined self-adjoint unit.
pub struct ExtendedCover<R: Ring> {
    pub ext: QuadraticExtension<R>,
    pub q: Matrix<QuadraticExtension<R>>,
    pub r: <QuadraticExtension<R> as Ring>::Elem,
}

/// `(q, r) -> ((q + q†)/2 + x r [q, q†]/2, r)` into `R[x]/(x^2 + 1)` with
/// coefficientwise involution. The image is self-adjoint there, and
/// satisfies the covering invariant for the twisted conjugate-transpose.
pub fn bicomplex_map<R: Ring>(c: &CoverPoint<R>) -> Result<ExtendedCover<R>, GeometryError> {
    let ring = c.ring().clone();
    let label = format!("adjoin-i({})", ring.tag());
    let ext = QuadraticExtension::adjoin_i(ring, &label);
    let w = lift_matrix(&ext, c.q_matrix());
    let r = ext.lift(c.r());
    let x = ext.generator();
    let q = square_root_twist(&w, &r, &x)?;
    Ok(ExtendedCover { ext, q, r })
}

/// Conjugate-transpose with respect to the twisted involution
/// `(a + x b)† = a* - x b*` of a quadratic extension.
pub fn twisted_dagger<R: Ring>(
    m: &Matrix<QuadraticExtension<R>>,
) -> Matrix<QuadraticExtension<R>> {
    let ext = m.ring().clone();
    let base = ext.base().clone();
    Matrix::from_fn(ext.clone(), m.cols(), m.rows(), |i, j| {
        let e = m.get(j, i);
        ext.from_parts(base.star(&e.c0), base.neg(&base.star(&e.c1)))
    })
}

/// `(q, r) -> ((q + q†)/2 + i r [q, q†]/2, r)` using a central imaginary
/// unit of the ring itself; defined whenever the ring carries one.
pub fn internal_i_map<R: Ring>(c: &CoverPoint<R>) -> Result<CoverPoint<R>, GeometryError> {
    internal_i_map_with_tol(c, DEFAULT_TOL)
}

pub fn internal_i_map_with_tol<R: Ring>(
    c: &CoverPoint<R>,
    tol: f64,
) -> Result<CoverPoint<R>, GeometryError> {
    let ring = c.ring().clone();
    let i = ring.imaginary_unit().ok_or(GeometryError::NoImaginaryUnit)?;
    let q = square_root_twist(c.q_matrix(), c.r(), &i)?;
    let p = ProjectionPoint::with_tol(q, tol)
        .map_err(|_| GeometryError::InvariantViolated { residual: f64::NAN })?;
    CoverPoint::with_tol(p, c.r().clone(), tol)
}

/// Derivative of the square-root twist at `(q, r)` along the tangent `(a, s)`,
/// computed exactly over dual numbers.
pub fn twist_derivative<S: Ring>(
    q: &Matrix<S>,
    r: &S::Elem,
    x: &S::Elem,
    a: &Matrix<S>,
    s: &S::Elem,
) -> Result<Matrix<S>, GeometryError> {
    let ring = q.ring().clone();
    let d = QuadraticExtension::dual(ring.clone());
    let qd = dual_matrix(&d, q, a);
    let rd = d.from_parts(r.clone(), s.clone());
    let xd = d.lift(x);
    let image = square_root_twist(&qd, &rd, &xd)?;
    Ok(image.map_entries(ring, |e| e.c1.clone()))
}

/// The pair of self-adjoint idempotents `(r^2 q q†, r^2 q† q)` whose fibers
/// polarize the covering space.
pub struct Polarization<R: Ring> {
    pub p_plus: Matrix<R>,
    pub p_minus: Matrix<R>,
}

pub fn polarization_split<R: Ring>(c: &CoverPoint<R>) -> Polarization<R> {
    let ring = c.ring().clone();
    let q = c.q_matrix();
    let qd = q.dagger();
    let r2 = ring.mul(c.r(), c.r());
    Polarization {
        p_plus: q.mul(&qd).scale(&r2),
        p_minus: qd.mul(q).scale(&r2),
    }
}

/// Splits a tangent vector into its polarized halves `(qa, aq)`, which sum
/// back to `a`.
pub fn polarization_components<R: Ring>(
    a: &TangentVector<R>,
) -> (Matrix<R>, Matrix<R>) {
    let q = a.base().matrix();
    (q.mul(a.matrix()), a.matrix().mul(q))
}

/// Gram matrix of `h~` on a family of tangent vectors.
pub fn h_tilde_gram<R: Ring>(
    c: &CoverPoint<R>,
    basis: &[TangentVector<R>],
) -> Result<Matrix<R>, GeometryError> {
    let ring = c.ring().clone();
    let k = basis.len();
    let mut entries = Vec::with_capacity(k * k);
    for a in basis {
        for b in basis {
            entries.push(h_tilde(c, a, b)?);
        }
    }
    let mut it = entries.into_iter();
    Ok(Matrix::from_fn(ring, k, k, |_, _| {
        it.next().expect("dimensions agree")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{gaussian_q, GaussElem, GaussianRationals, MachineComplex};
    use num_complex::Complex64;

    type GP = ProjectionPoint<GaussianRationals>;

    fn g() -> GaussianRationals {
        gaussian_q()
    }

    fn base2() -> (GP, TangentVector<GaussianRationals>, TangentVector<GaussianRationals>) {
        let q = ProjectionPoint::base_point(g(), 2);
        let e12 = TangentVector::new(&q, Matrix::unit(g(), 2, 0, 1)).unwrap();
        let e21 = TangentVector::new(&q, Matrix::unit(g(), 2, 1, 0)).unwrap();
        (q, e12, e21)
    }

    #[test]
    fn l_operator_at_base_point() {
        let (_, e12, e21) = base2();
        // L(e12) = 2 e21, L(e21) = -2 e12, so L^2 = -4 with Tr(q†q) = 1
        assert_eq!(
            l_operator(&e12).matrix(),
            &Matrix::unit(g(), 2, 1, 0).scale(&g().from_i64(2))
        );
        assert_eq!(
            l_operator(&e21).matrix(),
            &Matrix::unit(g(), 2, 0, 1).scale(&g().from_i64(-2))
        );
        let ll = l_operator(&l_operator(&e12));
        assert_eq!(ll.matrix(), &e12.matrix().scale(&g().from_i64(-4)));
        assert!(l_squared_residual(e12.base().matrix(), e12.matrix()).is_zero());
    }

    #[test]
    fn l_operator_is_conjugate_linear_in_i() {
        let (_, e12, _) = base2();
        let i = g().imaginary_unit().unwrap();
        // L(i a) + i L(a) = 0 since i* = -i
        let lhs = l_operator(&e12.scale(&i));
        let rhs = l_operator(&e12).scale(&i);
        assert!(lhs.matrix().add(rhs.matrix()).is_zero());
    }

    #[test]
    fn omega_and_h_at_base_point() {
        let (_, e12, e21) = base2();
        assert_eq!(omega(&e12, &e21), g().one());
        assert!(g().is_zero(&omega(&e12, &e12)));
        assert_eq!(h_form(&e12, &e12), g().from_i64(2));
        assert!(g().is_zero(&h_form(&e12, &e21)));
    }

    #[test]
    fn cover_lift_examples() {
        let q = ProjectionPoint::base_point(g(), 2);
        let c = CoverPoint::lift(q, Sign::Plus).unwrap();
        assert!(g().is_one(c.r()));

        // Tr(q†q) = 2 is not a rational square
        let q = ProjectionPoint::new(Matrix::from_i64_rows(g(), &[&[1, 1], &[0, 0]])).unwrap();
        assert_eq!(
            CoverPoint::lift(q.clone(), Sign::Plus).unwrap_err(),
            GeometryError::NoSquareRoot
        );
        // but the formal adjunction always works
        let c = CoverPoint::adjoin(&q).unwrap();
        assert!(c.ring().exact());

        let m = MachineComplex;
        let qm = ProjectionPoint::new(Matrix::from_i64_rows(m, &[&[1, 1], &[0, 0]])).unwrap();
        let cm = CoverPoint::lift(qm, Sign::Plus).unwrap();
        assert!((cm.r().re - 0.7071067811865476).abs() < 1e-15);
    }

    #[test]
    fn complex_structure_at_base_point() {
        let (q, e12, e21) = base2();
        let c = CoverPoint::lift(q, Sign::Plus).unwrap();
        let i_e12 = complex_structure(&c, &e12).unwrap();
        assert_eq!(i_e12.matrix(), e21.matrix());
        let i_e21 = complex_structure(&c, &e21).unwrap();
        assert_eq!(i_e21.matrix(), &e12.matrix().neg());
        let ii = complex_structure(&c, &i_e12).unwrap();
        assert_eq!(ii.matrix(), &e12.matrix().neg());
        // zero maps to zero
        let z = TangentVector::new(&c.point().clone(), Matrix::zero(g(), 2, 2)).unwrap();
        assert!(complex_structure(&c, &z).unwrap().matrix().is_zero());
    }

    #[test]
    fn h_tilde_and_potential_at_base_point() {
        let (q, e12, e21) = base2();
        let c = CoverPoint::lift(q, Sign::Plus).unwrap();
        assert!(g().is_one(&h_tilde(&c, &e12, &e12).unwrap()));
        assert!(g().is_zero(&h_tilde(&c, &e12, &e21).unwrap()));
        assert!(g().is_one(&potential(&c).unwrap()));
        // potential agrees with r Tr(q†q)
        let alt = g().mul(c.r(), &c.point().trace_norm_sq());
        assert_eq!(potential(&c).unwrap(), alt);
    }

    #[test]
    fn potential_on_machine_branches() {
        let m = MachineComplex;
        let q = ProjectionPoint::new(Matrix::from_i64_rows(m, &[&[1, 1], &[0, 0]])).unwrap();
        let plus = CoverPoint::lift(q.clone(), Sign::Plus).unwrap();
        let minus = CoverPoint::lift(q, Sign::Minus).unwrap();
        let p = potential(&plus).unwrap();
        assert!((p.re - 1.4142135623730951).abs() < 1e-14);
        let pm = potential(&minus).unwrap();
        assert!((pm + p).norm() < 1e-14);
    }

    #[test]
    fn cover_tangent_lift_examples() {
        let (q, e12, _) = base2();
        let c = CoverPoint::lift(q, Sign::Plus).unwrap();
        let s = cover_tangent_lift(&c, &e12).unwrap();
        assert!(g().is_zero(&s));
        let z = TangentVector::new(c.point(), Matrix::zero(g(), 2, 2)).unwrap();
        assert!(g().is_zero(&cover_tangent_lift(&c, &z).unwrap()));
        // the defining contract over dual numbers
        let d = dual_cover_residual(&c, &e12, &s);
        assert!(g().is_zero(&d.c0) && g().is_zero(&d.c1));
    }

    #[test]
    fn polarization_at_self_adjoint_points() {
        let (q, e12, _) = base2();
        let c = CoverPoint::lift(q.clone(), Sign::Plus).unwrap();
        let pol = polarization_split(&c);
        assert_eq!(pol.p_plus, q.matrix().clone());
        assert_eq!(pol.p_minus, q.matrix().clone());
        let (qa, aq) = polarization_components(&e12);
        assert_eq!(qa.add(&aq), e12.matrix().clone());
        // [q,[q,a]] = a
        let inner = q.matrix().commutator(e12.matrix());
        assert_eq!(q.matrix().commutator(&inner), e12.matrix().clone());
    }

    #[test]
    fn polarization_machine_example() {
        let m = MachineComplex;
        let q = ProjectionPoint::new(Matrix::from_i64_rows(m, &[&[1, 1], &[0, 0]])).unwrap();
        let c = CoverPoint::lift(q, Sign::Plus).unwrap();
        let pol = polarization_split(&c);
        // r^2 q q† = diag(1, 0); r^2 q† q = [[1,1],[1,1]]/2
        let expect_plus = Matrix::from_i64_rows(m, &[&[1, 0], &[0, 0]]);
        assert!(pol.p_plus.distance(&expect_plus) < 1e-14);
        let half = Complex64::new(0.5, 0.0);
        let expect_minus = Matrix::from_fn(m, 2, 2, |_, _| half);
        assert!(pol.p_minus.distance(&expect_minus) < 1e-14);
        for p in [&pol.p_plus, &pol.p_minus] {
            assert!(p.mul(p).distance(p) < 1e-12);
            assert!(p.dagger().distance(p) < 1e-12);
        }
    }

    #[test]
    fn antisymplectic_at_base_point() {
        let (_, e12, e21) = base2();
        assert!(g().is_zero(&antisymplectic_residual(&e12, &e21)));
        assert!(g().is_zero(&antisymplectic_residual(&e12, &e12)));
    }

    #[test]
    fn bicomplex_map_fixes_self_adjoint_points() {
        let q = ProjectionPoint::base_point(g(), 2);
        let c = CoverPoint::lift(q.clone(), Sign::Plus).unwrap();
        let img = bicomplex_map(&c).unwrap();
        assert_eq!(img.q, lift_matrix(&img.ext, q.matrix()));
    }
}
