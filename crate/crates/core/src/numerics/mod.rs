//! Finite-difference oracles and the seeded verification harness.
//!
//! Exact identities are checked exactly in their own modules; this module
//! supplies the numeric counterparts that only make sense over machine
//! scalars: a finite-difference exterior derivative of the symplectic form,
//! a Nijenhuis residual for the normalized complex structure, and the
//! potential-Hessian comparison against the Hermitian metric. Tangent
//! vectors are extended to fields via `p -> [p, [q, a]]`, which restores the
//! vector at `p = q` and stays tangent at every idempotent.

pub mod acceptance;
pub mod checks;

use num_complex::Complex64;

use crate::geometry::{h_tilde, l_operator_raw, CoverPoint};
use crate::matrix::Matrix;
use crate::projspace::{ProjectionPoint, TangentVector};
use crate::rings::MachineComplex;

type CMatrix = Matrix<MachineComplex>;

/// Extension of a tangent vector at `q` to the field `p -> [p, [q, a]]`.
pub struct TangentField {
    bracket: CMatrix,
}

impl TangentField {
    pub fn new(q: &ProjectionPoint<MachineComplex>, a: &CMatrix) -> Self {
        TangentField {
            bracket: q.matrix().commutator(a),
        }
    }

    pub fn from_tangent(t: &TangentVector<MachineComplex>) -> Self {
        Self::new(t.base(), t.matrix())
    }

    /// Field value at an arbitrary matrix point.
    pub fn at(&self, p: &CMatrix) -> CMatrix {
        p.commutator(&self.bracket)
    }
}

fn displace(p: &CMatrix, dir: &CMatrix, t: f64) -> CMatrix {
    p.add(&dir.scale(&Complex64::new(t, 0.0)))
}

/// Central-difference directional derivative of a scalar field along a
/// vector field.
fn dir_derivative(
    f: &impl Fn(&CMatrix) -> Complex64,
    p: &CMatrix,
    dir: &CMatrix,
    step: f64,
) -> Complex64 {
    let plus = f(&displace(p, dir, step));
    let minus = f(&displace(p, dir, -step));
    (plus - minus) / Complex64::new(2.0 * step, 0.0)
}

/// Finite-difference Lie bracket `[E, F] = dF(E) - dE(F)` at `p`.
fn lie_bracket_fd(
    e: &impl Fn(&CMatrix) -> CMatrix,
    f: &impl Fn(&CMatrix) -> CMatrix,
    p: &CMatrix,
    step: f64,
) -> CMatrix {
    let half_inv = Complex64::new(0.5 / step, 0.0);
    let ep = e(p);
    let fp = f(p);
    let df = f(&displace(p, &ep, step))
        .sub(&f(&displace(p, &ep, -step)))
        .scale(&half_inv);
    let de = e(&displace(p, &fp, step))
        .sub(&e(&displace(p, &fp, -step)))
        .scale(&half_inv);
    df.sub(&de)
}

fn omega_field<'a>(
    u: &'a TangentField,
    v: &'a TangentField,
) -> impl Fn(&CMatrix) -> Complex64 + 'a {
    move |p: &CMatrix| p.mul(&u.at(p).commutator(&v.at(p))).trace()
}

/// Finite-difference exterior derivative of the symplectic form on the
/// extended fields of three tangents at `q`; decays as `step^2`.
pub fn domega_residual(
    q: &ProjectionPoint<MachineComplex>,
    a: &CMatrix,
    b: &CMatrix,
    c: &CMatrix,
    step: f64,
) -> f64 {
    let fa = TangentField::new(q, a);
    let fb = TangentField::new(q, b);
    let fc = TangentField::new(q, c);
    let p = q.matrix();

    let eval_a = |p: &CMatrix| fa.at(p);
    let eval_b = |p: &CMatrix| fb.at(p);
    let eval_c = |p: &CMatrix| fc.at(p);

    let d1 = dir_derivative(&omega_field(&fb, &fc), p, &fa.at(p), step);
    let d2 = dir_derivative(&omega_field(&fa, &fc), p, &fb.at(p), step);
    let d3 = dir_derivative(&omega_field(&fa, &fb), p, &fc.at(p), step);

    let om = |u: &CMatrix, v: &CMatrix| p.mul(&u.commutator(v)).trace();
    let br_ab = lie_bracket_fd(&eval_a, &eval_b, p, step);
    let br_ac = lie_bracket_fd(&eval_a, &eval_c, p, step);
    let br_bc = lie_bracket_fd(&eval_b, &eval_c, p, step);

    let total = d1 - d2 + d3 - om(&br_ab, &fc.at(p)) + om(&br_ac, &fb.at(p)) - om(&br_bc, &fa.at(p));
    total.norm()
}

/// `Tr(p† p)^(-1/2)` at an arbitrary matrix point near the variety.
fn local_r(p: &CMatrix) -> f64 {
    let t = p.dagger().mul(p).trace().re;
    1.0 / libm::sqrt(t)
}

/// The normalized complex structure extended off the variety through
/// `r(p) = Tr(p† p)^(-1/2)`.
fn i_at(p: &CMatrix, u: &CMatrix) -> CMatrix {
    let r = local_r(p);
    let coeff = Complex64::new(0.5 * r * r * r, 0.0);
    l_operator_raw(p, u).scale(&coeff)
}

/// Finite-difference Nijenhuis residual
/// `N(a,b) = [Ia, Ib] - I[Ia, b] - I[a, Ib] - [a, b]` on extended fields.
pub fn nijenhuis_residual(
    cover: &CoverPoint<MachineComplex>,
    a: &CMatrix,
    b: &CMatrix,
    step: f64,
) -> f64 {
    let q = cover.point();
    let fa = TangentField::new(q, a);
    let fb = TangentField::new(q, b);
    let eval_a = |p: &CMatrix| fa.at(p);
    let eval_b = |p: &CMatrix| fb.at(p);
    let eval_ia = |p: &CMatrix| i_at(p, &fa.at(p));
    let eval_ib = |p: &CMatrix| i_at(p, &fb.at(p));

    let p = q.matrix();
    let t1 = lie_bracket_fd(&eval_ia, &eval_ib, p, step);
    let t2 = i_at(p, &lie_bracket_fd(&eval_ia, &eval_b, p, step));
    let t3 = i_at(p, &lie_bracket_fd(&eval_a, &eval_ib, p, step));
    let t4 = lie_bracket_fd(&eval_a, &eval_b, p, step);

    t1.sub(&t2).sub(&t3).sub(&t4).max_magnitude()
}

/// `sqrt(Tr(x† x))` as an ambient potential on all of `M_n(C)`.
pub fn trace_norm(p: &CMatrix) -> f64 {
    libm::sqrt(p.dagger().mul(p).trace().re)
}

/// Mixed second central difference of the potential along the chord
/// `q + s u + t v` of the flat ambient chart.
pub fn potential_flat_hessian(q: &CMatrix, u: &CMatrix, v: &CMatrix, step: f64) -> f64 {
    let at = |su: f64, tv: f64| {
        trace_norm(&displace(&displace(q, u, su), v, tv))
    };
    (at(step, step) - at(step, -step) - at(-step, step) + at(-step, -step)) / (4.0 * step * step)
}

/// The (1,1)-part of the flat Hessian with respect to multiplication by i:
/// `B(u, v) + B(iu, iv)`.
pub fn potential_hessian_form(q: &CMatrix, u: &CMatrix, v: &CMatrix, step: f64) -> f64 {
    let i = Complex64::new(0.0, 1.0);
    let iu = u.scale(&i);
    let iv = v.scale(&i);
    potential_flat_hessian(q, u, v, step) + potential_flat_hessian(q, &iu, &iv, step)
}

/// `Re h~` on tangents of a machine cover point.
pub fn re_h_tilde(
    cover: &CoverPoint<MachineComplex>,
    a: &TangentVector<MachineComplex>,
    b: &TangentVector<MachineComplex>,
) -> f64 {
    h_tilde(cover, a, b)
        .expect("2 is invertible at machine precision")
        .re
}
