//! Weighted isometric embedding of a punctured Hilbert space, and the
//! induced embedding of rank-1 projections.
//!
//! On `H - {0}` the metric
//!
//! ```text
//! g_x(v, w) = Re( 2 <v,w> / |x|  -  <v,x><x,w> / |x|^3 )
//! ```
//!
//! is the pullback of the flat metric `(5/2) g_R (+) g_H (+) (1/2) g_L(H)`
//! along `x -> |x|^(1/2) (1, x/|x|, x x* / |x|^2)`. Taking `H = M_n(C)` with
//! the Hilbert-Schmidt product and restricting to rank-1 projections gives
//! the two-sheeted embedding into `R^((n^2+1)^2)` whose image is cut out by
//! seven polynomial relations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use rand_core::RngCore;

use crate::matrix::Matrix;
use crate::projspace::{ProjectionPoint, ProjectionError};
use crate::rings::MachineComplex;
use crate::Sign;

pub(crate) use crate::rings::machine_unit_f64 as unit_f64;

/// Scalar of a real, complex, or quaternionic Hilbert space at machine
/// precision.
pub trait HScalar: Copy + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn conj(self) -> Self;
    fn scale(self, t: f64) -> Self;
    fn re(self) -> f64;
    fn abs_sq(self) -> f64;
    fn sample(rng: &mut dyn RngCore) -> Self;
}

impl HScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn conj(self) -> Self {
        self
    }
    fn scale(self, t: f64) -> Self {
        self * t
    }
    fn re(self) -> f64 {
        self
    }
    fn abs_sq(self) -> f64 {
        self * self
    }
    fn sample(rng: &mut dyn RngCore) -> Self {
        unit_f64(rng)
    }
}

impl HScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn scale(self, t: f64) -> Self {
        self * t
    }
    fn re(self) -> f64 {
        self.re
    }
    fn abs_sq(self) -> f64 {
        self.norm_sqr()
    }
    fn sample(rng: &mut dyn RngCore) -> Self {
        Complex64::new(unit_f64(rng), unit_f64(rng))
    }
}

/// Machine-precision quaternion `w + xi + yj + zk`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quat { w, x, y, z }
    }

    pub fn i() -> Self {
        Quat::new(0.0, 1.0, 0.0, 0.0)
    }

    pub fn j() -> Self {
        Quat::new(0.0, 0.0, 1.0, 0.0)
    }

    pub fn k() -> Self {
        Quat::new(0.0, 0.0, 0.0, 1.0)
    }
}

impl HScalar for Quat {
    fn zero() -> Self {
        Quat::new(0.0, 0.0, 0.0, 0.0)
    }
    fn one() -> Self {
        Quat::new(1.0, 0.0, 0.0, 0.0)
    }
    fn add(self, o: Self) -> Self {
        Quat::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
    fn sub(self, o: Self) -> Self {
        Quat::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
    fn mul(self, o: Self) -> Self {
        Quat::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
    fn conj(self) -> Self {
        Quat::new(self.w, -self.x, -self.y, -self.z)
    }
    fn scale(self, t: f64) -> Self {
        Quat::new(self.w * t, self.x * t, self.y * t, self.z * t)
    }
    fn re(self) -> f64 {
        self.w
    }
    fn abs_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }
    fn sample(rng: &mut dyn RngCore) -> Self {
        Quat::new(
            unit_f64(rng),
            unit_f64(rng),
            unit_f64(rng),
            unit_f64(rng),
        )
    }
}

/// `<x, y> = sum conj(x_i) y_i`, conjugate-linear in the first slot.
pub fn inner<S: HScalar>(x: &[S], y: &[S]) -> S {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = S::zero();
    for (a, b) in x.iter().zip(y) {
        acc = acc.add(a.conj().mul(*b));
    }
    acc
}

pub fn norm_sq<S: HScalar>(x: &[S]) -> f64 {
    x.iter().map(|a| a.abs_sq()).sum()
}

pub fn norm<S: HScalar>(x: &[S]) -> f64 {
    libm::sqrt(norm_sq(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroBasePoint;

impl fmt::Display for ZeroBasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "the metric is undefined at the origin")
    }
}

/// `g_x(v, w) = Re( 2 <v,w>/|x| - <v,x><x,w>/|x|^3 )`; positive definite
/// away from the origin.
pub fn ambient_g<S: HScalar>(x: &[S], v: &[S], w: &[S]) -> Result<f64, ZeroBasePoint> {
    let nx = norm(x);
    if nx == 0.0 {
        return Err(ZeroBasePoint);
    }
    let lead = inner(v, w).re() * 2.0 / nx;
    let tail = inner(v, x).mul(inner(x, w)).re() / (nx * nx * nx);
    Ok(lead - tail)
}

/// Triple `(s, u, P)` in `R (+) H (+) L(H)_sa`; `P` is a dense `k x k`
/// self-adjoint matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertEmbedding<S> {
    pub scalar: f64,
    pub vector: Vec<S>,
    pub operator: Vec<S>,
}

impl<S: HScalar> HilbertEmbedding<S> {
    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    fn sub(&self, other: &Self) -> Self {
        HilbertEmbedding {
            scalar: self.scalar - other.scalar,
            vector: self
                .vector
                .iter()
                .zip(&other.vector)
                .map(|(a, b)| a.sub(*b))
                .collect(),
            operator: self
                .operator
                .iter()
                .zip(&other.operator)
                .map(|(a, b)| a.sub(*b))
                .collect(),
        }
    }

    fn scale(&self, t: f64) -> Self {
        HilbertEmbedding {
            scalar: self.scalar * t,
            vector: self.vector.iter().map(|a| a.scale(t)).collect(),
            operator: self.operator.iter().map(|a| a.scale(t)).collect(),
        }
    }
}

/// `x -> |x|^(1/2) (1, x/|x|, x x*/|x|^2)`; positive-homogeneous of degree
/// 1/2 and equivariant under linear isometries.
pub fn embed_hilbert<S: HScalar>(x: &[S]) -> Result<HilbertEmbedding<S>, ZeroBasePoint> {
    let nx = norm(x);
    if nx == 0.0 {
        return Err(ZeroBasePoint);
    }
    let root = libm::sqrt(nx);
    let k = x.len();
    let vector: Vec<S> = x.iter().map(|a| a.scale(1.0 / root)).collect();
    let mut operator = Vec::with_capacity(k * k);
    let opscale = 1.0 / (nx * root);
    for i in 0..k {
        for j in 0..k {
            operator.push(x[i].mul(x[j].conj()).scale(opscale));
        }
    }
    Ok(HilbertEmbedding {
        scalar: root,
        vector,
        operator,
    })
}

/// The flat metric `(5/2) g_R (+) g_H (+) (1/2) g_L(H)` paired on two
/// displacement triples.
pub fn weighted_flat_metric<S: HScalar>(a: &HilbertEmbedding<S>, b: &HilbertEmbedding<S>) -> f64 {
    let g0 = 2.5 * a.scalar * b.scalar;
    let g1 = inner(&a.vector, &b.vector).re();
    let g2 = 0.5 * inner(&a.operator, &b.operator).re();
    g0 + g1 + g2
}

fn displace<S: HScalar>(x: &[S], v: &[S], t: f64) -> Vec<S> {
    x.iter()
        .zip(v)
        .map(|(a, d)| a.add(d.scale(t)))
        .collect()
}

/// Central finite difference of the embedding along `v`.
pub fn embedding_derivative<S: HScalar>(
    x: &[S],
    v: &[S],
    step: f64,
) -> Result<HilbertEmbedding<S>, ZeroBasePoint> {
    let plus = embed_hilbert(&displace(x, v, step))?;
    let minus = embed_hilbert(&displace(x, v, -step))?;
    Ok(plus.sub(&minus).scale(0.5 / step))
}

/// `| weighted FD pullback - ambient g |` at `x` along `v`, `w`; of order
/// `step^2`.
pub fn pullback_residual<S: HScalar>(
    x: &[S],
    v: &[S],
    w: &[S],
    step: f64,
) -> Result<f64, ZeroBasePoint> {
    let dv = embedding_derivative(x, v, step)?;
    let dw = embedding_derivative(x, w, step)?;
    let fd = weighted_flat_metric(&dv, &dw);
    let exact = ambient_g(x, v, w)?;
    Ok(libm::fabs(fd - exact))
}

/// Alternate embedding for real Hilbert spaces only:
/// `x -> |x|^(1/2) (1, x/|x|)` into `(R (+) H, 2 g_R (+) 2 g_H)`.
pub fn pullback_residual_real_footnote(
    x: &[f64],
    v: &[f64],
    w: &[f64],
    step: f64,
) -> Result<f64, ZeroBasePoint> {
    let emb = |p: &[f64]| -> Result<(f64, Vec<f64>), ZeroBasePoint> {
        let np = norm(p);
        if np == 0.0 {
            return Err(ZeroBasePoint);
        }
        let root = libm::sqrt(np);
        Ok((root, p.iter().map(|a| a / root).collect()))
    };
    let fd = |dir: &[f64]| -> Result<(f64, Vec<f64>), ZeroBasePoint> {
        let (sp, up) = emb(&displace(x, dir, step))?;
        let (sm, um) = emb(&displace(x, dir, -step))?;
        let ds = (sp - sm) * 0.5 / step;
        let du = up
            .iter()
            .zip(&um)
            .map(|(a, b)| (a - b) * 0.5 / step)
            .collect();
        Ok((ds, du))
    };
    let (dsv, duv) = fd(v)?;
    let (dsw, duw) = fd(w)?;
    let pulled = 2.0 * dsv * dsw + 2.0 * inner(&duv, &duw);
    let exact = ambient_g(x, v, w)?;
    Ok(libm::fabs(pulled - exact))
}

/// Row-major flattening of a complex matrix in the matrix-unit basis
/// `E11, E12, ..., Enn`, identifying `M_n(C)` with `C^(n^2)`.
pub fn flatten(m: &Matrix<MachineComplex>) -> Vec<Complex64> {
    m.entries().to_vec()
}

pub fn unflatten(n: usize, v: &[Complex64]) -> Matrix<MachineComplex> {
    debug_assert_eq!(v.len(), n * n);
    Matrix::from_fn(MachineComplex, n, n, |i, j| v[i * n + j])
}

/// A point of the image variety in `R (+) M_n(C) (+) Herm(n^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedTriple {
    pub x: f64,
    pub q: Matrix<MachineComplex>,
    /// `n^2 x n^2` Hermitian matrix acting on row-major flattened matrices.
    pub p: Vec<Complex64>,
}

impl EmbeddedTriple {
    pub fn n(&self) -> usize {
        self.q.n()
    }

    pub fn p_dim(&self) -> usize {
        self.n() * self.n()
    }

    pub fn p_entry(&self, i: usize, j: usize) -> Complex64 {
        self.p[i * self.p_dim() + j]
    }

    /// Applies `P` to a flattened matrix.
    pub fn apply_p(&self, v: &[Complex64]) -> Vec<Complex64> {
        let k = self.p_dim();
        debug_assert_eq!(v.len(), k);
        let mut out = vec![Complex64::new(0.0, 0.0); k];
        for i in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..k {
                acc += self.p_entry(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Global sign flip, mapping one sheet onto the other.
    pub fn negate(&self) -> EmbeddedTriple {
        EmbeddedTriple {
            x: -self.x,
            q: self.q.neg(),
            p: self.p.iter().map(|c| -c).collect(),
        }
    }

    pub fn distance(&self, other: &EmbeddedTriple) -> f64 {
        let mut m = libm::fabs(self.x - other.x);
        let dq = self.q.distance(&other.q);
        if dq > m {
            m = dq;
        }
        for (a, b) in self.p.iter().zip(&other.p) {
            let d = (a - b).norm();
            if d > m {
                m = d;
            }
        }
        m
    }
}

/// `q -> (+-) |q|^(1/2) (1, q/|q|, q <q, .> / |q|^2)` with
/// `|q| = sqrt(Tr(q† q))`.
pub fn embed_projection(q: &ProjectionPoint<MachineComplex>, sheet: Sign) -> EmbeddedTriple {
    let flat = flatten(q.matrix());
    let t = norm(&flat);
    let s = sheet.as_f64() * libm::sqrt(t);
    let k = flat.len();
    let mut p = Vec::with_capacity(k * k);
    let opscale = s / (t * t);
    for i in 0..k {
        for j in 0..k {
            p.push(flat[i] * flat[j].conj() * opscale);
        }
    }
    EmbeddedTriple {
        x: s,
        q: q.matrix().scale(&Complex64::new(s / t, 0.0)),
        p,
    }
}

/// The seven residuals cutting out the image variety.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarietyResiduals {
    /// `P(Q) - x Q`.
    pub p_of_q: f64,
    /// `P^2 - x P`.
    pub p_squared: f64,
    /// `x Q^2 - Q`.
    pub q_squared: f64,
    /// `x Tr Q - 1`.
    pub trace_q: f64,
    /// `Tr P - x`.
    pub trace_p: f64,
    /// `Tr(Q† Q) - x^2`.
    pub norm_sq: f64,
    /// Sheet constraint: `x` must carry the claimed sign.
    pub sheet: f64,
}

impl VarietyResiduals {
    pub fn as_array(&self) -> [f64; 7] {
        [
            self.p_of_q,
            self.p_squared,
            self.q_squared,
            self.trace_q,
            self.trace_p,
            self.norm_sq,
            self.sheet,
        ]
    }

    pub fn max(&self) -> f64 {
        self.as_array().into_iter().fold(0.0, f64::max)
    }
}

pub fn variety_residuals(t: &EmbeddedTriple, sheet: Sign) -> VarietyResiduals {
    let k = t.p_dim();
    let flat_q = flatten(&t.q);

    let pq = t.apply_p(&flat_q);
    let p_of_q = pq
        .iter()
        .zip(&flat_q)
        .map(|(a, b)| (a - b * t.x).norm())
        .fold(0.0, f64::max);

    let mut p_squared = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..k {
                acc += t.p_entry(i, l) * t.p_entry(l, j);
            }
            let d = (acc - t.p_entry(i, j) * t.x).norm();
            if d > p_squared {
                p_squared = d;
            }
        }
    }

    let q_squared = t
        .q
        .mul(&t.q)
        .scale(&Complex64::new(t.x, 0.0))
        .distance(&t.q);

    let trace_q = (t.q.trace() * t.x - Complex64::new(1.0, 0.0)).norm();

    let mut trp = Complex64::new(0.0, 0.0);
    for i in 0..k {
        trp += t.p_entry(i, i);
    }
    let trace_p = (trp - Complex64::new(t.x, 0.0)).norm();

    let norm_sq = libm::fabs(norm_sq(&flat_q) - t.x * t.x);

    let sheet = f64::max(0.0, -sheet.as_f64() * t.x);

    VarietyResiduals {
        p_of_q,
        p_squared,
        q_squared,
        trace_q,
        trace_p,
        norm_sq,
        sheet,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum VarietyError {
    OffVariety { max_residual: f64 },
    NotAProjection(ProjectionError),
}

impl fmt::Display for VarietyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyError::OffVariety { max_residual } => {
                write!(f, "triple is off the variety (max residual {max_residual:.3e})")
            }
            VarietyError::NotAProjection(e) => write!(f, "recovered matrix fails the ideal: {e}"),
        }
    }
}

/// `(x, Q, P) -> x Q`, the inverse of [`embed_projection`] on the variety;
/// both sheets land on the same projection.
pub fn variety_to_projection(
    t: &EmbeddedTriple,
    tol: f64,
) -> Result<ProjectionPoint<MachineComplex>, VarietyError> {
    let sheet = if t.x >= 0.0 { Sign::Plus } else { Sign::Minus };
    let res = variety_residuals(t, sheet);
    if res.max() > tol {
        return Err(VarietyError::OffVariety {
            max_residual: res.max(),
        });
    }
    let q = t.q.scale(&Complex64::new(t.x, 0.0));
    ProjectionPoint::with_tol(q, tol * (1.0 + libm::fabs(t.x)) * 10.0)
        .map_err(VarietyError::NotAProjection)
}

/// Random unitary via Gram-Schmidt on a random complex matrix.
pub fn random_unitary(k: usize, rng: &mut dyn RngCore) -> Vec<Vec<Complex64>> {
    loop {
        let mut rows: Vec<Vec<Complex64>> = (0..k)
            .map(|_| (0..k).map(|_| Complex64::sample(rng)).collect())
            .collect();
        let mut ok = true;
        for i in 0..k {
            for j in 0..i {
                let proj = inner(&rows[j], &rows[i]);
                let prior = rows[j].clone();
                for (a, b) in rows[i].iter_mut().zip(&prior) {
                    *a -= proj * b;
                }
            }
            let len = norm(&rows[i]);
            if len < 1e-6 {
                ok = false;
                break;
            }
            for a in rows[i].iter_mut() {
                *a /= len;
            }
        }
        if ok {
            return rows;
        }
    }
}

pub fn apply_matrix<S: HScalar>(u: &[Vec<S>], x: &[S]) -> Vec<S> {
    u.iter()
        .map(|row| {
            let mut acc = S::zero();
            for (a, b) in row.iter().zip(x) {
                acc = acc.add(a.mul(*b));
            }
            acc
        })
        .collect()
}

/// g-length of the curve `t -> [[1, t], [0, 0]]` from `0` to `t_max`,
/// sampled with the trapezoid rule; the cumulative lengths are returned at
/// each node for monotonicity checks.
pub fn ray_curve_lengths(t_max: f64, steps: usize) -> Vec<f64> {
    let h = t_max / steps as f64;
    let speed = |t: f64| -> f64 {
        let x = [
            Complex64::new(1.0, 0.0),
            Complex64::new(t, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let v = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        libm::sqrt(ambient_g(&x, &v, &v).expect("base point is nonzero"))
    };
    let mut out = Vec::with_capacity(steps + 1);
    let mut acc = 0.0;
    out.push(0.0);
    let mut prev = speed(0.0);
    for k in 1..=steps {
        let cur = speed(k as f64 * h);
        acc += 0.5 * (prev + cur) * h;
        prev = cur;
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    #[test]
    fn ambient_g_examples() {
        // R^1, x = 4, v = w = 1: 2/4 - 16/64 = 1/4
        let g = ambient_g(&[4.0], &[1.0], &[1.0]).unwrap();
        assert!((g - 0.25).abs() < 1e-15);

        // C^2, x = (1,0), v = w = (0,1): second term vanishes
        let x = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let v = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let g = ambient_g(&x, &v, &v).unwrap();
        assert!((g - 2.0).abs() < 1e-15);

        // any unit v orthogonal to x gives 2/|x|
        let x = [Complex64::new(0.0, 3.0), Complex64::new(0.0, 0.0)];
        let g = ambient_g(&x, &v, &v).unwrap();
        assert!((g - 2.0 / 3.0).abs() < 1e-15);

        // H^1, x = 1, v = j: <j,1><1,j> = (-j)(j) = 1, so g = 2 - 1 = 1
        let g = ambient_g(&[Quat::one()], &[Quat::j()], &[Quat::j()]).unwrap();
        assert!((g - 1.0).abs() < 1e-15);

        assert_eq!(ambient_g(&[0.0], &[1.0], &[1.0]), Err(ZeroBasePoint));
    }

    #[test]
    fn embed_hilbert_examples() {
        // R^1, x = 4 -> (2, 2, 2)
        let e = embed_hilbert(&[4.0]).unwrap();
        assert!((e.scalar - 2.0).abs() < 1e-15);
        assert!((e.vector[0] - 2.0).abs() < 1e-15);
        assert!((e.operator[0] - 2.0).abs() < 1e-15);

        // unit vector in C^2
        let x = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let e = embed_hilbert(&x).unwrap();
        assert!((e.scalar - 1.0).abs() < 1e-15);
        assert!((e.vector[0] - x[0]).norm() < 1e-15);
        assert!((e.operator[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(e.operator[1].norm() < 1e-15);

        // homogeneity of degree 1/2: x -> 4x scales everything by 2
        let y = [Complex64::new(4.0, 0.0), Complex64::new(0.0, 0.0)];
        let e4 = embed_hilbert(&y).unwrap();
        assert!((e4.scalar - 2.0 * e.scalar).abs() < 1e-14);
        assert!((e4.vector[0] - e.vector[0] * 2.0).norm() < 1e-14);
        assert!((e4.operator[0] - e.operator[0] * 2.0).norm() < 1e-14);
    }

    #[test]
    fn pullback_residual_examples() {
        let r = pullback_residual(&[4.0], &[1.0], &[1.0], 1e-4).unwrap();
        assert!(r < 1e-7, "residual {r}");

        let x = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let v = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let r = pullback_residual(&x, &v, &v, 1e-4).unwrap();
        assert!(r < 1e-7, "residual {r}");

        let r = pullback_residual(&[Quat::one()], &[Quat::j()], &[Quat::j()], 1e-4).unwrap();
        assert!(r < 1e-7, "residual {r}");
    }

    #[test]
    fn footnote_real_embedding() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x: Vec<f64> = (0..3).map(|_| unit_f64(&mut rng) + 2.0).collect();
            let v: Vec<f64> = (0..3).map(|_| unit_f64(&mut rng)).collect();
            let w: Vec<f64> = (0..3).map(|_| unit_f64(&mut rng)).collect();
            let r = pullback_residual_real_footnote(&x, &v, &w, 1e-4).unwrap();
            assert!(r < 1e-7, "residual {r}");
        }
    }

    #[test]
    fn fd_order_two_convergence() {
        let x = [Complex64::new(0.7, 0.3), Complex64::new(-0.4, 1.1)];
        let v = [Complex64::new(0.2, -0.5), Complex64::new(0.9, 0.1)];
        let r1 = pullback_residual(&x, &v, &v, 2e-2).unwrap();
        let r2 = pullback_residual(&x, &v, &v, 1e-2).unwrap();
        let ratio = r1 / r2;
        assert!(ratio > 2.0 && ratio < 8.0, "ratio {ratio}");
    }

    #[test]
    fn embed_projection_base_point() {
        let q = ProjectionPoint::base_point(MachineComplex, 2);
        let t = embed_projection(&q, Sign::Plus);
        assert!((t.x - 1.0).abs() < 1e-15);
        assert!(t.q.distance(q.matrix()) < 1e-15);
        // P = E_{(0,0),(0,0)} only
        assert!((t.p_entry(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        for i in 0..4 {
            for j in 0..4 {
                if (i, j) != (0, 0) {
                    assert!(t.p_entry(i, j).norm() < 1e-15);
                }
            }
        }
        assert!(variety_residuals(&t, Sign::Plus).max() < 1e-14);
    }

    #[test]
    fn embed_projection_skew_point() {
        let q = ProjectionPoint::new(Matrix::from_i64_rows(MachineComplex, &[&[1, 1], &[0, 0]]))
            .unwrap();
        let t = embed_projection(&q, Sign::Plus);
        // Tr(Q†Q) = x^2 and x = 2^(1/4)... : the whole residual system closes
        assert!((t.x - libm::pow(2.0, 0.25)).abs() < 1e-14);
        assert!(variety_residuals(&t, Sign::Plus).max() < 1e-13);
        // negative sheet negates all components
        let tm = embed_projection(&q, Sign::Minus);
        assert!(tm.distance(&t.negate()) < 1e-15);
        assert!(variety_residuals(&tm, Sign::Minus).max() < 1e-13);
        // same projection from either sheet
        let back = variety_to_projection(&t, 1e-10).unwrap();
        assert!(back.matrix().distance(q.matrix()) < 1e-12);
        let back_m = variety_to_projection(&tm, 1e-10).unwrap();
        assert!(back_m.matrix().distance(q.matrix()) < 1e-12);
    }

    #[test]
    fn off_variety_triples_are_rejected_and_reported() {
        let q = ProjectionPoint::base_point(MachineComplex, 2);
        // (1, diag(1,0), 0): Tr P residual = 1
        let zero_p = EmbeddedTriple {
            x: 1.0,
            q: q.matrix().clone(),
            p: vec![Complex64::new(0.0, 0.0); 16],
        };
        let res = variety_residuals(&zero_p, Sign::Plus);
        assert!((res.trace_p - 1.0).abs() < 1e-15);
        assert!((res.p_of_q - 1.0).abs() < 1e-15);
        assert!(variety_to_projection(&zero_p, 1e-10).is_err());

        // perturbed triple reports nonzero residuals
        let mut t = embed_projection(&q, Sign::Plus);
        let bump = Complex64::new(1e-3, 0.0);
        let e12 = Matrix::from_fn(MachineComplex, 2, 2, |i, j| {
            if (i, j) == (0, 1) {
                bump
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        t.q = t.q.add(&e12);
        assert!(variety_residuals(&t, Sign::Plus).max() > 1e-4);
    }

    #[test]
    fn unitary_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let x: Vec<Complex64> = (0..3).map(|_| Complex64::sample(&mut rng)).collect();
        for _ in 0..20 {
            let u = random_unitary(3, &mut rng);
            let ux = apply_matrix(&u, &x);
            let e = embed_hilbert(&x).unwrap();
            let eu = embed_hilbert(&ux).unwrap();
            assert!((e.scalar - eu.scalar).abs() < 1e-12);
            let uv = apply_matrix(&u, &e.vector);
            for (a, b) in uv.iter().zip(&eu.vector) {
                assert!((a - b).norm() < 1e-12);
            }
            // P transforms as U P U†
            let k = 3;
            for i in 0..k {
                for j in 0..k {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for a in 0..k {
                        for b in 0..k {
                            acc += u[i][a] * e.operator[a * k + b] * u[j][b].conj();
                        }
                    }
                    assert!((acc - eu.operator[i * k + j]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn ray_curve_length_grows_unboundedly() {
        let lengths = ray_curve_lengths(1000.0, 20_000);
        for w in lengths.windows(2) {
            assert!(w[1] > w[0], "length must be strictly increasing");
        }
        let total = *lengths.last().unwrap();
        // asymptotically ~ 2 sqrt(T) ~ 63
        assert!(total > 55.0, "total {total}");
        let at_100 = lengths[2_000];
        assert!(total > 2.0 * at_100, "no sign of unbounded growth");
    }
}
