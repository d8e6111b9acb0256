//! The variety of rank-1 projections in `M_n(R)`.
//!
//! Membership is decided purely through the defining ideal: a square matrix
//! is a point iff it is idempotent, has trace one, and all of its 2x2
//! minors vanish. Tangent vectors at `q` are matrices `a` with
//! `qa + aq = a`, equivalently dual-number idempotent deformations
//! `q + eps a`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::matrix::{Matrix, MinorResiduals, NoncommutativeRing};
use crate::rings::{Ring, Zmod};
use crate::DEFAULT_TOL;

/// Default retry budget for rejection sampling.
pub const DEFAULT_RETRIES: usize = 256;

/// Default ceiling on the number of candidate matrices an exhaustive
/// enumeration may scan.
pub const DEFAULT_ENUM_BUDGET: u128 = 1 << 24;

/// Residuals of the defining ideal, exposed individually for reporting.
pub struct IdealResiduals<R: Ring> {
    /// `q^2 - q`.
    pub idempotency: Matrix<R>,
    /// `Tr q - 1`.
    pub trace_minus_one: R::Elem,
    /// All proper 2x2 minors.
    pub minors: MinorResiduals<R>,
}

impl<R: Ring> IdealResiduals<R> {
    pub fn all_vanish(&self) -> bool {
        let ring = self.idempotency.ring();
        self.idempotency.is_zero()
            && ring.is_zero(&self.trace_minus_one)
            && self.minors.all_vanish()
    }

    pub fn all_negligible(&self, tol: f64) -> bool {
        let ring = self.idempotency.ring().clone();
        self.idempotency.is_negligible(tol)
            && ring.is_negligible(&self.trace_minus_one, tol)
            && self.minors.all_negligible(tol)
    }

    pub fn max_magnitude(&self) -> f64 {
        let ring = self.idempotency.ring().clone();
        let mut m = self.idempotency.max_magnitude();
        let t = ring.magnitude(&self.trace_minus_one);
        if t > m {
            m = t;
        }
        let mm = self.minors.max_magnitude();
        if mm > m {
            m = mm;
        }
        m
    }
}

/// Evaluates the ideal generators at `m`. The matrix is a rank-1 projection
/// iff every residual vanishes.
pub fn ideal_residuals<R: Ring>(m: &Matrix<R>) -> Result<IdealResiduals<R>, NoncommutativeRing> {
    assert!(m.is_square(), "projection candidates must be square");
    let minors = m.minors2x2()?;
    let ring = m.ring().clone();
    let idempotency = m.mul(m).sub(m);
    let trace_minus_one = ring.sub(&m.trace(), &ring.one());
    Ok(IdealResiduals {
        idempotency,
        trace_minus_one,
        minors,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProjectionError {
    NoncommutativeRing,
    NotAPoint { max_residual: f64 },
}

impl fmt::Display for ProjectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectionError::NoncommutativeRing => {
                write!(f, "rank-1 projection points require a commutative ring")
            }
            ProjectionError::NotAPoint { max_residual } => {
                write!(f, "ideal residuals do not vanish (max {max_residual:.3e})")
            }
        }
    }
}

/// A verified point of the rank-1 projection variety.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionPoint<R: Ring> {
    q: Matrix<R>,
}

impl<R: Ring> ProjectionPoint<R> {
    /// Validates the ideal residuals: exactly over exact rings, at
    /// [`DEFAULT_TOL`] over machine-precision ones.
    pub fn new(q: Matrix<R>) -> Result<Self, ProjectionError> {
        Self::with_tol(q, DEFAULT_TOL)
    }

    pub fn with_tol(q: Matrix<R>, tol: f64) -> Result<Self, ProjectionError> {
        let res = ideal_residuals(&q).map_err(|_| ProjectionError::NoncommutativeRing)?;
        if res.all_negligible(tol) {
            Ok(ProjectionPoint { q })
        } else {
            Err(ProjectionError::NotAPoint {
                max_residual: res.max_magnitude(),
            })
        }
    }

    /// The base point `diag(1, 0, ..., 0)`.
    pub fn base_point(ring: R, n: usize) -> Self {
        ProjectionPoint {
            q: Matrix::unit(ring, n, 0, 0),
        }
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.q
    }

    pub fn ring(&self) -> &R {
        self.q.ring()
    }

    pub fn n(&self) -> usize {
        self.q.n()
    }

    /// The adjoint point `q†`, again a rank-1 projection.
    pub fn adjoint(&self) -> Self {
        ProjectionPoint {
            q: self.q.dagger(),
        }
    }

    /// The state `rho_q(x) = Tr(qx)`, characterized by `q x q = rho_q(x) q`.
    pub fn rho(&self, x: &Matrix<R>) -> R::Elem {
        self.q.mul(x).trace()
    }

    /// Residual of the corner-algebra identity `q x q - rho_q(x) q`.
    pub fn rho_residual(&self, x: &Matrix<R>) -> Matrix<R> {
        let rho = self.rho(x);
        self.q.mul(x).mul(&self.q).sub(&self.q.scale(&rho))
    }

    /// `Tr(q† q)`, the squared trace norm of the point.
    pub fn trace_norm_sq(&self) -> R::Elem {
        self.q.dagger().mul(&self.q).trace()
    }
}

/// Tangency predicate: `qa + aq = a`, exactly or within `tol` for
/// machine-precision rings.
pub fn is_tangent<R: Ring>(q: &Matrix<R>, a: &Matrix<R>, tol: f64) -> bool {
    tangency_residual(q, a).is_negligible(tol)
}

/// `qa + aq - a`.
pub fn tangency_residual<R: Ring>(q: &Matrix<R>, a: &Matrix<R>) -> Matrix<R> {
    q.mul(a).add(&a.mul(q)).sub(a)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NotTangent {
    pub residual: f64,
}

impl fmt::Display for NotTangent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matrix is not tangent (residual {:.3e})", self.residual)
    }
}

/// A tangent vector at a fixed projection point.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector<R: Ring> {
    base: ProjectionPoint<R>,
    a: Matrix<R>,
}

impl<R: Ring> TangentVector<R> {
    pub fn new(base: &ProjectionPoint<R>, a: Matrix<R>) -> Result<Self, NotTangent> {
        Self::with_tol(base, a, DEFAULT_TOL)
    }

    pub fn with_tol(base: &ProjectionPoint<R>, a: Matrix<R>, tol: f64) -> Result<Self, NotTangent> {
        let res = tangency_residual(base.matrix(), &a);
        if res.is_negligible(tol) {
            Ok(TangentVector {
                base: base.clone(),
                a,
            })
        } else {
            Err(NotTangent {
                residual: res.max_magnitude(),
            })
        }
    }

    /// `[q, x]` is tangent at `q` for every `x`; no validation needed.
    pub fn from_commutator(base: &ProjectionPoint<R>, x: &Matrix<R>) -> Self {
        TangentVector {
            a: base.matrix().commutator(x),
            base: base.clone(),
        }
    }

    /// For operations that preserve tangency by construction.
    pub(crate) fn unchecked(base: ProjectionPoint<R>, a: Matrix<R>) -> Self {
        debug_assert!(
            !a.ring().exact() || tangency_residual(base.matrix(), &a).is_zero(),
            "tangency must be preserved"
        );
        TangentVector { base, a }
    }

    pub fn base(&self) -> &ProjectionPoint<R> {
        &self.base
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.a
    }

    pub fn ring(&self) -> &R {
        self.a.ring()
    }

    /// Scalar multiple, staying tangent.
    pub fn scale(&self, s: &R::Elem) -> Self {
        TangentVector {
            base: self.base.clone(),
            a: self.a.scale(s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.base, other.base);
        TangentVector {
            base: self.base.clone(),
            a: self.a.add(&other.a),
        }
    }

    pub fn neg(&self) -> Self {
        TangentVector {
            base: self.base.clone(),
            a: self.a.neg(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleError {
    RetriesExhausted,
}

impl fmt::Display for SampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sampling retry budget exhausted")
    }
}

/// Random matrix with small entries.
pub fn sample_matrix<R: Ring>(ring: &R, rows: usize, cols: usize, rng: &mut dyn RngCore) -> Matrix<R> {
    Matrix::from_fn(ring.clone(), rows, cols, |_, _| ring.sample_small(rng))
}

/// Builds `q = v (u v)^-1 u` from a column `v` and a row `u`, the generic
/// rank-1 idempotent with image spanned by `v`. Returns `None` when `u v`
/// is not invertible.
pub fn idempotent_from_col_row<R: Ring>(
    ring: &R,
    v: &[R::Elem],
    u: &[R::Elem],
) -> Option<Matrix<R>> {
    debug_assert_eq!(v.len(), u.len());
    let n = v.len();
    let col = Matrix::from_fn(ring.clone(), n, 1, |i, _| v[i].clone());
    let row = Matrix::from_fn(ring.clone(), 1, n, |_, j| u[j].clone());
    let pairing = row.mul(&col);
    let w = pairing.get(0, 0);
    if !ring.exact() && ring.magnitude(w) < 0.5 {
        // keep machine-precision samples well-conditioned
        return None;
    }
    let wi = ring.inv(w)?;
    let mid = Matrix::from_fn(ring.clone(), 1, 1, |_, _| wi.clone());
    Some(col.mul(&mid).mul(&row))
}

/// Draws a rank-1 idempotent over any ring with involution, including
/// noncommutative ones. Only idempotency is guaranteed by construction;
/// commutative callers wanting a variety point use [`sample_projection`].
pub fn sample_idempotent<R: Ring>(
    ring: &R,
    n: usize,
    rng: &mut dyn RngCore,
    retries: usize,
) -> Result<Matrix<R>, SampleError> {
    for _ in 0..retries {
        let v: Vec<R::Elem> = (0..n).map(|_| ring.sample_small(rng)).collect();
        let u: Vec<R::Elem> = (0..n).map(|_| ring.sample_small(rng)).collect();
        if let Some(q) = idempotent_from_col_row(ring, &v, &u) {
            return Ok(q);
        }
    }
    Err(SampleError::RetriesExhausted)
}

/// Draws a random point of the variety over a commutative ring.
pub fn sample_projection<R: Ring>(
    ring: &R,
    n: usize,
    rng: &mut dyn RngCore,
    retries: usize,
) -> Result<ProjectionPoint<R>, SampleError> {
    for _ in 0..retries {
        let Ok(q) = sample_idempotent(ring, n, rng, retries) else {
            continue;
        };
        if let Ok(p) = ProjectionPoint::new(q) {
            return Ok(p);
        }
    }
    Err(SampleError::RetriesExhausted)
}

/// Choose `v_1 = 1` and solve for `u_1` so that `u v = 1` holds by
/// construction. No inversion is performed, so over exact rings the
/// resulting point has integral entries; this keeps long verification runs
/// inside single-limb arithmetic.
pub fn sample_idempotent_unit<R: Ring>(
    ring: &R,
    n: usize,
    rng: &mut dyn RngCore,
) -> Matrix<R> {
    let mut v: Vec<R::Elem> = Vec::with_capacity(n);
    v.push(ring.one());
    for _ in 1..n {
        v.push(ring.sample_small(rng));
    }
    let mut u: Vec<R::Elem> = Vec::with_capacity(n);
    u.push(ring.one());
    let mut tail = ring.from_i64(0);
    for vk in v.iter().skip(1) {
        let uk = ring.sample_small(rng);
        tail = ring.add(&tail, &ring.mul(&uk, vk));
        u.push(uk);
    }
    u[0] = ring.sub(&ring.one(), &tail);
    let col = Matrix::from_fn(ring.clone(), n, 1, |i, _| v[i].clone());
    let row = Matrix::from_fn(ring.clone(), 1, n, |_, j| u[j].clone());
    col.mul(&row)
}

/// The pairing-normalized variant of [`sample_projection`], preferred by
/// the verification harness.
pub fn sample_projection_unit<R: Ring>(
    ring: &R,
    n: usize,
    rng: &mut dyn RngCore,
) -> Result<ProjectionPoint<R>, SampleError> {
    for _ in 0..DEFAULT_RETRIES {
        let q = sample_idempotent_unit(ring, n, rng);
        if let Ok(p) = ProjectionPoint::new(q) {
            return Ok(p);
        }
    }
    Err(SampleError::RetriesExhausted)
}

/// Random tangent vector `[q, x]` at `q`.
pub fn sample_tangent<R: Ring>(q: &ProjectionPoint<R>, rng: &mut dyn RngCore) -> TangentVector<R> {
    let x = sample_matrix(q.ring(), q.n(), q.n(), rng);
    TangentVector::from_commutator(q, &x)
}

/// Random tangent at a raw idempotent, for noncommutative instances.
pub fn sample_tangent_raw<R: Ring>(q: &Matrix<R>, rng: &mut dyn RngCore) -> Matrix<R> {
    let x = sample_matrix(q.ring(), q.n(), q.n(), rng);
    q.commutator(&x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    NotFinite,
    BudgetExceeded { candidates: u128, budget: u128 },
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::NotFinite => write!(f, "enumeration requires a finite ring"),
            EnumerateError::BudgetExceeded { candidates, budget } => write!(
                f,
                "enumeration would scan {candidates} matrices, over the budget of {budget}"
            ),
        }
    }
}

/// Exhaustively enumerates the rank-1 projections in `M_n(R)` for a finite
/// ring, in lexicographic order of the entry tuple (row-major, first entry
/// most significant).
pub fn enumerate_rank1<R: Ring>(
    ring: &R,
    n: usize,
    budget: u128,
) -> Result<Vec<ProjectionPoint<R>>, EnumerateError> {
    let elems = ring.elements().ok_or(EnumerateError::NotFinite)?;
    let size = elems.len() as u128;
    let cells = n * n;
    let mut candidates: u128 = 1;
    for _ in 0..cells {
        candidates = candidates.saturating_mul(size);
    }
    if candidates > budget {
        return Err(EnumerateError::BudgetExceeded { candidates, budget });
    }

    let mut points = Vec::new();
    let mut digits = vec![0usize; cells];
    loop {
        let m = Matrix::from_fn(ring.clone(), n, n, |i, j| elems[digits[i * n + j]].clone());
        if let Ok(res) = ideal_residuals(&m) {
            if res.all_vanish() {
                points.push(ProjectionPoint { q: m });
            }
        }
        // odometer, last digit fastest
        let mut k = cells;
        loop {
            if k == 0 {
                return Ok(points);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < elems.len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Entrywise reduction of a matrix over `Z/m` onto `Z/k` for `k | m`.
pub fn reduce_matrix(m: &Matrix<Zmod>, target: Zmod) -> Matrix<Zmod> {
    let src = *m.ring();
    m.map_entries(target, |e| src.reduce_to(e, &target))
}

/// The full commutator family `{[q, e_ij]}`, which spans the tangent space.
pub fn tangent_span<R: Ring>(q: &ProjectionPoint<R>) -> Vec<Matrix<R>> {
    let ring = q.ring().clone();
    let n = q.n();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let e = Matrix::unit(ring.clone(), n, i, j);
            out.push(q.matrix().commutator(&e));
        }
    }
    out
}

/// Row-reduction rank of a family of matrices viewed as flat vectors, over
/// a ring where sampled pivots are invertible (fields in practice). For
/// machine-precision scalars, pivots below `tol` count as zero.
pub fn span_rank<R: Ring>(ring: &R, family: &[Matrix<R>], tol: f64) -> usize {
    select_independent(ring, family, tol).len()
}

/// Indices of a maximal independent subset of the family, chosen greedily
/// in order.
pub fn select_independent<R: Ring>(ring: &R, family: &[Matrix<R>], tol: f64) -> Vec<usize> {
    let mut rows: Vec<(usize, Vec<R::Elem>)> = family
        .iter()
        .enumerate()
        .map(|(idx, m)| (idx, m.entries().to_vec()))
        .collect();
    let width = rows.first().map_or(0, |(_, r)| r.len());
    let mut selected = Vec::new();
    let mut next = 0usize;
    for col in 0..width {
        // find a usable pivot in rows[next..]
        let mut pick: Option<usize> = None;
        let mut best = tol;
        for (ri, (_, row)) in rows.iter().enumerate().skip(next) {
            let mag = ring.magnitude(&row[col]);
            let usable = if ring.exact() {
                !ring.is_zero(&row[col]) && ring.inv(&row[col]).is_some()
            } else {
                mag > best
            };
            if usable {
                if ring.exact() {
                    pick = Some(ri);
                    break;
                }
                best = mag;
                pick = Some(ri);
            }
        }
        let Some(p) = pick else { continue };
        rows.swap(next, p);
        let (orig, pivot_row) = rows[next].clone();
        selected.push(orig);
        let Some(pinv) = ring.inv(&pivot_row[col]) else {
            continue;
        };
        for (_, row) in rows.iter_mut().skip(next + 1) {
            let factor = ring.mul(&row[col], &pinv);
            if ring.is_zero(&factor) {
                continue;
            }
            for c in 0..width {
                let delta = ring.mul(&factor, &pivot_row[c]);
                row[c] = ring.sub(&row[c], &delta);
            }
        }
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    selected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{gaussian_q, GaussElem};
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    fn g() -> crate::rings::GaussianRationals {
        gaussian_q()
    }

    #[test]
    fn ideal_residuals_examples() {
        // base point: all residuals vanish
        let p = Matrix::from_i64_rows(g(), &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(ideal_residuals(&p).unwrap().all_vanish());

        // diag(1,1,0): trace residual 1 and a nonzero minor
        let m = Matrix::from_i64_rows(g(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let res = ideal_residuals(&m).unwrap();
        assert!(res.idempotency.is_zero());
        assert_eq!(res.trace_minus_one, g().one());
        assert!(!res.minors.all_vanish());

        // [[1,5],[0,0]] is a point
        let m = Matrix::from_i64_rows(g(), &[&[1, 5], &[0, 0]]);
        assert!(ideal_residuals(&m).unwrap().all_vanish());
    }

    #[test]
    fn rho_examples() {
        let q = ProjectionPoint::base_point(g(), 2);
        let x = Matrix::from_rows(
            g(),
            vec![
                vec![GaussElem::from_i64(3, 1), GaussElem::from_i64(5, 0)],
                vec![GaussElem::from_i64(0, 2), GaussElem::from_i64(7, 0)],
            ],
        );
        // rho_q(x) = x_11 at the base point
        assert_eq!(q.rho(&x), GaussElem::from_i64(3, 1));
        assert!(q.rho_residual(&x).is_zero());
        assert_eq!(q.rho(&Matrix::identity(g(), 2)), g().one());

        // q = [[1,1],[0,0]]: rho_q(q†) = Tr(q q†) = 2, and q q† q = 2 q
        let q = ProjectionPoint::new(Matrix::from_i64_rows(g(), &[&[1, 1], &[0, 0]])).unwrap();
        let qd = q.matrix().dagger();
        assert_eq!(q.rho(&qd), g().from_i64(2));
        assert!(q.rho_residual(&qd).is_zero());
    }

    #[test]
    fn tangency_examples() {
        let q = ProjectionPoint::base_point(g(), 2);
        let e12 = Matrix::unit(g(), 2, 0, 1);
        let e11 = Matrix::unit(g(), 2, 0, 0);
        assert!(is_tangent(q.matrix(), &e12, 0.0));
        assert!(!is_tangent(q.matrix(), &e11, 0.0));

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let x = sample_matrix(&g(), 2, 2, &mut rng);
            let a = q.matrix().commutator(&x);
            assert!(is_tangent(q.matrix(), &a, 0.0));
        }
    }

    #[test]
    fn commutator_tangents_at_base_point() {
        let q = ProjectionPoint::base_point(g(), 2);
        let e12 = Matrix::unit(g(), 2, 0, 1);
        let e21 = Matrix::unit(g(), 2, 1, 0);
        assert_eq!(TangentVector::from_commutator(&q, &e12).matrix(), &e12);
        assert_eq!(
            TangentVector::from_commutator(&q, &e21).matrix(),
            &e21.neg()
        );
        assert!(TangentVector::from_commutator(&q, q.matrix())
            .matrix()
            .is_zero());
    }

    #[test]
    fn projection_from_fixed_vectors() {
        // v = (1,0), u = (1,0) -> diag(1,0)
        let q = idempotent_from_col_row(&g(), &[g().one(), g().zero()], &[g().one(), g().zero()])
            .unwrap();
        assert_eq!(q, Matrix::from_i64_rows(g(), &[&[1, 0], &[0, 0]]));

        // v = (1,1), u = (1,0) -> [[1,0],[1,0]]
        let q = idempotent_from_col_row(&g(), &[g().one(), g().one()], &[g().one(), g().zero()])
            .unwrap();
        assert_eq!(q, Matrix::from_i64_rows(g(), &[&[1, 0], &[1, 0]]));
        assert!(ideal_residuals(&q).unwrap().all_vanish());
    }

    #[test]
    fn sampled_projections_pass_the_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=4 {
            for _ in 0..10 {
                let p = sample_projection(&g(), n, &mut rng, DEFAULT_RETRIES).unwrap();
                assert!(ideal_residuals(p.matrix()).unwrap().all_vanish());
            }
        }
    }

    #[test]
    fn sampling_budget_exhaustion() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let err = sample_projection(&g(), 2, &mut rng, 0).unwrap_err();
        assert_eq!(err, SampleError::RetriesExhausted);
    }

    #[test]
    fn tangent_trace_and_corner_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let p = sample_projection(&g(), 3, &mut rng, DEFAULT_RETRIES).unwrap();
            let t = sample_tangent(&p, &mut rng);
            assert!(g().is_zero(&t.matrix().trace()));
            let q = p.matrix();
            assert!(q.mul(t.matrix()).mul(q).is_zero());
        }
    }

    #[test]
    fn tangent_space_dimension_over_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=3 {
            let p = sample_projection(&g(), n, &mut rng, DEFAULT_RETRIES).unwrap();
            let span = tangent_span(&p);
            assert_eq!(span_rank(&g(), &span, 0.0), 2 * (n - 1));
        }
        let f5 = Zmod::new(5);
        for n in 2..=3 {
            let p = sample_projection(&f5, n, &mut rng, DEFAULT_RETRIES).unwrap();
            let span = tangent_span(&p);
            assert_eq!(span_rank(&f5, &span, 0.0), 2 * (n - 1));
        }
    }

    #[test]
    fn enumeration_counts_small_fields() {
        let f2 = Zmod::new(2);
        assert_eq!(enumerate_rank1(&f2, 2, DEFAULT_ENUM_BUDGET).unwrap().len(), 6);
        let f3 = Zmod::new(3);
        assert_eq!(
            enumerate_rank1(&f3, 2, DEFAULT_ENUM_BUDGET).unwrap().len(),
            12
        );
        let z6 = Zmod::new(6);
        assert_eq!(
            enumerate_rank1(&z6, 2, DEFAULT_ENUM_BUDGET).unwrap().len(),
            72
        );
    }

    #[test]
    fn enumeration_budget_refusal() {
        let z8 = Zmod::new(8);
        let err = enumerate_rank1(&z8, 3, DEFAULT_ENUM_BUDGET).unwrap_err();
        match err {
            EnumerateError::BudgetExceeded { candidates, .. } => {
                assert_eq!(candidates, 8u128.pow(9));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn crt_functoriality_of_counts() {
        let z6 = Zmod::new(6);
        let f2 = Zmod::new(2);
        let f3 = Zmod::new(3);
        let all6 = enumerate_rank1(&z6, 2, DEFAULT_ENUM_BUDGET).unwrap();
        let c2 = enumerate_rank1(&f2, 2, DEFAULT_ENUM_BUDGET).unwrap().len();
        let c3 = enumerate_rank1(&f3, 2, DEFAULT_ENUM_BUDGET).unwrap().len();
        assert_eq!(all6.len(), c2 * c3);
        // reductions stay on the variety
        for p in &all6 {
            let r2 = reduce_matrix(p.matrix(), f2);
            assert!(ideal_residuals(&r2).unwrap().all_vanish());
            let r3 = reduce_matrix(p.matrix(), f3);
            assert!(ideal_residuals(&r3).unwrap().all_vanish());
        }
    }
}
