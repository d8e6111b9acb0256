//! Named verification checks behind a seeded, deterministic harness.
//!
//! Every check draws its samples from a ChaCha stream seeded by the trial
//! configuration, folds a maximum residual over the trials, and reports
//! pass/fail: exact rings must produce a residual of exactly zero, machine
//! rings are compared against the configured tolerance.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::embedding::{
    self, embed_projection, pullback_residual, variety_residuals, variety_to_projection, HScalar,
    Quat,
};
use crate::geometry::{
    antisymplectic_residual, closedness_residual, complex_structure, complex_structure_rewrite,
    cover_tangent_lift, dual_cover_residual, h_form, h_tilde, h_tilde_gram, internal_i_map_with_tol,
    l_operator, lift_matrix, omega, omega_raw, polarization_components, polarization_split,
    square_root_twist, twist_derivative, twisted_dagger, CoverPoint, GeometryError, LOperator,
};
use crate::matrix::Matrix;
use crate::numerics::{domega_residual, nijenhuis_residual, potential_hessian_form, re_h_tilde};
use crate::projspace::{
    enumerate_rank1, ideal_residuals, sample_idempotent_unit, sample_projection_unit,
    sample_tangent, select_independent, tangent_span, ProjectionPoint, TangentVector,
    DEFAULT_ENUM_BUDGET, DEFAULT_RETRIES,
};
use crate::rings::{
    bicomplex, quaternions_q, split_complex, GaussianRationals, MachineComplex,
    QuadraticExtension, Rationals, Ring, RingTag, Zmod,
};
use crate::{Sign, DEFAULT_TOL};

/// Configuration of one seeded check run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub ring: RingTag,
    pub n: usize,
    pub trials: u32,
    pub seed: u64,
    pub tol: f64,
    pub step: f64,
}

impl TrialConfig {
    pub fn new(ring: RingTag, n: usize) -> Self {
        TrialConfig {
            ring,
            n,
            trials: 50,
            seed: 7,
            tol: DEFAULT_TOL,
            step: 1e-4,
        }
    }

    pub fn trials(mut self, trials: u32) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub check: String,
    pub ring: String,
    pub n: usize,
    pub seed: u64,
    pub trials: u32,
    pub max_residual: f64,
    pub pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    MainIdentity,
    ClosedForm,
    HCompat,
    CoverEtale,
    ISquare,
    IntertwineBicomplex,
    IntertwineI,
    Antisymplectic,
    Polarization,
    QuaternionRelations,
    Nondegenerate,
    PositiveDefinite,
    Nijenhuis,
    PotentialMetric,
    EmbedPullback,
    Variety,
    VarietyRoundtrip,
    TwoSheets,
    Enumeration,
}

impl CheckName {
    pub const ALL: &'static [CheckName] = &[
        CheckName::MainIdentity,
        CheckName::ClosedForm,
        CheckName::HCompat,
        CheckName::CoverEtale,
        CheckName::ISquare,
        CheckName::IntertwineBicomplex,
        CheckName::IntertwineI,
        CheckName::Antisymplectic,
        CheckName::Polarization,
        CheckName::QuaternionRelations,
        CheckName::Nondegenerate,
        CheckName::PositiveDefinite,
        CheckName::Nijenhuis,
        CheckName::PotentialMetric,
        CheckName::EmbedPullback,
        CheckName::Variety,
        CheckName::VarietyRoundtrip,
        CheckName::TwoSheets,
        CheckName::Enumeration,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::MainIdentity => "main-identity",
            CheckName::ClosedForm => "closed-form",
            CheckName::HCompat => "h-compat",
            CheckName::CoverEtale => "cover-etale",
            CheckName::ISquare => "i-square",
            CheckName::IntertwineBicomplex => "intertwine-bicomplex",
            CheckName::IntertwineI => "intertwine-i",
            CheckName::Antisymplectic => "antisymplectic",
            CheckName::Polarization => "polarization",
            CheckName::QuaternionRelations => "quaternion-relations",
            CheckName::Nondegenerate => "nondegenerate",
            CheckName::PositiveDefinite => "positive-definite",
            CheckName::Nijenhuis => "nijenhuis",
            CheckName::PotentialMetric => "potential-metric",
            CheckName::EmbedPullback => "embed-pullback",
            CheckName::Variety => "variety",
            CheckName::VarietyRoundtrip => "variety-roundtrip",
            CheckName::TwoSheets => "two-sheets",
            CheckName::Enumeration => "enumeration",
        }
    }

    /// Tolerance used when the caller does not override it.
    pub fn default_tol(&self) -> f64 {
        match self {
            CheckName::ClosedForm | CheckName::EmbedPullback => 1e-6,
            CheckName::Nijenhuis => 1e-4,
            CheckName::PotentialMetric => 1e-3,
            CheckName::VarietyRoundtrip => 1e-10,
            CheckName::Nondegenerate | CheckName::PositiveDefinite => 0.5,
            _ => DEFAULT_TOL,
        }
    }

    pub fn default_step(&self) -> f64 {
        match self {
            CheckName::PotentialMetric => 1e-3,
            _ => 1e-4,
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for CheckName {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, UnknownCheck> {
        CheckName::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| UnknownCheck(String::from(s)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownCheck(pub String);

impl fmt::Display for UnknownCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown check `{}`", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckError {
    Unsupported { check: CheckName, ring: RingTag },
    Sampling,
    BadConfig(&'static str),
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::Unsupported { check, ring } => {
                write!(f, "check `{check}` does not support ring `{ring}`")
            }
            CheckError::Sampling => write!(f, "sampling retry budget exhausted"),
            CheckError::BadConfig(msg) => write!(f, "bad configuration: {msg}"),
        }
    }
}

impl RingTag {
    pub fn is_exact(&self) -> bool {
        !matches!(self, RingTag::MachineComplex)
    }

    pub fn is_commutative(&self) -> bool {
        !matches!(self, RingTag::QuaternionQ)
    }
}

type CheckResult = Result<f64, CheckError>;

fn rng_for(cfg: &TrialConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

/// Residual magnitude with a floor: a structurally nonzero exact element
/// never reports as 0.0 even if its float image underflows.
fn elem_residual<R: Ring>(ring: &R, e: &R::Elem) -> f64 {
    if ring.is_zero(e) {
        0.0
    } else {
        let m = ring.magnitude(e);
        if m > f64::MIN_POSITIVE {
            m
        } else {
            f64::MIN_POSITIVE
        }
    }
}

fn matrix_residual<R: Ring>(m: &Matrix<R>) -> f64 {
    if m.is_zero() {
        0.0
    } else {
        let v = m.max_magnitude();
        if v > f64::MIN_POSITIVE {
            v
        } else {
            f64::MIN_POSITIVE
        }
    }
}

fn fold(acc: &mut f64, r: f64) {
    if r > *acc {
        *acc = r;
    }
}

/// Samples a projection whose trace norm is invertible and adjoins the
/// formal inverse square root.
fn adjoined_cover<R: Ring>(
    ring: &R,
    n: usize,
    rng: &mut dyn RngCore,
) -> Result<CoverPoint<QuadraticExtension<R>>, CheckError> {
    for _ in 0..DEFAULT_RETRIES {
        let q = sample_projection_unit(ring, n, rng).map_err(|_| CheckError::Sampling)?;
        if let Ok(c) = CoverPoint::adjoin(&q) {
            return Ok(c);
        }
    }
    Err(CheckError::Sampling)
}

fn machine_cover(n: usize, rng: &mut dyn RngCore) -> Result<CoverPoint<MachineComplex>, CheckError> {
    let q = sample_projection_unit(&MachineComplex, n, rng).map_err(|_| CheckError::Sampling)?;
    CoverPoint::lift(q, Sign::Plus).map_err(|_| CheckError::Sampling)
}

fn geo(check: CheckName, ring: &RingTag) -> impl Fn(GeometryError) -> CheckError + '_ {
    let check = check;
    move |e| match e {
        GeometryError::NoHalf | GeometryError::NoImaginaryUnit => CheckError::Unsupported {
            check,
            ring: ring.clone(),
        },
        _ => CheckError::Sampling,
    }
}

// --- individual checks -------------------------------------------------

fn check_main_identity<R: Ring>(ring: &R, cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let q = sample_projection_unit(ring, cfg.n, &mut rng).map_err(|_| CheckError::Sampling)?;
        let a = sample_tangent(&q, &mut rng);
        let op = LOperator::new(q.matrix());
        let la = op.apply(a.matrix());
        // the image stays tangent
        fold(
            &mut worst,
            matrix_residual(&crate::projspace::tangency_residual(q.matrix(), &la)),
        );
        // L^2 = -4 Tr(q†q)^3
        let t = q.trace_norm_sq();
        let t3 = ring.mul(&t, &ring.mul(&t, &t));
        let coeff = ring.mul(&ring.from_i64(4), &t3);
        let res = op.apply(&la).add(&a.matrix().scale(&coeff));
        fold(&mut worst, matrix_residual(&res));
    }
    Ok(worst)
}

fn check_main_identity_quaternion(cfg: &TrialConfig) -> CheckResult {
    let h = quaternions_q();
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let q = sample_idempotent_unit(&h, cfg.n, &mut rng);
        let op = LOperator::new(&q);
        // r = Tr(q†q) is a central self-adjoint scalar with q q† q = r q
        let r = q.dagger().mul(&q).trace();
        fold(&mut worst, elem_residual(&h, &h.sub(&h.star(&r), &r)));
        fold(&mut worst, matrix_residual(&op.core().sub(&q.scale(&r))));
        let a = crate::projspace::sample_tangent_raw(&q, &mut rng);
        let t3 = h.mul(&r, &h.mul(&r, &r));
        let coeff = h.mul(&h.from_i64(4), &t3);
        let res = op.apply(&op.apply(&a)).add(&a.scale(&coeff));
        fold(&mut worst, matrix_residual(&res));
    }
    Ok(worst)
}

fn check_closedness_exact<R: Ring>(ring: &R, cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let q = sample_projection_unit(ring, cfg.n, &mut rng).map_err(|_| CheckError::Sampling)?;
        let a = sample_tangent(&q, &mut rng);
        let b = sample_tangent(&q, &mut rng);
        let c = sample_tangent(&q, &mut rng);
        let res = closedness_residual(a.matrix(), b.matrix(), c.matrix());
        fold(&mut worst, elem_residual(ring, &res));
    }
    Ok(worst)
}

fn check_domega_machine(cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let q = sample_projection_unit(&MachineComplex, cfg.n, &mut rng)
            .map_err(|_| CheckError::Sampling)?;
        let a = sample_tangent(&q, &mut rng);
        let b = sample_tangent(&q, &mut rng);
        let c = sample_tangent(&q, &mut rng);
        let res = domega_residual(&q, a.matrix(), b.matrix(), c.matrix(), cfg.step);
        fold(&mut worst, res);
    }
    Ok(worst)
}

fn check_h_compat<R: Ring>(ring: &R, cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    let has_half = ring.half().is_some();
    for _ in 0..cfg.trials {
        let q = sample_projection_unit(ring, cfg.n, &mut rng).map_err(|_| CheckError::Sampling)?;
        let a = sample_tangent(&q, &mut rng);
        let b = sample_tangent(&q, &mut rng);
        // h(a, b) = Omega(a, L b)
        let res = ring.sub(&h_form(&a, &b), &omega(&a, &l_operator(&b)));
        fold(&mut worst, elem_residual(ring, &res));
        // h(b, a) = h(a, b)*
        let res = ring.sub(&h_form(&b, &a), &ring.star(&h_form(&a, &b)));
        fold(&mut worst, elem_residual(ring, &res));
    }
    if has_half {
        for _ in 0..cfg.trials {
            let c = adjoined_cover(ring, cfg.n, &mut rng)?;
            let ext = c.ring().clone();
            let a = sample_tangent(c.point(), &mut rng);
            let b = sample_tangent(c.point(), &mut rng);
            let ib = complex_structure(&c, &b).map_err(geo(CheckName::HCompat, &cfg.ring))?;
            let lhs = h_tilde(&c, &a, &b).map_err(geo(CheckName::HCompat, &cfg.ring))?;
            let res = ext.sub(&lhs, &omega(&a, &ib));
            fold(&mut worst, elem_residual(&ext, &res));
            let rev = h_tilde(&c, &b, &a).map_err(geo(CheckName::HCompat, &cfg.ring))?;
            let res = ext.sub(&rev, &ext.star(&lhs));
            fold(&mut worst, elem_residual(&ext, &res));
        }
    }
    Ok(worst)
}

fn check_cover_etale<R: Ring>(ring: &R, cfg: &TrialConfig) -> CheckResult {
    if ring.half().is_none() {
        return Err(CheckError::Unsupported {
            check: CheckName::CoverEtale,
            ring: cfg.ring.clone(),
        });
    }
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let c = adjoined_cover(ring, cfg.n, &mut rng)?;
        let ext = c.ring().clone();
        let dual = QuadraticExtension::dual(ext.clone());
        let a = sample_tangent(c.point(), &mut rng);
        let s = cover_tangent_lift(&c, &a).map_err(geo(CheckName::CoverEtale, &cfg.ring))?;
        let res = dual_cover_residual(&c, &a, &s);
        fold(&mut worst, elem_residual(&dual, &res));
        // uniqueness: any other lift violates the invariant
        let other = ext.add(&s, &ext.one());
        let res = dual_cover_residual(&c, &a, &other);
        if dual.is_negligible(&res, cfg.tol) {
            fold(&mut worst, 1.0);
        }
    }
    Ok(worst)
}

fn check_i_square<R: Ring>(ring: &R, cfg: &TrialConfig) -> CheckResult {
    if ring.half().is_none() {
        return Err(CheckError::Unsupported {
            check: CheckName::ISquare,
            ring: cfg.ring.clone(),
        });
    }
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let c = adjoined_cover(ring, cfg.n, &mut rng)?;
        let a = sample_tangent(c.point(), &mut rng);
        let ia = complex_structure(&c, &a).map_err(geo(CheckName::ISquare, &cfg.ring))?;
        // the closed rewrite computes the same operator
        let rw = complex_structure_rewrite(&c, &a).map_err(geo(CheckName::ISquare, &cfg.ring))?;
        fold(&mut worst, matrix_residual(&ia.matrix().sub(rw.matrix())));
        let iia = complex_structure(&c, &ia).map_err(geo(CheckName::ISquare, &cfg.ring))?;
        fold(&mut worst, matrix_residual(&iia.matrix().add(a.matrix())));
    }
    Ok(worst)
}

fn check_intertwine_bicomplex<R: Ring>(ring: &R, cfg: &TrialConfig) -> CheckResult {
    if ring.half().is_none() {
        return Err(CheckError::Unsupported {
            check: CheckName::IntertwineBicomplex,
            ring: cfg.ring.clone(),
        });
    }
    let err = geo(CheckName::IntertwineBicomplex, &cfg.ring);
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let c = adjoined_cover(ring, cfg.n, &mut rng)?;
        let ext = c.ring().clone();
        let a = sample_tangent(c.point(), &mut rng);
        let s = cover_tangent_lift(&c, &a).map_err(&err)?;
        let ia = complex_structure(&c, &a).map_err(&err)?;
        let si = cover_tangent_lift(&c, &ia).map_err(&err)?;

        // adjoin a self-adjoint unit and push everything up
        let label = format!("adjoin-i({})", ext.tag());
        let big = QuadraticExtension::adjoin_i(ext.clone(), &label);
        let unit = big.generator();
        let qb = lift_matrix(&big, c.q_matrix());
        let rb = big.lift(c.r());

        // derivative intertwines the structure with the unit
        let d1 = twist_derivative(&qb, &rb, &unit, &lift_matrix(&big, a.matrix()), &big.lift(&s))
            .map_err(&err)?;
        let d2 = twist_derivative(
            &qb,
            &rb,
            &unit,
            &lift_matrix(&big, ia.matrix()),
            &big.lift(&si),
        )
        .map_err(&err)?;
        fold(&mut worst, matrix_residual(&d2.sub(&d1.scale(&unit))));

        // the image is a self-adjoint point of the extended variety and
        // satisfies the covering identity for the twisted dagger
        let img = square_root_twist(&qb, &rb, &unit).map_err(&err)?;
        let ideal = ideal_residuals(&img).expect("extension stays commutative");
        fold(&mut worst, ideal.max_magnitude());
        fold(&mut worst, matrix_residual(&img.dagger().sub(&img)));
        let tw = twisted_dagger(&img);
        let unit_res = big.sub(
            &big.mul(&big.mul(&rb, &rb), &img.mul(&tw).trace()),
            &big.one(),
        );
        fold(&mut worst, elem_residual(&big, &unit_res));

        // with a skew-adjoint unit instead, the squared map is the adjoint
        let label = format!("adjoin-skew-i({})", ext.tag());
        let skew = QuadraticExtension::adjoin_skew_i(ext.clone(), &label);
        let unit = skew.generator();
        let qs = lift_matrix(&skew, c.q_matrix());
        let rs = skew.lift(c.r());
        let w1 = square_root_twist(&qs, &rs, &unit).map_err(&err)?;
        // the intermediate image stays on the covering space
        fold(&mut worst, matrix_residual(&w1.mul(&w1).sub(&w1)));
        let inv_res = skew.sub(
            &skew.mul(&skew.mul(&rs, &rs), &w1.dagger().mul(&w1).trace()),
            &skew.one(),
        );
        fold(&mut worst, elem_residual(&skew, &inv_res));
        let w2 = square_root_twist(&w1, &rs, &unit).map_err(&err)?;
        let expect = lift_matrix(&skew, &c.q_matrix().dagger());
        fold(&mut worst, matrix_residual(&w2.sub(&expect)));
    }
    Ok(worst)
}

fn check_intertwine_i<R: Ring>(ring: &R, cfg: &TrialConfig) -> CheckResult {
    if ring.half().is_none() || ring.imaginary_unit().is_none() {
        return Err(CheckError::Unsupported {
            check: CheckName::IntertwineI,
            ring: cfg.ring.clone(),
        });
    }
    let err = geo(CheckName::IntertwineI, &cfg.ring);
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let c = adjoined_cover(ring, cfg.n, &mut rng)?;
        let ext = c.ring().clone();
        let i = ext.imaginary_unit().expect("inherited from the base ring");
        let a = sample_tangent(c.point(), &mut rng);
        let s = cover_tangent_lift(&c, &a).map_err(&err)?;
        let ia = complex_structure(&c, &a).map_err(&err)?;
        let si = cover_tangent_lift(&c, &ia).map_err(&err)?;
        let d1 = twist_derivative(c.q_matrix(), c.r(), &i, a.matrix(), &s).map_err(&err)?;
        let d2 = twist_derivative(c.q_matrix(), c.r(), &i, ia.matrix(), &si).map_err(&err)?;
        fold(&mut worst, matrix_residual(&d2.sub(&d1.scale(&i))));

        // applying the map twice lands on the adjoint point
        let m1 = internal_i_map_with_tol(&c, cfg.tol).map_err(&err)?;
        let m2 = internal_i_map_with_tol(&m1, cfg.tol).map_err(&err)?;
        fold(
            &mut worst,
            matrix_residual(&m2.q_matrix().sub(&c.q_matrix().dagger())),
        );
        fold(&mut worst, elem_residual(&ext, &ext.sub(m2.r(), c.r())));
    }
    Ok(worst)
}

fn check_antisymplectic<R: Ring>(ring: &R, cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let q = sample_projection_unit(ring, cfg.n, &mut rng).map_err(|_| CheckError::Sampling)?;
        let a = sample_tangent(&q, &mut rng);
        let b = sample_tangent(&q, &mut rng);
        // adjoints of tangents are tangent at the adjoint point
        let qd = q.matrix().dagger();
        fold(
            &mut worst,
            matrix_residual(&crate::projspace::tangency_residual(
                &qd,
                &a.matrix().dagger(),
            )),
        );
        fold(&mut worst, elem_residual(ring, &antisymplectic_residual(&a, &b)));
        fold(&mut worst, elem_residual(ring, &antisymplectic_residual(&a, &a)));
    }
    Ok(worst)
}

fn check_polarization<R: Ring>(ring: &R, cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let c = adjoined_cover(ring, cfg.n, &mut rng)?;
        let ext = c.ring().clone();
        let pol = polarization_split(&c);
        for p in [&pol.p_plus, &pol.p_minus] {
            fold(&mut worst, matrix_residual(&p.mul(p).sub(p)));
            fold(&mut worst, matrix_residual(&p.dagger().sub(p)));
        }
        let a = sample_tangent(c.point(), &mut rng);
        let b = sample_tangent(c.point(), &mut rng);
        let (qa, aq) = polarization_components(&a);
        let (qb, bq) = polarization_components(&b);
        fold(&mut worst, matrix_residual(&qa.add(&aq).sub(a.matrix())));
        // each half is isotropic
        let q = c.q_matrix();
        fold(&mut worst, elem_residual(&ext, &omega_raw(q, &qa, &qb)));
        fold(&mut worst, elem_residual(&ext, &omega_raw(q, &aq, &bq)));
        // the polarization involution squares to the identity
        let inner = q.commutator(a.matrix());
        fold(
            &mut worst,
            matrix_residual(&q.commutator(&inner).sub(a.matrix())),
        );
    }
    Ok(worst)
}

fn check_quaternion_relations_machine(cfg: &TrialConfig) -> CheckResult {
    let err = geo(CheckName::QuaternionRelations, &cfg.ring);
    let i = Complex64::new(0.0, 1.0);
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let c = machine_cover(cfg.n, &mut rng)?;
        let a = sample_tangent(c.point(), &mut rng);
        let ia = complex_structure(&c, &a).map_err(&err)?;
        // I^2 = -1
        let iia = complex_structure(&c, &ia).map_err(&err)?;
        fold(&mut worst, matrix_residual(&iia.matrix().add(a.matrix())));
        // I(i a) + i I(a) = 0
        let i_scaled = complex_structure(&c, &a.scale(&i)).map_err(&err)?;
        fold(
            &mut worst,
            matrix_residual(&i_scaled.matrix().add(&ia.matrix().scale(&i))),
        );
        // (iI)^2 = -1
        let j = |t: &TangentVector<MachineComplex>| -> Result<TangentVector<MachineComplex>, CheckError> {
            Ok(complex_structure(&c, t).map_err(&err)?.scale(&i))
        };
        let jja = j(&j(&a)?)?;
        fold(&mut worst, matrix_residual(&jja.matrix().add(a.matrix())));
    }
    Ok(worst)
}

fn check_nondegenerate<R: Ring>(ring: &R, cfg: &TrialConfig) -> CheckResult {
    if ring.half().is_none() {
        return Err(CheckError::Unsupported {
            check: CheckName::Nondegenerate,
            ring: cfg.ring.clone(),
        });
    }
    let err = geo(CheckName::Nondegenerate, &cfg.ring);
    let pivot_tol = if ring.exact() { 0.0 } else { 1e-9 };
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let c = adjoined_cover(ring, cfg.n, &mut rng)?;
        // pick a basis downstairs, then push into the extension
        let base_q = ProjectionPoint::new(
            c.q_matrix()
                .map_entries(ring.clone(), |e| c.ring().constant_part(e)),
        )
        .map_err(|_| CheckError::Sampling)?;
        let span = tangent_span(&base_q);
        let chosen = select_independent(ring, &span, pivot_tol);
        if chosen.len() != 2 * (cfg.n - 1) {
            fold(&mut worst, 1.0);
            continue;
        }
        let ext = c.ring().clone();
        let basis: Vec<TangentVector<_>> = chosen
            .iter()
            .map(|&k| {
                TangentVector::with_tol(c.point(), lift_matrix(&ext, &span[k]), cfg.tol)
                    .expect("tangency survives extension")
            })
            .collect();
        let gram = h_tilde_gram(&c, &basis).map_err(&err)?;
        let det = gram.determinant().expect("extension stays commutative");
        if ring.exact() {
            if ext.is_zero(&det) {
                fold(&mut worst, 1.0);
            }
        } else if ext.magnitude(&det) <= 1e-10 {
            fold(&mut worst, 1.0);
        }
    }
    Ok(worst)
}

fn check_positive_definite_machine(cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let c = machine_cover(cfg.n, &mut rng)?;
        let mut a = sample_tangent(c.point(), &mut rng);
        while a.matrix().max_magnitude() < 1e-2 {
            a = sample_tangent(c.point(), &mut rng);
        }
        let v = re_h_tilde(&c, &a, &a);
        if v <= 0.0 {
            fold(&mut worst, 1.0 + (-v));
        }
    }
    Ok(worst)
}

fn check_nijenhuis_machine(cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let c = machine_cover(cfg.n, &mut rng)?;
        let a = sample_tangent(c.point(), &mut rng);
        let b = sample_tangent(c.point(), &mut rng);
        let r = nijenhuis_residual(&c, a.matrix(), b.matrix(), cfg.step);
        fold(&mut worst, r);
    }
    Ok(worst)
}

/// Fits the convention constant at the base point and returns
/// `(constant, max relative deviation)` over the sampled points.
pub fn potential_metric_comparison(
    n: usize,
    points: u32,
    seed: u64,
    step: f64,
) -> Result<(f64, f64), CheckError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = ProjectionPoint::base_point(MachineComplex, n);
    let base_cover = CoverPoint::lift(base.clone(), Sign::Plus).map_err(|_| CheckError::Sampling)?;
    let e12 = TangentVector::new(&base, Matrix::unit(MachineComplex, n, 0, 1))
        .expect("matrix unit is tangent at the base point");
    let m0 = potential_hessian_form(base.matrix(), e12.matrix(), e12.matrix(), step);
    let h0 = re_h_tilde(&base_cover, &e12, &e12);
    if h0.abs() < 1e-12 {
        return Err(CheckError::BadConfig("degenerate base direction"));
    }
    let constant = m0 / h0;

    let mut max_dev = 0.0f64;
    for _ in 0..points {
        let c = machine_cover(n, &mut rng)?;
        let a = sample_tangent(c.point(), &mut rng);
        let b = sample_tangent(c.point(), &mut rng);
        for (u, v) in [(&a, &a), (&a, &b), (&b, &b)] {
            let m = potential_hessian_form(c.q_matrix(), u.matrix(), v.matrix(), step);
            let h = constant * re_h_tilde(&c, u, v);
            let denom = m.abs().max(h.abs());
            if denom < 1e-9 {
                continue;
            }
            let dev = (m - h).abs() / denom;
            if dev > max_dev {
                max_dev = dev;
            }
        }
    }
    Ok((constant, max_dev))
}

fn check_potential_metric_machine(cfg: &TrialConfig) -> CheckResult {
    let (_, dev) = potential_metric_comparison(cfg.n, cfg.trials, cfg.seed, cfg.step)?;
    Ok(dev)
}

/// Hilbert spaces exercised by the embedding checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedSpace {
    Real(usize),
    Complex(usize),
    Quaternionic(usize),
    /// `M_n(C)` with the Hilbert-Schmidt inner product.
    MatrixComplex(usize),
}

impl fmt::Display for EmbedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedSpace::Real(k) => write!(f, "real:{k}"),
            EmbedSpace::Complex(k) => write!(f, "complex:{k}"),
            EmbedSpace::Quaternionic(k) => write!(f, "quaternionic:{k}"),
            EmbedSpace::MatrixComplex(n) => write!(f, "matrix-complex:{n}"),
        }
    }
}

fn embed_residual_generic<S: HScalar>(k: usize, points: u32, rng: &mut dyn RngCore, step: f64) -> f64 {
    let mut worst = 0.0;
    for _ in 0..points {
        let mut x: Vec<S> = (0..k).map(|_| S::sample(rng)).collect();
        while embedding::norm(&x) < 0.5 {
            x = (0..k).map(|_| S::sample(rng)).collect();
        }
        let v: Vec<S> = (0..k).map(|_| S::sample(rng)).collect();
        let w: Vec<S> = (0..k).map(|_| S::sample(rng)).collect();
        let r = pullback_residual(&x, &v, &w, step).expect("base point is nonzero");
        fold(&mut worst, r);
    }
    worst
}

/// Finite-difference isometry residual for the weighted embedding of the
/// given space.
pub fn embed_pullback_residual(space: EmbedSpace, points: u32, seed: u64, step: f64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match space {
        EmbedSpace::Real(k) => embed_residual_generic::<f64>(k, points, &mut rng, step),
        EmbedSpace::Complex(k) => embed_residual_generic::<Complex64>(k, points, &mut rng, step),
        EmbedSpace::Quaternionic(k) => embed_residual_generic::<Quat>(k, points, &mut rng, step),
        EmbedSpace::MatrixComplex(n) => {
            embed_residual_generic::<Complex64>(n * n, points, &mut rng, step)
        }
    }
}

fn check_variety_machine(cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let q = sample_projection_unit(&MachineComplex, cfg.n, &mut rng)
            .map_err(|_| CheckError::Sampling)?;
        for sheet in [Sign::Plus, Sign::Minus] {
            let t = embed_projection(&q, sheet);
            fold(&mut worst, variety_residuals(&t, sheet).max());
        }
    }
    Ok(worst)
}

fn check_variety_roundtrip(cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let q = sample_projection_unit(&MachineComplex, cfg.n, &mut rng)
            .map_err(|_| CheckError::Sampling)?;
        for sheet in [Sign::Plus, Sign::Minus] {
            let t = embed_projection(&q, sheet);
            let back = variety_to_projection(&t, 1e-8).map_err(|_| CheckError::Sampling)?;
            let again = embed_projection(&back, sheet);
            fold(&mut worst, t.distance(&again));
            fold(&mut worst, back.matrix().distance(q.matrix()));
        }
    }
    Ok(worst)
}

fn check_two_sheets(cfg: &TrialConfig) -> CheckResult {
    let mut rng = rng_for(cfg);
    let mut worst = 0.0;
    for _ in 0..cfg.trials {
        let q = sample_projection_unit(&MachineComplex, cfg.n, &mut rng)
            .map_err(|_| CheckError::Sampling)?;
        let plus = embed_projection(&q, Sign::Plus);
        let minus = embed_projection(&q, Sign::Minus);
        // sheets are separated by the sign of x, which is bounded away from 0
        if plus.x <= 0.0 || minus.x >= 0.0 {
            fold(&mut worst, 1.0);
        }
        fold(&mut worst, plus.negate().distance(&minus));
    }
    Ok(worst)
}

/// Counts rank-1 projections over a field by matrix rank and idempotency,
/// a route independent of the ideal generators.
pub fn independent_field_count(p: u64, n: usize) -> u128 {
    let field = Zmod::new(p);
    let elems = field.elements().expect("finite");
    let cells = n * n;
    let mut digits = vec![0usize; cells];
    let mut count: u128 = 0;
    loop {
        let m = Matrix::from_fn(field, n, n, |i, j| elems[digits[i * n + j]]);
        if m.mul(&m) == m {
            let rows: Vec<Matrix<Zmod>> = (0..n)
                .map(|i| Matrix::from_fn(field, 1, n, |_, j| *m.get(i, j)))
                .collect();
            if select_independent(&field, &rows, 0.0).len() == 1 {
                count += 1;
            }
        }
        let mut k = cells;
        loop {
            if k == 0 {
                return count;
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

fn check_enumeration(cfg: &TrialConfig) -> CheckResult {
    let (m, frozen): (u64, Option<u128>) = match cfg.ring {
        RingTag::Fp(p) => (
            p,
            match (p, cfg.n) {
                (2, 2) => Some(6),
                (3, 2) => Some(12),
                (5, 2) => Some(30),
                _ => None,
            },
        ),
        RingTag::Zmod(m) => (m, if (m, cfg.n) == (6, 2) { Some(72) } else { None }),
        _ => {
            return Err(CheckError::Unsupported {
                check: CheckName::Enumeration,
                ring: cfg.ring.clone(),
            })
        }
    };
    let ring = Zmod::new(m);
    let count = enumerate_rank1(&ring, cfg.n, DEFAULT_ENUM_BUDGET)
        .map_err(|_| CheckError::BadConfig("enumeration budget exceeded"))?
        .len() as u128;

    // independent route: field rank scan, multiplied over prime factors
    let mut independent: u128 = 1;
    let mut rest = m;
    let mut p = 2u64;
    while rest > 1 {
        if rest % p == 0 {
            let mut power = 1u64;
            while rest % p == 0 {
                rest /= p;
                power *= p;
            }
            if power == p {
                independent *= independent_field_count(p, cfg.n);
            } else {
                // prime powers fall back to the generator route
                independent *= enumerate_rank1(&Zmod::new(power), cfg.n, DEFAULT_ENUM_BUDGET)
                    .map_err(|_| CheckError::BadConfig("enumeration budget exceeded"))?
                    .len() as u128;
            }
        }
        p += 1;
    }

    let mut worst = 0.0;
    if count != independent {
        fold(&mut worst, (count as f64 - independent as f64).abs());
    }
    if let Some(expect) = frozen {
        if count != expect {
            fold(&mut worst, (count as f64 - expect as f64).abs());
        }
    }
    Ok(worst)
}

// --- dispatch -----------------------------------------------------------

macro_rules! over_commutative {
    ($cfg:expr, $check:expr, $f:ident) => {
        match &$cfg.ring {
            RingTag::Rationals => $f(&Rationals, $cfg),
            RingTag::GaussianQ => $f(&GaussianRationals, $cfg),
            RingTag::Bicomplex => $f(&bicomplex(), $cfg),
            RingTag::Split => $f(&split_complex(), $cfg),
            RingTag::Fp(p) => $f(&Zmod::new(*p), $cfg),
            RingTag::Zmod(m) => $f(&Zmod::new(*m), $cfg),
            RingTag::MachineComplex => $f(&MachineComplex, $cfg),
            RingTag::QuaternionQ => Err(CheckError::Unsupported {
                check: $check,
                ring: $cfg.ring.clone(),
            }),
        }
    };
}

fn machine_only(check: CheckName, cfg: &TrialConfig) -> Result<(), CheckError> {
    if cfg.ring == RingTag::MachineComplex {
        Ok(())
    } else {
        Err(CheckError::Unsupported {
            check,
            ring: cfg.ring.clone(),
        })
    }
}

/// Runs one named check under the given configuration. `elapsed_ms` is left
/// at zero; callers with a clock fill it in.
pub fn execute(check: CheckName, cfg: &TrialConfig) -> Result<StructureReport, CheckError> {
    if cfg.trials == 0 {
        return Err(CheckError::BadConfig("trials must be at least 1"));
    }
    if !(cfg.tol > 0.0) {
        return Err(CheckError::BadConfig("tol must be positive"));
    }
    if !(cfg.step > 0.0) {
        return Err(CheckError::BadConfig("step must be positive"));
    }
    if cfg.n < 2 {
        return Err(CheckError::BadConfig("n must be at least 2"));
    }
    let max_residual = match check {
        CheckName::MainIdentity => match &cfg.ring {
            RingTag::QuaternionQ => check_main_identity_quaternion(cfg)?,
            _ => over_commutative!(cfg, check, check_main_identity)?,
        },
        CheckName::ClosedForm => match &cfg.ring {
            RingTag::MachineComplex => check_domega_machine(cfg)?,
            _ => over_commutative!(cfg, check, check_closedness_exact)?,
        },
        CheckName::HCompat => over_commutative!(cfg, check, check_h_compat)?,
        CheckName::CoverEtale => over_commutative!(cfg, check, check_cover_etale)?,
        CheckName::ISquare => over_commutative!(cfg, check, check_i_square)?,
        CheckName::IntertwineBicomplex => {
            over_commutative!(cfg, check, check_intertwine_bicomplex)?
        }
        CheckName::IntertwineI => over_commutative!(cfg, check, check_intertwine_i)?,
        CheckName::Antisymplectic => over_commutative!(cfg, check, check_antisymplectic)?,
        CheckName::Polarization => over_commutative!(cfg, check, check_polarization)?,
        CheckName::QuaternionRelations => {
            machine_only(check, cfg)?;
            check_quaternion_relations_machine(cfg)?
        }
        CheckName::Nondegenerate => over_commutative!(cfg, check, check_nondegenerate)?,
        CheckName::PositiveDefinite => {
            machine_only(check, cfg)?;
            check_positive_definite_machine(cfg)?
        }
        CheckName::Nijenhuis => {
            machine_only(check, cfg)?;
            check_nijenhuis_machine(cfg)?
        }
        CheckName::PotentialMetric => {
            machine_only(check, cfg)?;
            check_potential_metric_machine(cfg)?
        }
        CheckName::EmbedPullback => {
            machine_only(check, cfg)?;
            embed_pullback_residual(
                EmbedSpace::MatrixComplex(cfg.n),
                cfg.trials,
                cfg.seed,
                cfg.step,
            )
        }
        CheckName::Variety => {
            machine_only(check, cfg)?;
            check_variety_machine(cfg)?
        }
        CheckName::VarietyRoundtrip => {
            machine_only(check, cfg)?;
            check_variety_roundtrip(cfg)?
        }
        CheckName::TwoSheets => {
            machine_only(check, cfg)?;
            check_two_sheets(cfg)?
        }
        CheckName::Enumeration => check_enumeration(cfg)?,
    };

    Ok(report_for(check.as_str(), cfg, max_residual))
}

/// Builds a report line with the pass rule: exact rings demand an exactly
/// zero residual, machine rings compare against the tolerance.
pub fn report_for(check: &str, cfg: &TrialConfig, max_residual: f64) -> StructureReport {
    let pass = if cfg.ring.is_exact() {
        max_residual == 0.0
    } else {
        max_residual <= cfg.tol
    };
    StructureReport {
        check: check.to_string(),
        ring: cfg.ring.to_string(),
        n: cfg.n,
        seed: cfg.seed,
        trials: cfg.trials,
        max_residual,
        pass,
        elapsed_ms: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(check: CheckName, cfg: TrialConfig) -> StructureReport {
        execute(check, &cfg).unwrap()
    }

    #[test]
    fn exact_checks_pass_on_small_samples() {
        for check in [
            CheckName::MainIdentity,
            CheckName::ClosedForm,
            CheckName::HCompat,
            CheckName::CoverEtale,
            CheckName::ISquare,
            CheckName::IntertwineBicomplex,
            CheckName::IntertwineI,
            CheckName::Antisymplectic,
            CheckName::Polarization,
            CheckName::Nondegenerate,
        ] {
            let cfg = TrialConfig::new(RingTag::GaussianQ, 2).trials(5).seed(11);
            let rep = run(check, cfg);
            assert!(rep.pass, "{check} failed: {rep:?}");
            assert_eq!(rep.max_residual, 0.0);
        }
    }

    #[test]
    fn split_intertwine_is_exact() {
        let cfg = TrialConfig::new(RingTag::Split, 2).trials(5).seed(23);
        let rep = run(CheckName::IntertwineBicomplex, cfg);
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.max_residual, 0.0);
    }

    #[test]
    fn quaternion_main_identity_is_exact() {
        let cfg = TrialConfig::new(RingTag::QuaternionQ, 2).trials(5).seed(3);
        let rep = run(CheckName::MainIdentity, cfg);
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.max_residual, 0.0);
    }

    #[test]
    fn machine_checks_pass_within_tolerance() {
        let cfg = TrialConfig::new(RingTag::MachineComplex, 2)
            .trials(5)
            .seed(5);
        let rep = run(CheckName::QuaternionRelations, cfg);
        assert!(rep.pass, "{rep:?}");

        let cfg = TrialConfig::new(RingTag::MachineComplex, 2)
            .trials(5)
            .seed(5)
            .tol(1e-6);
        let rep = run(CheckName::ClosedForm, cfg);
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn unsupported_combinations_are_refused() {
        let cfg = TrialConfig::new(RingTag::QuaternionQ, 2);
        assert!(matches!(
            execute(CheckName::Antisymplectic, &cfg),
            Err(CheckError::Unsupported { .. })
        ));
        let cfg = TrialConfig::new(RingTag::GaussianQ, 2);
        assert!(matches!(
            execute(CheckName::Nijenhuis, &cfg),
            Err(CheckError::Unsupported { .. })
        ));
        // no half over Z/2
        let cfg = TrialConfig::new(RingTag::Fp(2), 2);
        assert!(matches!(
            execute(CheckName::CoverEtale, &cfg),
            Err(CheckError::Unsupported { .. })
        ));
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = TrialConfig::new(RingTag::GaussianQ, 2).trials(4).seed(99);
        let a = execute(CheckName::MainIdentity, &cfg).unwrap();
        let b = execute(CheckName::MainIdentity, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn enumeration_check_agrees_with_frozen_counts() {
        for (ring, expect) in [
            (RingTag::Fp(2), 6u128),
            (RingTag::Fp(3), 12),
            (RingTag::Zmod(6), 72),
        ] {
            let cfg = TrialConfig::new(ring.clone(), 2);
            let rep = execute(CheckName::Enumeration, &cfg).unwrap();
            assert!(rep.pass, "{ring}: {rep:?}");
            let _ = expect;
        }
    }
}
