//! Machine-precision complex numbers for numerical verification.

use alloc::string::String;

use num_complex::Complex64;
use rand_core::RngCore;

use super::Ring;

/// `C` at f64 precision, with complex conjugation. Identities over this
/// ring are checked against tolerances supplied by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MachineComplex;

pub(crate) fn unit_f64(rng: &mut dyn RngCore) -> f64 {
    // uniform in [-1, 1] from the top 53 bits
    let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    2.0 * u - 1.0
}

impl Ring for MachineComplex {
    type Elem = Complex64;

    fn tag(&self) -> String {
        String::from("machine-complex")
    }

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }

    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }

    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }

    fn star(&self, a: &Complex64) -> Complex64 {
        a.conj()
    }

    fn from_i64(&self, n: i64) -> Complex64 {
        Complex64::new(n as f64, 0.0)
    }

    fn inv(&self, a: &Complex64) -> Option<Complex64> {
        let n = a.norm_sqr();
        if n == 0.0 || !n.is_finite() {
            None
        } else {
            Some(a.conj() / n)
        }
    }

    fn commutative(&self) -> bool {
        true
    }

    fn exact(&self) -> bool {
        false
    }

    fn magnitude(&self, a: &Complex64) -> f64 {
        a.norm()
    }

    fn sample_small(&self, rng: &mut dyn RngCore) -> Complex64 {
        Complex64::new(unit_f64(rng), unit_f64(rng))
    }

    fn imaginary_unit(&self) -> Option<Complex64> {
        Some(Complex64::new(0.0, 1.0))
    }

    fn sqrt_self_adjoint(&self, a: &Complex64) -> Option<Complex64> {
        if libm::fabs(a.im) <= 1e-12 * (1.0 + libm::fabs(a.re)) && a.re > 0.0 {
            Some(Complex64::new(libm::sqrt(a.re), 0.0))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_positive_reals_only() {
        let m = MachineComplex;
        let r = m.sqrt_self_adjoint(&Complex64::new(2.0, 0.0)).unwrap();
        assert!((r.re - core::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(m.sqrt_self_adjoint(&Complex64::new(-1.0, 0.0)).is_none());
        assert!(m.sqrt_self_adjoint(&Complex64::new(1.0, 0.5)).is_none());
    }

    #[test]
    fn sampling_is_deterministic() {
        use rand_core::SeedableRng;
        let m = MachineComplex;
        let mut r1 = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut r2 = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        assert_eq!(m.sample_small(&mut r1), m.sample_small(&mut r2));
    }
}
