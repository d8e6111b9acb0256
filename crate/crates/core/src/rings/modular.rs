//! Modular arithmetic `Z/m` with the identity involution, used for
//! exhaustive point counts over finite rings.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zmod {
    m: u64,
}

impl Zmod {
    pub fn new(m: u64) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        Zmod { m }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Reduction map onto `Z/k` for `k` dividing `m`; a ring homomorphism
    /// commuting with the (trivial) involutions.
    pub fn reduce_to(&self, a: &u64, target: &Zmod) -> u64 {
        debug_assert!(self.m % target.m == 0);
        a % target.m
    }
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl Ring for Zmod {
    type Elem = u64;

    fn tag(&self) -> String {
        format!("zmod:{}", self.m)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.m
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.m as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.m - a % self.m) % self.m
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }

    fn star(&self, a: &u64) -> u64 {
        *a
    }

    fn from_i64(&self, n: i64) -> u64 {
        let m = self.m as i128;
        (((n as i128 % m) + m) % m) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        let (g, x, _) = egcd(*a as i128, self.m as i128);
        if g != 1 {
            return None;
        }
        let m = self.m as i128;
        Some((((x % m) + m) % m) as u64)
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

    fn magnitude(&self, a: &u64) -> f64 {
        // symmetric distance to zero in the cyclic group
        core::cmp::min(*a, self.m - *a % self.m) as f64
    }

    fn sample_small(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() % self.m
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.m).collect())
    }

    fn size(&self) -> Option<u128> {
        Some(self.m as u128)
    }
}
