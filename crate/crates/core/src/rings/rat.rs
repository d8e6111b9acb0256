//! Hybrid exact rational: machine-word fast path with arbitrary-precision
//! spill.
//!
//! Verification workloads multiply thousands of small integers per trial;
//! routing them through heap-allocated bignums dominates the runtime. A
//! `Rat` keeps `num/den` in `i64` (reduced, `den > 0`) and promotes to
//! `BigRational` only when an intermediate leaves the 64-bit range, so
//! results are always exact and representations canonical: any value that
//! fits the small form is stored in it.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

/// Exact rational number in canonical form.
#[derive(Clone)]
pub struct Rat(Repr);

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn small_from_i128(num: i128, den: i128) -> Option<Rat> {
    debug_assert!(den != 0);
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let g = gcd_i128(num, den);
    let (num, den) = if g > 1 { (num / g, den / g) } else { (num, den) };
    let num = i64::try_from(num).ok()?;
    let den = i64::try_from(den).ok()?;
    Some(Rat(Repr::Small { num, den }))
}

fn demote(big: BigRational) -> Rat {
    if let (Some(num), Some(den)) = (big.numer().to_i64(), big.denom().to_i64()) {
        Rat(Repr::Small { num, den })
    } else {
        Rat(Repr::Big(big))
    }
}

fn big_of(r: &Rat) -> BigRational {
    match &r.0 {
        Repr::Small { num, den } => BigRational::new(BigInt::from(*num), BigInt::from(*den)),
        Repr::Big(b) => b.clone(),
    }
}

impl Rat {
    pub fn zero() -> Rat {
        Rat(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Rat {
        Rat(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_i64(n: i64) -> Rat {
        Rat(Repr::Small { num: n, den: 1 })
    }

    /// `num/den` in lowest terms; `den` must be nonzero.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        small_from_i128(num as i128, den as i128)
            .expect("i64 inputs reduce within range")
    }

    pub fn from_big(b: BigRational) -> Rat {
        demote(b)
    }

    pub fn to_big(&self) -> BigRational {
        big_of(self)
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num == 0,
            Repr::Big(b) => b.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn add(&self, other: &Rat) -> Rat {
        if let (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) =
            (&self.0, &other.0)
        {
            let num = *n1 as i128 * *d2 as i128 + *n2 as i128 * *d1 as i128;
            let den = *d1 as i128 * *d2 as i128;
            if let Some(r) = small_from_i128(num, den) {
                return r;
            }
        }
        demote(big_of(self) + big_of(other))
    }

    pub fn sub(&self, other: &Rat) -> Rat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Rat {
        match &self.0 {
            Repr::Small { num, den } => {
                if let Some(n) = num.checked_neg() {
                    Rat(Repr::Small { num: n, den: *den })
                } else {
                    demote(-big_of(self))
                }
            }
            Repr::Big(b) => demote(-b.clone()),
        }
    }

    pub fn mul(&self, other: &Rat) -> Rat {
        if let (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) =
            (&self.0, &other.0)
        {
            // cross-reduce before multiplying to keep intermediates small
            let g1 = gcd_i128(*n1 as i128, *d2 as i128).max(1);
            let g2 = gcd_i128(*n2 as i128, *d1 as i128).max(1);
            let num = (*n1 as i128 / g1) * (*n2 as i128 / g2);
            let den = (*d1 as i128 / g2) * (*d2 as i128 / g1);
            if let Some(r) = small_from_i128(num, den) {
                return r;
            }
        }
        demote(big_of(self) * big_of(other))
    }

    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        match &self.0 {
            Repr::Small { num, den } => {
                Some(small_from_i128(*den as i128, *num as i128).expect("i64 swap stays in range"))
            }
            Repr::Big(b) => Some(demote(b.recip())),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    /// Exact square root when the value is a perfect square.
    pub fn sqrt(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Rat::zero());
        }
        let b = big_of(self);
        let ns = b.numer().sqrt();
        let ds = b.denom().sqrt();
        if &(&ns * &ns) == b.numer() && &(&ds * &ds) == b.denom() {
            Some(demote(BigRational::new(ns, ds)))
        } else {
            None
        }
    }

    /// Parses `"n"` or `"n/d"` in decimal.
    pub fn parse(s: &str) -> Option<Rat> {
        let b: BigRational = s.parse().ok()?;
        Some(demote(b))
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) => {
                n1 == n2 && d1 == d2
            }
            (Repr::Big(a), Repr::Big(b)) => a == b,
            // canonical form: a value fitting i64 is always Small
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if self.sub(other).is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den } => {
                if *den == 1 {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}/{den}")
                }
            }
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_i64(n)
    }
}

impl core::str::FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Rat, String> {
        Rat::parse(s).ok_or_else(|| String::from("invalid rational"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_reduces() {
        let a = Rat::new(1, 2);
        let b = Rat::new(1, 3);
        assert_eq!(a.add(&b), Rat::new(5, 6));
        assert_eq!(a.mul(&b), Rat::new(1, 6));
        assert_eq!(a.sub(&a), Rat::zero());
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(3, -6), Rat::new(-1, 2));
        assert_eq!(a.recip(), Some(Rat::from_i64(2)));
        assert_eq!(Rat::zero().recip(), None);
    }

    #[test]
    fn promotion_and_demotion_round_trip() {
        let big = Rat::from_i64(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq.0, Repr::Big(_)));
        // dividing back down demotes to the small representation
        let back = sq.mul(&big.recip().unwrap());
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
    }

    #[test]
    fn overflow_addition_is_exact() {
        let a = Rat::from_i64(i64::MAX);
        let two = a.add(&a);
        let expect = BigRational::from_integer(BigInt::from(i64::MAX) * 2);
        assert_eq!(two.to_big(), expect);
    }

    #[test]
    fn square_roots() {
        assert_eq!(Rat::new(9, 4).sqrt(), Some(Rat::new(3, 2)));
        assert_eq!(Rat::from_i64(2).sqrt(), None);
        assert_eq!(Rat::from_i64(-4).sqrt(), None);
        assert_eq!(Rat::zero().sqrt(), Some(Rat::zero()));
        // perfect square above the small range
        let huge = Rat::from_i64(i64::MAX).mul(&Rat::from_i64(i64::MAX));
        assert_eq!(huge.sqrt(), Some(Rat::from_i64(i64::MAX)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(Rat::parse("-3/2"), Some(Rat::new(-3, 2)));
        assert_eq!(Rat::parse("7"), Some(Rat::from_i64(7)));
        assert_eq!(Rat::parse("x"), None);
        let mut s = String::new();
        core::fmt::write(&mut s, format_args!("{}", Rat::new(-3, 2))).unwrap();
        assert_eq!(s, "-3/2");
    }

    #[test]
    fn ordering() {
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
        assert!(Rat::from_i64(-1) < Rat::zero());
    }
}
