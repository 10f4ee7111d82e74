//! Exact dyadic rationals `mantissa * 2^exponent`.
//!
//! Every value is kept in canonical form: the mantissa is odd, or the value
//! is zero with exponent zero. All arithmetic is exact; nothing here ever
//! rounds implicitly. Rounding is available only through the explicit
//! `floor_at` / `ceil_at` / `round_at` grid operations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ExactError;

/// An exact dyadic rational `mantissa * 2^exponent`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    /// Builds the canonical dyadic for `mantissa * 2^exponent`.
    pub fn new(mantissa: impl Into<BigInt>, exponent: i64) -> Dyadic {
        let mut mantissa: BigInt = mantissa.into();
        let mut exponent = exponent;
        if mantissa.is_zero() {
            return Dyadic {
                mantissa,
                exponent: 0,
            };
        }
        // Shift out trailing zero bits so the mantissa ends up odd.
        let shift = mantissa.trailing_zeros().unwrap_or(0);
        if shift > 0 {
            mantissa >>= shift;
            exponent += shift as i64;
        }
        Dyadic { mantissa, exponent }
    }

    pub fn zero() -> Dyadic {
        Dyadic::new(0, 0)
    }

    pub fn one() -> Dyadic {
        Dyadic::new(1, 0)
    }

    pub fn from_int(v: i64) -> Dyadic {
        Dyadic::new(v, 0)
    }

    /// `2^e`.
    pub fn two_pow(e: i64) -> Dyadic {
        Dyadic::new(1, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Sign as -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        if self.mantissa.is_zero() {
            0
        } else if self.mantissa.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: if self.mantissa.is_zero() {
                0
            } else {
                self.exponent
            },
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    /// Exact halving.
    pub fn half(&self) -> Dyadic {
        self.mul_pow2(-1)
    }

    pub fn min(self, other: Dyadic) -> Dyadic {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Dyadic) -> Dyadic {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << self.exponent as u64
        } else {
            // BigInt shr matches primitive arithmetic shift: floor division.
            &self.mantissa >> (-self.exponent) as u64
        }
    }

    /// Largest multiple of `2^-level` that is `<= self`.
    pub fn floor_at(&self, level: i64) -> Dyadic {
        let scaled = self.mul_pow2(level);
        Dyadic::new(scaled.floor_int(), -level)
    }

    /// Smallest multiple of `2^-level` that is `>= self`.
    pub fn ceil_at(&self, level: i64) -> Dyadic {
        -(-self).floor_at(level)
    }

    /// Nearest multiple of `2^-level`, ties rounded up.
    pub fn round_at(&self, level: i64) -> Dyadic {
        (self + &Dyadic::two_pow(-level - 1)).floor_at(level)
    }

    /// Smallest `k` with `self <= 2^k`; requires a strictly positive value.
    pub fn ceil_log2(&self) -> Result<i64, ExactError> {
        if self.signum() <= 0 {
            return Err(ExactError::NonPositiveLog(self.clone()));
        }
        let bits = self.mantissa.bits() as i64;
        // Canonical mantissa is odd, so it is a power of two only when it is 1.
        if self.mantissa.bits() == 1 {
            Ok(self.exponent)
        } else {
            Ok(self.exponent + bits)
        }
    }

    /// `f64` approximation, for diagnostics only.
    pub fn to_f64_lossy(&self) -> f64 {
        let mut m = 0f64;
        let digits = self.mantissa.to_signed_bytes_be();
        for b in &digits {
            m = m * 256.0 + *b as f64;
        }
        if self.mantissa.is_negative() {
            // two's-complement bytes; easier to redo from magnitude
            let mag = self.mantissa.magnitude();
            let mut v = 0f64;
            for b in mag.to_bytes_be() {
                v = v * 256.0 + b as f64;
            }
            m = -v;
        }
        m * 2f64.powi(self.exponent.clamp(-1022, 1022) as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (0, 0) => Ordering::Equal,
            _ => {
                // Align to the smaller exponent and compare mantissas.
                let e = self.exponent.min(other.exponent);
                let lhs = &self.mantissa << (self.exponent - e) as u64;
                let rhs = &other.mantissa << (other.exponent - e) as u64;
                lhs.cmp(&rhs)
            }
        }
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let lhs = &self.mantissa << (self.exponent - e) as u64;
        let r = &rhs.mantissa << (rhs.exponent - e) as u64;
        Dyadic::new(lhs + r, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: if self.is_zero() { 0 } else { self.exponent },
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: &Dyadic) -> Dyadic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({})", self)
    }
}

impl FromStr for Dyadic {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Dyadic, ExactError> {
        let (m, e) = s
            .split_once("*2^")
            .ok_or_else(|| ExactError::ParseDyadic(s.to_string()))?;
        let mantissa = BigInt::from_str(m.trim()).map_err(|_| ExactError::ParseDyadic(s.to_string()))?;
        let exponent = i64::from_str(e.trim()).map_err(|_| ExactError::ParseDyadic(s.to_string()))?;
        Ok(Dyadic::new(mantissa, exponent))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Dyadic, D::Error> {
        let s = String::deserialize(deserializer)?;
        Dyadic::from_str(&s).map_err(serde::de::Error::custom)
    }
}

/// Exact ratio of two dyadics with a positive denominator.
///
/// Slopes and interpolated values of piecewise-linear data live here; test
/// oracles use it for exact linear solves. The main numeric surfaces stay
/// dyadic.
#[derive(Clone, Debug)]
pub struct DyRatio {
    pub num: Dyadic,
    pub den: Dyadic,
}

impl PartialEq for DyRatio {
    fn eq(&self, other: &DyRatio) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DyRatio {}

impl PartialOrd for DyRatio {
    fn partial_cmp(&self, other: &DyRatio) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyRatio {
    fn cmp(&self, other: &DyRatio) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl DyRatio {
    pub fn new(num: Dyadic, den: Dyadic) -> DyRatio {
        assert!(den.signum() > 0, "DyRatio denominator must be positive");
        DyRatio { num, den }
    }

    pub fn from_dyadic(d: Dyadic) -> DyRatio {
        DyRatio::new(d, Dyadic::one())
    }

    pub fn cmp_dyadic(&self, other: &Dyadic) -> Ordering {
        self.num.cmp(&(other * &self.den))
    }

    /// The exact dyadic value, when the ratio happens to be dyadic.
    pub fn to_dyadic_exact(&self) -> Option<Dyadic> {
        use num_integer::Integer;
        let (q, r) = self.num.mantissa().div_rem(self.den.mantissa());
        if r.is_zero() {
            Some(Dyadic::new(q, self.num.exponent() - self.den.exponent()))
        } else {
            None
        }
    }

    /// Largest multiple of `2^-level` that is `<= self`.
    pub fn floor_at(&self, level: i64) -> Dyadic {
        use num_integer::Integer;
        // floor(num * 2^level / den) * 2^-level
        let shift = level + self.num.exponent() - self.den.exponent();
        let mut n = self.num.mantissa().clone();
        let mut d = self.den.mantissa().clone();
        if shift >= 0 {
            n <<= shift as u64;
        } else {
            d <<= (-shift) as u64;
        }
        Dyadic::new(n.div_floor(&d), -level)
    }

    pub fn ceil_at(&self, level: i64) -> Dyadic {
        -DyRatio::new(-&self.num, self.den.clone()).floor_at(level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(m, e)
    }

    #[test]
    fn canonical_form() {
        let x = d(12, -4); // 12/16 = 3/4 = 3*2^-2
        assert_eq!(x.mantissa(), &BigInt::from(3));
        assert_eq!(x.exponent(), -2);
        let z = d(0, 17);
        assert!(z.is_zero());
        assert_eq!(z.exponent(), 0);
    }

    #[test]
    fn arithmetic_is_exact() {
        // 1/2 + 1/4 = 3/4
        assert_eq!(&d(1, -1) + &d(1, -2), d(3, -2));
        // x * 0 = 0
        assert_eq!(&d(7, -3) * &Dyadic::zero(), Dyadic::zero());
        // cmp is reflexive on equal canonical values
        assert_eq!(d(3, -2).cmp(&d(3, -2)), Ordering::Equal);
        assert_eq!(&d(1, 0) - &d(1, -3), d(7, -3));
    }

    #[test]
    fn ordering_mixed_signs() {
        assert!(d(-1, 10) < d(1, -40));
        assert!(d(5, -3) < d(3, -1));
        assert!(d(1, 2) > d(7, -1));
    }

    #[test]
    fn floor_and_grid_rounding() {
        assert_eq!(d(5, -3).floor_int(), BigInt::from(0));
        assert_eq!(d(-5, -3).floor_int(), BigInt::from(-1));
        assert_eq!(d(9, -2).floor_int(), BigInt::from(2));
        assert_eq!(d(5, -3).floor_at(1), d(1, -1)); // 5/8 -> 1/2
        assert_eq!(d(5, -3).ceil_at(1), d(1, 0)); // 5/8 -> 1
        assert_eq!(d(5, -3).round_at(2), d(3, -2)); // 5/8 -> 3/4 (tie up)
    }

    #[test]
    fn ceil_log2_bounds() {
        assert_eq!(d(1, -3).ceil_log2().unwrap(), -3);
        assert_eq!(d(3, 0).ceil_log2().unwrap(), 2);
        assert_eq!(d(1, 0).ceil_log2().unwrap(), 0);
        assert_eq!(d(5, -1).ceil_log2().unwrap(), 2); // 5/2 <= 4
        assert!(Dyadic::zero().ceil_log2().is_err());
    }

    #[test]
    fn display_round_trip() {
        for v in [d(5, -3), d(-7, 2), Dyadic::zero(), d(1, 0)] {
            let s = v.to_string();
            let back: Dyadic = s.parse().unwrap();
            assert_eq!(back, v);
        }
        assert_eq!(d(5, -3).to_string(), "5*2^-3");
    }

    #[test]
    fn ratio_comparisons() {
        // 1/3 vs dyadic 11/32: 1/3 > 11/32? 32 > 33 no -> 1/3 = 0.3333, 11/32 = 0.34375
        let third = DyRatio::new(Dyadic::one(), d(3, 0));
        assert_eq!(third.cmp_dyadic(&d(11, -5)), Ordering::Less);
        assert_eq!(third.cmp_dyadic(&d(5, -4)), Ordering::Greater); // 5/16
        assert_eq!(third.floor_at(5), d(5, -4)); // floor(32/3)/32 = 10/32 = 5/16
        assert!(third.to_dyadic_exact().is_none());
        let q = DyRatio::new(d(3, -1), d(3, 0)); // (3/2)/3 = 1/2
        assert_eq!(q.to_dyadic_exact().unwrap(), d(1, -1));
    }
}
