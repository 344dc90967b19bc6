//! Exact arithmetic over the dyadic rationals Z[1/2].
//!
//! Every coordinate in this crate is a [`Dyadic`]: an arbitrary-precision
//! integer numerator over a power-of-two denominator, kept in canonical form
//! (numerator odd, or exponent zero). There is no floating point and no
//! general division anywhere; halving and doubling shift the exponent.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// A dyadic rational `num / 2^exp` in canonical form.
///
/// Canonical means `num` is odd or `exp == 0`, so structural equality
/// coincides with equality of values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DyadicParseError {
    #[error("malformed dyadic rational: {0:?}")]
    Malformed(String),
    #[error("denominator is not a power of two: {0}")]
    DenominatorNotPowerOfTwo(String),
}

impl Dyadic {
    /// Builds `num / 2^exp`, normalizing to canonical form.
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut d = Dyadic {
            num: num.into(),
            exp,
        };
        d.canonicalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic {
            num: BigInt::from(n),
            exp: 0,
        }
    }

    /// 1 / 2^k.
    pub fn power_of_two(k: i64) -> Self {
        if k >= 0 {
            Dyadic {
                num: BigInt::one() << k as usize,
                exp: 0,
            }
        } else {
            Dyadic {
                num: BigInt::one(),
                exp: (-k) as u32,
            }
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0) as u32;
        let shift = tz.min(self.exp);
        if shift > 0 {
            self.num >>= shift as usize;
            self.exp -= shift;
        }
    }

    pub fn halve(&self) -> Self {
        Dyadic::new(self.num.clone(), self.exp + 1)
    }

    pub fn double(&self) -> Self {
        if self.exp > 0 {
            Dyadic {
                num: self.num.clone(),
                exp: self.exp - 1,
            }
        } else {
            Dyadic {
                num: &self.num * 2,
                exp: 0,
            }
        }
    }

    /// Multiplies by 2^s exactly.
    pub fn times_pow2(&self, s: i64) -> Self {
        if self.num.is_zero() {
            return Dyadic::zero();
        }
        if s >= 0 {
            let s = s as u32;
            if s <= self.exp {
                Dyadic {
                    num: self.num.clone(),
                    exp: self.exp - s,
                }
            } else {
                Dyadic {
                    num: &self.num << (s - self.exp) as usize,
                    exp: 0,
                }
            }
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-s) as u32)
        }
    }

    /// Writes the value as `odd * 2^p`; `None` for zero.
    pub fn pow2_split(&self) -> Option<(BigInt, i64)> {
        if self.num.is_zero() {
            return None;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0) as i64;
        Some((&self.num >> tz as usize, tz - self.exp as i64))
    }

    /// The exponent `s` with `self = 2^s * other`, when it exists.
    pub fn pow2_ratio(&self, other: &Dyadic) -> Option<i64> {
        let (on, pn) = self.pow2_split()?;
        let (od, pd) = other.pow2_split()?;
        if on == od {
            Some(pn - pd)
        } else {
            None
        }
    }

    /// Exact decimal string (every dyadic has a finite decimal expansion).
    pub fn to_decimal_string(&self) -> String {
        if self.exp == 0 {
            return self.num.to_string();
        }
        // num / 2^k = num * 5^k / 10^k
        let scaled: BigInt = &self.num * BigInt::from(5).pow(self.exp);
        let neg = scaled.is_negative();
        let digits = scaled.magnitude().to_string();
        let k = self.exp as usize;
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        if digits.len() > k {
            s.push_str(&digits[..digits.len() - k]);
            s.push('.');
            s.push_str(&digits[digits.len() - k..]);
        } else {
            s.push_str("0.");
            for _ in 0..k - digits.len() {
                s.push('0');
            }
            s.push_str(&digits);
        }
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
        s
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        let a: BigInt = &self.num << (e - self.exp) as usize;
        let b: BigInt = &other.num << (e - other.exp) as usize;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let a: BigInt = &self.num << (e - self.exp) as usize;
        let b: BigInt = &rhs.num << (e - rhs.exp) as usize;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let a: BigInt = &self.num << (e - self.exp) as usize;
        let b: BigInt = &rhs.num << (e - rhs.exp) as usize;
        Dyadic::new(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
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
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp as usize)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Dyadic {
    type Err = DyadicParseError;

    /// Accepts `a` or `a/b` where `b` is a positive power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || DyadicParseError::Malformed(s.to_string());
        match s.split_once('/') {
            None => {
                let num = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Dyadic { num, exp: 0 })
            }
            Some((n, d)) => {
                let num = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let den = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if !den.is_positive() {
                    return Err(bad());
                }
                let tz = den.trailing_zeros().unwrap_or(0);
                if (&den >> tz as usize) != BigInt::one() {
                    return Err(DyadicParseError::DenominatorNotPowerOfTwo(s.to_string()));
                }
                Ok(Dyadic::new(num, tz as u32))
            }
        }
    }
}

/// Shorthand used throughout the tests.
pub fn dy(s: &str) -> Dyadic {
    s.parse().expect("literal dyadic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&dy("1/2") + &dy("1/4"), dy("3/4"));
        assert_eq!(&dy("3/4") * &dy("1/2"), dy("3/8"));
        assert!(dy("7/8") < dy("15/16"));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(dy("3/8").to_string(), "3/8");
        assert_eq!(dy("-6/4").to_string(), "-3/2");
        assert_eq!(dy("4/4").to_string(), "1");
        assert_eq!(dy("0/8"), Dyadic::zero());
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("x".parse::<Dyadic>().is_err());
    }

    #[test]
    fn halve_double_shift() {
        assert_eq!(dy("3/8").halve(), dy("3/16"));
        assert_eq!(dy("3/8").double(), dy("3/4"));
        assert_eq!(dy("5/4").times_pow2(3), dy("10"));
        assert_eq!(dy("5/4").times_pow2(-2), dy("5/16"));
    }

    #[test]
    fn pow2_ratio_detects_slopes() {
        assert_eq!(dy("1/4").pow2_ratio(&dy("1/2")), Some(-1));
        assert_eq!(dy("3/2").pow2_ratio(&dy("3/8")), Some(2));
        assert_eq!(dy("3/4").pow2_ratio(&dy("1/2")), None);
        assert_eq!(dy("-1/2").pow2_ratio(&dy("1/2")), None);
    }

    #[test]
    fn decimal_rendering_is_exact() {
        assert_eq!(dy("3/8").to_decimal_string(), "0.375");
        assert_eq!(dy("-13/16").to_decimal_string(), "-0.8125");
        assert_eq!(dy("2").to_decimal_string(), "2");
    }

    fn arb_dyadic() -> impl Strategy<Value = Dyadic> {
        (-(1i64 << 40)..(1i64 << 40), 0u32..24).prop_map(|(n, e)| Dyadic::new(n, e))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_dyadic(), b in arb_dyadic(), c in arb_dyadic()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn canonical_is_idempotent_and_value_preserving(a in arb_dyadic()) {
            let again = Dyadic::new(a.numerator().clone(), a.exponent());
            prop_assert_eq!(&again, &a);
            prop_assert!(a.numerator().trailing_zeros().unwrap_or(0) == 0 || a.exponent() == 0);
        }

        #[test]
        fn order_agrees_with_subtraction(a in arb_dyadic(), b in arb_dyadic()) {
            let d = &a - &b;
            prop_assert_eq!(a.cmp(&b), d.numerator().cmp(&num_bigint::BigInt::from(0)));
        }

        #[test]
        fn roundtrip_text(a in arb_dyadic()) {
            prop_assert_eq!(a.to_string().parse::<Dyadic>().unwrap(), a);
        }
    }
}
