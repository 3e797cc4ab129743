//! Exact rational numbers.
//!
//! [`Rat`] wraps [`num_rational::BigRational`], which already keeps values in
//! lowest terms with a positive denominator. The wrapper pins down the text
//! form used everywhere in the artifact: `"numerator/denominator"`, always with
//! an explicit denominator, so that serialized documents are canonical.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Rat {
        assert!(!den.is_zero(), "zero denominator");
        Rat(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// `self / 2`.
    pub fn half(&self) -> Rat {
        Rat(&self.0 / BigInt::from(2))
    }

    pub fn mul_int(&self, k: i64) -> Rat {
        Rat(&self.0 * BigInt::from(k))
    }

    pub fn div_int(&self, k: i64) -> Rat {
        assert!(k != 0, "division by zero");
        Rat(&self.0 / BigInt::from(k))
    }

    /// `base^exp` for a non-negative exponent.
    pub fn pow(&self, exp: u32) -> Rat {
        Rat(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn in_unit(&self) -> bool {
        !self.0.is_negative() && self.0 <= BigRational::one()
    }

    /// Lossy conversion for plotting and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Digits in the denominator; a cheap proxy for representation size.
    pub fn denom_bits(&self) -> u64 {
        self.0.denom().bits()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Rat {
        Rat(r)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `"n"` and `"n/d"` with optional leading sign on `n`.
    fn from_str(s: &str) -> Result<Rat, Error> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let parse_int = |p: &str| -> Result<BigInt, Error> {
            let p = p.trim();
            let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            p.parse::<BigInt>().map_err(|_| bad())
        };
        match t.split_once('/') {
            None => Ok(Rat(BigRational::from_integer(parse_int(t)?))),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rat(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat($tr::$m(self.0, rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat($tr::$m(self.0, &rhs.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat($tr::$m(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// Shorthand for building rationals in tests and examples: `rat(1, 3)`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_is_always_a_fraction() {
        assert_eq!(rat(2, 3).to_string(), "2/3");
        assert_eq!(rat(-1, 8).to_string(), "-1/8");
        assert_eq!(rat(4, 2).to_string(), "2/1");
        assert_eq!(Rat::zero().to_string(), "0/1");
    }

    #[test]
    fn parse_accepts_integers_and_reduces() {
        assert_eq!("3".parse::<Rat>().unwrap(), rat(3, 1));
        assert_eq!("6/8".parse::<Rat>().unwrap(), rat(3, 4));
        assert_eq!("-1/8".parse::<Rat>().unwrap(), rat(-1, 8));
        assert_eq!("1/-2".parse::<Rat>().unwrap(), rat(-1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a/2", "1.5", "1//2", "/3", "2/"] {
            assert!(s.parse::<Rat>().is_err(), "{s:?} parsed");
        }
    }

    #[test]
    fn serde_uses_strings() {
        let j = serde_json::to_string(&vec![rat(1, 3), rat(-5, 1)]).unwrap();
        assert_eq!(j, r#"["1/3","-5/1"]"#);
        let back: Vec<Rat> = serde_json::from_str(&j).unwrap();
        assert_eq!(back, vec![rat(1, 3), rat(-5, 1)]);
    }

    #[test]
    fn huge_values_round_trip() {
        let big = rat(1, 3).pow(200) + rat(7, 11);
        let back: Rat = big.to_string().parse().unwrap();
        assert_eq!(back, big);
    }
}
