//! Exact rational scalars.
//!
//! Every numeric value in the kernel is a [`Scalar`]: an arbitrary-precision
//! rational kept in canonical reduced form (gcd(num, den) = 1, den > 0).
//! There is no floating point anywhere; identities can be asserted with
//! zero tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number. Wraps `BigRational`, which maintains the
/// canonical reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q`; panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_bigints(p: BigInt, q: BigInt) -> Self {
        assert!(!q.is_zero(), "zero denominator");
        Scalar(BigRational::new(p, q))
    }

    /// 2^k for any integer k (negative k gives 2^-|k|).
    pub fn two_pow(k: i64) -> Self {
        let one = BigInt::one();
        if k >= 0 {
            Scalar(BigRational::from_integer(one << (k as usize)))
        } else {
            Scalar(BigRational::new(one.clone(), one << ((-k) as usize)))
        }
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Scalar(self.0.recip())
    }

    /// Integer power with arbitrary sign of the exponent.
    pub fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return Scalar::one();
        }
        assert!(!self.is_zero() || exp > 0, "zero to a negative power");
        let mag = self.0.pow(exp.unsigned_abs().try_into().expect("exponent too large"));
        if exp > 0 {
            Scalar(mag)
        } else {
            Scalar(mag.recip())
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Exact square root, if the value is a perfect square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.0.numer().sqrt();
        let d = self.0.denom().sqrt();
        if &(&n * &n) == self.0.numer() && &(&d * &d) == self.0.denom() {
            Some(Scalar(BigRational::new(n, d)))
        } else {
            None
        }
    }

    /// Decimal approximation with `sig` significant digits, suitable for CSV
    /// output. Rounds half away from zero.
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let n = self.0.numer().abs();
        let d = self.0.denom().clone();
        // exponent e with 10^e <= n/d < 10^(e+1)
        let ten = BigInt::from(10);
        let mut e: i64 = 0;
        let mut lo = n.clone();
        let mut hi = d.clone();
        // scale lo/hi into [1, 10)
        while lo < hi {
            lo *= &ten;
            e -= 1;
        }
        while lo >= &hi * &ten {
            hi *= &ten;
            e += 1;
        }
        // digits = round(n/d * 10^(sig-1-e))
        let shift = sig as i64 - 1 - e;
        let (num, den) = if shift >= 0 {
            (n * ten.pow(shift as u32), d)
        } else {
            (n, d * ten.pow((-shift) as u32))
        };
        let mut digits = (&num * 2u32 + &den) / (&den * 2u32); // round half up
        let mut e = e;
        let bound = ten.pow(sig as u32);
        if digits >= bound {
            digits /= &ten;
            e += 1;
        }
        let mut ds = digits.to_string();
        debug_assert_eq!(ds.len(), sig);
        // trim trailing zeros of the mantissa
        while ds.len() > 1 && ds.ends_with('0') {
            ds.pop();
        }
        let mantissa_len = ds.len() as i64;
        let body = if e >= 0 && e < 18 {
            if mantissa_len > e + 1 {
                format!("{}.{}", &ds[..=(e as usize)], &ds[(e as usize + 1)..])
            } else {
                let zeros = (e + 1 - mantissa_len) as usize;
                format!("{}{}", ds, "0".repeat(zeros))
            }
        } else if e < 0 && e >= -6 {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), ds)
        } else {
            // scientific notation for extreme magnitudes
            if mantissa_len > 1 {
                format!("{}.{}e{}", &ds[..1], &ds[1..], e)
            } else {
                format!("{}e{}", ds, e)
            }
        };
        if neg {
            format!("-{}", body)
        } else {
            body
        }
    }

    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Error parsing a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseScalarError(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar(BigRational::new(p, q)))
            }
            None => {
                let p: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Scalar(BigRational::from_integer(p)))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(self.0 / rhs.0)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

/// Total order delegating to the exact rational comparison.
pub fn cmp(a: &Scalar, b: &Scalar) -> Ordering {
    a.cmp(b)
}
