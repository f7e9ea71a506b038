//! Exact signed numbers.
//!
//! A [`Value`] is an unbounded integer. Decimal inputs are carried as integer
//! mantissas that share one power-of-ten scale per instance, so every sum and
//! comparison in the crate is exact.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Value(BigInt);

impl Value {
    pub fn zero() -> Self {
        Value(BigInt::zero())
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Value(v)
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }

    pub fn into_bigint(self) -> BigInt {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Value(self.0.abs())
    }

    /// Sign indicator in {-1, 0, +1}.
    pub fn signum(&self) -> i8 {
        match self.0.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn double(&self) -> Self {
        Value(&self.0 << 1usize)
    }

    pub fn is_even(&self) -> bool {
        self.0.is_even()
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }

    /// Compares `|self|` against `|other|`.
    pub fn cmp_abs(&self, other: &Value) -> Ordering {
        self.0.magnitude().cmp(other.0.magnitude())
    }

    /// Multiplies by `10^exp`.
    pub fn scale_up(&self, exp: u32) -> Self {
        Value(&self.0 * BigInt::from(10u32).pow(exp))
    }

    /// Renders the value as a decimal with exactly `scale_exp` fractional digits.
    pub fn to_decimal_string(&self, scale_exp: u32) -> String {
        if scale_exp == 0 {
            return self.0.to_string();
        }
        let digits = self.0.magnitude().to_string();
        let width = scale_exp as usize;
        let padded = if digits.len() <= width {
            format!("{}{}", "0".repeat(width + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - width);
        let sign = if self.0.is_negative() { "-" } else { "" };
        format!("{sign}{int_part}.{frac_part}")
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(v: $t) -> Self {
                Value(BigInt::from(v))
            }
        }
    )*};
}
from_prim!(i8, i16, i32, i64, i128, u8, u16, u32, u64, u128, usize);

impl From<BigInt> for Value {
    fn from(v: BigInt) -> Self {
        Value(v)
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        Value(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Value> for &'a Value {
    type Output = Value;
    fn add(self, rhs: &'a Value) -> Value {
        Value(&self.0 + &rhs.0)
    }
}

impl Sub for Value {
    type Output = Value;
    fn sub(self, rhs: Value) -> Value {
        Value(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Value> for &'a Value {
    type Output = Value;
    fn sub(self, rhs: &'a Value) -> Value {
        Value(&self.0 - &rhs.0)
    }
}

impl AddAssign<&Value> for Value {
    fn add_assign(&mut self, rhs: &Value) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Value> for Value {
    fn sub_assign(&mut self, rhs: &Value) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value(-self.0)
    }
}

impl Neg for &Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value(-&self.0)
    }
}

impl Mul<&Value> for &Value {
    type Output = Value;
    fn mul(self, rhs: &Value) -> Value {
        Value(&self.0 * &rhs.0)
    }
}

impl<'a> Sum<&'a Value> for Value {
    fn sum<I: Iterator<Item = &'a Value>>(iter: I) -> Value {
        let mut acc = BigInt::zero();
        for v in iter {
            acc += &v.0;
        }
        Value(acc)
    }
}

impl Sum<Value> for Value {
    fn sum<I: Iterator<Item = Value>>(iter: I) -> Value {
        Value(iter.map(|v| v.0).sum())
    }
}
