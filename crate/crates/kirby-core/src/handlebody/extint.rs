//! Integers extended by an explicit "unknown" value.
//!
//! Figures fix framings and linking numbers that plain text does not; the
//! engine carries those as [`ExtInt::Unknown`] instead of guessing. Unknown
//! is absorbing under arithmetic and *never* compares equal to anything,
//! itself included.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// An integer that may be undetermined.
#[derive(Debug, Clone)]
pub enum ExtInt {
    Known(BigInt),
    Unknown,
}

impl ExtInt {
    pub fn known(v: impl Into<BigInt>) -> Self {
        ExtInt::Known(v.into())
    }

    pub fn zero() -> Self {
        ExtInt::Known(BigInt::zero())
    }

    pub fn is_known(&self) -> bool {
        matches!(self, ExtInt::Known(_))
    }

    pub fn as_known(&self) -> Option<&BigInt> {
        match self {
            ExtInt::Known(v) => Some(v),
            ExtInt::Unknown => None,
        }
    }

    /// True when this is a known zero.
    pub fn is_known_zero(&self) -> bool {
        matches!(self, ExtInt::Known(v) if v.is_zero())
    }

    /// Structural equality, where `Unknown` matches `Unknown`.
    ///
    /// `==` implements the *logical* reading (comparisons against Unknown are
    /// indeterminate, hence false); serialization round-trips and validation
    /// need the representational reading instead.
    pub fn repr_eq(&self, other: &ExtInt) -> bool {
        match (self, other) {
            (ExtInt::Known(a), ExtInt::Known(b)) => a == b,
            (ExtInt::Unknown, ExtInt::Unknown) => true,
            _ => false,
        }
    }
}

impl PartialEq for ExtInt {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExtInt::Known(a), ExtInt::Known(b)) => a == b,
            // indeterminate, never true
            _ => false,
        }
    }
}

impl From<BigInt> for ExtInt {
    fn from(v: BigInt) -> Self {
        ExtInt::Known(v)
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Known(BigInt::from(v))
    }
}

impl Add for &ExtInt {
    type Output = ExtInt;
    fn add(self, rhs: &ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Known(a), ExtInt::Known(b)) => ExtInt::Known(a + b),
            _ => ExtInt::Unknown,
        }
    }
}

impl Sub for &ExtInt {
    type Output = ExtInt;
    fn sub(self, rhs: &ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Known(a), ExtInt::Known(b)) => ExtInt::Known(a - b),
            _ => ExtInt::Unknown,
        }
    }
}

impl Mul for &ExtInt {
    type Output = ExtInt;
    fn mul(self, rhs: &ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Known(a), ExtInt::Known(b)) => ExtInt::Known(a * b),
            _ => ExtInt::Unknown,
        }
    }
}

impl Mul<&BigInt> for &ExtInt {
    type Output = ExtInt;
    fn mul(self, rhs: &BigInt) -> ExtInt {
        match self {
            ExtInt::Known(a) => ExtInt::Known(a * rhs),
            ExtInt::Unknown => ExtInt::Unknown,
        }
    }
}

impl Neg for &ExtInt {
    type Output = ExtInt;
    fn neg(self) -> ExtInt {
        match self {
            ExtInt::Known(a) => ExtInt::Known(-a),
            ExtInt::Unknown => ExtInt::Unknown,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Known(v) => write!(f, "{v}"),
            ExtInt::Unknown => write!(f, "?"),
        }
    }
}

impl FromStr for ExtInt {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "?" {
            return Ok(ExtInt::Unknown);
        }
        s.parse::<BigInt>()
            .map(ExtInt::Known)
            .map_err(|_| format!("expected an integer or `?`, got `{s}`"))
    }
}

/// Orientation of a band sum: `+` sums with the given orientation of the
/// target handle, `-` with the reversed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn to_bigint(self) -> BigInt {
        match self {
            Sign::Plus => BigInt::from(1),
            Sign::Minus => BigInt::from(-1),
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of a nonzero integer.
    pub fn of(v: &BigInt) -> Sign {
        if v.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}
