//! Exact rationals and rational enclosures.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value
//! reduced with a positive denominator. `Enclosure` is a closed interval
//! `[lo, hi]` with rational endpoints certifying where a real quantity lies.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn uint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, n.clone()))
}

/// Parses `"p/q"` or an integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected a rational p/q, got {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Reduced `"p/q"` rendering; integers render as `"p/1"`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Decimal rendering with `places` fractional digits, rounded to nearest
/// (ties away from zero), trailing zeros trimmed. Display only.
pub fn format_decimal(q: &Rational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = q.abs() * Rational::from_integer(scale.clone());
    let two = BigInt::from(2);
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    let rounded = if rem * &two >= *scaled.denom() {
        quot + 1
    } else {
        quot
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = format!("{:0>width$}", frac_part.to_string(), width = places);
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil(q: &Rational) -> BigInt {
    -(-q.numer()).div_floor(q.denom())
}

/// Closed rational interval `[lo, hi]` containing a real quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!(
                "enclosure bounds out of order: {} > {}",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Enclosure { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    /// Interval spanned by two values in either order.
    pub fn hull(a: Rational, b: Rational) -> Self {
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `k * self + c` for an exact scale `k` and shift `c`.
    pub fn affine(&self, k: &Rational, c: &Rational) -> Enclosure {
        Enclosure::hull(k * &self.lo + c, k * &self.hi + c)
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// Lower bound as `f64`, for display and loose comparisons only.
    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", format_rational(&self.lo))
        } else {
            write!(
                f,
                "[{}, {}]",
                format_rational(&self.lo),
                format_rational(&self.hi)
            )
        }
    }
}

/// Places used for the display-only decimals next to exact JSON bounds.
pub const JSON_DECIMALS: usize = 20;

impl Serialize for Enclosure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Enclosure", 4)?;
        st.serialize_field("lo", &format_rational(&self.lo))?;
        st.serialize_field("hi", &format_rational(&self.hi))?;
        st.serialize_field("loDecimal", &format_decimal(&self.lo, JSON_DECIMALS))?;
        st.serialize_field("hiDecimal", &format_decimal(&self.hi, JSON_DECIMALS))?;
        st.end()
    }
}

/// Nearest-ish `f64` of a rational of any size. Display only.
pub fn to_f64(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    // Keep 64 significant bits of the quotient before converting.
    let num_bits = q.numer().bits() as i64;
    let den_bits = q.denom().bits() as i64;
    let shift = 64 - (num_bits - den_bits);
    let scaled = if shift >= 0 {
        (q.numer() << shift as usize) / q.denom()
    } else {
        q.numer() / (q.denom() << (-shift) as usize)
    };
    let mantissa: f64 = scaled.to_string().parse().unwrap_or(f64::NAN);
    mantissa * 2f64.powi(-shift as i32)
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}
