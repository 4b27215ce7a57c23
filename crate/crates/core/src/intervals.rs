//! Fundamental intervals `I_sigma`, the affine digit-prepend maps `g_sigma`,
//! child subdivision, and the search for a fundamental interval inside an
//! open interval.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed};
use serde::Serialize;

use crate::digits::{DigitSeq, Tail};
use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::pierce;

/// Set of points whose digit sequence begins with `generator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalInterval {
    generator: DigitSeq,
    left: Rational,
    right: Rational,
    left_open: bool,
    right_open: bool,
}

impl FundamentalInterval {
    pub fn generator(&self) -> &DigitSeq {
        &self.generator
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn left_open(&self) -> bool {
        self.left_open
    }

    pub fn right_open(&self) -> bool {
        self.right_open
    }

    pub fn width(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.left_open {
            *x > self.left
        } else {
            *x >= self.left
        };
        let below = if self.right_open {
            *x < self.right
        } else {
            *x <= self.right
        };
        above && below
    }

    /// Whether the interval lies inside the open interval `(a, b)`.
    pub fn is_within_open(&self, a: &Rational, b: &Rational) -> bool {
        let left_ok = if self.left_open {
            self.left >= *a
        } else {
            self.left > *a
        };
        let right_ok = if self.right_open {
            self.right <= *b
        } else {
            self.right < *b
        };
        left_ok && right_ok
    }

    /// Whether the two intervals share a point.
    pub fn intersects(&self, other: &FundamentalInterval) -> bool {
        let (first, second) = if self.left <= other.left {
            (self, other)
        } else {
            (other, self)
        };
        if first.right > second.left {
            return true;
        }
        first.right == second.left && !first.right_open && !second.left_open
    }

    /// Interval notation with exact endpoints, e.g. `[3/4, 4/5)`.
    pub fn notation(&self) -> String {
        format!(
            "{}{}, {}{}",
            if self.left_open { '(' } else { '[' },
            exact::format_rational(&self.left),
            exact::format_rational(&self.right),
            if self.right_open { ')' } else { ']' }
        )
    }
}

#[derive(Serialize)]
struct IntervalJson {
    generator: String,
    left: String,
    right: String,
    #[serde(rename = "leftOpen")]
    left_open: bool,
    #[serde(rename = "rightOpen")]
    right_open: bool,
}

impl Serialize for FundamentalInterval {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        IntervalJson {
            generator: self.generator.to_string(),
            left: exact::format_rational(&self.left),
            right: exact::format_rational(&self.right),
            left_open: self.left_open,
            right_open: self.right_open,
        }
        .serialize(serializer)
    }
}

fn finite_generator(sigma: &DigitSeq) -> Result<DigitSeq> {
    if sigma.is_empty() {
        return Err(Error::EmptyGenerator);
    }
    Ok(sigma.with_tail(Tail::Terminated))
}

fn bump_last(sigma: &DigitSeq) -> DigitSeq {
    let mut digits = sigma.digits().to_vec();
    if let Some(last) = digits.last_mut() {
        *last += 1u32;
    }
    DigitSeq::terminated(digits).expect("incrementing the last digit keeps the order")
}

pub fn fundamental_interval(sigma: &DigitSeq) -> Result<FundamentalInterval> {
    let generator = finite_generator(sigma)?;
    let at_sigma = pierce::decode(&generator)?;
    let at_bumped = pierce::decode(&bump_last(&generator))?;
    let closed_end = generator.is_canonical();
    let odd = generator.len() % 2 == 1;
    // Odd length: (phi(sigma'), phi(sigma)]; even: [phi(sigma), phi(sigma')).
    let interval = if odd {
        FundamentalInterval {
            left: at_bumped,
            right: at_sigma,
            left_open: true,
            right_open: !closed_end,
            generator,
        }
    } else {
        FundamentalInterval {
            left: at_sigma,
            right: at_bumped,
            left_open: !closed_end,
            right_open: true,
            generator,
        }
    };
    Ok(interval)
}

pub fn contains(sigma: &DigitSeq, x: &Rational) -> Result<bool> {
    Ok(fundamental_interval(sigma)?.contains(x))
}

/// `I_(sigma, j)` for `j` from the last digit plus one through `j_max`.
pub fn children(sigma: &DigitSeq, j_max: &BigUint) -> Result<Vec<FundamentalInterval>> {
    let generator = finite_generator(sigma)?;
    let last = generator.digits().last().expect("non-empty").clone();
    if *j_max <= last {
        return Err(Error::BadRange(format!(
            "j_max {j_max} must exceed the last digit {last}"
        )));
    }
    let mut out = Vec::new();
    let mut j = last + 1u32;
    while j <= *j_max {
        let mut digits = generator.digits().to_vec();
        digits.push(j.clone());
        out.push(fundamental_interval(&DigitSeq::terminated(digits)?)?);
        j += 1u32;
    }
    Ok(out)
}

/// `g_sigma(x) = phi(sigma) + (-1)^n x / (sigma_1 ... sigma_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    generator: DigitSeq,
    offset: Rational,
    slope: Rational,
}

impl AffineMap {
    pub fn new(sigma: &DigitSeq) -> Result<Self> {
        let generator = finite_generator(sigma)?;
        let offset = pierce::decode(&generator)?;
        let product: BigUint = generator.digits().iter().product();
        let sign = if generator.len() % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let slope = Rational::new(sign, BigInt::from_biguint(Sign::Plus, product));
        Ok(AffineMap {
            generator,
            offset,
            slope,
        })
    }

    pub fn generator(&self) -> &DigitSeq {
        &self.generator
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn apply(&self, x: &Rational) -> Result<Rational> {
        if x.is_negative() || *x > exact::int(1) {
            return Err(Error::OutOfDomain(format!(
                "{} is outside [0, 1]",
                exact::format_rational(x)
            )));
        }
        Ok(&self.offset + &self.slope * x)
    }

    /// Inverse on the image `g_sigma([0, 1])`.
    pub fn invert(&self, y: &Rational) -> Result<Rational> {
        let x = (y - &self.offset) / &self.slope;
        if x.is_negative() || x > exact::int(1) {
            return Err(Error::NotInImage(exact::format_rational(y)));
        }
        Ok(x)
    }
}

pub fn affine_apply(sigma: &DigitSeq, x: &Rational) -> Result<Rational> {
    AffineMap::new(sigma)?.apply(x)
}

pub fn affine_invert(sigma: &DigitSeq, y: &Rational) -> Result<Rational> {
    AffineMap::new(sigma)?.invert(y)
}

/// A generator whose fundamental interval lies inside `(a, b)`.
///
/// Tries the prefixes of the midpoint's expansion, shortest first. If the
/// whole expansion is still too wide, appends one more digit `j` large
/// enough that `I_(sigma, j)` sits next to the midpoint. The containment is
/// checked exactly before returning.
pub fn find_interval_within(a: &Rational, b: &Rational) -> Result<DigitSeq> {
    if a >= b {
        return Err(Error::DegenerateInput(format!(
            "({}, {}) is empty",
            exact::format_rational(a),
            exact::format_rational(b)
        )));
    }
    if a.is_negative() || *b > exact::int(1) {
        return Err(Error::OutOfDomain("interval must lie in [0, 1]".into()));
    }
    let mid = (a + b) / exact::int(2);
    let expansion = pierce::encode(&mid)?;
    for k in 1..=expansion.len() {
        let sigma = expansion.prefix(k)?;
        if fundamental_interval(&sigma)?.is_within_open(a, b) {
            return Ok(sigma);
        }
    }
    // Children I_(sigma, j) lie within 1/(P_n j) of phi(sigma) = mid.
    let product: BigUint = expansion.digits().iter().product();
    let half_gap = (b - a) / exact::int(2);
    let need = exact::int(1)
        / (Rational::from_integer(BigInt::from_biguint(Sign::Plus, product)) * &half_gap);
    let last = expansion
        .digits()
        .last()
        .expect("midpoint is positive")
        .clone();
    let mut j = exact::ceil(&need).to_biguint().unwrap_or_default() + 1u32;
    if j <= last {
        j = last + 1u32;
    }
    loop {
        let mut digits = expansion.digits().to_vec();
        digits.push(j.clone());
        let sigma = DigitSeq::terminated(digits)?;
        if fundamental_interval(&sigma)?.is_within_open(a, b) {
            return Ok(sigma);
        }
        j *= 2u32;
    }
}

/// True when `prefix` is the start of `x`'s expansion.
pub fn expansion_starts_with(x: &Rational, prefix: &DigitSeq) -> Result<bool> {
    let expansion = pierce::encode(x)?;
    Ok(expansion.len() >= prefix.len() && expansion.digits()[..prefix.len()] == *prefix.digits())
}
