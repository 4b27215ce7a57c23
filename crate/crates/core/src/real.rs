//! Certified real functions on exact inputs.
//!
//! `exp`, `ln` and `sqrt` return rational enclosures whose endpoints are
//! dyadic (denominator a power of two). Internally every series runs on
//! fixed-point intervals: a pair of big integers scaled by `2^-bits`, with
//! lower ends rounded toward minus infinity and upper ends toward plus
//! infinity. The truncation error of each series is added to the upper end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, Enclosure, Rational};

/// Working precision in bits: enclosures from this module have absolute
/// width on the order of `2^-bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT: Precision = Precision(128);
    pub const MAX: Precision = Precision(1024);
    pub const MIN_BITS: u32 = 16;

    pub fn new(bits: u32) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX.0).contains(&bits) {
            return Err(Error::InvalidParameter(format!(
                "precision must lie in {}..={} bits, got {bits}",
                Self::MIN_BITS,
                Self::MAX.0
            )));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Next step of the retry ladder, or `None` once past the maximum.
    pub fn doubled(self) -> Option<Precision> {
        let next = self.0.checked_mul(2)?;
        (next <= Self::MAX.0).then_some(Precision(next))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

fn floor_shr(x: &BigInt, k: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << k))
}

fn ceil_shr(x: &BigInt, k: u32) -> BigInt {
    -floor_shr(&-x, k)
}

/// Interval `[lo, hi] * 2^-bits`.
#[derive(Debug, Clone)]
struct Fixed {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

impl Fixed {
    fn exact_int(n: BigInt, bits: u32) -> Fixed {
        let v = n << bits;
        Fixed {
            lo: v.clone(),
            hi: v,
            bits,
        }
    }

    fn from_rational(q: &Rational, bits: u32) -> Fixed {
        let scaled = q * Rational::from_integer(BigInt::one() << bits);
        Fixed {
            lo: exact::floor(&scaled),
            hi: exact::ceil(&scaled),
            bits,
        }
    }

    fn add(&self, o: &Fixed) -> Fixed {
        Fixed {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            bits: self.bits,
        }
    }

    fn mul(&self, o: &Fixed) -> Fixed {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let min = products.iter().min().expect("non-empty");
        let max = products.iter().max().expect("non-empty");
        Fixed {
            lo: floor_shr(min, self.bits),
            hi: ceil_shr(max, self.bits),
            bits: self.bits,
        }
    }

    /// Division by a positive machine integer.
    fn div_u64(&self, d: u64) -> Fixed {
        let d = BigInt::from(d);
        Fixed {
            lo: self.lo.div_floor(&d),
            hi: -(-&self.hi).div_floor(&d),
            bits: self.bits,
        }
    }

    fn scale_int(&self, k: &BigInt) -> Fixed {
        if k.is_negative() {
            Fixed {
                lo: &self.hi * k,
                hi: &self.lo * k,
                bits: self.bits,
            }
        } else {
            Fixed {
                lo: &self.lo * k,
                hi: &self.hi * k,
                bits: self.bits,
            }
        }
    }

    fn pow(&self, mut e: BigInt) -> Fixed {
        let mut base = self.clone();
        let mut acc = Fixed::exact_int(BigInt::one(), self.bits);
        let two = BigInt::from(2);
        while e.is_positive() {
            if e.is_odd() {
                acc = acc.mul(&base);
            }
            e /= &two;
            if e.is_positive() {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn to_enclosure(&self) -> Enclosure {
        let den = BigInt::one() << self.bits;
        Enclosure::hull(
            Rational::new(self.lo.clone(), den.clone()),
            Rational::new(self.hi.clone(), den),
        )
    }
}

/// `e^x` for `0 <= x <= 1` by Taylor series with a tail bound.
fn exp_unit(x: &Fixed) -> Fixed {
    let one = BigInt::one() << x.bits;
    let mut sum = Fixed {
        lo: one.clone(),
        hi: one.clone(),
        bits: x.bits,
    };
    let mut term = sum.clone();
    let mut i = 1u64;
    loop {
        term = term.mul(x).div_u64(i);
        sum = sum.add(&term);
        if term.hi <= BigInt::one() {
            // Remaining terms are bounded by 2 * term for x <= 1, i >= 1.
            sum.hi += &term.hi * 2 + 1;
            return sum;
        }
        i += 1;
    }
}

/// `atanh(z)` for `0 <= z <= 1/3`.
fn atanh_small(z: &Fixed) -> Fixed {
    let z2 = z.mul(z);
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut k = 1u64;
    loop {
        power = power.mul(&z2);
        let term = power.div_u64(2 * k + 1);
        sum = sum.add(&term);
        if power.hi <= BigInt::one() {
            // Tail is below z^(2k+3) / (1 - z^2) <= power for z^2 <= 1/9.
            sum.hi += &power.hi + 1;
            return sum;
        }
        k += 1;
    }
}

fn guard_bits_for(q: &Rational) -> u32 {
    // Magnitude of e^q in bits plus the log of the exponent for squaring.
    let mag = exact::ceil(&q.abs());
    let mag_u32: u32 = mag.to_string().parse().unwrap_or(u32::MAX / 4);
    mag_u32.saturating_mul(3) / 2 + 2 * (mag.bits() as u32) + 32
}

/// Certified enclosure of `e^q`.
pub fn exp(q: &Rational, prec: Precision) -> Result<Enclosure> {
    if q.is_negative() {
        let pos = exp(&-q, prec)?;
        let one = Enclosure::point(exact::int(1));
        return div(&one, &pos, prec);
    }
    if q.is_zero() {
        return Ok(Enclosure::point(exact::int(1)));
    }
    let bits = prec.bits() + guard_bits_for(q);
    let n = exact::floor(q);
    let frac = q - Rational::from_integer(n.clone());
    let e_frac = exp_unit(&Fixed::from_rational(&frac, bits));
    let result = if n.is_zero() {
        e_frac
    } else {
        let e = exp_unit(&Fixed::exact_int(BigInt::one(), bits));
        e.pow(n).mul(&e_frac)
    };
    Ok(result.to_enclosure())
}

/// Certified enclosure of the natural logarithm of `q > 0`.
pub fn ln(q: &Rational, prec: Precision) -> Result<Enclosure> {
    if !q.is_positive() {
        return Err(Error::OutOfDomain(format!(
            "logarithm of non-positive value {}",
            exact::format_rational(q)
        )));
    }
    if q.is_one() {
        return Ok(Enclosure::point(Rational::zero()));
    }
    // q = 2^shift * m with 1 <= m < 2.
    let mut shift = q.numer().bits() as i64 - q.denom().bits() as i64;
    let pow2 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(BigInt::one() << k as usize)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-k) as usize)
        }
    };
    let mut m = q / pow2(shift);
    if m < exact::int(1) {
        shift -= 1;
        m = q / pow2(shift);
    }
    let shift_int = BigInt::from(shift);
    let bits = prec.bits() + shift_int.bits() as u32 + 32;
    let one = exact::int(1);
    let z = (&m - &one) / (&m + &one);
    let ln_m = atanh_small(&Fixed::from_rational(&z, bits)).scale_int(&BigInt::from(2));
    let result = if shift == 0 {
        ln_m
    } else {
        let third = Fixed::from_rational(&exact::rat(1, 3), bits);
        let ln2 = atanh_small(&third).scale_int(&BigInt::from(2));
        ln2.scale_int(&shift_int).add(&ln_m)
    };
    Ok(result.to_enclosure())
}

/// Enclosure of `ln` over every point of a positive enclosure.
pub fn ln_enclosure(x: &Enclosure, prec: Precision) -> Result<Enclosure> {
    let lo = ln(x.lo(), prec)?;
    if x.is_point() {
        return Ok(lo);
    }
    let hi = ln(x.hi(), prec)?;
    Enclosure::new(lo.lo().clone(), hi.hi().clone())
}

fn sqrt_floor_at(q: &Rational, bits: u32) -> Rational {
    let scaled = exact::floor(&(q * Rational::from_integer(BigInt::one() << (2 * bits))));
    let s = scaled.sqrt();
    Rational::new(s, BigInt::one() << bits)
}

fn sqrt_ceil_at(q: &Rational, bits: u32) -> Rational {
    let scaled = exact::ceil(&(q * Rational::from_integer(BigInt::one() << (2 * bits))));
    let mut s = scaled.sqrt();
    if &s * &s < scaled {
        s += 1;
    }
    Rational::new(s, BigInt::one() << bits)
}

/// Certified enclosure of the square root over a non-negative enclosure.
pub fn sqrt(x: &Enclosure, prec: Precision) -> Result<Enclosure> {
    if x.lo().is_negative() {
        return Err(Error::OutOfDomain(format!(
            "square root of enclosure reaching {}",
            exact::format_rational(x.lo())
        )));
    }
    let bits = prec.bits() + 8;
    Enclosure::new(sqrt_floor_at(x.lo(), bits), sqrt_ceil_at(x.hi(), bits))
}

fn round_out(lo: &Rational, hi: &Rational, bits: u32) -> Enclosure {
    let scale = Rational::from_integer(BigInt::one() << bits);
    let den = BigInt::one() << bits;
    Enclosure::hull(
        Rational::new(exact::floor(&(lo * &scale)), den.clone()),
        Rational::new(exact::ceil(&(hi * &scale)), den),
    )
}

/// Outward-rounded quotient of two enclosures; the divisor must exclude 0.
pub fn div(a: &Enclosure, b: &Enclosure, prec: Precision) -> Result<Enclosure> {
    if b.contains(&Rational::zero()) {
        return Err(Error::OutOfDomain(
            "division by an enclosure containing 0".into(),
        ));
    }
    let candidates = [
        a.lo() / b.lo(),
        a.lo() / b.hi(),
        a.hi() / b.lo(),
        a.hi() / b.hi(),
    ];
    let min = candidates.iter().min().expect("non-empty");
    let max = candidates.iter().max().expect("non-empty");
    Ok(round_out(min, max, prec.bits() + 8))
}

/// Outward rounding of an enclosure onto the dyadic grid of `prec`.
pub fn round_outward(x: &Enclosure, prec: Precision) -> Enclosure {
    round_out(x.lo(), x.hi(), prec.bits() + 8)
}

/// Smallest integer `>= e^q` when the enclosure resolves it, doubling the
/// precision up to the maximum otherwise.
pub fn ceil_exp(q: &Rational, start: Precision) -> Result<BigInt> {
    let mut prec = start;
    loop {
        let e = exp(q, prec)?;
        let (lo, hi) = (exact::ceil(e.lo()), exact::ceil(e.hi()));
        // A lower end that is itself an integer cannot rule out equality.
        if lo == hi && !exact::is_integer(e.lo()) {
            return Ok(lo);
        }
        if q.is_zero() {
            return Ok(BigInt::one());
        }
        prec = prec.doubled().ok_or_else(|| {
            Error::PrecisionExhausted(format!("exp({})", exact::format_rational(q)))
        })?;
    }
}
