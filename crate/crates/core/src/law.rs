//! Finite-horizon diagnostics for digit growth and the drift quotient
//! `(N x - L(d(x), N)) / sqrt(log N)`.
//!
//! Membership in the growth classes is asymptotic and is never decided
//! here. The module builds digit sequences with a prescribed growth rate,
//! measures their growth over finite prefixes, and evaluates the quotient
//! along the extremal years
//! `N_j = -1 + d_1 - d_1 d_2 + ... + (-1)^(j+1) d_1 ... d_j` with certified
//! enclosures.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::calendar::{self, ser_display, IntercalationRule};
use crate::digits::{DigitSeq, Tail};
use crate::error::{Error, Result};
use crate::exact::{self, Enclosure, Rational};
use crate::pierce;
use crate::real::{self, Precision};

/// Target growth rate `alpha` of `log d_n / n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthSpec {
    Rate(Rational),
    Infinite,
}

impl GrowthSpec {
    pub fn rate(alpha: Rational) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::InvalidParameter("alpha must be non-negative".into()));
        }
        Ok(GrowthSpec::Rate(alpha))
    }
}

impl FromStr for GrowthSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(GrowthSpec::Infinite),
            other => GrowthSpec::rate(exact::parse_rational(other)?),
        }
    }
}

impl fmt::Display for GrowthSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthSpec::Infinite => write!(f, "inf"),
            GrowthSpec::Rate(a) if exact::is_integer(a) => write!(f, "{}", a.numer()),
            GrowthSpec::Rate(a) => write!(f, "{}", exact::format_rational(a)),
        }
    }
}

/// First `n` digits of a sequence with growth rate `spec`:
/// `d_k = max(d_{k-1} + 1, ceil(e^(alpha k)))` for finite `alpha > 0`,
/// `d_k = k + 1` for `alpha = 0`, and `ceil(e^(k^2))` (same guard) for
/// infinite `alpha`.
pub fn construct_digits(spec: &GrowthSpec, n: usize, prec: Precision) -> Result<DigitSeq> {
    if n == 0 {
        return Err(Error::InvalidParameter("length must be positive".into()));
    }
    let mut digits: Vec<BigUint> = Vec::with_capacity(n);
    for k in 1..=n {
        let kq = exact::int(k as u64);
        let target = match spec {
            GrowthSpec::Rate(a) if a.is_zero() => BigUint::from(k as u64 + 1),
            GrowthSpec::Rate(a) => ceil_exp_unsigned(&(a * &kq), prec)?,
            GrowthSpec::Infinite => ceil_exp_unsigned(&(&kq * &kq), prec)?,
        };
        let floor = digits.last().map_or_else(BigUint::one, |d| d + 1u32);
        digits.push(target.max(floor));
    }
    DigitSeq::new(digits, Tail::Extendable)
}

fn ceil_exp_unsigned(q: &Rational, prec: Precision) -> Result<BigUint> {
    Ok(real::ceil_exp(q, prec)?
        .to_biguint()
        .expect("exponentials are positive"))
}

/// Enclosure of `log(d_n) / n`.
pub fn growth_rate(s: &DigitSeq, n: usize, prec: Precision) -> Result<Enclosure> {
    if n == 0 {
        return Err(Error::InvalidParameter("index must be positive".into()));
    }
    let d = s.digit(n)?;
    let log = real::ln(&exact::uint(d), prec)?;
    Ok(log.affine(&exact::rat(1, n as i64), &Rational::zero()))
}

/// Enclosure of `log(d_1 ... d_n) / (n^2 / 2)`.
pub fn log_product_rate(s: &DigitSeq, n: usize, prec: Precision) -> Result<Enclosure> {
    if n == 0 {
        return Err(Error::InvalidParameter("index must be positive".into()));
    }
    s.require(n)?;
    let product: BigUint = s.digits()[..n].iter().product();
    let log = real::ln(&exact::uint(&product), prec)?;
    let scale = Rational::new(BigInt::from(2), BigInt::from(n as u64 * n as u64));
    Ok(log.affine(&scale, &Rational::zero()))
}

/// Exact `sum_{k <= n} 1/d_k`.
pub fn reciprocal_partial_sum(s: &DigitSeq, n: usize) -> Result<Rational> {
    s.require(n)?;
    Ok(s.digits()[..n]
        .iter()
        .map(|d| Rational::new(BigInt::one(), BigInt::from_biguint(Sign::Plus, d.clone())))
        .fold(Rational::zero(), |acc, t| acc + t))
}

/// `N_j = -1 + sum_{k <= j} (-1)^(k+1) d_1 ... d_k`.
pub fn extremal_year(s: &DigitSeq, j: usize) -> Result<BigInt> {
    s.require(j)?;
    let mut total = -BigInt::one();
    let mut product = BigUint::one();
    for (k, d) in s.digits()[..j].iter().enumerate() {
        product *= d;
        let term = BigInt::from_biguint(Sign::Plus, product.clone());
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `(N_{2r+1}, M_{2r})` with `M_j = -N_j`; both positive for `r >= 1`.
pub fn extremal_years(s: &DigitSeq, r: usize) -> Result<(BigUint, BigUint)> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    s.require(2 * r + 1)?;
    let n = extremal_year(s, 2 * r + 1)?;
    let m = -extremal_year(s, 2 * r)?;
    let to_year = |v: BigInt| {
        v.to_biguint()
            .filter(|v| !v.is_zero())
            .ok_or_else(|| Error::OutOfDomain("extremal year is not a positive integer".into()))
    };
    Ok((to_year(n)?, to_year(m)?))
}

/// Every piece of one certified quotient evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientEnclosure {
    #[serde(serialize_with = "ser_display")]
    pub year: BigUint,
    #[serde(rename = "leapCount", serialize_with = "ser_display")]
    pub leap_count: BigUint,
    pub x: Enclosure,
    pub drift: Enclosure,
    #[serde(rename = "logN")]
    pub log_n: Enclosure,
    pub quotient: Enclosure,
}

/// Certified `(N x - L(s, N)) / sqrt(log N)` where `x` is the point with
/// digits `s`.
///
/// `L` is exact: it only reads the digits whose cumulative product is at
/// most `N`, say the first `K`. The point `x` is enclosed by partial sums
/// that read `guard` digits past `K`.
pub fn quotient_enclosure(
    s: &DigitSeq,
    year: &BigUint,
    guard: usize,
    prec: Precision,
) -> Result<QuotientEnclosure> {
    if *year < BigUint::from(2u32) {
        return Err(Error::OutOfDomain(
            "the quotient needs N >= 2 so that log N > 0".into(),
        ));
    }
    if guard == 0 {
        return Err(Error::InvalidParameter("guard must be at least 1".into()));
    }
    let rule = IntercalationRule::from_digits(s);
    let leap_count = calendar::count_leaps_formula(&rule, year)?;
    let x = if s.is_terminated() {
        Enclosure::point(pierce::decode(s)?)
    } else {
        let within = s.products().iter().take_while(|p| *p <= year).count();
        let n = (within + guard - 1).max(1);
        pierce::enclose(s, n)?
    };
    let drift = x.affine(&exact::uint(year), &-exact::uint(&leap_count));
    let log_n = real::ln(&exact::uint(year), prec)?;
    let root = real::sqrt(&log_n, prec)?;
    let quotient = real::div(&drift, &root, prec)?;
    Ok(QuotientEnclosure {
        year: year.clone(),
        leap_count,
        x,
        drift,
        log_n,
        quotient,
    })
}

/// Certified enclosure of `(r/4) / sqrt(log N_{2r+1})`, the quotient floor
/// implied by `N_{2r+1} x - L >= r/4`.
pub fn quotient_floor(s: &DigitSeq, r: usize, prec: Precision) -> Result<Enclosure> {
    let (n, _) = extremal_years(s, r)?;
    let log_n = real::ln(&exact::uint(&n), prec)?;
    let root = real::sqrt(&log_n, prec)?;
    real::div(&Enclosure::point(exact::rat(r as i64, 4)), &root, prec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Branch {
    /// Years `N_{2r+1}`, where the drift is large and positive.
    N,
    /// Years `M_{2r} = -N_{2r}`, where the drift is large and negative.
    M,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::N => "N",
            Branch::M => "M",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrajectoryRow {
    pub branch: Branch,
    pub r: usize,
    #[serde(rename = "N", serialize_with = "ser_display")]
    pub year: BigUint,
    #[serde(rename = "L", serialize_with = "ser_display")]
    pub leap_count: BigUint,
    #[serde(rename = "driftEnclosure")]
    pub drift: Enclosure,
    #[serde(rename = "logN")]
    pub log_n: Enclosure,
    pub quotient: Enclosure,
    /// `drift.lo >= r/4` on the N branch; not applicable on the M branch.
    #[serde(rename = "thm2Satisfied")]
    pub thm2: Option<bool>,
}

/// Quotients along `N_{2r+1}` and `M_{2r}` for `r = 1..=r_max`, N rows
/// first, each branch ordered by `r`.
pub fn trajectory(
    spec: &GrowthSpec,
    r_max: usize,
    guard: usize,
    prec: Precision,
) -> Result<Vec<TrajectoryRow>> {
    if r_max == 0 {
        return Err(Error::InvalidParameter("rmax must be at least 1".into()));
    }
    let digits = construct_digits(spec, 2 * r_max + 1 + guard, prec)?;
    trajectory_for(&digits, r_max, guard, prec)
}

/// Same as [`trajectory`] for a given digit sequence.
pub fn trajectory_for(
    digits: &DigitSeq,
    r_max: usize,
    guard: usize,
    prec: Precision,
) -> Result<Vec<TrajectoryRow>> {
    let jobs: Vec<(Branch, usize)> = [Branch::N, Branch::M]
        .iter()
        .flat_map(|&b| (1..=r_max).map(move |r| (b, r)))
        .collect();
    jobs.par_iter()
        .map(|&(branch, r)| {
            let (n, m) = extremal_years(digits, r)?;
            let year = if branch == Branch::N { n } else { m };
            let q = quotient_enclosure(digits, &year, guard, prec)?;
            let thm2 = (branch == Branch::N).then(|| *q.drift.lo() >= exact::rat(r as i64, 4));
            Ok(TrajectoryRow {
                branch,
                r,
                year,
                leap_count: q.leap_count,
                drift: q.drift,
                log_n: q.log_n,
                quotient: q.quotient,
                thm2,
            })
        })
        .collect()
}

/// Result of sampling `log(d_n)/n` at random dyadic rationals.
#[derive(Debug, Clone, Serialize)]
pub struct LlnSample {
    pub count: usize,
    pub bits: u32,
    pub n: usize,
    pub seed: u64,
    /// Samples whose expansion has fewer than `n` digits.
    pub skipped: usize,
    /// Per-sample `x` and the enclosure of `log(d_n)/n`.
    pub samples: Vec<LlnPoint>,
    /// Enclosure of the sample mean over the non-skipped samples.
    pub mean: Option<Enclosure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LlnPoint {
    #[serde(serialize_with = "ser_rational")]
    pub x: Rational,
    pub rate: Option<Enclosure>,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&exact::format_rational(q))
}

/// Uniform numerators on `1..=2^bits` from a ChaCha8 stream seeded by
/// `seed`, each divided by `2^bits`.
pub fn sample_dyadic_rationals(count: usize, bits: u32, seed: u64) -> Result<Vec<Rational>> {
    if bits == 0 {
        return Err(Error::InvalidParameter("bits must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = bits.div_ceil(64) as usize;
    let den = BigInt::one() << bits as usize;
    let mask = (BigUint::one() << bits as usize) - 1u32;
    Ok((0..count)
        .map(|_| {
            let raw: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
            let mut limbs = Vec::with_capacity(words * 2);
            for w in raw {
                limbs.push(w as u32);
                limbs.push((w >> 32) as u32);
            }
            let a = (BigUint::new(limbs) & &mask) + 1u32;
            Rational::new(BigInt::from_biguint(Sign::Plus, a), den.clone())
        })
        .collect())
}

pub fn lln_sample(
    count: usize,
    bits: u32,
    n: usize,
    seed: u64,
    prec: Precision,
) -> Result<LlnSample> {
    if n == 0 || count == 0 {
        return Err(Error::InvalidParameter(
            "count and n must be positive".into(),
        ));
    }
    let xs = sample_dyadic_rationals(count, bits, seed)?;
    let samples = xs
        .into_par_iter()
        .map(|x| {
            let s = pierce::encode(&x)?;
            let rate = if s.len() >= n {
                Some(growth_rate(&s, n, prec)?)
            } else {
                None
            };
            Ok(LlnPoint { x, rate })
        })
        .collect::<Result<Vec<_>>>()?;
    let rates: Vec<&Enclosure> = samples.iter().filter_map(|p| p.rate.as_ref()).collect();
    let skipped = samples.len() - rates.len();
    let mean = if rates.is_empty() {
        None
    } else {
        let k = exact::rat(1, rates.len() as i64);
        let lo: Rational = rates.iter().map(|e| e.lo().clone()).sum();
        let hi: Rational = rates.iter().map(|e| e.hi().clone()).sum();
        Some(Enclosure::new(lo * &k, hi * &k)?)
    };
    Ok(LlnSample {
        count,
        bits,
        n,
        seed,
        skipped,
        samples,
        mean,
    })
}
