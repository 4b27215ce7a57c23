//! Generalized leap-year rules driven by an intercalation sequence.
//!
//! A year `N` is a leap year when `sum_k (-1)^(k+1) mul(N, s_1 ... s_k) = 1`,
//! where `mul(m, n)` is 1 exactly when `n` divides `m`. Sums run only over
//! cumulative products not exceeding the year: larger products contribute 0.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::digits::{DigitSeq, Tail};
use crate::error::{Error, Result};
use crate::exact::{self, Enclosure, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum RuleKind {
    Explicit,
    PierceDerived,
}

/// An intercalation sequence: positive terms with every term after the
/// first at least 2. Open-ended rules store a prefix of an infinite
/// sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntercalationRule {
    terms: Vec<BigUint>,
    open_ended: bool,
    kind: RuleKind,
}

impl IntercalationRule {
    pub fn explicit(terms: Vec<BigUint>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidRule("a rule needs at least one term".into()));
        }
        Self::checked(terms, false, RuleKind::Explicit)
    }

    /// An infinite explicit rule known through its first terms.
    pub fn explicit_open(terms: Vec<BigUint>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidRule("a rule needs at least one term".into()));
        }
        Self::checked(terms, true, RuleKind::Explicit)
    }

    pub fn from_u64s(terms: &[u64]) -> Result<Self> {
        Self::explicit(terms.iter().map(|&t| BigUint::from(t)).collect())
    }

    /// The rule whose terms are the Pierce digits of `s`.
    pub fn from_digits(s: &DigitSeq) -> Self {
        IntercalationRule {
            terms: s.digits().to_vec(),
            open_ended: s.tail() == Tail::Extendable,
            kind: RuleKind::PierceDerived,
        }
    }

    fn checked(terms: Vec<BigUint>, open_ended: bool, kind: RuleKind) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if t.is_zero() {
                return Err(Error::InvalidRule(format!(
                    "term {} must be positive",
                    i + 1
                )));
            }
            if i > 0 && *t < BigUint::from(2u32) {
                return Err(Error::InvalidRule(format!(
                    "term {} must be at least 2",
                    i + 1
                )));
            }
        }
        Ok(IntercalationRule {
            terms,
            open_ended,
            kind,
        })
    }

    pub fn julian() -> Self {
        Self::from_u64s(&[4]).expect("valid preset")
    }

    pub fn gregorian() -> Self {
        Self::from_u64s(&[4, 25, 4]).expect("valid preset")
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn is_open_ended(&self) -> bool {
        self.open_ended
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    /// Cumulative products `s_1, s_1 s_2, ...` that do not exceed `limit`.
    /// Open-ended rules must show a product beyond `limit` within the stored
    /// terms, since later terms could otherwise still contribute.
    fn products_through(&self, limit: &BigUint) -> Result<Vec<BigUint>> {
        let mut out = Vec::new();
        let mut acc = BigUint::one();
        for t in &self.terms {
            acc *= t;
            if acc > *limit {
                return Ok(out);
            }
            out.push(acc.clone());
        }
        if self.open_ended {
            return Err(Error::InsufficientPrefix {
                needed: self.terms.len() + 1,
                available: self.terms.len(),
            });
        }
        Ok(out)
    }

    /// Machine-word products for repeated small-year queries.
    fn small_products(&self, limit: u64) -> Result<Vec<u64>> {
        self.products_through(&BigUint::from(limit)).map(|ps| {
            ps.iter()
                .map(|p| p.to_u64().expect("bounded by limit"))
                .collect()
        })
    }
}

impl fmt::Display for IntercalationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", body.join(","))?;
        if self.open_ended {
            write!(f, ",...")?;
        }
        Ok(())
    }
}

impl FromStr for IntercalationRule {
    type Err = Error;

    /// Preset names `julian` / `gregorian`, or comma-separated terms with an
    /// optional trailing `...` for an open-ended rule.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "julian" => return Ok(Self::julian()),
            "gregorian" => return Ok(Self::gregorian()),
            _ => {}
        }
        let mut parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let open = matches!(parts.last(), Some(&"...") | Some(&"…"));
        if open {
            parts.pop();
        }
        let terms = parts
            .iter()
            .map(|p| {
                p.parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("bad rule term {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if open {
            Self::explicit_open(terms)
        } else {
            Self::explicit(terms)
        }
    }
}

/// 1 when `n` divides `m`, else 0.
pub fn mul(m: u64, n: u64) -> Result<u8> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(
            "mul is defined on positive integers".into(),
        ));
    }
    Ok(u8::from(m.is_multiple_of(n)))
}

fn check_year(year: u64) -> Result<()> {
    if year == 0 {
        return Err(Error::InvalidParameter("years start at 1".into()));
    }
    Ok(())
}

fn leap_from_products(year: u64, products: &[u64]) -> bool {
    let mut sum = 0i64;
    for (k, &p) in products.iter().enumerate() {
        if p > year {
            break;
        }
        if year.is_multiple_of(p) {
            sum += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    sum == 1
}

pub fn is_leap(rule: &IntercalationRule, year: u64) -> Result<bool> {
    check_year(year)?;
    Ok(leap_from_products(year, &rule.small_products(year)?))
}

/// Leap years among `1..=n`, by testing every year.
pub fn count_leaps_direct(rule: &IntercalationRule, n: u64) -> Result<u64> {
    check_year(n)?;
    let products = rule.small_products(n)?;
    Ok((1..=n)
        .filter(|&y| leap_from_products(y, &products))
        .count() as u64)
}

/// Running leap counts `L(1), ..., L(n)` by testing every year once.
pub fn leap_counts_through(rule: &IntercalationRule, n: u64) -> Result<Vec<u64>> {
    check_year(n)?;
    let products = rule.small_products(n)?;
    let mut total = 0;
    Ok((1..=n)
        .map(|y| {
            total += u64::from(leap_from_products(y, &products));
            total
        })
        .collect())
}

/// `sum_k (-1)^(k+1) floor(n / (s_1 ... s_k))`.
pub fn count_leaps_formula(rule: &IntercalationRule, n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::InvalidParameter("years start at 1".into()));
    }
    let mut total = BigInt::zero();
    for (k, p) in rule.products_through(n)?.iter().enumerate() {
        let term = BigInt::from_biguint(Sign::Plus, n.div_floor(p));
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total.to_biguint().expect("leap counts are non-negative"))
}

/// Average fraction of a leap day per year: `sum_k (-1)^(k+1) / (s_1 ... s_k)`.
/// Exact for finite rules; open-ended rules are bracketed by the partial
/// sums after `n` and `n + 1` terms.
pub fn series_value(rule: &IntercalationRule, n: usize) -> Result<Enclosure> {
    let partial = |count: usize| -> Rational {
        let one = exact::int(1);
        rule.terms[..count]
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, t| (&one - acc) / exact::uint(t))
    };
    if !rule.open_ended {
        return Ok(Enclosure::point(partial(rule.terms.len())));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "term count must be positive".into(),
        ));
    }
    if rule.terms.len() < n + 1 {
        return Err(Error::InsufficientPrefix {
            needed: n + 1,
            available: rule.terms.len(),
        });
    }
    Ok(Enclosure::hull(partial(n), partial(n + 1)))
}

/// Drift `N x - L(rule, N)` for one year.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DriftRecord {
    #[serde(serialize_with = "ser_display")]
    pub year: BigUint,
    #[serde(rename = "leapCount", serialize_with = "ser_display")]
    pub leap_count: BigUint,
    pub drift: Enclosure,
}

pub(crate) fn ser_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn drift(x: &Enclosure, rule: &IntercalationRule, n: &BigUint) -> Result<DriftRecord> {
    if x.lo() < &Rational::zero() || x.hi() > &exact::int(1) {
        return Err(Error::OutOfDomain("x must lie in [0, 1]".into()));
    }
    let leap_count = count_leaps_formula(rule, n)?;
    let years = exact::uint(n);
    let leaps = exact::uint(&leap_count);
    let drift = x.affine(&years, &-leaps);
    Ok(DriftRecord {
        year: n.clone(),
        leap_count,
        drift,
    })
}

/// Mean tropical-year excess over 365 days, as the shipped example value.
pub fn tropical_year_fraction() -> Rational {
    exact::rat(242_189, 1_000_000)
}
