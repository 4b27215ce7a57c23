//! Digit sequences: finite strictly increasing prefixes with a tail marker,
//! canonicity classification, prefix replacement and the `Z_c` enumeration.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{self, Rational};

/// What follows the stored prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// Every later digit is infinite: the sequence is finite.
    Terminated,
    /// More finite digits follow but are not stored.
    Extendable,
}

/// A Pierce digit sequence, or a prefix of one.
///
/// The prefix is strictly increasing with every entry positive. An empty
/// terminated sequence is the all-infinity sequence, the expansion of 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitSeq {
    digits: Vec<BigUint>,
    tail: Tail,
}

impl DigitSeq {
    pub fn new(digits: Vec<BigUint>, tail: Tail) -> Result<Self> {
        check_increasing(&digits)?;
        Ok(DigitSeq { digits, tail })
    }

    pub fn terminated(digits: Vec<BigUint>) -> Result<Self> {
        Self::new(digits, Tail::Terminated)
    }

    pub fn extendable(digits: Vec<BigUint>) -> Result<Self> {
        Self::new(digits, Tail::Extendable)
    }

    pub fn from_u64s(digits: &[u64], tail: Tail) -> Result<Self> {
        Self::new(digits.iter().map(|&d| BigUint::from(d)).collect(), tail)
    }

    /// The expansion of 0.
    pub fn zero() -> Self {
        DigitSeq {
            digits: Vec::new(),
            tail: Tail::Terminated,
        }
    }

    pub fn digits(&self) -> &[BigUint] {
        &self.digits
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn is_terminated(&self) -> bool {
        self.tail == Tail::Terminated
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// 1-based digit access; errors past the stored prefix.
    pub fn digit(&self, k: usize) -> Result<&BigUint> {
        if k == 0 {
            return Err(Error::InvalidParameter("digit positions start at 1".into()));
        }
        self.digits.get(k - 1).ok_or(Error::InsufficientPrefix {
            needed: k,
            available: self.digits.len(),
        })
    }

    /// Errors unless at least `n` digits are stored.
    pub fn require(&self, n: usize) -> Result<()> {
        if self.digits.len() < n {
            return Err(Error::InsufficientPrefix {
                needed: n,
                available: self.digits.len(),
            });
        }
        Ok(())
    }

    /// First `n` digits as a terminated sequence.
    pub fn prefix(&self, n: usize) -> Result<DigitSeq> {
        self.require(n)?;
        Ok(DigitSeq {
            digits: self.digits[..n].to_vec(),
            tail: Tail::Terminated,
        })
    }

    /// Same digits with a different tail marker.
    pub fn with_tail(&self, tail: Tail) -> DigitSeq {
        DigitSeq {
            digits: self.digits.clone(),
            tail,
        }
    }

    /// Products `d_1, d_1 d_2, ...` of the stored digits.
    pub fn products(&self) -> Vec<BigUint> {
        let mut acc = BigUint::one();
        self.digits
            .iter()
            .map(|d| {
                acc = &acc * d;
                acc.clone()
            })
            .collect()
    }

    pub fn classify(&self) -> CanonicityReport {
        match self.tail {
            Tail::Extendable => CanonicityReport {
                class: SequenceClass::InfinitePrefix,
                canonical: true,
            },
            Tail::Terminated => classify_terminated(&self.digits),
        }
    }

    /// Whether the sequence lies in the canonical class (no terminal `+1`
    /// step); extendable prefixes are always canonical.
    pub fn is_canonical(&self) -> bool {
        self.classify().canonical
    }
}

fn check_increasing(digits: &[BigUint]) -> Result<()> {
    for (i, d) in digits.iter().enumerate() {
        if d.is_zero() {
            return Err(Error::NonPositiveDigit { position: i + 1 });
        }
        if i > 0 && digits[i - 1] >= *d {
            return Err(Error::NotMonotone { position: i + 1 });
        }
    }
    Ok(())
}

fn classify_terminated(digits: &[BigUint]) -> CanonicityReport {
    let n = digits.len();
    if n == 0 {
        return CanonicityReport {
            class: SequenceClass::Zero,
            canonical: true,
        };
    }
    let canonical = n < 2 || digits[n - 1] != &digits[n - 2] + 1u32;
    CanonicityReport {
        class: SequenceClass::Finite(n),
        canonical,
    }
}

impl fmt::Display for DigitSeq {
    /// `"3,8,21"`, `"3,8,21,..."`, or `"0"` for the expansion of 0.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return match self.tail {
                Tail::Terminated => write!(f, "0"),
                Tail::Extendable => write!(f, "..."),
            };
        }
        let body: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", body.join(","))?;
        if self.tail == Tail::Extendable {
            write!(f, ",...")?;
        }
        Ok(())
    }
}

impl FromStr for DigitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(DigitSeq::zero());
        }
        let mut parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let tail = if parts.last() == Some(&"...") || parts.last() == Some(&"…") {
            parts.pop();
            Tail::Extendable
        } else {
            Tail::Terminated
        };
        let digits = parts
            .iter()
            .map(|p| {
                p.parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("bad digit {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DigitSeq::new(digits, tail)
    }
}

impl Serialize for DigitSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// An entry of an extended positive-integer sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtDigit {
    Finite(BigUint),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SequenceClass {
    /// The all-infinity sequence.
    Zero,
    /// Exactly `n` finite digits followed by infinities.
    Finite(usize),
    /// Finite digits with no infinity seen: a prefix of an infinite sequence.
    InfinitePrefix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CanonicityReport {
    pub class: SequenceClass,
    pub canonical: bool,
}

/// Classifies an extended sequence read literally: finite entries, then
/// optionally a run of infinity markers.
pub fn classify(seq: &[ExtDigit]) -> Result<CanonicityReport> {
    let mut finite = Vec::new();
    let mut seen_infinity = false;
    for (i, entry) in seq.iter().enumerate() {
        match entry {
            ExtDigit::Infinity => seen_infinity = true,
            ExtDigit::Finite(_) if seen_infinity => {
                return Err(Error::MalformedTail { position: i + 1 })
            }
            ExtDigit::Finite(d) => finite.push(d.clone()),
        }
    }
    check_increasing(&finite)?;
    if seen_infinity || finite.is_empty() {
        Ok(classify_terminated(&finite))
    } else {
        Ok(CanonicityReport {
            class: SequenceClass::InfinitePrefix,
            canonical: true,
        })
    }
}

/// Replaces the first `tau.len()` digits of `x` by `tau`.
///
/// The result must stay strictly increasing, so the last entry of `tau`
/// must be below the first retained digit of `x`. An extendable `x` must
/// store that retained digit.
pub fn replace_prefix(x: &DigitSeq, tau: &[BigUint]) -> Result<DigitSeq> {
    check_increasing(tau)?;
    let m = tau.len();
    if x.len() < m || (x.len() == m && x.tail == Tail::Extendable) {
        return Err(Error::InsufficientPrefix {
            needed: m + 1,
            available: x.len(),
        });
    }
    if let (Some(last), Some(next)) = (tau.last(), x.digits.get(m)) {
        if last >= next {
            return Err(Error::IllFormedReplacement {
                last: last.to_string(),
                next: next.to_string(),
            });
        }
    }
    let mut digits = tau.to_vec();
    digits.extend_from_slice(&x.digits[m..]);
    Ok(DigitSeq {
        digits,
        tail: x.tail,
    })
}

/// A prefix satisfying `d_n <= n + c` from `start_index` on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZcPrefix {
    prefix: DigitSeq,
    c: Rational,
    start_index: usize,
}

impl ZcPrefix {
    pub fn new(prefix: DigitSeq, c: Rational, start_index: usize) -> Result<Self> {
        validate_zc_params(&c, start_index)?;
        let bound = zc_floor(&c)?;
        for (i, d) in prefix.digits.iter().enumerate() {
            let n = i + 1;
            if n >= start_index && *d > BigUint::from(n as u64 + bound) {
                return Err(Error::InvalidParameter(format!(
                    "digit {d} at position {n} exceeds {n} + c"
                )));
            }
        }
        Ok(ZcPrefix {
            prefix,
            c,
            start_index,
        })
    }

    pub fn prefix(&self) -> &DigitSeq {
        &self.prefix
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }
}

fn validate_zc_params(c: &Rational, start_index: usize) -> Result<()> {
    if *c < Rational::zero() {
        return Err(Error::InvalidParameter("c must be non-negative".into()));
    }
    if start_index == 0 {
        return Err(Error::InvalidParameter(
            "start index must be positive".into(),
        ));
    }
    Ok(())
}

fn zc_floor(c: &Rational) -> Result<u64> {
    exact::floor(c)
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter("c is too large to enumerate".into()))
}

/// All strictly increasing prefixes of length `depth` with
/// `sigma_n <= n + c` for every `n >= start_index`, in lexicographic order.
///
/// Positions before `start_index` are bounded only by the room needed to
/// stay below the entry at `start_index`.
pub fn enumerate_zc(c: &Rational, start_index: usize, depth: usize) -> Result<Vec<ZcPrefix>> {
    validate_zc_params(c, start_index)?;
    if depth < start_index {
        return Err(Error::InvalidParameter(format!(
            "depth {depth} must be at least the start index {start_index}"
        )));
    }
    let slack = zc_floor(c)?;
    // Upper bound on the entry at position n (1-based). Before the start
    // index the bound comes from needing start_index - n more increases.
    let cap = |n: usize| -> u64 {
        if n >= start_index {
            n as u64 + slack
        } else {
            (start_index as u64 + slack) - (start_index - n) as u64
        }
    };
    let mut out = Vec::new();
    let mut current: Vec<u64> = Vec::with_capacity(depth);
    fn walk(
        current: &mut Vec<u64>,
        depth: usize,
        cap: &dyn Fn(usize) -> u64,
        out: &mut Vec<Vec<u64>>,
    ) {
        let n = current.len() + 1;
        if n > depth {
            out.push(current.clone());
            return;
        }
        let low = current.last().map_or(1, |&d| d + 1);
        for d in low..=cap(n) {
            current.push(d);
            walk(current, depth, cap, out);
            current.pop();
        }
    }
    let mut raw = Vec::new();
    walk(&mut current, depth, &cap, &mut raw);
    for digits in raw {
        let prefix = DigitSeq::from_u64s(&digits, Tail::Extendable)?;
        out.push(ZcPrefix {
            prefix,
            c: c.clone(),
            start_index,
        });
    }
    Ok(out)
}

/// Jump tuple of `theta(n) = sigma_n - n`: position `n` appears once per
/// unit increase of theta at `n` (position 1 counts `theta(1)` itself).
/// The result is the non-decreasing tuple `n_1 <= n_2 <= ...` where `n_k`
/// is the first position with `theta >= k`.
pub fn jump_positions(p: &ZcPrefix) -> Result<Vec<usize>> {
    let ceiling = zc_floor(&p.c)?;
    let mut jumps = Vec::new();
    let mut previous = 0u64;
    for (i, d) in p.prefix.digits.iter().enumerate() {
        let n = i + 1;
        let d = d.to_u64().ok_or(Error::ThetaViolation { position: n })?;
        let theta = d
            .checked_sub(n as u64)
            .ok_or(Error::ThetaViolation { position: n })?;
        if theta < previous || theta > ceiling {
            return Err(Error::ThetaViolation { position: n });
        }
        for _ in previous..theta {
            jumps.push(n);
        }
        previous = theta;
    }
    Ok(jumps)
}
