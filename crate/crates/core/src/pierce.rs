//! The Pierce expansion codec.
//!
//! `x = 1/d_1 - 1/(d_1 d_2) + 1/(d_1 d_2 d_3) - ...` with digits read off by
//! `d_1(x) = floor(1/x)` and the shift `T(x) = 1 - d_1(x) x`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::digits::{DigitSeq, ExtDigit, Tail};
use crate::error::{Error, Result};
use crate::exact::{self, Enclosure, Rational};

/// Iteration cap for `encode`; rational inputs terminate long before.
pub const MAX_ENCODE_STEPS: usize = 1_000_000;

/// One application of the digit map and the shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepResult {
    pub digit: ExtDigit,
    pub remainder: Rational,
}

fn check_unit(x: &Rational) -> Result<()> {
    if x.is_negative() || *x > exact::int(1) {
        return Err(Error::OutOfDomain(format!(
            "{} is outside [0, 1]",
            exact::format_rational(x)
        )));
    }
    Ok(())
}

pub fn step(x: &Rational) -> Result<StepResult> {
    check_unit(x)?;
    if x.is_zero() {
        return Ok(StepResult {
            digit: ExtDigit::Infinity,
            remainder: Rational::zero(),
        });
    }
    let d = x.denom().div_floor(x.numer());
    let remainder = exact::int(1) - Rational::from_integer(d.clone()) * x;
    let d = d.to_biguint().expect("positive digit");
    Ok(StepResult {
        digit: ExtDigit::Finite(d),
        remainder,
    })
}

/// Finite digit sequence of a rational in `[0, 1]`.
pub fn encode(x: &Rational) -> Result<DigitSeq> {
    check_unit(x)?;
    // With x = p/q the shift keeps q and maps p to q mod p.
    let q = x.denom().magnitude().clone();
    let mut p = x.numer().magnitude().clone();
    let mut digits = Vec::new();
    while !p.is_zero() {
        if digits.len() >= MAX_ENCODE_STEPS {
            return Err(Error::NonTermination(MAX_ENCODE_STEPS));
        }
        let (d, r) = q.div_rem(&p);
        digits.push(d);
        p = r;
    }
    DigitSeq::terminated(digits)
}

/// Alternating sum of the first `n` terms, evaluated from the innermost
/// digit outward.
fn nested_sum(digits: &[BigUint]) -> Rational {
    let one = exact::int(1);
    digits.iter().rev().fold(Rational::zero(), |acc, d| {
        (&one - acc) / Rational::from_integer(BigInt::from_biguint(Sign::Plus, d.clone()))
    })
}

/// Exact value of a terminated sequence.
pub fn decode(s: &DigitSeq) -> Result<Rational> {
    if s.tail() != Tail::Terminated {
        return Err(Error::InvalidParameter(
            "an extendable prefix has no exact value; use an enclosure".into(),
        ));
    }
    Ok(nested_sum(s.digits()))
}

/// Partial sum `S_n` over the first `n` digits.
pub fn partial_sum(s: &DigitSeq, n: usize) -> Result<Rational> {
    s.require(n)?;
    Ok(nested_sum(&s.digits()[..n]))
}

/// `1/(d_1 ... d_{n+1})`, the size of the first omitted term and a bound
/// on `|x - S_n|`. Zero once a terminated series has been fully summed.
pub fn tail_bound(s: &DigitSeq, n: usize) -> Result<Rational> {
    if s.is_terminated() && n >= s.len() {
        return Ok(Rational::zero());
    }
    s.require(n + 1)?;
    let product: BigUint = s.digits()[..=n].iter().product();
    Ok(Rational::new(
        BigInt::one(),
        BigInt::from_biguint(Sign::Plus, product),
    ))
}

/// Enclosure of the value from the partial sums `S_n` and `S_{n+1}`.
pub fn enclose(s: &DigitSeq, n: usize) -> Result<Enclosure> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "enclosure index must be positive".into(),
        ));
    }
    if s.is_terminated() && n >= s.len() {
        return Ok(Enclosure::point(decode(s)?));
    }
    s.require(n + 1)?;
    let s_n = partial_sum(s, n)?;
    let s_next = partial_sum(s, n + 1)?;
    Ok(Enclosure::hull(s_n, s_next))
}

/// Tightest enclosure available from the stored digits.
pub fn enclose_all(s: &DigitSeq) -> Result<Enclosure> {
    match s.tail() {
        Tail::Terminated => Ok(Enclosure::point(decode(s)?)),
        Tail::Extendable if s.len() >= 2 => enclose(s, s.len() - 1),
        Tail::Extendable => match s.digits().first() {
            // Only d_1 is known: x lies in the closure of I_(d_1).
            Some(d) => {
                let d = Rational::from_integer(BigInt::from_biguint(Sign::Plus, d.clone()));
                let one = exact::int(1);
                Ok(Enclosure::hull(&one / (&d + &one), &one / d))
            }
            None => Ok(Enclosure::new(Rational::zero(), exact::int(1))?),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn seq(s: &str) -> DigitSeq {
        s.parse().unwrap()
    }

    #[test]
    fn step_examples() {
        let r = step(&rat(1, 2)).unwrap();
        assert_eq!(r.digit, ExtDigit::Finite(2u32.into()));
        assert_eq!(r.remainder, rat(0, 1));

        let r = step(&rat(0, 1)).unwrap();
        assert_eq!(r.digit, ExtDigit::Infinity);
        assert_eq!(r.remainder, rat(0, 1));

        let r = step(&rat(2, 3)).unwrap();
        assert_eq!(r.digit, ExtDigit::Finite(1u32.into()));
        assert_eq!(r.remainder, rat(1, 3));

        assert!(matches!(step(&rat(3, 2)), Err(Error::OutOfDomain(_))));
        assert!(matches!(step(&rat(-1, 2)), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&rat(5, 7)).unwrap(), seq("1,3,7"));
        assert_eq!(encode(&rat(0, 1)).unwrap(), DigitSeq::zero());
        assert_eq!(encode(&rat(97, 400)).unwrap(), seq("4,33,100"));
        assert_eq!(encode(&rat(1, 1)).unwrap(), seq("1"));
        assert!(encode(&rat(5, 4)).is_err());
    }

    #[test]
    fn encode_agrees_with_iterated_step() {
        let mut x = rat(97, 400);
        let mut digits = Vec::new();
        loop {
            let r = step(&x).unwrap();
            match r.digit {
                ExtDigit::Finite(d) => digits.push(d),
                ExtDigit::Infinity => break,
            }
            x = r.remainder;
        }
        assert_eq!(
            DigitSeq::terminated(digits).unwrap(),
            encode(&rat(97, 400)).unwrap()
        );
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode(&seq("1")).unwrap(), rat(1, 1));
        assert_eq!(decode(&seq("1,3,7")).unwrap(), rat(5, 7));
        assert_eq!(decode(&seq("2,3,4")).unwrap(), rat(3, 8));
        assert_eq!(decode(&DigitSeq::zero()).unwrap(), rat(0, 1));
        assert_eq!(decode(&seq("2,5,7")).unwrap(), rat(29, 70));
        assert!(decode(&seq("2,3,...")).is_err());
    }

    #[test]
    fn tail_bound_examples() {
        let s = seq("2,3,4,5,6,...");
        assert_eq!(tail_bound(&s, 4).unwrap(), rat(1, 720));
        assert_eq!(tail_bound(&s, 3).unwrap(), rat(1, 120));
        assert_eq!(tail_bound(&seq("3,8,21"), 2).unwrap(), rat(1, 504));
        assert_eq!(tail_bound(&seq("3,8,21"), 3).unwrap(), rat(0, 1));
        assert!(matches!(
            tail_bound(&seq("2,3,..."), 2),
            Err(Error::InsufficientPrefix {
                needed: 3,
                available: 2
            })
        ));
    }

    #[test]
    fn enclose_examples() {
        let e = enclose(&seq("2,3,4,5,..."), 3).unwrap();
        assert_eq!(e.lo(), &rat(11, 30));
        assert_eq!(e.hi(), &rat(3, 8));
        assert!(e.lo_f64() < (-1f64).exp() && (-1f64).exp() < e.hi_f64());

        let e = enclose(&seq("3,8,21"), 3).unwrap();
        assert_eq!(e, Enclosure::point(rat(37, 126)));

        // [1/4 - 1/(4*next), 1/4]
        let e = enclose(&seq("4,9,..."), 1).unwrap();
        assert_eq!(e.lo(), &(rat(1, 4) - rat(1, 36)));
        assert_eq!(e.hi(), &rat(1, 4));

        assert!(enclose(&seq("4,..."), 1).is_err());
        assert!(enclose(&seq("4,9,..."), 0).is_err());
    }

    #[test]
    fn enclose_all_uses_every_digit() {
        assert_eq!(
            enclose_all(&seq("3,8,21")).unwrap(),
            Enclosure::point(rat(37, 126))
        );
        let e = enclose_all(&seq("2,3,4,5,...")).unwrap();
        assert_eq!(e, enclose(&seq("2,3,4,5,..."), 3).unwrap());
        let e = enclose_all(&seq("2,...")).unwrap();
        assert_eq!(e, Enclosure::new(rat(1, 3), rat(1, 2)).unwrap());
    }
}
