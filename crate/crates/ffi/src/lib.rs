//! C ABI for `pierce-core`.
//!
//! Every function returns a [`PierceStatus`] and writes results through out
//! pointers. Digit sequences and rules are opaque handles owned by the
//! caller and released with their `_free` function. Strings returned
//! through `char **` are released with [`pierce_string_free`]. After a
//! failure, [`pierce_last_error`] describes it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigUint;
use pierce_core::calendar::{self, IntercalationRule};
use pierce_core::error::Error;
use pierce_core::exact;
use pierce_core::intervals;
use pierce_core::law::{self, GrowthSpec};
use pierce_core::pierce;
use pierce_core::real::Precision;
use pierce_core::DigitSeq;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PierceStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfDomain = 4,
    InsufficientPrefix = 5,
    InvalidRule = 6,
    InvalidParameter = 7,
    InvalidDigits = 8,
    PrecisionExhausted = 9,
    Overflow = 10,
    Panic = 11,
    Other = 12,
}

/// Opaque digit sequence.
pub struct PierceDigits(DigitSeq);

/// Opaque intercalation rule.
pub struct PierceRule(IntercalationRule);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PierceStatus {
    match e {
        Error::Parse(_) => PierceStatus::Parse,
        Error::OutOfDomain(_)
        | Error::NotInImage(_)
        | Error::BadRange(_)
        | Error::DegenerateInput(_) => PierceStatus::OutOfDomain,
        Error::InsufficientPrefix { .. } => PierceStatus::InsufficientPrefix,
        Error::InvalidRule(_) => PierceStatus::InvalidRule,
        Error::InvalidParameter(_) | Error::EmptyGenerator => PierceStatus::InvalidParameter,
        Error::NotMonotone { .. }
        | Error::MalformedTail { .. }
        | Error::NonPositiveDigit { .. }
        | Error::IllFormedReplacement { .. }
        | Error::ThetaViolation { .. } => PierceStatus::InvalidDigits,
        Error::PrecisionExhausted(_) => PierceStatus::PrecisionExhausted,
        Error::NonTermination(_) => PierceStatus::Other,
    }
}

struct Fail(PierceStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PierceStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PierceStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PierceStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(
            PierceStatus::NullPointer,
            "null string argument".into(),
        ));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(PierceStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(PierceStatus::NullPointer, "null handle".into()))
}

unsafe fn store<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(PierceStatus::NullPointer, "null out pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c =
        CString::new(s).map_err(|_| Fail(PierceStatus::Other, "string holds a nul byte".into()))?;
    store(out, c.into_raw())
}

fn precision(bits: u32) -> Result<Precision, Fail> {
    if bits == 0 {
        Ok(Precision::DEFAULT)
    } else {
        Ok(Precision::new(bits)?)
    }
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pierce_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pierce_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"3,8,21,..."`; `"0"` is the empty expansion of zero.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_digits_parse(
    text: *const c_char,
    out: *mut *mut PierceDigits,
) -> PierceStatus {
    guard(|| {
        let s: DigitSeq = read_str(text)?.parse()?;
        store(out, Box::into_raw(Box::new(PierceDigits(s))))
    })
}

/// Digits of the rational `"p/q"` in [0, 1].
///
/// # Safety
/// `rational` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_digits_encode(
    rational: *const c_char,
    out: *mut *mut PierceDigits,
) -> PierceStatus {
    guard(|| {
        let x = exact::parse_rational(read_str(rational)?)?;
        let s = pierce::encode(&x)?;
        store(out, Box::into_raw(Box::new(PierceDigits(s))))
    })
}

/// First `n` digits with growth rate `alpha` (a rational or `"inf"`).
/// `precision_bits` of 0 selects the default.
///
/// # Safety
/// `alpha` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_digits_construct(
    alpha: *const c_char,
    n: usize,
    precision_bits: u32,
    out: *mut *mut PierceDigits,
) -> PierceStatus {
    guard(|| {
        let spec: GrowthSpec = read_str(alpha)?.parse()?;
        let s = law::construct_digits(&spec, n, precision(precision_bits)?)?;
        store(out, Box::into_raw(Box::new(PierceDigits(s))))
    })
}

/// # Safety
/// `digits` must be a handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn pierce_digits_free(digits: *mut PierceDigits) {
    if !digits.is_null() {
        drop(Box::from_raw(digits));
    }
}

/// Number of stored digits.
///
/// # Safety
/// `digits` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_digits_len(
    digits: *const PierceDigits,
    out: *mut usize,
) -> PierceStatus {
    guard(|| store(out, deref(digits)?.0.len()))
}

/// Whether the sequence ends (as opposed to being an extendable prefix).
///
/// # Safety
/// `digits` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_digits_is_terminated(
    digits: *const PierceDigits,
    out: *mut bool,
) -> PierceStatus {
    guard(|| store(out, deref(digits)?.0.is_terminated()))
}

/// Comma-separated form, with `,...` on extendable prefixes.
///
/// # Safety
/// `digits` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_digits_to_string(
    digits: *const PierceDigits,
    out: *mut *mut c_char,
) -> PierceStatus {
    guard(|| store_string(out, deref(digits)?.0.to_string()))
}

/// Exact value `"p/q"` of a terminated sequence.
///
/// # Safety
/// `digits` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_digits_decode(
    digits: *const PierceDigits,
    out: *mut *mut c_char,
) -> PierceStatus {
    guard(|| {
        let v = pierce::decode(&deref(digits)?.0)?;
        store_string(out, exact::format_rational(&v))
    })
}

/// Fundamental interval as `{"generator","left","right","leftOpen","rightOpen"}`.
///
/// # Safety
/// `digits` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_digits_interval_json(
    digits: *const PierceDigits,
    out: *mut *mut c_char,
) -> PierceStatus {
    guard(|| {
        let i = intervals::fundamental_interval(&deref(digits)?.0)?;
        let notation = i.notation();
        let json = format!(
            r#"{{"generator":"{}","left":"{}","right":"{}","leftOpen":{},"rightOpen":{},"notation":"{}"}}"#,
            i.generator(),
            exact::format_rational(i.left()),
            exact::format_rational(i.right()),
            i.left_open(),
            i.right_open(),
            notation
        );
        store_string(out, json)
    })
}

/// Parses `"julian"`, `"gregorian"` or comma-separated terms.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_rule_parse(
    text: *const c_char,
    out: *mut *mut PierceRule,
) -> PierceStatus {
    guard(|| {
        let r: IntercalationRule = read_str(text)?.parse()?;
        store(out, Box::into_raw(Box::new(PierceRule(r))))
    })
}

/// The rule whose terms are the given digits.
///
/// # Safety
/// `digits` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_rule_from_digits(
    digits: *const PierceDigits,
    out: *mut *mut PierceRule,
) -> PierceStatus {
    guard(|| {
        let r = IntercalationRule::from_digits(&deref(digits)?.0);
        store(out, Box::into_raw(Box::new(PierceRule(r))))
    })
}

/// # Safety
/// `rule` must be a handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn pierce_rule_free(rule: *mut PierceRule) {
    if !rule.is_null() {
        drop(Box::from_raw(rule));
    }
}

/// # Safety
/// `rule` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_rule_is_leap(
    rule: *const PierceRule,
    year: u64,
    out: *mut bool,
) -> PierceStatus {
    guard(|| store(out, calendar::is_leap(&deref(rule)?.0, year)?))
}

/// Leap years among `1..=through`, by the floor-sum formula.
///
/// # Safety
/// `rule` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_rule_count(
    rule: *const PierceRule,
    through: u64,
    out: *mut u64,
) -> PierceStatus {
    guard(|| {
        let n = calendar::count_leaps_formula(&deref(rule)?.0, &BigUint::from(through))?;
        let n = u64::try_from(&n)
            .map_err(|_| Fail(PierceStatus::Overflow, "count exceeds 64 bits".into()))?;
        store(out, n)
    })
}

/// Trajectory CSV for growth rate `alpha`; see the `trajectory` command.
/// `precision_bits` of 0 selects the default.
///
/// # Safety
/// `alpha` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pierce_trajectory_csv(
    alpha: *const c_char,
    rmax: usize,
    guard_digits: usize,
    precision_bits: u32,
    out: *mut *mut c_char,
) -> PierceStatus {
    guard(|| {
        let spec: GrowthSpec = read_str(alpha)?.parse()?;
        let rows = law::trajectory(&spec, rmax, guard_digits, precision(precision_bits)?)?;
        store_string(out, pierce_core::cli::trajectory_csv(&rows))
    })
}
