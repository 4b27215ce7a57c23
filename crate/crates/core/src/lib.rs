//! Exact Pierce expansions, the leap-year rules they generate, and
//! certified diagnostics for the drift of those rules.
//!
//! All arithmetic on digits, years and rationals is exact. Logarithms,
//! exponentials and square roots are returned as rational enclosures.

pub mod calendar;
pub mod cli;
pub mod digits;
pub mod error;
pub mod exact;
pub mod intervals;
pub mod law;
pub mod pierce;
pub mod real;

pub use calendar::IntercalationRule;
pub use digits::{DigitSeq, ExtDigit, Tail};
pub use error::{Error, Result};
pub use exact::{Enclosure, Rational};
pub use intervals::FundamentalInterval;
pub use law::GrowthSpec;
pub use real::Precision;
