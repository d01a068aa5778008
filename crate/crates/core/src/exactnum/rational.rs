//! Text form and size accounting for exact rationals.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::{Error, Exact, Result};

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Exact> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
    let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Exact::new(num, den))
}

/// Parses a comma-separated list such as `"9/2,7/2,3/2,1/2"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Exact>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

/// Lossless `"p/q"` form; the denominator is always written, even when it is 1.
pub fn format_exact(value: &Exact) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Larger of the numerator and denominator bit lengths.
pub fn bit_size(value: &Exact) -> u64 {
    value.numer().abs().bits().max(value.denom().bits())
}

pub fn max_bit_size<'a>(values: impl IntoIterator<Item = &'a Exact>) -> u64 {
    values.into_iter().map(bit_size).max().unwrap_or(0)
}

pub fn ratio(num: i64, den: i64) -> Exact {
    Exact::new(BigInt::from(num), BigInt::from(den))
}
