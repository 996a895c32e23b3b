//! Small helpers around [`BigRational`] used for thresholds, tolerances and
//! reported statistics.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Parses `p/q`, a decimal (`0.25`, `-1.5e0` is not accepted) or an integer
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: `{text}`"));
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// `floor(r * 2^bits)` for a non-negative rational.
pub fn floor_scaled(r: &BigRational, bits: u32) -> BigUint {
    debug_assert!(!r.is_negative());
    let scaled = r.numer() << bits as usize;
    let q = scaled / r.denom();
    q.to_biguint().unwrap_or_default()
}

/// `numerator / 2^bits` as an exact rational.
pub fn from_scaled(numerator: &BigUint, bits: u32) -> BigRational {
    BigRational::new(
        BigInt::from_biguint(Sign::Plus, numerator.clone()),
        BigInt::one() << bits as usize,
    )
}

/// Lossy conversion for display and summary statistics.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `2^-k` as a rational.
pub fn pow2_neg(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k as usize)
}
