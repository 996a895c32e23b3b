use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rational::from_scaled;
use crate::{Error, Result};

/// Canonical coordinate precision in bits.
pub const DEFAULT_SCALE_BITS: u32 = 128;

/// Extra source-base digits read before rounding a non-binary expansion to
/// `2^-P`.
pub const DEFAULT_GUARD_DIGITS: usize = 64;

/// An exact coordinate in `[0, 1)`: `numerator / 2^scale_bits`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPoint {
    numerator: BigUint,
    scale_bits: u32,
}

impl FixedPoint {
    pub fn new(numerator: BigUint, scale_bits: u32) -> Result<Self> {
        if scale_bits == 0 {
            return Err(Error::InvalidParams("scale_bits must be positive".into()));
        }
        if numerator.bits() > u64::from(scale_bits) {
            return Err(Error::InvalidParams(format!(
                "numerator {numerator} is not below 2^{scale_bits}"
            )));
        }
        Ok(Self { numerator, scale_bits })
    }

    pub fn zero(scale_bits: u32) -> Self {
        Self { numerator: BigUint::zero(), scale_bits }
    }

    /// `floor({num/den} * 2^scale_bits)`: the fractional part of a
    /// non-negative rational, truncated to the grid.
    pub fn from_ratio(num: &BigUint, den: &BigUint, scale_bits: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        let frac = num % den;
        let numerator = (frac << scale_bits as usize) / den;
        Self::new(numerator, scale_bits)
    }

    pub fn from_u64_ratio(num: u64, den: u64, scale_bits: u32) -> Result<Self> {
        Self::from_ratio(&BigUint::from(num), &BigUint::from(den), scale_bits)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn scale_bits(&self) -> u32 {
        self.scale_bits
    }

    pub fn to_rational(&self) -> BigRational {
        from_scaled(&self.numerator, self.scale_bits)
    }

    /// Changes the precision, truncating when bits are dropped.
    pub fn rescale(&self, scale_bits: u32) -> Self {
        let numerator = if scale_bits >= self.scale_bits {
            &self.numerator << (scale_bits - self.scale_bits) as usize
        } else {
            &self.numerator >> (self.scale_bits - scale_bits) as usize
        };
        Self { numerator, scale_bits }
    }

    /// Decimal rendering truncated to `sig_digits` significant digits.
    pub fn to_decimal(&self, sig_digits: usize) -> String {
        decimal_string(&self.numerator, self.scale_bits, sig_digits)
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(20))
    }
}

/// Exact decimal expansion of `numerator / 2^bits` (it terminates after
/// `bits` digits), truncated to `sig_digits` significant digits.
pub(crate) fn decimal_string(numerator: &BigUint, bits: u32, sig_digits: usize) -> String {
    if numerator.is_zero() {
        return "0".to_string();
    }
    let scaled = numerator * num_traits::pow(BigUint::from(5u32), bits as usize);
    let digits = scaled.to_str_radix(10);
    let width = bits as usize;
    let padded = format!("{digits:0>width$}");
    let first = padded.find(|c| c != '0').unwrap_or(0);
    let end = (first + sig_digits).min(padded.len());
    let body = padded[..end].trim_end_matches('0');
    format!("0.{body}")
}

/// An ordered list of points sharing one precision, with a text description of
/// how it was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    scale_bits: u32,
    points: Vec<BigUint>,
    provenance: String,
}

impl PointSet {
    pub fn new(scale_bits: u32, points: Vec<BigUint>, provenance: impl Into<String>) -> Result<Self> {
        if scale_bits == 0 {
            return Err(Error::InvalidParams("scale_bits must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::DegenerateInput("a point set needs at least one point".into()));
        }
        if let Some(bad) = points.iter().find(|p| p.bits() > u64::from(scale_bits)) {
            return Err(Error::InvalidParams(format!("point {bad} is not below 2^{scale_bits}")));
        }
        Ok(Self { scale_bits, points, provenance: provenance.into() })
    }

    /// Builds from coordinates that must all share one precision.
    pub fn from_points(points: &[FixedPoint], provenance: impl Into<String>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::DegenerateInput("a point set needs at least one point".into()))?;
        let scale_bits = first.scale_bits;
        let mut nums = Vec::with_capacity(points.len());
        for p in points {
            if p.scale_bits != scale_bits {
                return Err(Error::PrecisionMismatch { left: scale_bits, right: p.scale_bits });
            }
            nums.push(p.numerator.clone());
        }
        Ok(Self { scale_bits, points: nums, provenance: provenance.into() })
    }

    /// Exact rational coordinates, truncated to the grid.
    pub fn from_rationals(values: &[BigRational], scale_bits: u32, provenance: impl Into<String>) -> Result<Self> {
        let nums = values
            .iter()
            .map(|v| {
                let n = v.numer().to_biguint().ok_or_else(|| Error::InvalidParams("negative coordinate".into()))?;
                let d = v.denom().to_biguint().unwrap_or_else(BigUint::one);
                Ok(FixedPoint::from_ratio(&n, &d, scale_bits)?.numerator)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(scale_bits, nums, provenance)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn scale_bits(&self) -> u32 {
        self.scale_bits
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn numerators(&self) -> &[BigUint] {
        &self.points
    }

    pub fn into_numerators(self) -> Vec<BigUint> {
        self.points
    }

    /// Point `index` (0-based position in the list).
    pub fn get(&self, index: usize) -> Option<FixedPoint> {
        self.points
            .get(index)
            .map(|n| FixedPoint { numerator: n.clone(), scale_bits: self.scale_bits })
    }

    pub fn iter(&self) -> impl Iterator<Item = FixedPoint> + '_ {
        self.points
            .iter()
            .map(move |n| FixedPoint { numerator: n.clone(), scale_bits: self.scale_bits })
    }

    /// The first `n` points.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::InvalidParams(format!("prefix {n} of a {}-point set", self.len())));
        }
        Ok(Self {
            scale_bits: self.scale_bits,
            points: self.points[..n].to_vec(),
            provenance: self.provenance.clone(),
        })
    }

    /// `2^scale_bits`, the circle length in grid units.
    pub fn modulus(&self) -> BigUint {
        BigUint::one() << self.scale_bits as usize
    }

    pub(crate) fn check_same_scale(&self, other: &PointSet) -> Result<()> {
        if self.scale_bits != other.scale_bits {
            return Err(Error::PrecisionMismatch { left: self.scale_bits, right: other.scale_bits });
        }
        Ok(())
    }
}

/// Reduces `value` modulo `2^bits`.
pub(crate) fn mask_bits(value: &BigUint, bits: u32) -> BigUint {
    if value.bits() <= u64::from(bits) {
        return value.clone();
    }
    let modulus = BigUint::one() << bits as usize;
    value.mod_floor(&modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_numerator() {
        assert!(FixedPoint::new(BigUint::from(16u32), 4).is_err());
        assert!(FixedPoint::new(BigUint::from(15u32), 4).is_ok());
        assert!(FixedPoint::new(BigUint::zero(), 0).is_err());
    }

    #[test]
    fn ratio_takes_fractional_part() {
        let p = FixedPoint::from_u64_ratio(5, 4, 8).unwrap();
        assert_eq!(p.numerator(), &BigUint::from(64u32));
    }

    #[test]
    fn decimal_rendering() {
        let p = FixedPoint::from_u64_ratio(1, 4, 128).unwrap();
        assert_eq!(p.to_decimal(20), "0.25");
        let third = FixedPoint::from_u64_ratio(1, 3, 128).unwrap();
        assert_eq!(third.to_decimal(20), "0.33333333333333333333");
        let tiny = FixedPoint::new(BigUint::one(), 128).unwrap();
        assert!(tiny.to_decimal(5).starts_with("0.0000000000000000000000000000000000000029387"));
        assert_eq!(FixedPoint::zero(8).to_decimal(20), "0");
    }

    #[test]
    fn point_set_shares_scale() {
        let a = FixedPoint::from_u64_ratio(1, 2, 8).unwrap();
        let b = FixedPoint::from_u64_ratio(1, 2, 16).unwrap();
        assert!(matches!(
            PointSet::from_points(&[a.clone(), b], "x"),
            Err(Error::PrecisionMismatch { .. })
        ));
        assert!(PointSet::from_points(&[], "x").is_err());
        let ps = PointSet::from_points(&[a.clone(), a], "x").unwrap();
        assert_eq!(ps.len(), 2);
    }

    #[test]
    fn rescale_round_trip() {
        let p = FixedPoint::from_u64_ratio(3, 8, 8).unwrap();
        assert_eq!(p.rescale(64).rescale(8), p);
        assert_eq!(p.rescale(2).numerator(), &BigUint::from(1u32));
    }
}
