//! The Stoneham number `alpha_{2,3} = sum_{m>=1} 1 / (3^m 2^(3^m))`, the
//! orbit `{2^n alpha}`, and its ternary skeleton
//! `z_0 = 0, z_n = {2 z_{n-1} + r_n}` with `r_n = 1/n` when `n` is a power of
//! 3 and `0` otherwise.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::correlation::close_pairs;
use crate::par::{self, Execution};
use crate::words::DigitStream;
use crate::{Error, PointSet, Result, DEFAULT_SCALE_BITS};

const GUARD_BITS: u32 = 64;

/// Largest index range `verify_z_structure` will enumerate.
pub const MAX_Z_INDICES: u64 = 3u64.pow(15);

/// `alpha_{2,3}` truncated to `bits` binary digits, within two units in the
/// last place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StonehamBits {
    bits: u32,
    numerator: BigUint,
}

impl StonehamBits {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    /// Guaranteed `|numerator / 2^bits - alpha| <= error_ulps * 2^-bits`.
    pub fn error_ulps(&self) -> u32 {
        2
    }

    pub fn to_rational(&self) -> BigRational {
        crate::rational::from_scaled(&self.numerator, self.bits)
    }

    /// `bits` binary digits of `{2^shift alpha}` starting right after the
    /// radix point: `floor(2^(shift + width) alpha) mod 2^width`.
    pub fn window(&self, shift: u32, width: u32) -> Result<BigUint> {
        if shift + width > self.bits {
            return Err(Error::Precision(format!(
                "need {} bits of alpha, have {}",
                shift + width,
                self.bits
            )));
        }
        let lo = (self.bits - shift - width) as usize;
        Ok(extract_bits(&self.numerator.to_u64_digits(), lo, width as usize))
    }
}

/// Bits `lo .. lo + width` of a little-endian limb array.
fn extract_bits(limbs: &[u64], lo: usize, width: usize) -> BigUint {
    let first = lo / 64;
    let last = (lo + width).div_ceil(64);
    let slice: Vec<u64> = (first..last).map(|i| limbs.get(i).copied().unwrap_or(0)).collect();
    let chunk = BigUint::from_slice(
        &slice.iter().flat_map(|l| [*l as u32, (*l >> 32) as u32]).collect::<Vec<_>>(),
    );
    let shifted = chunk >> (lo - first * 64);
    crate::fixed::mask_bits(&shifted, width as u32)
}

impl DigitStream for StonehamBits {
    fn base(&self) -> u32 {
        2
    }

    fn digit(&self, index: usize) -> Option<u32> {
        if index >= self.bits as usize {
            return None;
        }
        Some(u32::from(self.numerator.bit(u64::from(self.bits) - 1 - index as u64)))
    }

    fn descriptor(&self) -> String {
        format!("stoneham:{}", self.bits)
    }
}

/// Floor-correct partial sum of the series at `bits + 64` bits, truncated to
/// `bits`. Terms with `3^m > bits + 64` and the truncation errors together stay
/// below two units in the last place.
pub fn stoneham_bits(bits: u32) -> Result<StonehamBits> {
    if bits < 8 {
        return Err(Error::InvalidParams(format!("need at least 8 bits, got {bits}")));
    }
    let work = u64::from(bits) + u64::from(GUARD_BITS);
    let mut sum = BigUint::zero();
    let mut three_m = 3u64;
    let mut m = 1u32;
    while three_m <= work {
        let term = (BigUint::one() << (work - three_m) as usize) / num_traits::pow(BigUint::from(3u32), m as usize);
        sum += term;
        three_m *= 3;
        m += 1;
    }
    Ok(StonehamBits { bits, numerator: sum >> GUARD_BITS as usize })
}

/// `c / 3^q` in lowest terms, in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TernaryRational {
    numerator: u64,
    exponent: u32,
}

impl TernaryRational {
    pub fn new(mut numerator: u64, mut exponent: u32) -> Result<Self> {
        if exponent > 40 || numerator >= 3u64.pow(exponent) {
            return Err(Error::InvalidParams(format!("{numerator}/3^{exponent} is not in [0, 1)")));
        }
        if numerator == 0 {
            exponent = 0;
        }
        while exponent > 0 && numerator.is_multiple_of(3) {
            numerator /= 3;
            exponent -= 1;
        }
        Ok(Self { numerator, exponent })
    }

    pub fn zero() -> Self {
        Self { numerator: 0, exponent: 0 }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numerator), BigInt::from(3u64.pow(self.exponent)))
    }

    /// `floor(value * 2^bits)`.
    pub fn scaled(&self, bits: u32) -> BigUint {
        (BigUint::from(self.numerator) << bits as usize) / 3u64.pow(self.exponent)
    }
}

fn power_of_three_exponent(n: usize) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut n = n;
    let mut k = 0;
    while n.is_multiple_of(3) {
        n /= 3;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// `z_0, ..., z_{n_max}`.
pub fn z_sequence(n_max: usize) -> Vec<TernaryRational> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut z = TernaryRational::zero();
    out.push(z);
    for n in 1..=n_max {
        let (mut c, mut e) = (u128::from(z.numerator), z.exponent);
        c *= 2;
        if let Some(k) = power_of_three_exponent(n) {
            if k > e {
                c *= 3u128.pow(k - e);
                e = k;
            }
            c += 3u128.pow(e - k);
        }
        let modulus = 3u128.pow(e);
        z = TernaryRational::new((c % modulus) as u64, e).expect("reduced below 3^e");
        out.push(z);
    }
    out
}

/// Outcome of checking the three structural claims on `z_0 .. z_{3^(q+1)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZReport {
    pub q: u32,
    pub indices: usize,
    pub distinct_values: usize,
    /// Every `z_n` is a multiple of `1/3^q`.
    pub multiple_ok: bool,
    /// Every attained value occurs exactly three times.
    pub thrice_ok: bool,
    /// Non-zero values `j/3^e` have `gcd(j, 3) = 1`.
    pub coprime_ok: bool,
    pub counterexample: Option<ZCounterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZCounterexample {
    pub claim: &'static str,
    pub index: usize,
}

impl ZReport {
    pub fn pass(&self) -> bool {
        self.multiple_ok && self.thrice_ok && self.coprime_ok
    }
}

pub fn verify_z_structure(q: u32) -> Result<ZReport> {
    let count = 3u64
        .checked_pow(q + 1)
        .filter(|&c| c <= MAX_Z_INDICES)
        .ok_or_else(|| Error::ResourceLimit(format!("3^{} indices exceed {MAX_Z_INDICES}", q + 1)))?;
    let zs = z_sequence(count as usize - 1);
    let mut counterexample = None;
    let mut note = |claim: &'static str, index: usize| {
        if counterexample.is_none() {
            counterexample = Some(ZCounterexample { claim, index });
        }
    };

    let mut multiple_ok = true;
    let mut coprime_ok = true;
    let mut first_seen: HashMap<TernaryRational, (usize, u32)> = HashMap::new();
    for (n, z) in zs.iter().enumerate() {
        if z.exponent > q {
            multiple_ok = false;
            note("multiple of 1/3^q", n);
        }
        let coprime = if z.numerator == 0 { z.exponent == 0 } else { z.exponent == 0 || z.numerator % 3 != 0 };
        if !coprime {
            coprime_ok = false;
            note("coprime numerator", n);
        }
        first_seen.entry(*z).or_insert((n, 0)).1 += 1;
    }
    let mut thrice_ok = true;
    let mut offenders: Vec<usize> = first_seen.values().filter(|(_, c)| *c != 3).map(|(n, _)| *n).collect();
    offenders.sort_unstable();
    if let Some(&n) = offenders.first() {
        thrice_ok = false;
        note("exactly three occurrences", n);
    }
    Ok(ZReport {
        q,
        indices: zs.len(),
        distinct_values: first_seen.len(),
        multiple_ok,
        thrice_ok,
        coprime_ok,
        counterexample,
    })
}

/// `x_n = {2^n alpha_{2,3}}` for `n = 0 .. 2^w - 1` on the 128-bit grid.
/// `alpha` is computed once at `2^w + 128` bits (or `alpha_bits`) and each
/// point is a 128-bit window of it.
pub fn stoneham_points(w: u32, alpha_bits: Option<u32>) -> Result<PointSet> {
    stoneham_points_with(w, alpha_bits, Execution::default())
}

pub fn stoneham_points_with(w: u32, alpha_bits: Option<u32>, exec: Execution) -> Result<PointSet> {
    if w == 0 || w > 26 {
        return Err(Error::InvalidParams(format!("w must lie in 1..=26, got {w}")));
    }
    let n = 1usize << w;
    let width = DEFAULT_SCALE_BITS;
    let needed = (n as u64 - 1) + u64::from(width) + 1;
    let bits = match alpha_bits {
        Some(b) => b,
        None => u32::try_from(n as u64 + u64::from(width)).map_err(|_| Error::Precision("alpha too long".into()))?,
    };
    if u64::from(bits) < needed {
        return Err(Error::Precision(format!(
            "{bits} bits of alpha leave fewer than {width} exact bits for n = {}; need {needed}",
            n - 1
        )));
    }
    let alpha = stoneham_bits(bits)?;
    let limbs = alpha.numerator.to_u64_digits();
    let points = par::flat_map_ranges(exec, 0..n, 4096, |r| {
        r.map(|i| extract_bits(&limbs, (bits - i as u32 - width) as usize, width as usize)).collect()
    });
    PointSet::new(width, points, format!("stoneham:w={w},bits={bits}"))
}

/// Largest circular distance, over `n <= n_max`, between `x_n` from the bit
/// shift and `z_n + sum_{3^m > n} 2^(n - 3^m) / 3^m`, evaluated on a 256-bit
/// grid.
pub fn recursion_deviation(n_max: usize) -> Result<BigRational> {
    const W: u32 = 256;
    let alpha = stoneham_bits(n_max as u32 + W + 8)?;
    let zs = z_sequence(n_max);
    let modulus = BigUint::one() << W as usize;
    let mut worst = BigUint::zero();
    for (n, z) in zs.iter().enumerate() {
        let shifted = alpha.window(n as u32, W)?;
        let mut predicted = z.scaled(W);
        let mut three_m = 3u64;
        let mut m = 1usize;
        while three_m <= n as u64 + u64::from(W) + 64 {
            if three_m > n as u64 {
                let shift = (n as u64 + u64::from(W)).checked_sub(three_m);
                if let Some(s) = shift {
                    predicted += (BigUint::one() << s as usize) / num_traits::pow(BigUint::from(3u32), m);
                }
            }
            three_m *= 3;
            m += 1;
        }
        predicted %= &modulus;
        let diff = if shifted >= predicted { &shifted - &predicted } else { &predicted - &shifted };
        let circ = diff.clone().min(&modulus - &diff);
        if circ > worst {
            worst = circ;
        }
    }
    Ok(crate::rational::from_scaled(&worst, W))
}

/// Counts of unordered pairs within `1/N` (`N = 2^w`), split by whether
/// their `z` values coincide.
pub fn close_pair_split(w: u32) -> Result<(usize, usize)> {
    let ps = stoneham_points(w, None)?;
    let zs = z_sequence(ps.len() - 1);
    let pairs = close_pairs(&ps, &BigRational::one())?;
    let same = pairs.iter().filter(|(a, b)| zs[*a] == zs[*b]).count();
    Ok((same, pairs.len() - same))
}
