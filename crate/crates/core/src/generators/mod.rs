//! Exact constructions of the sequence families, all rendered on the binary
//! grid `2^-P`.

mod digital;
mod ls;
mod shift;

pub use digital::{digital_sequence, digital_sequence_with, DigitalParams};
pub use ls::{ls_sequence, LSParams, LSState};
pub use shift::{shift_sequence, shift_sequence_with};
pub(crate) use shift::digits_needed as shift_digits_needed;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Roots;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fixed::mask_bits;
use crate::par::{self, Execution};
use crate::{Error, FixedPoint, PointSet, Result};

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("N must be positive".into()));
    }
    Ok(())
}

/// `x_n = {n alpha}` for `n = 1..=N`, by modular addition of the numerator.
pub fn kronecker(alpha: &FixedPoint, n: usize) -> Result<PointSet> {
    check_n(n)?;
    let bits = alpha.scale_bits();
    let modulus = BigUint::one() << bits as usize;
    let step = alpha.numerator();
    let mut x = BigUint::zero();
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        x += step;
        if x >= modulus {
            x -= &modulus;
        }
        points.push(x.clone());
    }
    PointSet::new(bits, points, format!("kronecker:{}", alpha.to_decimal(20)))
}

/// The golden ratio conjugate `(sqrt 5 - 1) / 2`, truncated to `bits` bits.
pub fn golden(bits: u32) -> FixedPoint {
    let root = (BigUint::from(5u32) << (2 * bits as usize)).sqrt();
    let numerator = (root - (BigUint::one() << bits as usize)) >> 1usize;
    FixedPoint::new(numerator, bits).expect("golden ratio conjugate lies in (0, 1)")
}

/// `{sqrt k}`, truncated to `bits` bits.
pub fn sqrt_frac(k: u64, bits: u32) -> FixedPoint {
    let root = (BigUint::from(k) << (2 * bits as usize)).sqrt();
    FixedPoint::new(mask_bits(&root, bits), bits).expect("masked below 2^bits")
}

/// Radical inverse of `n` in base `b` as an exact fraction `(num, b^digits)`.
pub fn radical_inverse(mut n: u64, b: u64) -> (BigUint, BigUint) {
    let mut num = BigUint::zero();
    let mut den = BigUint::one();
    while n > 0 {
        num = num * b + (n % b);
        den *= b;
        n /= b;
    }
    (num, den)
}

/// Base-`b` van der Corput sequence, `x_n` = radical inverse of `n`,
/// `n = 1..=N`.
pub fn van_der_corput(b: u32, n: usize, bits: u32) -> Result<PointSet> {
    van_der_corput_with(b, n, bits, Execution::default())
}

pub fn van_der_corput_with(b: u32, n: usize, bits: u32, exec: Execution) -> Result<PointSet> {
    if b < 2 {
        return Err(Error::InvalidParams(format!("base must be >= 2, got {b}")));
    }
    check_n(n)?;
    let points = par::flat_map_ranges(exec, 1..n + 1, par::CHUNK, |r| {
        r.map(|i| {
            let (num, den) = radical_inverse(i as u64, u64::from(b));
            (num << bits as usize) / den
        })
        .collect()
    });
    PointSet::new(bits, points, format!("vdc:{b}"))
}

/// Seeded uniform points on the `2^-P` grid; the same seed gives the same set.
pub fn random_points(n: usize, seed: u64, bits: u32) -> Result<PointSet> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n).map(|_| rng.gen_biguint(u64::from(bits))).collect();
    PointSet::new(bits, points, format!("random:{seed}"))
}

/// `{sqrt n}` over the first `N` positive integers that are not perfect
/// squares (squares would all sit at 0).
pub fn sqrt_sequence(n: usize, bits: u32) -> Result<PointSet> {
    sqrt_sequence_with(n, bits, Execution::default())
}

pub fn sqrt_sequence_with(n: usize, bits: u32, exec: Execution) -> Result<PointSet> {
    check_n(n)?;
    // The j-th non-square (1-based) is j + round(sqrt j).
    let points = par::flat_map_ranges(exec, 1..n + 1, 4096, |r| {
        r.map(|j| {
            let j = j as u64;
            let r = (4 * j).sqrt(); // floor(2 sqrt j)
            let nonsquare = j + r.div_ceil(2);
            sqrt_frac(nonsquare, bits).numerator().clone()
        })
        .collect()
    });
    PointSet::new(bits, points, "sqrtn")
}
