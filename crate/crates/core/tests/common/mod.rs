//! Brute-force oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gapcorr_core::PointSet;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Circular distance of two grid numerators, in grid units.
pub fn circ(a: &BigUint, b: &BigUint, modulus: &BigUint) -> BigUint {
    let d = if a >= b { a - b } else { b - a };
    let other = modulus - &d;
    d.min(other)
}

/// Ordered pairs `l != m` at grid distance `d` with `d - 1 < s * 2^P / N`,
/// i.e. `d <= ceil(s 2^P / N)`, by an `O(N^2)` double loop.
pub fn brute_pair_count(ps: &PointSet, s: &BigRational) -> u128 {
    let modulus = ps.modulus();
    let n = BigInt::from(ps.len());
    let scaled = BigInt::from(modulus.clone()) * s.numer();
    let pts = ps.numerators();
    let mut count = 0u128;
    for (i, a) in pts.iter().enumerate() {
        for (j, b) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = BigInt::from(circ(a, b, &modulus));
            if d.is_zero() || (d - 1) * &n * s.denom() < scaled {
                count += 1;
            }
        }
    }
    count
}

/// Sorted consecutive differences with wraparound, tallied by length.
pub fn naive_gaps(ps: &PointSet) -> BTreeMap<BigUint, usize> {
    let mut v = ps.numerators().to_vec();
    v.sort();
    let modulus = ps.modulus();
    let mut out = BTreeMap::new();
    for i in 0..v.len() {
        let g = if i + 1 < v.len() { &v[i + 1] - &v[i] } else { &modulus - &v[i] + &v[0] };
        *out.entry(g).or_insert(0) += 1;
    }
    out
}

/// Quadruples `(a, b, c, d)` with `a + b = c + d`, by four nested loops.
pub fn brute_energy(set: &[i64]) -> u128 {
    let mut e = 0u128;
    for a in set {
        for b in set {
            for c in set {
                for d in set {
                    if a + b == c + d {
                        e += 1;
                    }
                }
            }
        }
    }
    e
}

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

pub fn from_u64s(bits: u32, v: &[u64]) -> PointSet {
    PointSet::new(bits, v.iter().map(|&x| BigUint::from(x)).collect(), "fixture").unwrap()
}

/// Gap classes as a length -> multiplicity map.
pub fn lengths_as_map(p: &gapcorr_core::GapProfile) -> BTreeMap<BigUint, usize> {
    p.gaps.iter().map(|g| (g.length.clone(), g.multiplicity)).collect()
}

pub fn one() -> BigRational {
    BigRational::one()
}
