use num_bigint::BigUint;
use num_traits::Zero;

use crate::par::{self, Execution};
use crate::words::DigitStream;
use crate::{Error, PointSet, Result};

/// Source digits needed for `bits` binary digits plus `guard` extra ones.
pub(crate) fn digits_needed(base: u32, bits: u32, guard: usize) -> usize {
    (f64::from(bits) / f64::from(base).log2()).ceil() as usize + guard
}

/// `x_n = {b^n alpha} = 0.a_{n+1} a_{n+2} ...` for `n = 1..=N`, each read to
/// `ceil(P / log2 b) + guard` digits and truncated to the `2^-P` grid.
pub fn shift_sequence(stream: &dyn DigitStream, n: usize, guard: usize, bits: u32) -> Result<PointSet> {
    shift_sequence_with(stream, n, guard, bits, Execution::default())
}

pub fn shift_sequence_with(
    stream: &dyn DigitStream,
    n: usize,
    guard: usize,
    bits: u32,
    exec: Execution,
) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidParams("N must be positive".into()));
    }
    if guard == 0 {
        return Err(Error::InvalidParams("guard digits must be positive".into()));
    }
    let b = stream.base();
    let width = digits_needed(b, bits, guard);
    // x_N reads digit indices N..N+width-1.
    let last = n + width - 1;
    if stream.digit(last).is_none() {
        return Err(Error::InsufficientDigits { stream: stream.descriptor(), position: last + 1 });
    }
    let top = num_traits::pow(BigUint::from(b), width - 1);
    let denom = &top * b;
    let digit = |i: usize| stream.digit(i).expect("checked above: stream covers every index up to the last point");
    let points = par::flat_map_ranges(exec, 1..n + 1, par::CHUNK, |r| {
        let mut out = Vec::with_capacity(r.len());
        let start = r.start;
        let mut window = BigUint::zero();
        for i in start..start + width {
            window = window * b + digit(i);
        }
        for idx in r {
            if idx > start {
                let leading = digit(idx - 1);
                window = (window - &top * leading) * b + digit(idx + width - 1);
            }
            out.push((&window << bits as usize) / &denom);
        }
        out
    });
    PointSet::new(bits, points, format!("shift:{},{b}", stream.descriptor()))
}
