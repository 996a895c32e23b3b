//! The pair correlation statistic `F_N(s)` and related point-set measures.
//!
//! Counting sorts the coordinates once and then walks two monotone cursors
//! around the circle: one for partners ahead of `x_i` without wrapping and one
//! for partners reached by wrapping past 1. The cost is `O(N log N + N)` per
//! threshold, independent of how many pairs qualify.

use std::collections::{BTreeMap, HashSet};
use std::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::par::{self, Execution};
use crate::rational::{from_scaled, to_f64};
use crate::{Error, FixedPoint, PointSet, Result};

/// Circular distance `min(|x - y|, 1 - |x - y|)` as an exact rational.
pub fn frac_dist(x: &FixedPoint, y: &FixedPoint) -> Result<BigRational> {
    if x.scale_bits() != y.scale_bits() {
        return Err(Error::PrecisionMismatch { left: x.scale_bits(), right: y.scale_bits() });
    }
    let bits = x.scale_bits();
    let (a, b) = (x.numerator(), y.numerator());
    let diff = if a >= b { a - b } else { b - a };
    let modulus = BigUint::one() << bits as usize;
    let other = &modulus - &diff;
    Ok(from_scaled(&diff.min(other), bits))
}

/// One evaluation of `F_N(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationSample {
    pub s: BigRational,
    pub n: usize,
    /// Ordered pairs `(l, m)`, `l != m`, with `||x_l - x_m|| <= s/N`.
    pub count: u128,
    pub f_value: BigRational,
}

impl CorrelationSample {
    fn new(s: BigRational, n: usize, count: u128) -> Self {
        let f_value = BigRational::new(BigInt::from(count), BigInt::from(n));
        Self { s, n, count, f_value }
    }

    pub fn f64(&self) -> f64 {
        to_f64(&self.f_value)
    }
}

impl Serialize for CorrelationSample {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CorrelationSample", 4)?;
        st.serialize_field("s", &self.s.to_string())?;
        st.serialize_field("count", &self.count.to_string())?;
        st.serialize_field("f", &self.f_value.to_string())?;
        st.serialize_field("f_approx", &self.f64())?;
        st.end()
    }
}

/// Coordinates sorted once, shared by every threshold evaluated on them.
#[derive(Clone, Debug)]
pub struct SortedCircle {
    scale_bits: u32,
    sorted: Vec<BigUint>,
    modulus: BigUint,
}

impl SortedCircle {
    pub fn new(ps: &PointSet, exec: Execution) -> Self {
        let mut sorted = ps.numerators().to_vec();
        par::sort_unstable(exec, &mut sorted);
        Self { scale_bits: ps.scale_bits(), sorted, modulus: ps.modulus() }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[BigUint] {
        &self.sorted
    }

    /// Threshold `s / N` in grid units, rounded up to the grid.
    pub fn threshold(&self, s: &BigRational) -> BigUint {
        scaled_threshold(s, self.len(), self.scale_bits)
    }

    /// Ordered pairs at circular distance at most `d` grid units.
    pub fn count_within(&self, d: &BigUint, exec: Execution) -> u128 {
        let n = self.sorted.len();
        if n < 2 {
            return 0;
        }
        // Any two points are within half a turn of each other.
        if d << 1usize >= self.modulus {
            return (n as u128) * (n as u128 - 1);
        }
        2 * par::sum_ranges(exec, 0..n, |r| self.forward_count(d, r))
    }

    /// For each `i` in `range`, the number of points reached by moving forward
    /// from `x_i` by at most `d` (each unordered pair is seen from exactly one
    /// end since `d` is below half a turn).
    fn forward_count(&self, d: &BigUint, range: Range<usize>) -> u128 {
        let a = &self.sorted;
        let n = a.len();
        let first_key = &a[range.start] + d;
        let mut ahead = a.partition_point(|x| x <= &first_key);
        let mut wrapped = if first_key >= self.modulus {
            let k = &first_key - &self.modulus;
            a.partition_point(|x| x <= &k)
        } else {
            0
        };
        let mut total = 0u128;
        for i in range {
            let key = &a[i] + d;
            while ahead < n && a[ahead] <= key {
                ahead += 1;
            }
            total += (ahead - i - 1) as u128;
            if key >= self.modulus {
                let k = key - &self.modulus;
                while wrapped < n && a[wrapped] <= k {
                    wrapped += 1;
                }
                total += wrapped as u128;
            }
        }
        total
    }
}

/// `ceil(s * 2^P / N)`: a grid value stands for a real truncated into
/// `[x, x + 2^-P)`, so an off-grid threshold is rounded up and pairs at an
/// exact rational distance `s/N` survive truncation.
pub(crate) fn scaled_threshold(s: &BigRational, n: usize, scale_bits: u32) -> BigUint {
    let numer = s.numer() << scale_bits as usize;
    let denom = s.denom() * BigInt::from(n);
    numer.div_ceil(&denom).to_biguint().unwrap_or_default()
}

fn check_s(s: &BigRational) -> Result<()> {
    if s.is_negative() {
        return Err(Error::InvalidParams(format!("s must be non-negative, got {s}")));
    }
    Ok(())
}

fn check_n(ps: &PointSet) -> Result<()> {
    if ps.len() < 2 {
        return Err(Error::DegenerateInput("pair correlation needs N >= 2".into()));
    }
    Ok(())
}

/// `F_N(s)`: ordered pairs within `s/N` (ties included), divided by `N`.
pub fn pair_correlation(ps: &PointSet, s: &BigRational) -> Result<CorrelationSample> {
    pair_correlation_with(ps, s, Execution::default())
}

pub fn pair_correlation_with(ps: &PointSet, s: &BigRational, exec: Execution) -> Result<CorrelationSample> {
    check_n(ps)?;
    check_s(s)?;
    let circle = SortedCircle::new(ps, exec);
    let count = circle.count_within(&circle.threshold(s), exec);
    Ok(CorrelationSample::new(s.clone(), ps.len(), count))
}

/// `F_N(s)` for every `s` in a strictly ascending, non-negative grid; the
/// coordinates are sorted once for the whole grid.
pub fn pair_correlation_curve(ps: &PointSet, s_grid: &[BigRational]) -> Result<Vec<CorrelationSample>> {
    pair_correlation_curve_with(ps, s_grid, Execution::default())
}

pub fn pair_correlation_curve_with(
    ps: &PointSet,
    s_grid: &[BigRational],
    exec: Execution,
) -> Result<Vec<CorrelationSample>> {
    if s_grid.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    if s_grid[0].is_negative() {
        return Err(Error::InvalidGrid("grid values must be non-negative".into()));
    }
    if s_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid("grid must be strictly ascending".into()));
    }
    check_n(ps)?;
    let circle = SortedCircle::new(ps, exec);
    Ok(s_grid
        .iter()
        .map(|s| {
            let count = circle.count_within(&circle.threshold(s), exec);
            CorrelationSample::new(s.clone(), ps.len(), count)
        })
        .collect())
}

/// Unordered index pairs `(i, j)`, `i < j` (0-based positions in `ps`), at
/// circular distance at most `s/N`. Output size is the pair count, so use it
/// only for small thresholds.
pub fn close_pairs(ps: &PointSet, s: &BigRational) -> Result<Vec<(usize, usize)>> {
    check_n(ps)?;
    check_s(s)?;
    let modulus = ps.modulus();
    let d = scaled_threshold(s, ps.len(), ps.scale_bits());
    let mut order: Vec<usize> = (0..ps.len()).collect();
    let nums = ps.numerators();
    order.sort_by(|&x, &y| nums[x].cmp(&nums[y]));
    let a: Vec<&BigUint> = order.iter().map(|&i| &nums[i]).collect();
    let n = a.len();
    let mut out = Vec::new();
    let push = |out: &mut Vec<(usize, usize)>, p: usize, q: usize| {
        let (x, y) = (order[p], order[q]);
        out.push((x.min(y), x.max(y)));
    };
    if &d << 1usize >= modulus {
        for p in 0..n {
            for q in p + 1..n {
                push(&mut out, p, q);
            }
        }
    } else {
        for p in 0..n {
            let key = a[p] + &d;
            let mut q = p + 1;
            while q < n && a[q] <= &key {
                push(&mut out, p, q);
                q += 1;
            }
            if key >= modulus {
                let k = key - &modulus;
                let mut q = 0;
                while q < p && a[q] <= &k {
                    push(&mut out, p, q);
                    q += 1;
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `max_k | #{x_n in [k/bins, (k+1)/bins)} / N - 1/bins |`.
pub fn equidist_deviation(ps: &PointSet, bins: u64) -> Result<BigRational> {
    if bins == 0 {
        return Err(Error::InvalidParams("bins must be positive".into()));
    }
    let bits = ps.scale_bits() as usize;
    let mut counts: BTreeMap<BigUint, u64> = BTreeMap::new();
    for x in ps.numerators() {
        // Off-grid bin edges k/bins are resolved the same way as thresholds.
        *counts.entry((x * bins + (bins - 1)) >> bits).or_default() += 1;
    }
    let n = BigInt::from(ps.len());
    let expected = BigRational::new(BigInt::one(), BigInt::from(bins));
    let mut worst = if (counts.len() as u64) < bins { expected.clone() } else { BigRational::zero() };
    for &c in counts.values() {
        let dev = (BigRational::new(BigInt::from(c), n.clone()) - &expected).abs();
        if dev > worst {
            worst = dev;
        }
    }
    Ok(worst)
}

/// Distinct coordinate values of `a` that also occur in `b`, divided by `N_a`.
pub fn intersection_fraction(a: &PointSet, b: &PointSet) -> Result<BigRational> {
    a.check_same_scale(b)?;
    let theirs: HashSet<&BigUint> = b.numerators().iter().collect();
    let ours: HashSet<&BigUint> = a.numerators().iter().collect();
    let shared = ours.iter().filter(|v| theirs.contains(*v)).count();
    Ok(BigRational::new(BigInt::from(shared), BigInt::from(a.len())))
}
