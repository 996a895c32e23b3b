use num_bigint::BigUint;
use num_traits::One;

use crate::{Error, PointSet, Result};

/// Extra working bits carried through the LS construction before truncation.
const WORK_GUARD_BITS: u32 = 64;

/// Parameters of an LS-sequence: `L` long intervals of length `beta` and `S`
/// short ones of length `beta^2`, with `L beta + S beta^2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSParams {
    pub l: u32,
    pub s: u32,
    /// `beta` on the `2^-(P + 64)` working grid.
    beta: BigUint,
    work_bits: u32,
}

impl LSParams {
    pub fn new(l: u32, s: u32, bits: u32) -> Result<Self> {
        if l == 0 || l + s < 2 {
            return Err(Error::InvalidParams(format!("LS needs L >= 1 and L + S >= 2, got L={l}, S={s}")));
        }
        let work_bits = bits + WORK_GUARD_BITS;
        let one = BigUint::one() << work_bits as usize;
        let beta = if s == 0 {
            one / l
        } else {
            // (sqrt(L^2 + 4S) - L) / (2S)
            let disc = BigUint::from(u64::from(l) * u64::from(l) + 4 * u64::from(s));
            let root = (disc << (2 * work_bits as usize)).sqrt();
            (root - BigUint::from(l) * &one) / (2 * u64::from(s))
        };
        Ok(Self { l, s, beta, work_bits })
    }

    pub fn bits(&self) -> u32 {
        self.work_bits - WORK_GUARD_BITS
    }

    /// `beta` truncated to the output grid.
    pub fn beta_numerator(&self) -> BigUint {
        &self.beta >> WORK_GUARD_BITS as usize
    }

    /// `beta^k` truncated to the output grid.
    pub fn beta_pow_numerator(&self, k: u32) -> BigUint {
        self.beta_pow_work(k) >> WORK_GUARD_BITS as usize
    }

    fn beta_pow_work(&self, k: u32) -> BigUint {
        let mut acc = BigUint::one() << self.work_bits as usize;
        for _ in 0..k {
            acc = (acc * &self.beta) >> self.work_bits as usize;
        }
        acc
    }
}

/// Interval counts after `level` refinements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LSState {
    pub level: u32,
    /// Points (= intervals) of the partition.
    pub t: u64,
    /// Intervals of length `beta^level`.
    pub long: u64,
    /// Intervals of length `beta^(level + 1)`.
    pub short: u64,
}

impl LSState {
    pub fn initial() -> Self {
        Self { level: 0, t: 1, long: 1, short: 0 }
    }

    /// Each long interval splits into `L` long and `S` short pieces; short
    /// intervals become the next level's long ones.
    pub fn refine(&self, l: u32, s: u32) -> Self {
        let long = u64::from(l) * self.long + self.short;
        let short = u64::from(s) * self.long;
        Self { level: self.level + 1, t: long + short, long, short }
    }

    pub fn at_level(l: u32, s: u32, level: u32) -> Self {
        (0..level).fold(Self::initial(), |st, _| st.refine(l, s))
    }
}

/// First `N` points of the LS-sequence of points. Level 1 lists the left
/// endpoints of the first partition by magnitude; level `n + 1` appends, block
/// by block, `xi^k + i beta^(n+1) + j beta^(n+2)` over the first `l_n` points,
/// for `(i, 0)` with `i = 1..L-1` and then `(L, j)` with `j = 0..S-1`.
pub fn ls_sequence(p: &LSParams, n: usize) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidParams("N must be positive".into()));
    }
    let (l, s) = (p.l, p.s);
    let work = p.work_bits as usize;
    let mut points: Vec<BigUint> = Vec::with_capacity(n);
    let beta = p.beta.clone();
    let beta2 = (&beta * &beta) >> work;

    // Level 1.
    for i in 0..l {
        points.push(&beta * i);
    }
    for j in 0..s {
        points.push(&beta * l + &beta2 * j);
    }
    let mut state = LSState::at_level(l, s, 1);
    let mut pow_next = beta2.clone(); // beta^(level+1)
    while points.len() < n {
        let pow_after = (&pow_next * &beta) >> work; // beta^(level+2)
        let long = state.long as usize;
        let mut offsets: Vec<BigUint> = (1..l).map(|i| &pow_next * i).collect();
        for j in 0..s {
            offsets.push(&pow_next * l + &pow_after * j);
        }
        'blocks: for off in &offsets {
            for k in 0..long {
                if points.len() >= n {
                    break 'blocks;
                }
                let v = &points[k] + off;
                points.push(v);
            }
        }
        state = state.refine(l, s);
        pow_next = pow_after;
        if state.level > 4096 {
            return Err(Error::ResourceLimit("LS refinement depth".into()));
        }
    }
    points.truncate(n);
    let bits = p.bits();
    let out: Vec<BigUint> = points.into_iter().map(|x| x >> WORK_GUARD_BITS as usize).collect();
    PointSet::new(bits, out, format!("ls:{l},{s}"))
}
