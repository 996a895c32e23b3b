use std::path::Path;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::par::{self, Execution};
use crate::{Error, PointSet, Result};

/// Generator matrix of a one-dimensional digital sequence over `Z/bZ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitalParams {
    pub base: u32,
    /// `m_max x m_max`; row `i` produces the digit at `b^-(i+1)`.
    pub matrix: Vec<Vec<u32>>,
    /// Quality parameter, descriptive only.
    pub t: u32,
}

fn is_prime(b: u32) -> bool {
    b >= 2 && (2..).take_while(|d: &u32| d * d <= b).all(|d| !b.is_multiple_of(d))
}

impl DigitalParams {
    pub fn new(base: u32, matrix: Vec<Vec<u32>>, t: u32) -> Result<Self> {
        if !is_prime(base) {
            return Err(Error::UnsupportedBase(base));
        }
        let m = matrix.len();
        if m == 0 || matrix.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidParams("generator matrix must be square and non-empty".into()));
        }
        if matrix.iter().flatten().any(|&e| e >= base) {
            return Err(Error::InvalidParams(format!("matrix entries must lie in 0..{base}")));
        }
        Ok(Self { base, matrix, t })
    }

    pub fn identity(base: u32, m: usize) -> Result<Self> {
        let matrix = (0..m).map(|i| (0..m).map(|j| u32::from(i == j)).collect()).collect();
        Self::new(base, matrix, 0)
    }

    /// Identity with its last row replaced by the row above it, so two rows
    /// coincide and `t = 1`.
    pub fn duplicated_row(base: u32, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams("a duplicated row needs m >= 2".into()));
        }
        let mut p = Self::identity(base, m)?;
        p.matrix[m - 1] = p.matrix[m - 2].clone();
        p.t = 1;
        Ok(p)
    }

    /// Plain text, one row per line, space-separated digits.
    pub fn parse_matrix(base: u32, text: &str) -> Result<Self> {
        let matrix = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| tok.parse::<u32>().map_err(|_| Error::Parse(format!("bad matrix entry `{tok}`"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let t = 0;
        Self::new(base, matrix, t)
    }

    pub fn from_file(base: u32, path: &Path) -> Result<Self> {
        Self::parse_matrix(base, &std::fs::read_to_string(path)?)
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// `b^m_max`, or `None` if it overflows.
    pub fn capacity(&self) -> Option<u64> {
        u64::from(self.base).checked_pow(self.size() as u32)
    }

    /// Digits `y_{n,1..m}` of point `n` and their integer value over `b^m`.
    fn point(&self, n: u64) -> BigUint {
        let b = u64::from(self.base);
        let m = self.size();
        let mut digits = vec![0u64; m];
        let mut rest = n;
        for d in digits.iter_mut() {
            *d = rest % b;
            rest /= b;
        }
        let mut value = BigUint::zero();
        for row in &self.matrix {
            let y = row.iter().zip(&digits).map(|(&c, &d)| u64::from(c) * d).sum::<u64>() % b;
            value = value * b + y;
        }
        value
    }
}

/// Points `y_0, ..., y_{N-1}` of the digital sequence: the base-`b` digits of
/// `n` (lowest first) times the generator matrix, placed at `b^-1, b^-2, ...`.
pub fn digital_sequence(p: &DigitalParams, n: usize, bits: u32) -> Result<PointSet> {
    digital_sequence_with(p, n, bits, Execution::default())
}

pub fn digital_sequence_with(p: &DigitalParams, n: usize, bits: u32, exec: Execution) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidParams("N must be positive".into()));
    }
    if p.capacity().is_some_and(|cap| (n as u64) > cap) {
        return Err(Error::InvalidParams(format!(
            "N = {n} exceeds b^m = {}^{}",
            p.base,
            p.size()
        )));
    }
    let denom = num_traits::pow(BigUint::from(p.base), p.size());
    let points = par::flat_map_ranges(exec, 0..n, par::CHUNK, |r| {
        r.map(|i| (p.point(i as u64) << bits as usize) / &denom).collect()
    });
    PointSet::new(bits, points, format!("digital:{},{}x{}", p.base, p.size(), p.size()))
}
