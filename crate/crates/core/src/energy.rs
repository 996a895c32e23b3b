//! Additive energy `E(A) = #{(a, b, c, d) in A^4 : a + b = c + d}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::par::{self, Execution};
use crate::rational::to_f64;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyReport {
    pub n: usize,
    pub energy: u128,
    /// `energy / n^3`.
    pub ratio: BigRational,
}

impl Serialize for EnergyReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("EnergyReport", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("energy", &self.energy.to_string())?;
        st.serialize_field("ratio", &to_f64(&self.ratio))?;
        st.end()
    }
}

fn sum_of_squared_runs<T: Ord + Send>(mut sums: Vec<T>, exec: Execution) -> u128 {
    par::sort_unstable(exec, &mut sums);
    let mut energy = 0u128;
    let mut i = 0;
    while i < sums.len() {
        let mut j = i + 1;
        while j < sums.len() && sums[j] == sums[i] {
            j += 1;
        }
        let r = (j - i) as u128;
        energy += r * r;
        i = j;
    }
    energy
}

/// Energy of a set of distinct integers, `sum_s r(s)^2` over all pairwise
/// sums. `O(N^2 log N)` time and `O(N^2)` memory.
pub fn additive_energy(set: &[BigInt]) -> Result<EnergyReport> {
    additive_energy_with(set, Execution::default())
}

pub fn additive_energy_with(set: &[BigInt], exec: Execution) -> Result<EnergyReport> {
    let n = set.len();
    if n == 0 {
        return Err(Error::InvalidSet("empty set".into()));
    }
    let mut sorted = set.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSet("elements must be distinct".into()));
    }
    let pairs = (n as u128) * (n as u128);
    if pairs > 1 << 31 {
        return Err(Error::ResourceLimit(format!("{n} elements need {pairs} pairwise sums")));
    }
    let small: Option<Vec<i64>> = sorted.iter().map(|a| a.to_i64()).collect();
    let energy = match small {
        Some(v) => {
            let sums = par::flat_map_ranges(exec, 0..n, 64, |r| {
                let v = &v;
                r.flat_map(|i| v.iter().map(move |&b| v[i] as i128 + b as i128)).collect()
            });
            sum_of_squared_runs(sums, exec)
        }
        None => {
            let sums = par::flat_map_ranges(exec, 0..n, 64, |r| {
                let sorted = &sorted;
                r.flat_map(|i| sorted.iter().map(move |b| &sorted[i] + b)).collect()
            });
            sum_of_squared_runs(sums, exec)
        }
    };
    let cube = BigInt::from(n).pow(3);
    Ok(EnergyReport { n, energy, ratio: BigRational::new(BigInt::from(energy), cube) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnergyFamily {
    /// `{1, ..., N}`.
    Range,
    /// `{b, b^2, ..., b^N}`.
    PowersOf(u32),
    /// `N` distinct integers drawn uniformly from `{1, ..., N^3}`.
    RandomSubset { seed: u64 },
}

impl EnergyFamily {
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown energy family `{text}` (range | powers:<b> | random:<seed>)"));
        match text.split_once(':') {
            None if text == "range" => Ok(EnergyFamily::Range),
            Some(("powers", b)) => {
                let b: u32 = b.parse().map_err(|_| bad())?;
                if b < 2 {
                    return Err(Error::InvalidParams("powers family needs b >= 2".into()));
                }
                Ok(EnergyFamily::PowersOf(b))
            }
            Some(("random", seed)) => Ok(EnergyFamily::RandomSubset { seed: seed.parse().map_err(|_| bad())? }),
            _ => Err(bad()),
        }
    }

    pub fn members(&self, n: usize) -> Result<Vec<BigInt>> {
        match self {
            EnergyFamily::Range => Ok((1..=n).map(BigInt::from).collect()),
            EnergyFamily::PowersOf(b) => {
                let b = BigUint::from(*b);
                let mut out = Vec::with_capacity(n);
                let mut x = BigUint::one();
                for _ in 0..n {
                    x *= &b;
                    out.push(BigInt::from(x.clone()));
                }
                Ok(out)
            }
            EnergyFamily::RandomSubset { seed } => {
                let universe = (n as u64)
                    .checked_pow(3)
                    .and_then(|u| usize::try_from(u).ok())
                    .ok_or_else(|| Error::ResourceLimit(format!("universe 1..{n}^3 too large")))?;
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(n as u64);
                let mut picks: Vec<usize> = index::sample(&mut rng, universe, n).into_vec();
                picks.sort_unstable();
                Ok(picks.into_iter().map(|i| BigInt::from(i + 1)).collect())
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            EnergyFamily::Range => "range".into(),
            EnergyFamily::PowersOf(b) => format!("powers:{b}"),
            EnergyFamily::RandomSubset { seed } => format!("random:{seed}"),
        }
    }
}

/// `E(A_N)` for each requested `N`.
pub fn energy_profile(family: &EnergyFamily, n_list: &[usize]) -> Result<Vec<EnergyReport>> {
    if n_list.contains(&0) {
        return Err(Error::InvalidParams("N must be positive".into()));
    }
    n_list.iter().map(|&n| additive_energy(&family.members(n)?)).collect()
}
