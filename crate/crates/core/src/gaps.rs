//! Neighbour-gap structure of finite point sets on the circle.
//!
//! Gaps are the `N` differences between circularly consecutive points
//! (duplicates contribute zero-length gaps), so the lengths always sum to one
//! full turn. Near-equal lengths are merged by single-linkage clustering with
//! an absolute tolerance.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::correlation::intersection_fraction;
use crate::descriptor::Descriptor;
use crate::par::{self, Execution};
use crate::rational::{floor_scaled, from_scaled, pow2_neg, to_f64};
use crate::{Error, PointSet, Result};

/// Clustering tolerance `2^-(P-16)` used for generators whose points carry
/// representation error.
pub fn default_tolerance(scale_bits: u32) -> BigRational {
    pow2_neg(scale_bits.saturating_sub(16))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapClass {
    /// Smallest length in the cluster, in units of `2^-P`.
    pub length: BigUint,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapProfile {
    pub scale_bits: u32,
    pub n: usize,
    /// Clustering tolerance in units of `2^-P`.
    pub tolerance: BigUint,
    pub gaps: Vec<GapClass>,
}

impl GapProfile {
    pub fn distinct_count(&self) -> usize {
        self.gaps.len()
    }

    pub fn length(&self, i: usize) -> BigRational {
        from_scaled(&self.gaps[i].length, self.scale_bits)
    }

    pub fn lengths(&self) -> Vec<BigRational> {
        (0..self.gaps.len()).map(|i| self.length(i)).collect()
    }

    /// `sum length * multiplicity` in units of `2^-P`; one full turn is `2^P`.
    pub fn weighted_total(&self) -> BigUint {
        self.gaps.iter().map(|g| &g.length * g.multiplicity).sum()
    }
}

fn tolerance_units(tolerance: &BigRational, scale_bits: u32) -> Result<BigUint> {
    if tolerance < &BigRational::zero() {
        return Err(Error::InvalidParams("tolerance must be non-negative".into()));
    }
    Ok(floor_scaled(tolerance, scale_bits))
}

/// Merges sorted `(length, count)` runs whose successive difference is within
/// `tol`.
fn cluster<'a>(runs: impl Iterator<Item = (&'a BigUint, usize)>, tol: &BigUint) -> Vec<GapClass> {
    let mut out: Vec<GapClass> = Vec::new();
    let mut prev: Option<&BigUint> = None;
    for (len, count) in runs {
        match (prev, out.last_mut()) {
            (Some(p), Some(last)) if len - p <= *tol => last.multiplicity += count,
            _ => out.push(GapClass { length: len.clone(), multiplicity: count }),
        }
        prev = Some(len);
    }
    out
}

fn raw_gaps(sorted: &[BigUint], modulus: &BigUint) -> Vec<BigUint> {
    let n = sorted.len();
    let mut gaps: Vec<BigUint> = sorted.windows(2).map(|w| &w[1] - &w[0]).collect();
    gaps.push(modulus - &sorted[n - 1] + &sorted[0]);
    gaps
}

/// Distinct circular gap lengths with multiplicities. With `N = 1` the single
/// gap is the whole circle.
pub fn gap_profile(ps: &PointSet, tolerance: &BigRational) -> Result<GapProfile> {
    gap_profile_with(ps, tolerance, Execution::default())
}

pub fn gap_profile_with(ps: &PointSet, tolerance: &BigRational, exec: Execution) -> Result<GapProfile> {
    let tol = tolerance_units(tolerance, ps.scale_bits())?;
    let mut sorted = ps.numerators().to_vec();
    par::sort_unstable(exec, &mut sorted);
    let mut gaps = raw_gaps(&sorted, &ps.modulus());
    par::sort_unstable(exec, &mut gaps);
    let mut runs: Vec<(&BigUint, usize)> = Vec::new();
    for g in &gaps {
        match runs.last_mut() {
            Some((len, count)) if *len == g => *count += 1,
            _ => runs.push((g, 1)),
        }
    }
    Ok(GapProfile { scale_bits: ps.scale_bits(), n: ps.len(), tolerance: tol.clone(), gaps: cluster(runs.into_iter(), &tol) })
}

/// Gap multiset maintained under point insertion, for scanning every prefix
/// of a sequence in `O(log N)` per point.
#[derive(Clone, Debug)]
pub struct GapTracker {
    modulus: BigUint,
    points: BTreeMap<BigUint, usize>,
    gaps: BTreeMap<BigUint, usize>,
    n: usize,
}

impl GapTracker {
    pub fn new(scale_bits: u32) -> Self {
        Self { modulus: BigUint::one() << scale_bits as usize, points: BTreeMap::new(), gaps: BTreeMap::new(), n: 0 }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn arc(&self, from: &BigUint, to: &BigUint) -> BigUint {
        if to > from {
            to - from
        } else {
            to + &self.modulus - from
        }
    }

    fn add_gap(&mut self, g: BigUint) {
        *self.gaps.entry(g).or_default() += 1;
    }

    fn remove_gap(&mut self, g: &BigUint) {
        let count = self.gaps.get_mut(g).expect("gap being replaced is tracked");
        *count -= 1;
        if *count == 0 {
            self.gaps.remove(g);
        }
    }

    pub fn insert(&mut self, x: &BigUint) {
        self.n += 1;
        if let Some(c) = self.points.get_mut(x) {
            *c += 1;
            self.add_gap(BigUint::zero());
            return;
        }
        if self.points.is_empty() {
            self.points.insert(x.clone(), 1);
            self.add_gap(self.modulus.clone());
            return;
        }
        let pred = self.points.range(..x).next_back().or_else(|| self.points.iter().next_back()).map(|(k, _)| k.clone());
        let succ = self.points.range(x..).next().or_else(|| self.points.iter().next()).map(|(k, _)| k.clone());
        let (pred, succ) = (pred.expect("non-empty"), succ.expect("non-empty"));
        let old = self.arc(&pred, &succ);
        self.remove_gap(&old);
        let left = self.arc(&pred, x);
        let right = self.arc(x, &succ);
        self.add_gap(left);
        self.add_gap(right);
        self.points.insert(x.clone(), 1);
    }

    /// Distinct gap lengths after clustering with `tol` (grid units).
    pub fn distinct_count(&self, tol: &BigUint) -> usize {
        if tol.is_zero() {
            return self.gaps.len();
        }
        cluster(self.gaps.iter().map(|(k, v)| (k, *v)), tol).len()
    }

    pub fn profile(&self, scale_bits: u32, tol: &BigUint) -> GapProfile {
        GapProfile {
            scale_bits,
            n: self.n,
            tolerance: tol.clone(),
            gaps: cluster(self.gaps.iter().map(|(k, v)| (k, *v)), tol),
        }
    }
}

/// Distinct gap counts of the prefixes `x_1..x_N` for each `N` in an
/// ascending list.
pub fn gap_scan_points(ps: &PointSet, n_list: &[usize], tolerance: &BigRational) -> Result<Vec<(usize, usize)>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("N list must be strictly ascending".into()));
    }
    if let Some(&max) = n_list.last() {
        if max > ps.len() || n_list[0] == 0 {
            return Err(Error::InvalidParams(format!("N list must lie in 1..={}", ps.len())));
        }
    }
    let tol = tolerance_units(tolerance, ps.scale_bits())?;
    let mut tracker = GapTracker::new(ps.scale_bits());
    let mut out = Vec::with_capacity(n_list.len());
    let mut wanted = n_list.iter().peekable();
    for x in ps.numerators() {
        if wanted.peek().is_none() {
            break;
        }
        tracker.insert(x);
        if wanted.peek() == Some(&&tracker.len()) {
            out.push((tracker.len(), tracker.distinct_count(&tol)));
            wanted.next();
        }
    }
    Ok(out)
}

/// [`gap_scan_points`] over the first `max(N_list)` points of a generator.
pub fn gap_scan(descriptor: &Descriptor, n_list: &[usize], tolerance: &BigRational) -> Result<Vec<(usize, usize)>> {
    let max = *n_list.last().ok_or_else(|| Error::InvalidParams("empty N list".into()))?;
    let ps = descriptor.generate(max)?;
    gap_scan_points(&ps, n_list, tolerance)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessRoute {
    /// The point set itself has few distinct gaps.
    Direct,
    /// A large share of the points lies in a reference set with few gaps.
    Intersection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Verdict {
    StructuredNonPoissonianWitness { route: WitnessRoute },
    NoWitnessFound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvidenceRow {
    pub n: usize,
    pub distinct_gaps: usize,
    pub reference_gaps: Option<usize>,
    pub intersection_fraction: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScreenVerdict {
    pub verdict: Verdict,
    pub evidence: Vec<EvidenceRow>,
}

impl ScreenVerdict {
    pub fn is_witness(&self) -> bool {
        matches!(self.verdict, Verdict::StructuredNonPoissonianWitness { .. })
    }
}

/// Sufficient-condition screen for one `N`: a witness when `ps` has at most
/// `s_max` distinct gaps, or when `reference` has at most `s_max` gaps and
/// shares at least `kappa * N` distinct values with `ps`.
pub fn screen_structured(
    ps: &PointSet,
    reference: Option<&PointSet>,
    s_max: usize,
    kappa: &BigRational,
    tolerance: &BigRational,
) -> Result<ScreenVerdict> {
    if let Some(r) = reference {
        ps.check_same_scale(r)?;
    }
    let own = gap_profile(ps, tolerance)?.distinct_count();
    let mut row = EvidenceRow { n: ps.len(), distinct_gaps: own, reference_gaps: None, intersection_fraction: None };
    let mut verdict = if own <= s_max {
        Verdict::StructuredNonPoissonianWitness { route: WitnessRoute::Direct }
    } else {
        Verdict::NoWitnessFound
    };
    if let Some(r) = reference {
        let ref_gaps = gap_profile(r, tolerance)?.distinct_count();
        let frac = intersection_fraction(ps, r)?;
        row.reference_gaps = Some(ref_gaps);
        row.intersection_fraction = Some(to_f64(&frac));
        if verdict == Verdict::NoWitnessFound && ref_gaps <= s_max && &frac >= kappa {
            verdict = Verdict::StructuredNonPoissonianWitness { route: WitnessRoute::Intersection };
        }
    }
    Ok(ScreenVerdict { verdict, evidence: vec![row] })
}
