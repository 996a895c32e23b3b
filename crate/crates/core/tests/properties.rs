mod common;

use common::*;
use gapcorr_core::correlation::{close_pairs, pair_correlation_curve_with, pair_correlation_with};
use gapcorr_core::energy::additive_energy;
use gapcorr_core::gaps::{gap_profile_with, gap_scan_points, GapTracker};
use gapcorr_core::generators::{
    digital_sequence, kronecker, ls_sequence, shift_sequence, van_der_corput, DigitalParams, LSParams, LSState,
};
use gapcorr_core::words::{
    champernowne_stream, de_bruijn_word, periodic_stream, verify_de_bruijn, word_stream, DigitStream, Word,
};
use gapcorr_core::*;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

fn point_set(bits: u32) -> impl Strategy<Value = PointSet> {
    let max = 1u64 << bits;
    prop::collection::vec(0..max, 2..=200).prop_map(move |v| from_u64s(bits, &v))
}

fn threshold() -> impl Strategy<Value = BigRational> {
    (0i64..600, 1i64..40).prop_map(|(p, d)| q(p, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pair_count_matches_double_loop(bits in 6u32..40, seed_set in any::<u64>(), s in threshold()) {
        // Coarse grids force ties and duplicates.
        let mut rng_state = seed_set;
        let n = 2 + (seed_set % 199) as usize;
        let v: Vec<u64> = (0..n).map(|_| {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng_state >> 11) % (1u64 << bits)
        }).collect();
        let ps = from_u64s(bits, &v);
        let want = brute_pair_count(&ps, &s);
        for exec in [Execution::Sequential, Execution::Parallel] {
            let got = pair_correlation_with(&ps, &s, exec).unwrap();
            prop_assert_eq!(got.count, want);
            prop_assert_eq!(got.count % 2, 0);
        }
        prop_assert_eq!(2 * close_pairs(&ps, &s).unwrap().len() as u128, want);
    }

    #[test]
    fn curve_is_monotone_and_saturates(ps in point_set(12)) {
        let n = ps.len() as i64;
        let grid: Vec<BigRational> = (0..=8).map(|k| q(k * n, 16)).collect();
        let curve = pair_correlation_curve_with(&ps, &grid, Execution::Sequential).unwrap();
        prop_assert!(curve.windows(2).all(|w| w[0].f_value <= w[1].f_value));
        let all = (ps.len() as u128) * (ps.len() as u128 - 1);
        prop_assert_eq!(curve.last().unwrap().count, all);
    }

    #[test]
    fn frac_dist_is_a_metric(a in 0u64..1 << 20, b in 0u64..1 << 20, c in 0u64..1 << 20) {
        let f = |x: u64| FixedPoint::new(BigUint::from(x), 20).unwrap();
        let (x, y, z) = (f(a), f(b), f(c));
        let xy = frac_dist(&x, &y).unwrap();
        prop_assert_eq!(&xy, &frac_dist(&y, &x).unwrap());
        prop_assert!(xy <= q(1, 2));
        prop_assert!(xy <= frac_dist(&x, &z).unwrap() + frac_dist(&z, &y).unwrap());
        prop_assert_eq!(frac_dist(&x, &x).unwrap(), q(0, 1));
    }

    #[test]
    fn gap_profile_matches_naive_and_ignores_order(ps in point_set(16), rot in 0usize..200) {
        let zero = q(0, 1);
        let p = gap_profile(&ps, &zero).unwrap();
        prop_assert_eq!(lengths_as_map(&p), naive_gaps(&ps));
        prop_assert_eq!(p.gaps.iter().map(|g| g.multiplicity).sum::<usize>(), ps.len());
        prop_assert_eq!(p.weighted_total(), ps.modulus());
        let mut v = ps.numerators().to_vec();
        v.reverse();
        let k = rot % v.len();
        v.rotate_left(k);
        let permuted = PointSet::new(16, v, "perm").unwrap();
        prop_assert_eq!(gap_profile_with(&permuted, &zero, Execution::Sequential).unwrap(), p);
    }

    #[test]
    fn tracker_agrees_on_every_prefix(ps in point_set(10)) {
        let zero = BigUint::zero();
        let mut tr = GapTracker::new(10);
        for (i, x) in ps.numerators().iter().enumerate() {
            tr.insert(x);
            let direct = gap_profile(&ps.prefix(i + 1).unwrap(), &q(0, 1)).unwrap();
            prop_assert_eq!(tr.profile(10, &zero), direct);
        }
    }

    #[test]
    fn perturbations_below_tolerance_cluster(n in 2u64..300, noise in prop::collection::vec(0u64..4, 300)) {
        let bits = 40u32;
        let step = (1u64 << bits) / n;
        let v: Vec<u64> = (0..n).map(|j| j * step + noise[j as usize]).collect();
        let ps = from_u64s(bits, &v);
        // Gaps lie in [step - 3, step + 3] apart from the wrap gap, which
        // absorbs the remainder 2^P mod n.
        let tol = q(8, 1i64 << bits);
        let p = gap_profile(&ps, &tol).unwrap();
        let rem = (1u64 << bits) - n * step;
        if rem <= 8 {
            prop_assert_eq!(p.distinct_count(), 1);
        } else {
            prop_assert!(p.distinct_count() <= 2);
        }
    }

    #[test]
    fn energy_invariant_under_affine_maps(set in prop::collection::btree_set(-500i64..500, 1..30), c in -1000i64..1000, l in 1i64..50, neg in any::<bool>()) {
        let v: Vec<i64> = set.into_iter().collect();
        let big = |w: &[i64]| w.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let e = additive_energy(&big(&v)).unwrap().energy;
        prop_assert_eq!(e, brute_energy(&v));
        let lam = if neg { -l } else { l };
        let moved: Vec<i64> = v.iter().map(|x| lam * x + c).collect();
        prop_assert_eq!(additive_energy(&big(&moved)).unwrap().energy, e);
        let n = v.len() as u128;
        prop_assert!(2 * n * n - n <= e && e <= n * n * n);
    }

    #[test]
    fn kronecker_three_gaps(alpha in 1u64..u64::MAX, n in 1usize..1500) {
        let a = FixedPoint::new(BigUint::from(alpha), 64).unwrap();
        let ps = kronecker(&a, n).unwrap();
        prop_assert!(gap_profile(&ps, &q(0, 1)).unwrap().distinct_count() <= 3);
    }

    #[test]
    fn periodic_shift_has_at_most_period_points(period in prop::collection::vec(0u32..3, 1..12), n in 1usize..200) {
        let p = period.len();
        let s = periodic_stream(3, period).unwrap();
        let ps = shift_sequence(&s, n, 16, 64).unwrap();
        let distinct: BTreeSet<&BigUint> = ps.numerators().iter().collect();
        prop_assert!(distinct.len() <= p);
    }
}

#[test]
fn equidistant_examples() {
    let ps = PointSet::from_rationals(&(0..10).map(|j| q(j, 10)).collect::<Vec<_>>(), 128, "eq").unwrap();
    let c = pair_correlation_curve(&ps, &[q(1, 2), q(1, 1), q(3, 2)]).unwrap();
    let f: Vec<BigRational> = c.iter().map(|c| c.f_value.clone()).collect();
    assert_eq!(f, vec![q(0, 1), q(2, 1), q(2, 1)]);
    assert_eq!(c[1].count, brute_pair_count(&ps, &q(1, 1)));
    let same = from_u64s(16, &[77; 4]);
    assert_eq!(pair_correlation_curve(&same, &[q(0, 1)]).unwrap()[0].f_value, q(3, 1));
    let hundred = PointSet::from_rationals(&(0..100).map(|j| q(j, 100)).collect::<Vec<_>>(), 128, "eq").unwrap();
    assert_eq!(equidist_deviation(&hundred, 10).unwrap(), q(0, 1));
}

#[test]
fn van_der_corput_powers_have_one_gap() {
    // Indices 0..2^m - 1: the origin followed by the first 2^m - 1 points.
    for m in 0..=10u32 {
        let n = 1usize << m;
        let mut v = vec![BigUint::zero()];
        if n > 1 {
            v.extend(van_der_corput(2, n - 1, 64).unwrap().into_numerators());
        }
        let ps = PointSet::new(64, v, "vdc from 0").unwrap();
        let p = gap_profile(&ps, &q(0, 1)).unwrap();
        assert_eq!(p.distinct_count(), 1, "m={m}");
        assert_eq!(p.length(0), q(1, 1i64 << m));
    }
    let ps = van_der_corput(3, 5, 64).unwrap();
    let seven_ninths = FixedPoint::from_u64_ratio(7, 9, 64).unwrap();
    assert_eq!(ps.get(4).unwrap(), seven_ninths);
}

/// Interval lengths of the partition after `level` refinements, as exponents
/// `e` of `beta^e`, by splitting every maximal interval explicitly.
fn refine_partition(l: u32, s: u32, level: u32) -> Vec<u32> {
    let mut parts = vec![0u32];
    for n in 0..level {
        let mut next = Vec::new();
        for &e in &parts {
            if e == n {
                next.extend(std::iter::repeat_n(n + 1, l as usize));
                next.extend(std::iter::repeat_n(n + 2, s as usize));
            } else {
                next.push(e);
            }
        }
        parts = next;
    }
    parts
}

#[test]
fn ls_counts_match_explicit_refinement() {
    for (l, s) in [(1, 1), (2, 1), (1, 2), (3, 2), (2, 0)] {
        for level in 0..=12 {
            let parts = refine_partition(l, s, level);
            let st = LSState::at_level(l, s, level);
            assert_eq!(st.t as usize, parts.len());
            assert_eq!(st.long as usize, parts.iter().filter(|&&e| e == level).count());
            assert_eq!(st.short as usize, parts.iter().filter(|&&e| e == level + 1).count());
        }
    }
}

#[test]
fn ls_gap_multiplicities_match_partition() {
    for (l, s) in [(1, 1), (2, 1), (1, 2)] {
        let p = LSParams::new(l, s, 128).unwrap();
        let tol = gaps::default_tolerance(128);
        for level in 1..=9 {
            let st = LSState::at_level(l, s, level);
            let ps = ls_sequence(&p, st.t as usize).unwrap();
            let prof = gap_profile(&ps, &tol).unwrap();
            let mults: Vec<usize> = prof.gaps.iter().map(|g| g.multiplicity).collect();
            let mut want = vec![st.short as usize, st.long as usize];
            want.retain(|&c| c > 0);
            assert_eq!(mults, want, "ls:{l},{s} level {level}");
        }
    }
    // (1,1) level 2 is {0, beta, beta^2}.
    let p = LSParams::new(1, 1, 128).unwrap();
    let ps = ls_sequence(&p, 3).unwrap();
    let b2 = p.beta_pow_numerator(2);
    let d = &ps.numerators()[2];
    assert!((if d > &b2 { d - &b2 } else { &b2 - d }) <= BigUint::from(2u32));
}

#[test]
fn ls_without_short_intervals_is_van_der_corput() {
    for b in [2u32, 3, 5] {
        let p = LSParams::new(b, 0, 64).unwrap();
        let ls = ls_sequence(&p, 200).unwrap();
        let vdc = van_der_corput(b, 199, 64).unwrap();
        assert!(ls.numerators()[0].is_zero());
        assert_eq!(&ls.numerators()[1..], vdc.numerators());
    }
}

fn upper_unit_triangular(b: u32, m: usize, seed: u64) -> DigitalParams {
    let mut state = seed;
    let mut matrix = vec![vec![0u32; m]; m];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *e = match j.cmp(&i) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Equal => 1 + ((state >> 33) as u32 % (b - 1)),
                std::cmp::Ordering::Greater => (state >> 33) as u32 % b,
            };
        }
    }
    DigitalParams::new(b, matrix, 0).unwrap()
}

#[test]
fn digital_blocks_fill_elementary_intervals() {
    for b in [2u32, 3, 5] {
        let big = 7usize;
        for (k, params) in [DigitalParams::identity(b, big).unwrap(), upper_unit_triangular(b, big, u64::from(b))]
            .into_iter()
            .enumerate()
        {
            let max_m = if b == 5 { 4 } else { 6 };
            for m in 0..=max_m {
                let bm = (b as usize).pow(m);
                let blocks = 3.min((b as usize).pow(big as u32) / bm);
                let ps = digital_sequence(&params, blocks * bm, 64).unwrap();
                for block in 0..blocks {
                    let mut seen = vec![false; bm];
                    for x in &ps.numerators()[block * bm..(block + 1) * bm] {
                        // Truncated points sit just below off-grid cell edges.
                        let cell: usize = ((x * bm + (bm - 1)) >> 64usize).try_into().unwrap();
                        assert!(!seen[cell], "b={b} matrix={k} m={m} block={block}");
                        seen[cell] = true;
                    }
                }
            }
        }
    }
    let ident = digital_sequence(&DigitalParams::identity(2, 4).unwrap(), 4, 8).unwrap();
    assert_eq!(&ident.numerators()[1..], &[128u32, 64, 192].map(BigUint::from));
}

#[test]
fn digital_gap_scan_is_finite() {
    let d: Descriptor = "digital:2,identity".parse().unwrap();
    let list: Vec<usize> = (1..=1024).collect();
    for (n, c) in gap_scan(&d, &list, &q(0, 1)).unwrap() {
        if n.is_power_of_two() {
            assert_eq!(c, 1, "N={n}");
        } else {
            assert!(c <= 3, "N={n}");
        }
    }
    let ls: Descriptor = "ls:1,1".parse().unwrap();
    let ts: Vec<usize> = (1..=12).map(|n| LSState::at_level(1, 1, n).t as usize).collect();
    let tol = gaps::default_tolerance(DEFAULT_SCALE_BITS);
    assert!(gap_scan(&ls, &ts, &tol).unwrap().iter().all(|&(_, c)| c <= 2));
    let vdc: Descriptor = "vdc:2".parse().unwrap();
    let pows: Vec<usize> = (0..=10).map(|m| 1 << m).collect();
    let mut v = vec![BigUint::zero()];
    v.extend(vdc.generate(1023).unwrap().into_numerators());
    let ps = PointSet::new(DEFAULT_SCALE_BITS, v, "vdc from 0").unwrap();
    assert!(gap_scan_points(&ps, &pows, &q(0, 1)).unwrap().iter().all(|&(_, c)| c == 1));
    // From index 1 the block 1..2^m swaps the origin for 2^-(m+1), which
    // splits one gap and merges two others.
    let from_one = gap_scan(&vdc, &pows[1..], &q(0, 1)).unwrap();
    assert_eq!(from_one[0], (2, 2));
    assert!(from_one[1..].iter().all(|&(_, c)| c == 3));
}

/// Every window of length `m`, by direct enumeration.
fn window_multiset(w: &Word, m: usize) -> BTreeMap<Vec<u32>, usize> {
    let mut out = BTreeMap::new();
    for win in w.symbols().windows(m) {
        *out.entry(win.to_vec()).or_insert(0) += 1;
    }
    out
}

#[test]
fn de_bruijn_windows_exhaustive() {
    for k in 2u32..=3 {
        for m in 1u32..=7 {
            if k == 2 && m > 7 {
                continue;
            }
            let w = de_bruijn_word(k, m).unwrap();
            assert_eq!(w.len(), (k as usize).pow(m) + m as usize - 1);
            let windows = window_multiset(&w, m as usize);
            assert_eq!(windows.len(), (k as usize).pow(m));
            assert!(windows.values().all(|&c| c == 1));
            assert!(verify_de_bruijn(&w, m));
        }
    }
    assert_eq!(de_bruijn_word(2, 2).unwrap().to_string(), "00110");
    assert!(!verify_de_bruijn(&Word::from_digits(2, "00100").unwrap(), 2));
}

#[test]
fn streams_are_pure() {
    let c = champernowne_stream(2).unwrap();
    let first: Vec<u32> = (0..8).map(|i| c.digit(i).unwrap()).collect();
    assert_eq!(first, vec![1, 1, 0, 1, 1, 1, 0, 0]);
    let ten = champernowne_stream(10).unwrap();
    let d: Vec<u32> = (0..13).map(|i| ten.digit(i).unwrap()).collect();
    assert_eq!(d, vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0, 1, 1]);
    assert_eq!(ten.digit(123_456), ten.digit(123_456));
    let w = word_stream(Word::from_digits(3, "012").unwrap(), 0).unwrap();
    assert_eq!((0..5).map(|i| w.digit(i).unwrap()).collect::<Vec<_>>(), vec![0, 1, 2, 0, 0]);
    assert_eq!(w.digit(8), Some(0));
}

#[test]
fn de_bruijn_shift_pipeline() {
    let word = de_bruijn_word(3, 4).unwrap();
    let s = word_stream(word, 0).unwrap();
    let ps = shift_sequence(&s, 81, 64, 128).unwrap();
    assert_eq!(ps.len(), 81);
}

#[test]
fn stoneham_matches_series_oracle() {
    use num_traits::{One, Signed};
    let series = |terms: u32| {
        (1..=terms).fold(BigRational::zero(), |acc, m| {
            acc + BigRational::new(BigInt::one(), BigInt::from(3u64.pow(m)) * (BigInt::one() << 3usize.pow(m)))
        })
    };
    let a = stoneham::stoneham_bits(128).unwrap();
    let err = (a.to_rational() - series(4)).abs();
    assert!(err <= rational::pow2_neg(127));
    let pts = stoneham::stoneham_points(4, None).unwrap();
    // x_0 is alpha itself.
    let x0_err = (pts.get(0).unwrap().to_rational() - series(4)).abs();
    assert!(x0_err <= rational::pow2_neg(127));
    // x_3 = {8 alpha} = 1/3 + 8/4608 + 8/(27 * 2^27) + ...
    let x3 = pts.get(3).unwrap().to_rational();
    let want = q(1, 3) + q(8, 4608) + BigRational::new(8.into(), BigInt::from(3u64.pow(3)) * (BigInt::one() << 27usize));
    assert!(rational::to_f64(&(x3 - want)).abs() < 1e-12);
}
