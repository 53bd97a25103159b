//! Independent oracles: brute-force tuple enumeration for the exact counts and
//! direct binomial sums for the limit rates.

use morse_entropy::counter::{convolve, mean_distribution, Boundary, CountKind, WindowQuery};
use morse_entropy::laws::random_spectra;
use morse_entropy::rate::{rate_at, window_sup_rate};
use morse_entropy::{finite_rate, CriticalSpectrum, Preset, SpectrumAtom};
use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// One entry per basis element: critical points repeat by multiplicity, Betti
/// classes by Betti weight.
fn unrolled(spec: &CriticalSpectrum, kind: CountKind) -> Vec<Rational64> {
    spec.atoms()
        .iter()
        .flat_map(|a| {
            let w = match kind {
                CountKind::Critical => a.multiplicity,
                CountKind::Betti => a.betti_weight,
            };
            std::iter::repeat(a.value).take(w as usize)
        })
        .collect()
}

/// Enumerates every n-tuple and counts those whose mean lies in the window.
fn brute_count(spec: &CriticalSpectrum, kind: CountKind, n: usize, q: &WindowQuery) -> u64 {
    let basis = unrolled(spec, kind);
    let lo = q.c - q.delta;
    let hi = q.c + q.delta;
    let mut idx = vec![0usize; n];
    let mut total = 0u64;
    loop {
        let sum: Rational64 = idx.iter().map(|&i| basis[i]).sum();
        let mean = sum / Rational64::from_integer(n as i64);
        let inside = match q.boundary {
            Boundary::ClosedClosed => lo <= mean && mean <= hi,
            Boundary::ClosedOpen => lo <= mean && mean < hi,
        };
        total += u64::from(inside);
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return total;
            }
            idx[k] += 1;
            if idx[k] < basis.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn brute_histogram(spec: &CriticalSpectrum, kind: CountKind, n: usize) -> Vec<u64> {
    let d = spec.denom();
    let grid = n as i64 * d;
    (0..=grid)
        .map(|s| {
            let q = WindowQuery {
                c: r(s, grid),
                delta: r(1, 4 * grid),
                boundary: Boundary::ClosedClosed,
            };
            brute_count(spec, kind, n, &q)
        })
        .collect()
}

fn to_u64(v: &[BigUint]) -> Vec<u64> {
    v.iter().map(|x| x.to_u64().unwrap()).collect()
}

fn imperfect() -> CriticalSpectrum {
    CriticalSpectrum::validate(&[
        SpectrumAtom::new(r(0, 1), 2, 1),
        SpectrumAtom::new(r(1, 3), 3, 1),
        SpectrumAtom::new(r(1, 2), 1, 0),
        SpectrumAtom::new(r(1, 1), 1, 1),
    ])
    .unwrap()
}

#[test]
fn histograms_match_enumeration() {
    let specs = [Preset::Circle.spectrum(), Preset::Torus.spectrum(), imperfect()];
    for spec in &specs {
        for kind in [CountKind::Critical, CountKind::Betti] {
            for n in 1..=4 {
                let d = mean_distribution(spec, n as u64, kind).unwrap();
                assert_eq!(
                    to_u64(d.counts()),
                    brute_histogram(spec, kind, n),
                    "{kind} n={n} {spec:?}"
                );
            }
        }
    }
}

#[test]
fn windows_match_enumeration() {
    let spec = imperfect();
    let windows = [
        (r(1, 2), r(1, 4)),
        (r(1, 3), r(1, 6)),
        (r(0, 1), r(1, 5)),
        (r(9, 10), r(1, 10)),
    ];
    for n in 1..=5u64 {
        for kind in [CountKind::Critical, CountKind::Betti] {
            let dist = mean_distribution(&spec, n, kind).unwrap();
            for &(c, delta) in &windows {
                for boundary in [Boundary::ClosedClosed, Boundary::ClosedOpen] {
                    let q = WindowQuery::new(c, delta, boundary).unwrap();
                    assert_eq!(
                        dist.count_window(&q).to_u64().unwrap(),
                        brute_count(&spec, kind, n as usize, &q),
                        "{kind} n={n} c={c} delta={delta} {boundary:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn documented_count_examples() {
    let circle = Preset::Circle.spectrum();
    let q = WindowQuery::new(r(1, 2), r(1, 4), Boundary::ClosedClosed).unwrap();
    assert_eq!(brute_count(&circle, CountKind::Critical, 2, &q), 2);
    let q = WindowQuery::new(r(1, 2), r(1, 2), Boundary::ClosedOpen).unwrap();
    assert_eq!(brute_count(&circle, CountKind::Betti, 2, &q), 3);
    assert_eq!(brute_histogram(&circle, CountKind::Critical, 2), vec![1, 2, 1]);
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn binary_entropy(c: f64) -> f64 {
    let t = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    t(c) + t(1.0 - c)
}

#[test]
fn circle_counts_are_binomial_sums() {
    // b'_m over [c - delta, c + delta) is a sum of binomial coefficients.
    let circle = Preset::Circle.spectrum();
    for m in [10u64, 37, 64] {
        let d = mean_distribution(&circle, m, CountKind::Betti).unwrap();
        for (k, count) in d.counts().iter().enumerate() {
            assert_eq!(count, &binomial(m, k as u64));
        }
    }
}

#[test]
fn finite_rates_approach_the_limit() {
    // Circle and torus at several windows: the gap to the window supremum of
    // the limit rate shrinks along n = 64, 128, 256, 512 and is O(log n / n).
    let cases = [
        (Preset::Circle.spectrum(), r(1, 2), r(1, 20)),
        (Preset::Circle.spectrum(), r(1, 5), r(1, 20)),
        (Preset::Torus.spectrum(), r(1, 4), r(1, 10)),
        (Preset::Torus.spectrum(), r(1, 2), r(1, 20)),
    ];
    for (spec, c, delta) in cases {
        let sup = window_sup_rate(&spec, CountKind::Critical, c - delta, c + delta).unwrap();
        let mut last = f64::INFINITY;
        for n in [64u64, 128, 256, 512] {
            let d = mean_distribution(&spec, n, CountKind::Critical).unwrap();
            let q = WindowQuery::new(c, delta, Boundary::ClosedClosed).unwrap();
            let gap = (finite_rate(&d.count_window(&q), n) - sup).abs();
            assert!(gap < last, "c={c} n={n}: gap {gap} did not shrink from {last}");
            assert!(gap <= 2.0 * (n as f64).ln() / n as f64, "c={c} n={n}: gap {gap}");
            last = gap;
        }
    }
}

#[test]
fn circle_limit_is_binary_entropy_of_windows() {
    let circle = Preset::Circle.spectrum();
    for (lo, hi) in [(0.2, 0.3), (0.6, 0.9), (0.0, 0.05), (0.4, 0.6)] {
        let sup = window_sup_rate(
            &circle,
            CountKind::Betti,
            Rational64::approximate_float(lo).unwrap(),
            Rational64::approximate_float(hi).unwrap(),
        )
        .unwrap();
        let oracle = (0..=10_000)
            .map(|i| lo + (hi - lo) * i as f64 / 10_000.0)
            .map(binary_entropy)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((sup - oracle).abs() < 1e-9, "[{lo}, {hi}]");
    }
}

#[test]
fn maxent_matches_type_class_enumeration() {
    // For three atoms, the largest multinomial type class with mean c gives
    // the rate; at n = 3000 it agrees with the solver to O(log n / n).
    let torus = Preset::Torus.spectrum();
    let n = 3000u64;
    let ln_fact: Vec<f64> = std::iter::once(0.0)
        .chain((1..=n).scan(0.0, |acc, k| {
            *acc += (k as f64).ln();
            Some(*acc)
        }))
        .collect();
    for c in [0.1, 0.25, 0.4] {
        // Type (k0, k1, k2) with k1/2 + k2 = c n; weights 1, 2, 1.
        let target2 = (2.0 * c * n as f64).round() as u64;
        let mut best = f64::NEG_INFINITY;
        for k2 in 0..=target2 / 2 {
            let k1 = target2 - 2 * k2;
            if k1 + k2 > n {
                continue;
            }
            let k0 = n - k1 - k2;
            let v = ln_fact[n as usize] - ln_fact[k0 as usize] - ln_fact[k1 as usize] - ln_fact[k2 as usize]
                + k1 as f64 * 2f64.ln();
            best = best.max(v);
        }
        let rate = rate_at(&torus, CountKind::Critical, c).unwrap().rate;
        assert!(
            (best / n as f64 - rate).abs() < 3.0 * (n as f64).ln() / n as f64,
            "c = {c}"
        );
        assert!(best / n as f64 <= rate + 1e-12);
    }
}

#[test]
fn domination_across_random_spectra() {
    for spec in random_spectra(99, 15) {
        for n in 1..=8u64 {
            let crit = mean_distribution(&spec, n, CountKind::Critical).unwrap();
            let betti = mean_distribution(&spec, n, CountKind::Betti).unwrap();
            for (c, b) in crit.counts().iter().zip(betti.counts()) {
                assert!(b <= c);
            }
        }
    }
}

fn arb_spectrum() -> impl Strategy<Value = CriticalSpectrum> {
    (any::<u64>()).prop_map(|seed| random_spectra(seed, 1).pop().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn validation_is_idempotent(spec in arb_spectrum()) {
        let again = CriticalSpectrum::validate(spec.atoms()).unwrap();
        prop_assert_eq!(&again, &spec);
        let reparsed = CriticalSpectrum::from_json(&spec.to_json()).unwrap();
        prop_assert_eq!(reparsed, spec);
    }

    #[test]
    fn convolution_is_associative(spec in arb_spectrum(), a in 1u64..8, b in 1u64..8, betti in any::<bool>()) {
        let kind = if betti { CountKind::Betti } else { CountKind::Critical };
        let da = mean_distribution(&spec, a, kind).unwrap();
        let db = mean_distribution(&spec, b, kind).unwrap();
        let joint = mean_distribution(&spec, a + b, kind).unwrap();
        prop_assert_eq!(convolve(&da, &db).unwrap(), joint);
    }

    #[test]
    fn mass_identity(spec in arb_spectrum(), n in 1u64..16) {
        let crit = mean_distribution(&spec, n, CountKind::Critical).unwrap();
        let betti = mean_distribution(&spec, n, CountKind::Betti).unwrap();
        prop_assert_eq!(crit.total(), BigUint::from(spec.total_multiplicity()).pow(n as u32));
        prop_assert_eq!(betti.total(), BigUint::from(spec.total_betti()).pow(n as u32));
        let last = crit.counts().len() - 1;
        prop_assert!(!crit.counts()[0].is_zero() && !crit.counts()[last].is_zero());
        prop_assert!(!betti.counts()[0].is_zero() && !betti.counts()[last].is_zero());
    }

    #[test]
    fn rates_are_ordered(spec in arb_spectrum(), k in 0i64..=40) {
        let c = k as f64 / 40.0;
        let e = rate_at(&spec, CountKind::Critical, c).unwrap();
        let b = rate_at(&spec, CountKind::Betti, c).unwrap();
        prop_assert!(e.converged && b.converged);
        prop_assert!(b.rate >= -1e-12);
        prop_assert!(b.rate <= e.rate + 1e-12);
        prop_assert!(e.rate <= (spec.total_multiplicity() as f64).ln() + 1e-12);
    }

    #[test]
    fn relabeling_atoms_keeps_the_rate(spec in arb_spectrum(), k in 1i64..40, rot in 0usize..5) {
        use morse_entropy::{maxent_rate, MaxEntProblem};
        let c = k as f64 / 40.0;
        let values: Vec<f64> = spec.atoms().iter().map(|a| a.value.to_f64().unwrap()).collect();
        let weights: Vec<f64> = spec.atoms().iter().map(|a| f64::from(a.multiplicity)).collect();
        let mut rv = values.clone();
        let mut rw = weights.clone();
        let rot = rot % values.len();
        rv.rotate_left(rot);
        rw.rotate_left(rot);
        let a = maxent_rate(&MaxEntProblem::new(values, weights, c).unwrap());
        let b = maxent_rate(&MaxEntProblem::new(rv, rw, c).unwrap());
        prop_assert!((a.rate - b.rate).abs() < 1e-12);
    }
}
