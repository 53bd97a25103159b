//! Exact counting of critical points and Betti classes of the product function
//! `f_n(x) = (1/n) * sum_j f0(x_j)` by value window.
//!
//! A critical point of `f_n` is an `n`-tuple of critical points of `f0`, and its
//! critical value is the mean of the coordinates' values. The filtered Künneth
//! model does the same with Betti weights: a basis class of `H*(M^n)` is a
//! tensor product of entry classes and enters the sublevel filtration at the
//! mean of their entry values. Both counts are therefore histograms of sums of
//! i.i.d. weighted atoms, built here by `n` exact convolutions on the integer
//! grid `s = 0..=n*D` where the mean is `s / (n*D)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::spectrum::CriticalSpectrum;

/// Largest `n * D` accepted by default.
pub const DEFAULT_GRID_CAP: u64 = 16_384;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountKind {
    /// Weights are multiplicities.
    Critical,
    /// Weights are Betti weights.
    Betti,
}

impl CountKind {
    /// Window convention used for this kind unless overridden.
    pub fn default_boundary(self) -> Boundary {
        match self {
            CountKind::Critical => Boundary::ClosedClosed,
            CountKind::Betti => Boundary::ClosedOpen,
        }
    }

    pub(crate) fn weights(self, spec: &CriticalSpectrum) -> Vec<(usize, u32)> {
        spec.atoms()
            .iter()
            .map(|a| {
                let w = match self {
                    CountKind::Critical => a.multiplicity,
                    CountKind::Betti => a.betti_weight,
                };
                (spec.grid_position(a.value), w)
            })
            .filter(|&(_, w)| w > 0)
            .collect()
    }
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountKind::Critical => "critical",
            CountKind::Betti => "betti",
        })
    }
}

/// Which endpoints of `[c - delta, c + delta]` belong to the window.
///
/// Critical counts use the closed preimage `f^{-1}[c - delta, c + delta]`.
/// Betti counts are differences of strict sublevels `{f < d}`, so the upper
/// endpoint is excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Boundary {
    ClosedClosed,
    ClosedOpen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowQuery {
    pub c: Rational64,
    pub delta: Rational64,
    pub boundary: Boundary,
}

impl WindowQuery {
    /// Checked constructor: `delta > 0` and the window must meet `[0, 1]`.
    pub fn new(c: Rational64, delta: Rational64, boundary: Boundary) -> Result<Self> {
        if delta <= Rational64::zero() {
            return Err(invalid(format!("window half-width must be positive, got {delta}")));
        }
        if c - delta >= Rational64::one() || c + delta <= Rational64::zero() {
            return Err(invalid(format!(
                "window [{} , {}] does not meet [0, 1]",
                c - delta,
                c + delta
            )));
        }
        Ok(Self { c, delta, boundary })
    }

    pub fn for_kind(c: Rational64, delta: Rational64, kind: CountKind) -> Result<Self> {
        Self::new(c, delta, kind.default_boundary())
    }

    /// Inclusive index range `[lo, hi]` of grid points `s / grid_denom` in the
    /// window, or `None` when empty.
    pub fn index_range(&self, grid_denom: u64) -> Option<(u64, u64)> {
        let n = i128::from(grid_denom as i64);
        let lower = self.c - self.delta;
        let upper = self.c + self.delta;
        let scaled = |r: Rational64| (i128::from(*r.numer()) * n, i128::from(*r.denom()));
        let (ln, ld) = scaled(lower);
        let (un, ud) = scaled(upper);
        let lo = ceil_div(ln, ld).max(0);
        let hi = match self.boundary {
            Boundary::ClosedClosed => un.div_euclid(ud),
            Boundary::ClosedOpen => ceil_div(un, ud) - 1,
        }
        .min(n);
        (lo <= hi).then_some((lo as u64, hi as u64))
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// Histogram of value sums over all `n`-tuples of weighted atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanDistribution {
    n: u64,
    denom: u64,
    kind: CountKind,
    counts: Vec<BigUint>,
}

impl MeanDistribution {
    /// Single-site histogram (`n = 1`).
    pub fn single_site(spec: &CriticalSpectrum, kind: CountKind) -> Self {
        let denom = spec.denom() as u64;
        let mut counts = vec![BigUint::zero(); denom as usize + 1];
        for (pos, w) in kind.weights(spec) {
            counts[pos] += w;
        }
        Self {
            n: 1,
            denom,
            kind,
            counts,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Value denominator `D` of the underlying spectrum.
    pub fn value_denom(&self) -> u64 {
        self.denom
    }

    /// Denominator of the mean grid, `n * D`.
    pub fn grid_denom(&self) -> u64 {
        self.n * self.denom
    }

    pub fn kind(&self) -> CountKind {
        self.kind
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Mean value at grid index `s`.
    pub fn mean_at(&self, s: usize) -> Rational64 {
        Rational64::new(s as i64, self.grid_denom() as i64)
    }

    /// Adds one more site: convolves with the single-site histogram of `spec`.
    pub fn extend(&self, site: &MeanDistribution) -> MeanDistribution {
        let mut next = convolve_raw(&self.counts, &site.counts);
        next.truncate(((self.n + 1) * self.denom) as usize + 1);
        MeanDistribution {
            n: self.n + 1,
            denom: self.denom,
            kind: self.kind,
            counts: next,
        }
    }

    /// Number of tuples whose mean falls in the window.
    pub fn count_window(&self, q: &WindowQuery) -> BigUint {
        match q.index_range(self.grid_denom()) {
            Some((lo, hi)) => self.counts[lo as usize..=hi as usize].iter().sum(),
            None => BigUint::zero(),
        }
    }
}

fn convolve_raw(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (j, wb) in b.iter().enumerate() {
        if wb.is_zero() {
            continue;
        }
        for (i, wa) in a.iter().enumerate() {
            if wa.is_zero() {
                continue;
            }
            if wb.is_one() {
                out[i + j] += wa;
            } else {
                out[i + j] += wa * wb;
            }
        }
    }
    out
}

/// Exact convolution of two distributions over the same spectrum; the result
/// describes `a.n() + b.n()` sites.
pub fn convolve(a: &MeanDistribution, b: &MeanDistribution) -> Result<MeanDistribution> {
    if a.denom != b.denom || a.kind != b.kind {
        return Err(invalid("distributions must share value grid and kind"));
    }
    Ok(MeanDistribution {
        n: a.n + b.n,
        denom: a.denom,
        kind: a.kind,
        counts: convolve_raw(&a.counts, &b.counts),
    })
}

fn check_cap(spec: &CriticalSpectrum, n: u64, cap: u64) -> Result<()> {
    if n == 0 {
        return Err(invalid("number of sites must be positive"));
    }
    let requested = n.saturating_mul(spec.denom() as u64);
    if requested > cap {
        return Err(Error::ResourceCap { requested, cap });
    }
    Ok(())
}

/// Histogram of `n`-site value sums under [`DEFAULT_GRID_CAP`].
pub fn mean_distribution(spec: &CriticalSpectrum, n: u64, kind: CountKind) -> Result<MeanDistribution> {
    mean_distribution_capped(spec, n, kind, DEFAULT_GRID_CAP)
}

pub fn mean_distribution_capped(
    spec: &CriticalSpectrum,
    n: u64,
    kind: CountKind,
    cap: u64,
) -> Result<MeanDistribution> {
    check_cap(spec, n, cap)?;
    let site = MeanDistribution::single_site(spec, kind);
    let mut dist = site.clone();
    for _ in 1..n {
        dist = dist.extend(&site);
    }
    Ok(dist)
}

/// All distributions for `n = 1..=n_max`, index `i` holding `n = i + 1`.
pub fn mean_distributions_upto(
    spec: &CriticalSpectrum,
    n_max: u64,
    kind: CountKind,
    cap: u64,
) -> Result<Vec<MeanDistribution>> {
    check_cap(spec, n_max, cap)?;
    let site = MeanDistribution::single_site(spec, kind);
    let mut out = Vec::with_capacity(n_max as usize);
    out.push(site.clone());
    for _ in 1..n_max {
        let next = out.last().expect("non-empty").extend(&site);
        out.push(next);
    }
    Ok(out)
}

pub fn count_window(dist: &MeanDistribution, q: &WindowQuery) -> BigUint {
    dist.count_window(q)
}

/// Natural logarithm of an arbitrary-size unsigned integer; `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log(count) / n`, the finite-size growth rate; zero counts give `-inf`.
pub fn finite_rate(count: &BigUint, n: u64) -> f64 {
    ln_biguint(count) / n as f64
}

/// Read-shared memo of distributions keyed by spectrum, site count and kind.
///
/// Lookups take a read lock; a miss computes outside any lock and the first
/// writer to insert wins, so concurrent callers always observe one value.
#[derive(Debug, Default)]
pub struct DistributionCache {
    cap: u64,
    map: RwLock<HashMap<(CriticalSpectrum, u64, CountKind), Arc<MeanDistribution>>>,
}

impl DistributionCache {
    pub fn new(cap: u64) -> Self {
        Self {
            cap,
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, spec: &CriticalSpectrum, n: u64, kind: CountKind) -> Result<Arc<MeanDistribution>> {
        let key = (spec.clone(), n, kind);
        if let Some(hit) = self.map.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let dist = Arc::new(mean_distribution_capped(spec, n, kind, self.cap)?);
        let mut map = self.map.write().expect("cache lock");
        Ok(Arc::clone(map.entry(key).or_insert(dist)))
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{CriticalSpectrum, Preset, SpectrumAtom};

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn circle_two_sites() {
        let d = mean_distribution(&Preset::Circle.spectrum(), 2, CountKind::Critical).unwrap();
        assert_eq!(d.grid_denom(), 2);
        assert_eq!(d.counts(), &[big(1), big(2), big(1)]);
    }

    #[test]
    fn circle_single_site_betti() {
        let d = mean_distribution(&Preset::Circle.spectrum(), 1, CountKind::Betti).unwrap();
        assert_eq!(d.counts(), &[big(1), big(1)]);
    }

    #[test]
    fn torus_mass() {
        let d = mean_distribution(&Preset::Torus.spectrum(), 2, CountKind::Critical).unwrap();
        assert_eq!(d.total(), big(16));
    }

    #[test]
    fn window_examples() {
        let circle = Preset::Circle.spectrum();
        let d2 = mean_distribution(&circle, 2, CountKind::Critical).unwrap();
        let q = WindowQuery::new(r(1, 2), r(1, 4), Boundary::ClosedClosed).unwrap();
        assert_eq!(d2.count_window(&q), big(2));

        for m in [1u64, 5, 17, 40] {
            let d = mean_distribution(&circle, m, CountKind::Critical).unwrap();
            let q = WindowQuery::new(r(1, 2), r(1, 2), Boundary::ClosedClosed).unwrap();
            assert_eq!(d.count_window(&q), BigUint::one() << m);
        }

        let b2 = mean_distribution(&circle, 2, CountKind::Betti).unwrap();
        let q = WindowQuery::new(r(1, 2), r(1, 2), Boundary::ClosedOpen).unwrap();
        assert_eq!(b2.count_window(&q), big(3));
    }

    #[test]
    fn empty_window_counts_zero() {
        let d = mean_distribution(&Preset::Circle.spectrum(), 1, CountKind::Critical).unwrap();
        let q = WindowQuery::new(r(1, 2), r(1, 10), Boundary::ClosedClosed).unwrap();
        assert_eq!(d.count_window(&q), BigUint::zero());
        assert_eq!(finite_rate(&d.count_window(&q), 1), f64::NEG_INFINITY);
    }

    #[test]
    fn index_range_conventions() {
        let q = WindowQuery::new(r(1, 2), r(1, 4), Boundary::ClosedClosed).unwrap();
        assert_eq!(q.index_range(4), Some((1, 3)));
        let q = WindowQuery::new(r(1, 2), r(1, 4), Boundary::ClosedOpen).unwrap();
        assert_eq!(q.index_range(4), Some((1, 2)));
        assert_eq!(q.index_range(3), Some((1, 2)));
        let q = WindowQuery::new(r(0, 1), r(1, 10), Boundary::ClosedOpen).unwrap();
        assert_eq!(q.index_range(10), Some((0, 0)));
        let q = WindowQuery::new(r(1, 1), r(1, 10), Boundary::ClosedOpen).unwrap();
        assert_eq!(q.index_range(10), Some((9, 10)));
    }

    #[test]
    fn window_query_rejects_bad_input() {
        assert!(WindowQuery::new(r(1, 2), r(0, 1), Boundary::ClosedClosed).is_err());
        assert!(WindowQuery::new(r(2, 1), r(1, 2), Boundary::ClosedClosed).is_err());
        assert!(WindowQuery::new(r(-1, 2), r(1, 2), Boundary::ClosedClosed).is_err());
    }

    #[test]
    fn finite_rate_values() {
        assert!((finite_rate(&big(2), 2) - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(finite_rate(&big(0), 5), f64::NEG_INFINITY);
        for m in [1u64, 10, 100, 1000, 5000] {
            let v = finite_rate(&(BigUint::one() << m), m);
            assert!((v - 2f64.ln()).abs() < 1e-12, "m = {m}: {v}");
        }
    }

    #[test]
    fn ln_of_huge_integers() {
        let x = BigUint::from(3u32).pow(2000);
        assert!((ln_biguint(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn resource_cap() {
        let torus = Preset::Torus.spectrum();
        let err = mean_distribution_capped(&torus, 100, CountKind::Critical, 150).unwrap_err();
        assert!(matches!(
            err,
            Error::ResourceCap {
                requested: 200,
                cap: 150
            }
        ));
        assert!(mean_distribution(&torus, 0, CountKind::Critical).is_err());
    }

    #[test]
    fn zero_weight_atoms_skipped_for_betti() {
        let s = CriticalSpectrum::validate(&[
            SpectrumAtom::new(r(0, 1), 1, 1),
            SpectrumAtom::new(r(1, 2), 3, 0),
            SpectrumAtom::new(r(1, 1), 1, 1),
        ])
        .unwrap();
        let d = mean_distribution(&s, 1, CountKind::Betti).unwrap();
        assert_eq!(d.counts(), &[big(1), big(0), big(1)]);
        assert_eq!(mean_distribution(&s, 6, CountKind::Betti).unwrap().total(), big(64));
    }

    #[test]
    fn upto_matches_individual() {
        let torus = Preset::Torus.spectrum();
        let all = mean_distributions_upto(&torus, 7, CountKind::Betti, DEFAULT_GRID_CAP).unwrap();
        assert_eq!(all.len(), 7);
        for (i, d) in all.iter().enumerate() {
            assert_eq!(d, &mean_distribution(&torus, i as u64 + 1, CountKind::Betti).unwrap());
        }
    }

    #[test]
    fn cache_returns_shared_value() {
        let cache = DistributionCache::new(DEFAULT_GRID_CAP);
        let circle = Preset::Circle.spectrum();
        let a = cache.get(&circle, 9, CountKind::Critical).unwrap();
        let b = cache.get(&circle, 9, CountKind::Critical).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    let d = cache.get(&circle, 12, CountKind::Betti).unwrap();
                    assert_eq!(d.total(), big(4096));
                });
            }
        });
        assert_eq!(cache.len(), 2);
    }
}
