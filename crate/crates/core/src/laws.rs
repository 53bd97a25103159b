//! Machine-checked instances of the inequalities and limit statements that
//! govern critical and Betti counts.
//!
//! Every check collects its violations instead of stopping at the first one,
//! so one run reports everything that failed. Exact statements (domination,
//! superadditivity, unit lower bound) are compared as big integers; statements
//! about limits are compared in floating point at explicit tolerances.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::counter::{
    ln_biguint, mean_distribution, Boundary, CountKind, MeanDistribution, WindowQuery, DEFAULT_GRID_CAP,
};
use crate::error::{invalid, Error, Result};
use crate::rate::{betti_curve, concavity_check, epsilon_curve, peak, rate_at, window_sup_rate, MaxEntProblem};
use crate::spectrum::{format_rational, CriticalSpectrum, Preset, SpectrumAtom};
use crate::thermo::{laplace_check, legendre_epsilon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Domination,
    Superadditivity,
    Fekete,
    BoundsAndMax,
    Concavity,
    Duality,
    UnitLowerBound,
    UpperSemicontinuity,
    Laplace,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Domination => "domination",
            Law::Superadditivity => "superadditivity",
            Law::Fekete => "fekete",
            Law::BoundsAndMax => "bounds_and_max",
            Law::Concavity => "concavity",
            Law::Duality => "duality",
            Law::UnitLowerBound => "unit_lower_bound",
            Law::UpperSemicontinuity => "upper_semicontinuity",
            Law::Laplace => "laplace",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed instance: the inputs and both sides of the inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub law: Law,
    pub instances_checked: u64,
    /// Instances where an inequality held strictly.
    pub strict_instances: u64,
    pub violations: Vec<Violation>,
    pub passed: bool,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

impl LawReport {
    fn new(law: Law) -> Self {
        Self {
            law,
            instances_checked: 0,
            strict_instances: 0,
            violations: Vec::new(),
            passed: true,
            seed: None,
            notes: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Violation) {
        self.instances_checked += 1;
        if !ok {
            self.violations.push(witness());
        }
    }

    fn record_ge(&mut self, lhs: &BigUint, rhs: &BigUint, inputs: impl FnOnce() -> String) {
        if lhs > rhs {
            self.strict_instances += 1;
        }
        self.record(lhs >= rhs, || Violation {
            inputs: inputs(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    fn record_float(&mut self, ok: bool, inputs: impl FnOnce() -> String, lhs: f64, rhs: f64) {
        self.record(ok, || Violation {
            inputs: inputs(),
            lhs: format!("{lhs:.15e}"),
            rhs: format!("{rhs:.15e}"),
        });
    }

    fn finish(mut self) -> Self {
        self.passed = self.violations.is_empty();
        self
    }

    /// Folds `other` (same law) into `self`.
    pub fn absorb(&mut self, other: LawReport) {
        debug_assert_eq!(self.law, other.law);
        self.instances_checked += other.instances_checked;
        self.strict_instances += other.strict_instances;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
        self.passed = self.violations.is_empty();
    }
}

/// Window conventions used by the exact checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conventions {
    pub critical: Boundary,
    pub betti: Boundary,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            critical: Boundary::ClosedClosed,
            betti: Boundary::ClosedOpen,
        }
    }
}

/// A window `(c, delta)` before a boundary convention is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub c: Rational64,
    pub delta: Rational64,
}

impl Window {
    pub fn new(c: Rational64, delta: Rational64) -> Self {
        Self { c, delta }
    }

    pub fn query(self, boundary: Boundary) -> WindowQuery {
        WindowQuery {
            c: self.c,
            delta: self.delta,
            boundary,
        }
    }

    fn validate(self) -> Result<Self> {
        WindowQuery::new(self.c, self.delta, Boundary::ClosedClosed).map(|_| self)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c={} delta={}", format_rational(self.c), format_rational(self.delta))
    }
}

/// The 25 windows `c ∈ {0, 1/4, 1/2, 3/4, 1}` × `delta ∈ {1/20, 1/10, 1/7, 1/4, 1/2}`.
pub fn standard_windows() -> Vec<Window> {
    let cs = [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)];
    let deltas = [(1, 20), (1, 10), (1, 7), (1, 4), (1, 2)];
    cs.iter()
        .flat_map(|&(cn, cd)| {
            deltas
                .iter()
                .map(move |&(dn, dd)| Window::new(Rational64::new(cn, cd), Rational64::new(dn, dd)))
        })
        .collect()
}

/// Exact `b'_n(c, delta) <= N_n(c, delta)` for `n = 1..=n_max` and every window.
pub fn check_domination(
    spec: &CriticalSpectrum,
    n_max: u64,
    windows: &[Window],
    conventions: Conventions,
) -> Result<LawReport> {
    if n_max == 0 {
        return Err(invalid("n_max must be at least 1"));
    }
    for w in windows {
        w.validate()?;
    }
    let mut report = LawReport::new(Law::Domination);
    let crit_site = MeanDistribution::single_site(spec, CountKind::Critical);
    let betti_site = MeanDistribution::single_site(spec, CountKind::Betti);
    guard_cap(spec, n_max)?;
    let mut crit = crit_site.clone();
    let mut betti = betti_site.clone();
    for n in 1..=n_max {
        if n > 1 {
            crit = crit.extend(&crit_site);
            betti = betti.extend(&betti_site);
        }
        for w in windows {
            let critical = crit.count_window(&w.query(conventions.critical));
            let b = betti.count_window(&w.query(conventions.betti));
            report.record_ge(&critical, &b, || format!("n={n} {w}"));
        }
    }
    Ok(report.finish())
}

fn guard_cap(spec: &CriticalSpectrum, n: u64) -> Result<()> {
    let requested = n.saturating_mul(spec.denom() as u64);
    if requested > DEFAULT_GRID_CAP {
        return Err(Error::ResourceCap {
            requested,
            cap: DEFAULT_GRID_CAP,
        });
    }
    Ok(())
}

/// Exact `count_{n1+n2}(a c1 + (1-a) c2, delta) >= count_{n1}(c1, delta) * count_{n2}(c2, delta)`
/// with `a = n1 / (n1 + n2)`, for Betti and for critical counts.
pub fn check_superadditivity(
    spec: &CriticalSpectrum,
    n1: u64,
    n2: u64,
    c1: Rational64,
    c2: Rational64,
    delta: Rational64,
    conventions: Conventions,
) -> Result<LawReport> {
    if n1 == 0 || n2 == 0 {
        return Err(invalid("site counts must be positive"));
    }
    let w1 = Window::new(c1, delta).validate()?;
    let w2 = Window::new(c2, delta).validate()?;
    let n = n1 + n2;
    let alpha = Rational64::new(n1 as i64, n as i64);
    let joint = Window::new(alpha * c1 + (Rational64::one() - alpha) * c2, delta);

    let mut report = LawReport::new(Law::Superadditivity);
    for (kind, boundary) in [
        (CountKind::Betti, conventions.betti),
        (CountKind::Critical, conventions.critical),
    ] {
        let d1 = mean_distribution(spec, n1, kind)?;
        let d2 = mean_distribution(spec, n2, kind)?;
        let d = mean_distribution(spec, n, kind)?;
        let lhs = d.count_window(&joint.query(boundary));
        let rhs = d1.count_window(&w1.query(boundary)) * d2.count_window(&w2.query(boundary));
        report.record_ge(&lhs, &rhs, || {
            format!(
                "{kind} n1={n1} n2={n2} c1={} c2={} delta={}",
                format_rational(c1),
                format_rational(c2),
                format_rational(delta)
            )
        });
    }
    Ok(report.finish())
}

fn random_unit_rational(rng: &mut impl Rng) -> Rational64 {
    let d = rng.gen_range(1..=12i64);
    Rational64::new(rng.gen_range(0..=d), d)
}

const RANDOM_DELTAS: [(i64, i64); 6] = [(1, 20), (1, 12), (1, 10), (1, 8), (1, 6), (1, 4)];

/// `instances` seeded superadditivity instances with `n1, n2 <= 12` on `spec`.
pub fn superadditivity_sweep(spec: &CriticalSpectrum, seed: u64, instances: usize) -> Result<LawReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LawReport::new(Law::Superadditivity);
    for _ in 0..instances {
        absorb_random_instance(&mut report, spec, &mut rng)?;
    }
    report.seed = Some(seed);
    Ok(report.finish())
}

/// Like [`superadditivity_sweep`], but each instance draws its spectrum from
/// the presets and [`random_spectrum`].
pub fn random_superadditivity(seed: u64, instances: usize) -> Result<LawReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LawReport::new(Law::Superadditivity);
    for i in 0..instances {
        let spec = match i % 4 {
            0 => Preset::Circle.spectrum(),
            1 => Preset::Torus.spectrum(),
            _ => random_spectrum(&mut rng),
        };
        absorb_random_instance(&mut report, &spec, &mut rng)?;
    }
    report.seed = Some(seed);
    Ok(report.finish())
}

fn absorb_random_instance(report: &mut LawReport, spec: &CriticalSpectrum, rng: &mut impl Rng) -> Result<()> {
    let n1 = rng.gen_range(1..=12u64);
    let n2 = rng.gen_range(1..=12u64);
    let c1 = random_unit_rational(rng);
    let c2 = random_unit_rational(rng);
    let (dn, dd) = RANDOM_DELTAS[rng.gen_range(0..RANDOM_DELTAS.len())];
    let delta = Rational64::new(dn, dd);
    report.absorb(check_superadditivity(
        spec,
        n1,
        n2,
        c1,
        c2,
        delta,
        Conventions::default(),
    )?);
    Ok(())
}

/// Tolerance for the finite-size Betti rate at `n` sites.
pub fn fekete_tolerance(n: u64, spec: &CriticalSpectrum) -> f64 {
    let scale = n as f64 * spec.denom() as f64 * spec.total_betti() as f64;
    3.0 * scale.ln() / n as f64
}

/// Superadditivity of `h(n) = log b'_n(c, delta)` in `n`, positivity of
/// `b'_n` beyond `2 / delta`, and closeness of `h(n_max) / n_max` to the
/// window supremum of the Betti rate.
pub fn check_fekete(spec: &CriticalSpectrum, c: Rational64, delta: Rational64, n_max: u64) -> Result<LawReport> {
    let window = Window::new(c, delta).validate()?;
    let threshold = (Rational64::from_integer(2) / delta).to_integer() as u64;
    let needed = (Rational64::from_integer(2) / delta).ceil().to_integer() as u64 + 4;
    if n_max < needed {
        return Err(invalid(format!(
            "n_max = {n_max} must be at least ceil(2/delta) + 4 = {needed}"
        )));
    }
    guard_cap(spec, n_max)?;
    let query = window.query(Boundary::ClosedOpen);
    let site = MeanDistribution::single_site(spec, CountKind::Betti);
    // counts[n] = b'_n(c, delta); index 0 unused.
    let mut counts = vec![BigUint::zero()];
    let mut dist = site.clone();
    for n in 1..=n_max {
        if n > 1 {
            dist = dist.extend(&site);
        }
        counts.push(dist.count_window(&query));
    }

    let mut report = LawReport::new(Law::Fekete);
    let first = threshold + 1;
    // (i) h(n1 + n2) >= h(n1) + h(n2), compared exactly as products.
    for n1 in first..=n_max {
        for n2 in n1..=n_max - n1 {
            let lhs = &counts[(n1 + n2) as usize];
            let rhs = &counts[n1 as usize] * &counts[n2 as usize];
            report.record_ge(lhs, &rhs, || format!("(i) n1={n1} n2={n2} {window}"));
        }
    }
    // (ii) b'_n >= 1 once n > 2 / delta.
    for n in first..=n_max {
        let count = &counts[n as usize];
        report.record(!count.is_zero(), || Violation {
            inputs: format!("(ii) n={n} {window}"),
            lhs: count.to_string(),
            rhs: "1".into(),
        });
    }
    // (iii) finite-size rate against the limit.
    let h = ln_biguint(&counts[n_max as usize]) / n_max as f64;
    let sup = window_sup_rate(spec, CountKind::Betti, c - delta, c + delta)?;
    let tol = fekete_tolerance(n_max, spec);
    let err = (h - sup).abs();
    report.record_float(err <= tol, || format!("(iii) n={n_max} {window} tol={tol:.6e}"), h, sup);
    report.notes.push(format!(
        "{window}: h(n)/n at n={n_max} is {h:.9}, window sup {sup:.9}, gap {err:.3e} <= tol {tol:.3e}"
    ));
    Ok(report.finish())
}

/// Absolute slack for the pointwise bounds.
pub const BOUNDS_SLACK: f64 = 1e-12;
/// Slack for the maximum of `b`.
pub const MAX_SLACK: f64 = 1e-9;

/// Pointwise `0 <= b(c) <= epsilon(c) <= log p` on a uniform grid and
/// `max b >= log B`, the maximum taken over the grid plus the peak of `b`.
pub fn check_bounds_and_max(spec: &CriticalSpectrum, grid_points: usize) -> Result<LawReport> {
    if grid_points < 11 {
        return Err(invalid("bounds check needs at least 11 grid points"));
    }
    let eps = epsilon_curve(spec, grid_points)?;
    let betti = betti_curve(spec, grid_points)?;
    let log_p = (spec.total_multiplicity() as f64).ln();
    let log_b = (spec.total_betti() as f64).ln();
    let mut report = LawReport::new(Law::BoundsAndMax);
    for (i, c) in eps.grid.iter().enumerate() {
        let (e, b) = (eps.rates[i], betti.rates[i]);
        let at = || format!("c={}", format_rational(*c));
        report.record(eps.converged[i] && betti.converged[i], || Violation {
            inputs: format!("c={} solver", format_rational(*c)),
            lhs: "not converged".into(),
            rhs: "converged".into(),
        });
        report.record_float(b >= -BOUNDS_SLACK, || format!("{} 0 <= b", at()), 0.0, b);
        report.record_float(b <= e + BOUNDS_SLACK, || format!("{} b <= epsilon", at()), b, e);
        report.record_float(
            e <= log_p + BOUNDS_SLACK,
            || format!("{} epsilon <= log p", at()),
            e,
            log_p,
        );
    }
    let (c_star, _) = peak(spec, CountKind::Betti);
    let at_peak = rate_at(spec, CountKind::Betti, c_star.to_f64().expect("rational"))?.rate;
    let max_b = betti.max_rate().max(at_peak);
    report.record_float(max_b >= log_b - MAX_SLACK, || "max b >= log B".into(), max_b, log_b);
    report.notes.push(format!(
        "max b = {max_b:.12} (grid max {:.12}, at c* = {}), log B = {log_b:.12}",
        betti.max_rate(),
        format_rational(c_star)
    ));
    Ok(report.finish())
}

/// Midpoint concavity of both limit curves.
pub fn check_concavity(spec: &CriticalSpectrum, grid_points: usize, tol: f64) -> Result<LawReport> {
    let mut report = LawReport::new(Law::Concavity);
    for curve in [epsilon_curve(spec, grid_points)?, betti_curve(spec, grid_points)?] {
        let bad = concavity_check(&curve, tol);
        report.instances_checked += grid_points.saturating_sub(2) as u64;
        for i in bad {
            report.violations.push(Violation {
                inputs: format!("{:?} c={}", curve.kind, format_rational(curve.grid[i])),
                lhs: format!("{:.15e}", curve.rates[i]),
                rhs: format!("{:.15e}", 0.5 * (curve.rates[i - 1] + curve.rates[i + 1])),
            });
        }
    }
    Ok(report.finish())
}

/// Tolerance between the Legendre dual of the free energy and the solver rate.
pub const DUALITY_TOLERANCE: f64 = 1e-8;

/// `|inf_beta (F(beta) + beta c) - epsilon(c)| <= tol` on a uniform grid.
pub fn check_duality(spec: &CriticalSpectrum, grid_points: usize, tol: f64) -> Result<LawReport> {
    let eps = epsilon_curve(spec, grid_points)?;
    let mut report = LawReport::new(Law::Duality);
    for (c, &rate) in eps.grid.iter().zip(&eps.rates) {
        let dual = legendre_epsilon(spec, c.to_f64().expect("rational"))?;
        report.record_float(
            (dual - rate).abs() <= tol,
            || format!("c={}", format_rational(*c)),
            dual,
            rate,
        );
    }
    Ok(report.finish())
}

/// Exact `b'_n(k / n, 1 / (2n)) >= 1` for `k = 0..=n`, `n = 1..=n_max`.
pub fn check_unit_lower_bound(spec: &CriticalSpectrum, n_max: u64) -> Result<LawReport> {
    guard_cap(spec, n_max.max(1))?;
    let mut report = LawReport::new(Law::UnitLowerBound);
    let site = MeanDistribution::single_site(spec, CountKind::Betti);
    let mut dist = site.clone();
    let one = BigUint::one();
    for n in 1..=n_max {
        if n > 1 {
            dist = dist.extend(&site);
        }
        let delta = Rational64::new(1, 2 * n as i64);
        for k in 0..=n {
            let w = Window::new(Rational64::new(k as i64, n as i64), delta);
            let count = dist.count_window(&w.query(Boundary::ClosedOpen));
            report.record_ge(&count, &one, || format!("n={n} k={k} {w}"));
        }
    }
    Ok(report.finish())
}

/// Curve-level upper semicontinuity of `b`: at each grid point `c`, the rate
/// at `c ± h / 2^levels` (with `h` the grid step) does not exceed `b(c) + tol`.
pub fn check_upper_semicontinuity(
    spec: &CriticalSpectrum,
    grid_points: usize,
    levels: u32,
    tol: f64,
) -> Result<LawReport> {
    let curve = betti_curve(spec, grid_points)?;
    let step = 1.0 / (grid_points - 1) as f64;
    let radius = step / 2f64.powi(levels as i32);
    let (values, weights): (Vec<f64>, Vec<f64>) = spec
        .entry_multiset()
        .into_iter()
        .map(|(v, w)| (v.to_f64().expect("rational"), f64::from(w)))
        .unzip();
    let mut report = LawReport::new(Law::UpperSemicontinuity);
    for (c, &at_c) in curve.grid.iter().zip(&curve.rates) {
        let c_f = c.to_f64().expect("rational");
        let mut nearby = f64::NEG_INFINITY;
        for x in [c_f - radius, c_f + radius] {
            if (0.0..=1.0).contains(&x) {
                let sol = crate::rate::maxent_rate(&MaxEntProblem::new(values.clone(), weights.clone(), x)?);
                nearby = nearby.max(sol.rate);
            }
        }
        report.record_float(
            nearby <= at_c + tol,
            || format!("c={} radius={radius:.3e}", format_rational(*c)),
            nearby,
            at_c,
        );
    }
    Ok(report.finish())
}

/// Inverse temperatures used by the Laplace check.
pub const LAPLACE_BETAS: [f64; 4] = [10.0, 100.0, 1000.0, 10000.0];

pub fn check_laplace(betas: &[f64], quadrature_points: usize) -> Result<LawReport> {
    let laplace = laplace_check(betas, quadrature_points)?;
    let mut report = LawReport::new(Law::Laplace);
    for row in &laplace.rows {
        report.record_float(
            row.in_bounds,
            || format!("beta={} 0 < g <= 5 log(beta)/beta", row.beta),
            row.g,
            row.upper_bound,
        );
        report.notes.push(format!(
            "beta={}: Z={:.12e} g={:.12e} bound={:.6e} points={} rel_change={:.2e}",
            row.beta, row.z, row.g, row.upper_bound, row.points, row.relative_change
        ));
    }
    for w in laplace.rows.windows(2) {
        report.record_float(
            w[1].g < w[0].g,
            || format!("g decreasing from beta={} to beta={}", w[0].beta, w[1].beta),
            w[1].g,
            w[0].g,
        );
    }
    Ok(report.finish())
}

/// Draws a valid spectrum: 2 to 5 atoms on a common denominator `D <= 12`,
/// multiplicities in `1..=4`, Betti weights in `[1, m]` at the extremes and
/// `[0, m]` in between.
pub fn random_spectrum(rng: &mut impl Rng) -> CriticalSpectrum {
    let atoms = rng.gen_range(2..=5usize);
    let denom = rng.gen_range((atoms as i64 - 1).max(1)..=12);
    let mut numerators: Vec<i64> = vec![0, denom];
    if atoms > 2 {
        numerators.extend(
            sample(rng, denom as usize - 1, atoms - 2)
                .into_iter()
                .map(|i| i as i64 + 1),
        );
    }
    numerators.sort_unstable();
    let raw: Vec<SpectrumAtom> = numerators
        .iter()
        .map(|&k| {
            let m = rng.gen_range(1..=4u32);
            let extreme = k == 0 || k == denom;
            let b = if extreme {
                rng.gen_range(1..=m)
            } else {
                rng.gen_range(0..=m)
            };
            SpectrumAtom::new(Rational64::new(k, denom), m, b)
        })
        .collect();
    CriticalSpectrum::validate(&raw).expect("generator emits valid spectra")
}

/// `count` spectra from a ChaCha8 stream seeded with `seed`.
pub fn random_spectra(seed: u64, count: usize) -> Vec<CriticalSpectrum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_spectrum(&mut rng)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Only(Law),
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let law = match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "all" => return Ok(Suite::All),
            "domination" => Law::Domination,
            "superadditivity" => Law::Superadditivity,
            "fekete" => Law::Fekete,
            "bounds" | "bounds_and_max" => Law::BoundsAndMax,
            "concavity" => Law::Concavity,
            "duality" => Law::Duality,
            "unit_lower_bound" | "unit" => Law::UnitLowerBound,
            "upper_semicontinuity" | "usc" => Law::UpperSemicontinuity,
            "laplace" => Law::Laplace,
            other => return Err(invalid(format!("unknown suite `{other}`"))),
        };
        Ok(Suite::Only(law))
    }
}

/// `(c, delta)` pairs exercised by the Fekete check in the standard suite.
pub fn fekete_windows() -> Vec<Window> {
    [
        ((1, 2), (1, 10)),
        ((37, 100), (1, 20)),
        ((1, 4), (1, 8)),
        ((9, 10), (1, 10)),
        ((0, 1), (1, 10)),
    ]
    .into_iter()
    .map(|((cn, cd), (dn, dd))| Window::new(Rational64::new(cn, cd), Rational64::new(dn, dd)))
    .collect()
}

/// Standard parameters for the `verify` command.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteParams {
    pub seed: u64,
    pub domination_n_max: u64,
    pub superadditivity_instances: usize,
    pub fekete_n_max: u64,
    pub grid_points: usize,
    pub duality_grid_points: usize,
    pub unit_n_max: u64,
    pub quadrature_points: usize,
}

impl SuiteParams {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            domination_n_max: 20,
            superadditivity_instances: 200,
            fekete_n_max: 256,
            grid_points: 101,
            duality_grid_points: 21,
            unit_n_max: 32,
            quadrature_points: 256,
        }
    }
}

/// Runs the selected laws on `spec`, one report per law, ordered by law.
pub fn run_suite(spec: &CriticalSpectrum, suite: Suite, params: &SuiteParams) -> Result<Vec<LawReport>> {
    let wanted = |law: Law| matches!(suite, Suite::All) || suite == Suite::Only(law);
    let mut reports = Vec::new();
    if wanted(Law::Domination) {
        reports.push(check_domination(
            spec,
            params.domination_n_max,
            &standard_windows(),
            Conventions::default(),
        )?);
    }
    if wanted(Law::Superadditivity) {
        reports.push(superadditivity_sweep(
            spec,
            params.seed,
            params.superadditivity_instances,
        )?);
    }
    if wanted(Law::Fekete) {
        let mut merged = LawReport::new(Law::Fekete);
        for w in fekete_windows() {
            merged.absorb(check_fekete(spec, w.c, w.delta, params.fekete_n_max)?);
        }
        reports.push(merged.finish());
    }
    if wanted(Law::BoundsAndMax) {
        reports.push(check_bounds_and_max(spec, params.grid_points)?);
    }
    if wanted(Law::Concavity) {
        reports.push(check_concavity(spec, params.grid_points, 1e-9)?);
    }
    if wanted(Law::Duality) {
        reports.push(check_duality(spec, params.duality_grid_points, DUALITY_TOLERANCE)?);
    }
    if wanted(Law::UnitLowerBound) {
        reports.push(check_unit_lower_bound(spec, params.unit_n_max)?);
    }
    if wanted(Law::UpperSemicontinuity) {
        reports.push(check_upper_semicontinuity(spec, params.grid_points, 24, 1e-6)?);
    }
    if wanted(Law::Laplace) {
        reports.push(check_laplace(&LAPLACE_BETAS, params.quadrature_points)?);
    }
    for r in &mut reports {
        r.seed.get_or_insert(params.seed);
    }
    Ok(reports)
}
