//! Limit rate functions `c -> lim (1/n) log count_n(c)`.
//!
//! For tuples of weighted atoms the number of tuples with empirical atom
//! frequencies `q` grows like `exp(n * (H(q) + sum_i q_i log w_i))`, so the
//! growth rate at mean value `c` is the constrained maximum
//!
//! ```text
//! rate(c) = sup { H(q) + sum_i q_i log w_i : sum_i q_i v_i = c }.
//! ```
//!
//! The maximizer is the tilted family `q_i ∝ w_i exp(lambda v_i)`. Its mean is
//! strictly increasing in `lambda`, so one bisection on `lambda` solves the
//! problem, and `rate'(c) = -lambda`. For two atoms of unit weight at 0 and 1
//! this is the binary entropy `-c log c - (1-c) log(1-c)`.

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::counter::{finite_rate, mean_distribution_capped, CountKind, WindowQuery};
use crate::error::{invalid, Result};
use crate::solve::{bisect_increasing, log_sum_exp};
use crate::spectrum::CriticalSpectrum;

/// Tolerance on `|sum q_i v_i - c|`.
pub const MEAN_TOLERANCE: f64 = 1e-12;
/// Cap on objective evaluations (bracket expansion plus bisection).
pub const MAX_ITERATIONS: u32 = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct MaxEntProblem {
    values: Vec<f64>,
    weights: Vec<f64>,
    target: f64,
}

impl MaxEntProblem {
    pub fn new(values: Vec<f64>, weights: Vec<f64>, target: f64) -> Result<Self> {
        if values.is_empty() || values.len() != weights.len() {
            return Err(invalid("values and weights must be non-empty and of equal length"));
        }
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(invalid("weights must be positive and finite"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("values must be finite"));
        }
        let (lo, hi) = hull(&values);
        if !(lo..=hi).contains(&target) {
            return Err(invalid(format!("target {target} outside the value hull [{lo}, {hi}]")));
        }
        Ok(Self {
            values,
            weights,
            target,
        })
    }

    /// Problem whose weights are multiplicities (`Critical`) or Betti weights
    /// (`Betti`); zero-weight atoms are dropped.
    pub fn from_spectrum(spec: &CriticalSpectrum, kind: CountKind, target: f64) -> Result<Self> {
        let (values, weights) = spectrum_weights(spec, kind);
        Self::new(values, weights, target)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    fn log_partition(&self, lambda: f64) -> f64 {
        log_sum_exp(self.tilted_logs(lambda))
    }

    fn tilted_logs(&self, lambda: f64) -> impl Iterator<Item = f64> + Clone + '_ {
        self.values
            .iter()
            .zip(&self.weights)
            .map(move |(v, w)| w.ln() + lambda * v)
    }

    fn distribution(&self, lambda: f64) -> Vec<f64> {
        let log_z = self.log_partition(lambda);
        self.tilted_logs(lambda).map(|a| (a - log_z).exp()).collect()
    }

    fn mean(&self, lambda: f64) -> f64 {
        self.distribution(lambda)
            .iter()
            .zip(&self.values)
            .map(|(p, v)| p * v)
            .sum()
    }
}

fn hull(values: &[f64]) -> (f64, f64) {
    values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
        (lo.min(v), hi.max(v))
    })
}

fn spectrum_weights(spec: &CriticalSpectrum, kind: CountKind) -> (Vec<f64>, Vec<f64>) {
    spec.atoms()
        .iter()
        .filter_map(|a| {
            let w = match kind {
                CountKind::Critical => a.multiplicity,
                CountKind::Betti => a.betti_weight,
            };
            (w > 0).then(|| (a.value.to_f64().expect("rational in [0,1]"), f64::from(w)))
        })
        .unzip()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxEntSolution {
    /// Tilt parameter; `-inf` / `+inf` for targets on the lower / upper end.
    pub lambda: f64,
    pub p: Vec<f64>,
    pub rate: f64,
    /// Achieved `|sum p_i v_i - target|`.
    pub residual: f64,
    pub converged: bool,
    pub iterations: u32,
}

impl MaxEntSolution {
    /// Turns a non-converged solution into [`Error::NonConvergence`](crate::Error::NonConvergence).
    pub fn require_converged(self, target: f64) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(crate::Error::NonConvergence {
                target,
                iterations: self.iterations,
                residual: self.residual,
            })
        }
    }
}

pub fn maxent_rate(problem: &MaxEntProblem) -> MaxEntSolution {
    let (lo, hi) = hull(&problem.values);
    let c = problem.target;
    if c == lo || c == hi {
        let mut p = vec![0.0; problem.values.len()];
        let mut log_w = f64::NEG_INFINITY;
        for (i, (&v, &w)) in problem.values.iter().zip(&problem.weights).enumerate() {
            if v == c {
                p[i] = 1.0;
                log_w = w.ln();
                break;
            }
        }
        // Single-point hull has zero tilt.
        let lambda = if lo == hi {
            0.0
        } else if c == lo {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
        return MaxEntSolution {
            lambda,
            p,
            rate: log_w,
            residual: 0.0,
            converged: true,
            iterations: 0,
        };
    }

    let root = bisect_increasing(|l| problem.mean(l), c, MEAN_TOLERANCE, MAX_ITERATIONS);
    let lambda = root.x;
    // Dual objective at the target: minimized at the exact tilt, so errors in
    // lambda enter only at second order.
    let rate = problem.log_partition(lambda) - lambda * c;
    MaxEntSolution {
        lambda,
        p: problem.distribution(lambda),
        rate,
        residual: (root.value - c).abs(),
        converged: root.converged,
        iterations: root.iterations,
    }
}

/// Rate of `spec` at mean `c` for the given count kind.
pub fn rate_at(spec: &CriticalSpectrum, kind: CountKind, c: f64) -> Result<MaxEntSolution> {
    Ok(maxent_rate(&MaxEntProblem::from_spectrum(spec, kind, c)?))
}

/// Location and value of the rate maximum: the zero-tilt mean
/// `sum w_i v_i / sum w_i` and `log sum w_i`.
pub fn peak(spec: &CriticalSpectrum, kind: CountKind) -> (Rational64, f64) {
    let (num, total) = spec
        .atoms()
        .iter()
        .fold((Rational64::from_integer(0), 0i64), |(num, total), a| {
            let w = match kind {
                CountKind::Critical => a.multiplicity,
                CountKind::Betti => a.betti_weight,
            } as i64;
            (num + a.value * Rational64::from_integer(w), total + w)
        });
    (num / Rational64::from_integer(total), (total as f64).ln())
}

/// Supremum of the (concave) rate over `[lo, hi] ∩ [0, 1]`; `-inf` when the
/// intersection is empty.
pub fn window_sup_rate(spec: &CriticalSpectrum, kind: CountKind, lo: Rational64, hi: Rational64) -> Result<f64> {
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    let lo = lo.max(zero);
    let hi = hi.min(one);
    if lo > hi {
        return Ok(f64::NEG_INFINITY);
    }
    let (c_star, _) = peak(spec, kind);
    let best = c_star.clamp(lo, hi);
    let target = best.to_f64().expect("rational");
    Ok(rate_at(spec, kind, target)?.require_converged(target)?.rate)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    Epsilon,
    Betti,
    FiniteN(u64),
}

/// A rate function sampled on a rational grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub kind: CurveKind,
    #[serde(skip)]
    pub grid: Vec<Rational64>,
    pub rates: Vec<f64>,
    /// Per-point solver status; finite-n curves are exact and always `true`.
    pub converged: Vec<bool>,
}

impl Curve {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }

    pub fn max_rate(&self) -> f64 {
        self.rates.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `points` evenly spaced rationals `k / (points - 1)` covering `[0, 1]`.
pub fn uniform_grid(points: usize) -> Result<Vec<Rational64>> {
    if points < 2 {
        return Err(invalid("a grid needs at least two points"));
    }
    let last = (points - 1) as i64;
    Ok((0..=last).map(|k| Rational64::new(k, last)).collect())
}

fn limit_curve(spec: &CriticalSpectrum, kind: CountKind, grid_points: usize) -> Result<Curve> {
    let grid = uniform_grid(grid_points)?;
    let (values, weights) = spectrum_weights(spec, kind);
    let mut rates = Vec::with_capacity(grid.len());
    let mut converged = Vec::with_capacity(grid.len());
    for c in &grid {
        let problem = MaxEntProblem::new(values.clone(), weights.clone(), c.to_f64().expect("rational"))?;
        let sol = maxent_rate(&problem);
        rates.push(sol.rate);
        converged.push(sol.converged);
    }
    let kind = match kind {
        CountKind::Critical => CurveKind::Epsilon,
        CountKind::Betti => CurveKind::Betti,
    };
    Ok(Curve {
        kind,
        grid,
        rates,
        converged,
    })
}

/// The dynamical Morse entropy `epsilon(c)` on a uniform grid.
pub fn epsilon_curve(spec: &CriticalSpectrum, grid_points: usize) -> Result<Curve> {
    limit_curve(spec, CountKind::Critical, grid_points)
}

/// The Betti entropy `b(c)` on a uniform grid.
pub fn betti_curve(spec: &CriticalSpectrum, grid_points: usize) -> Result<Curve> {
    limit_curve(spec, CountKind::Betti, grid_points)
}

/// Finite-size rates `log count_n(c, delta) / n` on a uniform grid, using the
/// default window convention of `kind`.
pub fn finite_curve(
    spec: &CriticalSpectrum,
    n: u64,
    kind: CountKind,
    delta: Rational64,
    grid_points: usize,
    cap: u64,
) -> Result<Curve> {
    let grid = uniform_grid(grid_points)?;
    let dist = mean_distribution_capped(spec, n, kind, cap)?;
    let rates = grid
        .iter()
        .map(|&c| {
            let q = WindowQuery::for_kind(c, delta, kind)?;
            Ok(finite_rate(&dist.count_window(&q), n))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve {
        kind: CurveKind::FiniteN(n),
        converged: vec![true; grid.len()],
        grid,
        rates,
    })
}

/// Interior indices `i` where `rate[i] < (rate[i-1] + rate[i+1]) / 2 - tol`.
///
/// Assumes a uniform grid. `-inf` entries compare below everything finite.
pub fn concavity_check(curve: &Curve, tol: f64) -> Vec<usize> {
    curve
        .rates
        .windows(3)
        .enumerate()
        .filter(|(_, w)| {
            let chord = 0.5 * (w[0] + w[2]);
            // NaN anywhere counts as a violation.
            !matches!(
                w[1].partial_cmp(&(chord - tol)),
                Some(std::cmp::Ordering::Greater | std::cmp::Ordering::Equal)
            )
        })
        .map(|(i, _)| i + 1)
        .collect()
}
