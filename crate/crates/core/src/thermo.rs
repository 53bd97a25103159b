//! Partition functions and Gibbs states over a critical spectrum.
//!
//! Sign convention: the energy of an atom is its critical value, so Gibbs
//! weights are `m_i * exp(-beta * v_i)` and positive `beta` favours the
//! minimum. Duality with the rate function lets `beta` range over all reals.

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::rate::{MAX_ITERATIONS, MEAN_TOLERANCE};
use crate::solve::{bisect_increasing, log_sum_exp};
use crate::spectrum::CriticalSpectrum;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GibbsState {
    pub beta: f64,
    /// Probability of each atom, in spectrum order.
    pub p: Vec<f64>,
    /// `F(beta) = log sum_i m_i exp(-beta v_i)`.
    pub free_energy: f64,
    /// Gibbs mean value `<v>_beta = -F'(beta)`.
    pub mean: f64,
}

fn log_weights(spec: &CriticalSpectrum, beta: f64) -> impl Iterator<Item = f64> + Clone + '_ {
    spec.atoms()
        .iter()
        .map(move |a| f64::from(a.multiplicity).ln() - beta * a.value.to_f64().expect("rational"))
}

pub fn free_energy(spec: &CriticalSpectrum, beta: f64) -> f64 {
    log_sum_exp(log_weights(spec, beta))
}

pub fn gibbs(spec: &CriticalSpectrum, beta: f64) -> GibbsState {
    let f = free_energy(spec, beta);
    let p: Vec<f64> = log_weights(spec, beta).map(|a| (a - f).exp()).collect();
    let mean = p
        .iter()
        .zip(spec.atoms())
        .map(|(p, a)| p * a.value.to_f64().expect("rational"))
        .sum();
    GibbsState {
        beta,
        p,
        free_energy: f,
        mean,
    }
}

/// `inf_beta (F(beta) + beta c)`, the Legendre dual of the free energy.
///
/// Solved through the stationarity condition `<v>_beta = c`; at `c = 0` or
/// `c = 1` the infimum is the limit `beta -> +inf` / `-inf`, i.e. the log
/// multiplicity of the extreme atom.
pub fn legendre_epsilon(spec: &CriticalSpectrum, c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(invalid(format!("value {c} outside [0, 1]")));
    }
    let atoms = spec.atoms();
    if c == 0.0 {
        return Ok(f64::from(atoms[0].multiplicity).ln());
    }
    if c == 1.0 {
        return Ok(f64::from(atoms[atoms.len() - 1].multiplicity).ln());
    }
    // The Gibbs mean decreases in beta, so search over t = -beta.
    let root = bisect_increasing(|t| gibbs(spec, -t).mean, c, MEAN_TOLERANCE, MAX_ITERATIONS);
    if !root.converged {
        return Err(Error::NonConvergence {
            target: c,
            iterations: root.iterations,
            residual: (root.value - c).abs(),
        });
    }
    let beta = -root.x;
    Ok(free_energy(spec, beta) + beta * c)
}

/// Relative change under point doubling at which the quadrature is accepted.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;
const MAX_QUADRATURE_POINTS: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaplaceRow {
    pub beta: f64,
    /// `Z(beta)` against the uniform probability on the circle.
    pub z: f64,
    /// `-log Z(beta) / beta`.
    pub g: f64,
    /// `5 log(beta) / beta`.
    pub upper_bound: f64,
    pub points: usize,
    pub relative_change: f64,
    /// `0 < g <= upper_bound`; only asserted for `beta >= 10`.
    pub in_bounds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaplaceReport {
    pub rows: Vec<LaplaceRow>,
    pub decreasing: bool,
    pub passed: bool,
}

/// `f0(theta) = (1 - cos theta) / 2` on the circle: minimum 0 at 0, maximum 1 at pi.
pub fn circle_height(theta: f64) -> f64 {
    0.5 * (1.0 - theta.cos())
}

fn trapezoid_z(beta: f64, points: usize) -> f64 {
    let h = 2.0 * PI / points as f64;
    (0..points)
        .map(|k| (-beta * circle_height(k as f64 * h)).exp())
        .sum::<f64>()
        / points as f64
}

/// Partition function of the circle height function by the periodic trapezoid
/// rule, doubling the point count until successive values agree.
pub fn circle_partition(beta: f64, quadrature_points: usize) -> Result<(f64, usize, f64)> {
    let mut points = quadrature_points;
    let mut z = trapezoid_z(beta, points);
    loop {
        if points * 2 > MAX_QUADRATURE_POINTS {
            return Err(Error::NonConvergence {
                target: beta,
                iterations: points.trailing_zeros(),
                residual: f64::NAN,
            });
        }
        let finer = trapezoid_z(beta, points * 2);
        let change = ((finer - z) / finer).abs();
        points *= 2;
        z = finer;
        if change <= QUADRATURE_TOLERANCE {
            return Ok((z, points, change));
        }
    }
}

/// Laplace-method check for the circle height function: `g(beta) -> min f0 = 0`
/// from above, at rate `O(log beta / beta)`.
pub fn laplace_check(beta_grid: &[f64], quadrature_points: usize) -> Result<LaplaceReport> {
    if quadrature_points < 256 {
        return Err(invalid("quadrature needs at least 256 points"));
    }
    if beta_grid.is_empty() || beta_grid.iter().any(|&b| !(b > 0.0 && b.is_finite())) {
        return Err(invalid("inverse temperatures must be positive and finite"));
    }
    if beta_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("inverse temperatures must be strictly increasing"));
    }
    let mut rows = Vec::with_capacity(beta_grid.len());
    for &beta in beta_grid {
        let (z, points, relative_change) = circle_partition(beta, quadrature_points)?;
        let g = -z.ln() / beta;
        let upper_bound = 5.0 * beta.ln() / beta;
        let in_bounds = beta < 10.0 || (g > 0.0 && g <= upper_bound);
        rows.push(LaplaceRow {
            beta,
            z,
            g,
            upper_bound,
            points,
            relative_change,
            in_bounds,
        });
    }
    let decreasing = rows.windows(2).all(|w| w[1].g < w[0].g);
    let passed = decreasing && rows.iter().all(|r| r.in_bounds);
    Ok(LaplaceReport {
        rows,
        decreasing,
        passed,
    })
}
