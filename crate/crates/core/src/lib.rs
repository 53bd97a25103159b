//! Exact critical-point and Betti counting for product Morse functions
//! `f_n(x) = (1/n) sum_j f0(x_j)`, the limit rate functions `epsilon(c)` and
//! `b(c)`, and checks of the laws relating them.
//!
//! The model of `f0` is a [`CriticalSpectrum`]. Counts over value windows are
//! exact big integers ([`counter`]); their exponential growth rates are
//! computed by a one-dimensional maximum-entropy solver ([`rate`]); the
//! statistical-mechanics view lives in [`thermo`]; [`laws`] ties everything
//! together into reproducible verification reports.

pub mod counter;
mod error;
pub mod laws;
pub mod rate;
mod solve;
pub mod spectrum;
pub mod thermo;

pub use counter::{
    count_window, finite_rate, mean_distribution, mean_distribution_capped, Boundary, CountKind, DistributionCache,
    MeanDistribution, WindowQuery, DEFAULT_GRID_CAP,
};
pub use error::{Error, Result, SpectrumError};
pub use laws::{LawReport, Suite, SuiteParams, Violation};
pub use rate::{
    betti_curve, concavity_check, epsilon_curve, maxent_rate, Curve, CurveKind, MaxEntProblem, MaxEntSolution,
};
pub use spectrum::{parse_rational, preset, validate_spectrum, CriticalSpectrum, Preset, SpectrumAtom};
pub use thermo::{free_energy, gibbs, laplace_check, legendre_epsilon, GibbsState, LaplaceReport};
