//! Shared fixtures for the benchmarks.

use morse_entropy::{CriticalSpectrum, Preset, SpectrumAtom};
use num_rational::Rational64;

/// Five atoms on denominator 12 with an imperfect Betti profile.
pub fn five_atom_spectrum() -> CriticalSpectrum {
    let r = |n, d| Rational64::new(n, d);
    CriticalSpectrum::validate(&[
        SpectrumAtom::new(r(0, 1), 1, 1),
        SpectrumAtom::new(r(1, 4), 3, 2),
        SpectrumAtom::new(r(5, 12), 2, 0),
        SpectrumAtom::new(r(2, 3), 4, 3),
        SpectrumAtom::new(r(1, 1), 2, 1),
    ])
    .expect("valid fixture")
}

pub fn fixtures() -> Vec<(&'static str, CriticalSpectrum)> {
    vec![
        ("circle", Preset::Circle.spectrum()),
        ("torus", Preset::Torus.spectrum()),
        ("five_atom", five_atom_spectrum()),
    ]
}
