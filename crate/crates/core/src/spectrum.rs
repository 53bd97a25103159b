//! The finite critical-value model of a surjective Morse function `f0: M -> [0, 1]`.
//!
//! A spectrum lists each critical value together with the number of critical
//! points sitting at that value and the Betti weight, i.e. the jump in the
//! dimension of sublevel cohomology when the filtration crosses the value.
//! Weights are model inputs; nothing here looks at geometry.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectrumError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpectrumAtom {
    pub value: Rational64,
    pub multiplicity: u32,
    pub betti_weight: u32,
}

impl SpectrumAtom {
    pub fn new(value: Rational64, multiplicity: u32, betti_weight: u32) -> Self {
        Self {
            value,
            multiplicity,
            betti_weight,
        }
    }
}

/// Validated critical spectrum. Atoms are sorted by strictly increasing value,
/// the first value is 0 and the last is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CriticalSpectrum {
    atoms: Vec<SpectrumAtom>,
    denom: i64,
}

impl CriticalSpectrum {
    /// Normalizes and validates raw `(value, multiplicity, betti_weight)` records.
    ///
    /// Records sharing a value are merged by summing multiplicities and
    /// weights before any invariant is checked.
    pub fn validate(raw: &[SpectrumAtom]) -> Result<Self, SpectrumError> {
        if raw.is_empty() {
            return Err(SpectrumError::Empty);
        }
        let mut merged: BTreeMap<Rational64, (u32, u32)> = BTreeMap::new();
        for atom in raw {
            if atom.value < Rational64::zero() || atom.value > Rational64::one() {
                return Err(SpectrumError::ValueOutOfRange(atom.value));
            }
            if atom.multiplicity == 0 {
                return Err(SpectrumError::ZeroMultiplicity(atom.value));
            }
            let entry = merged.entry(atom.value).or_insert((0, 0));
            entry.0 += atom.multiplicity;
            entry.1 += atom.betti_weight;
        }
        let atoms: Vec<SpectrumAtom> = merged
            .into_iter()
            .map(|(value, (m, b))| SpectrumAtom::new(value, m, b))
            .collect();

        for atom in &atoms {
            if atom.betti_weight > atom.multiplicity {
                return Err(SpectrumError::BettiExceedsMultiplicity {
                    value: atom.value,
                    multiplicity: atom.multiplicity,
                    betti_weight: atom.betti_weight,
                });
            }
        }
        let first = &atoms[0];
        let last = &atoms[atoms.len() - 1];
        if !first.value.is_zero() {
            return Err(SpectrumError::MissingMinimum);
        }
        if !last.value.is_one() {
            return Err(SpectrumError::MissingMaximum);
        }
        for extreme in [first, last] {
            if extreme.betti_weight == 0 {
                return Err(SpectrumError::ExtremeWithoutBetti(extreme.value));
            }
        }
        let p: u64 = atoms.iter().map(|a| u64::from(a.multiplicity)).sum();
        if p < 2 {
            return Err(SpectrumError::TooFewCriticalPoints(p));
        }
        let b: u64 = atoms.iter().map(|a| u64::from(a.betti_weight)).sum();
        if b < 2 {
            return Err(SpectrumError::TooFewBetti(b));
        }
        Ok(Self::from_atoms_unchecked(atoms))
    }

    /// Builds a spectrum without checking any invariant beyond sorting.
    ///
    /// Exists so that law checks can be exercised against deliberately broken
    /// models; nothing downstream is guaranteed for such inputs.
    pub fn from_atoms_unchecked(mut atoms: Vec<SpectrumAtom>) -> Self {
        atoms.sort_by_key(|a| a.value);
        let denom = atoms.iter().fold(1i64, |acc, a| acc.lcm(a.value.denom()));
        Self { atoms, denom }
    }

    pub fn atoms(&self) -> &[SpectrumAtom] {
        &self.atoms
    }

    /// Least common denominator `D` of all critical values.
    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Total number of critical points `p` of `f0`.
    pub fn total_multiplicity(&self) -> u64 {
        self.atoms.iter().map(|a| u64::from(a.multiplicity)).sum()
    }

    /// Total Betti weight `B = dim H*(M)`.
    pub fn total_betti(&self) -> u64 {
        self.atoms.iter().map(|a| u64::from(a.betti_weight)).sum()
    }

    /// Position of `value` on the integer grid `{0, 1, .., D}`.
    pub fn grid_position(&self, value: Rational64) -> usize {
        let scaled = value * Rational64::from_integer(self.denom);
        debug_assert!(scaled.is_integer());
        scaled.to_integer() as usize
    }

    /// Filtration-entry model: each atom with positive Betti weight, paired
    /// with that weight.
    pub fn entry_multiset(&self) -> Vec<(Rational64, u32)> {
        self.atoms
            .iter()
            .filter(|a| a.betti_weight > 0)
            .map(|a| (a.value, a.betti_weight))
            .collect()
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        let records: Vec<AtomRecord> = serde_json::from_str(text)?;
        let raw = records
            .into_iter()
            .map(AtomRecord::into_atom)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::validate(&raw)?)
    }

    pub fn to_json(&self) -> String {
        let records: Vec<AtomRecord> = self.atoms.iter().map(AtomRecord::from_atom).collect();
        let mut out = serde_json::to_string_pretty(&records).expect("records serialize");
        out.push('\n');
        out
    }
}

pub fn validate_spectrum(raw: &[SpectrumAtom]) -> Result<CriticalSpectrum, SpectrumError> {
    CriticalSpectrum::validate(raw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Circle,
    Sphere,
    Torus,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Circle, Preset::Sphere, Preset::Torus];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Circle => "circle",
            Preset::Sphere => "sphere",
            Preset::Torus => "torus",
        }
    }

    pub fn spectrum(self) -> CriticalSpectrum {
        let r = |n, d| Rational64::new(n, d);
        let raw = match self {
            // Height function: one minimum, one maximum.
            Preset::Circle | Preset::Sphere => vec![SpectrumAtom::new(r(0, 1), 1, 1), SpectrumAtom::new(r(1, 1), 1, 1)],
            // (2 - cos a - cos b) / 4: min, two saddles at 1/2, max.
            Preset::Torus => vec![
                SpectrumAtom::new(r(0, 1), 1, 1),
                SpectrumAtom::new(r(1, 2), 2, 2),
                SpectrumAtom::new(r(1, 1), 1, 1),
            ],
        };
        CriticalSpectrum::validate(&raw).expect("presets are valid")
    }
}

impl FromStr for Preset {
    type Err = SpectrumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "circle" => Ok(Preset::Circle),
            "sphere" => Ok(Preset::Sphere),
            "torus" => Ok(Preset::Torus),
            other => Err(SpectrumError::UnknownPreset(other.to_string())),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn preset(name: &str) -> Result<CriticalSpectrum, SpectrumError> {
    Ok(name.parse::<Preset>()?.spectrum())
}

/// Parses an exact rational from `a/b`, an integer, or a finite decimal such
/// as `0.37`. No floating point is involved.
pub fn parse_rational(text: &str) -> Result<Rational64, SpectrumError> {
    let bad = || SpectrumError::BadRational(text.to_string());
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part: i64 = match int.trim_start_matches(['-', '+']) {
            "" => 0,
            digits => digits.parse().map_err(|_| bad())?,
        };
        let scale = 10i64.pow(frac.len() as u32);
        let frac_part: i64 = frac.parse().map_err(|_| bad())?;
        let magnitude = int_part
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_part))
            .ok_or_else(bad)?;
        let numer = if negative { -magnitude } else { magnitude };
        return Ok(Rational64::new(numer, scale));
    }
    s.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad())
}

/// Renders a rational as `a/b`, or just `a` when integral.
pub fn format_rational(value: Rational64) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomRecord {
    value: RationalRepr,
    multiplicity: u32,
    betti_weight: u32,
}

impl AtomRecord {
    fn into_atom(self) -> Result<SpectrumAtom, SpectrumError> {
        let value = match self.value {
            RationalRepr::Int(v) => Rational64::from_integer(v),
            RationalRepr::Text(t) => parse_rational(&t)?,
        };
        Ok(SpectrumAtom::new(value, self.multiplicity, self.betti_weight))
    }

    fn from_atom(atom: &SpectrumAtom) -> Self {
        Self {
            value: RationalRepr::Text(format_rational(atom.value)),
            multiplicity: atom.multiplicity,
            betti_weight: atom.betti_weight,
        }
    }
}
