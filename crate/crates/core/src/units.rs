//! Physical constants, unit-suffixed quantity parsing and the regime parameter.
//!
//! Everything downstream of this module works in strict SI: meters, kelvin,
//! J/m² and Pa. Unit conversion happens only when text is parsed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact SI / CODATA 2018 constants used by every computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Boltzmann constant, J/K.
    pub boltzmann: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light in vacuum, m/s.
    pub light_speed: f64,
    /// ħc, J·m.
    pub hbar_c: f64,
    /// Apéry's constant ζ(3).
    pub zeta3: f64,
}

pub const BOLTZMANN: f64 = 1.380_649e-23;
pub const HBAR: f64 = 1.054_571_817e-34;
pub const LIGHT_SPEED: f64 = 299_792_458.0;
pub const HBAR_C: f64 = HBAR * LIGHT_SPEED;
#[allow(clippy::excessive_precision)]
pub const ZETA3: f64 = 1.202_056_903_159_594_285_4;

pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    boltzmann: BOLTZMANN,
    hbar: HBAR,
    light_speed: LIGHT_SPEED,
    hbar_c: HBAR_C,
    zeta3: ZETA3,
};

/// A (separation, temperature) pair in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryPoint {
    separation: f64,
    temperature: f64,
}

impl QueryPoint {
    /// Separation in meters (> 0), temperature in kelvin (>= 0).
    pub fn new(separation: f64, temperature: f64) -> Result<Self> {
        if !separation.is_finite() || separation <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "separation must be positive and finite, got {separation} m"
            )));
        }
        if !temperature.is_finite() || temperature < 0.0 {
            return Err(Error::InvalidInput(format!(
                "temperature must be non-negative and finite, got {temperature} K"
            )));
        }
        Ok(Self {
            separation,
            temperature,
        })
    }

    #[inline]
    pub fn separation(&self) -> f64 {
        self.separation
    }

    #[inline]
    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Thermal energy kT in joules.
    #[inline]
    pub fn thermal_energy(&self) -> f64 {
        BOLTZMANN * self.temperature
    }

    pub fn tau(&self) -> f64 {
        tau(self)
    }
}

/// Regime parameter 2kTl/(ħc). Exactly zero at T = 0.
pub fn tau(point: &QueryPoint) -> f64 {
    2.0 * BOLTZMANN * point.temperature * point.separation / HBAR_C
}

/// Separation at which `tau` takes the given value at temperature `temperature`.
pub fn separation_for_tau(tau: f64, temperature: f64) -> f64 {
    tau * HBAR_C / (2.0 * BOLTZMANN * temperature)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Meter,
    Nanometer,
    Micrometer,
    Kelvin,
}

impl Unit {
    pub fn is_length(self) -> bool {
        !matches!(self, Unit::Kelvin)
    }

    /// Number of this unit per SI base unit. Converting by division keeps
    /// `300nm` equal to the literal `300e-9`.
    pub fn per_si(self) -> f64 {
        match self {
            Unit::Meter | Unit::Kelvin => 1.0,
            Unit::Nanometer => 1e9,
            Unit::Micrometer => 1e6,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Meter => "m",
            Unit::Nanometer => "nm",
            Unit::Micrometer => "um",
            Unit::Kelvin => "K",
        }
    }
}

// Longest suffixes first so "nm" is not read as "n" + "m".
const SUFFIXES: &[(&str, Unit)] = &[
    ("nm", Unit::Nanometer),
    ("um", Unit::Micrometer),
    ("\u{00b5}m", Unit::Micrometer),
    ("\u{03bc}m", Unit::Micrometer),
    ("m", Unit::Meter),
    ("K", Unit::Kelvin),
];

/// A magnitude with an optional unit suffix. A bare number carries no unit
/// and is interpreted by the caller in SI base units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub magnitude: f64,
    pub unit: Option<Unit>,
}

impl Quantity {
    /// Value in meters. Errors for temperatures; bare numbers are taken as meters.
    pub fn to_meters(&self) -> Result<f64> {
        match self.unit {
            Some(Unit::Kelvin) => Err(Error::InvalidInput(format!(
                "expected a length, got temperature {self}"
            ))),
            Some(u) => Ok(self.magnitude / u.per_si()),
            None => Ok(self.magnitude),
        }
    }

    /// Value in kelvin. Errors for lengths; bare numbers are taken as kelvin.
    pub fn to_kelvin(&self) -> Result<f64> {
        match self.unit {
            Some(Unit::Kelvin) | None => Ok(self.magnitude),
            Some(_) => Err(Error::InvalidInput(format!(
                "expected a temperature, got length {self}"
            ))),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `{:?}` on f64 is the shortest round-tripping representation.
        write!(f, "{:?}", self.magnitude)?;
        if let Some(u) = self.unit {
            f.write_str(u.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_quantity(s)
    }
}

/// Parses text like `300nm`, `0.8um`, `300K` or a bare number.
pub fn parse_quantity(text: &str) -> Result<Quantity> {
    let text = text.trim();
    let (number, unit) = SUFFIXES
        .iter()
        .find_map(|(suffix, unit)| text.strip_suffix(suffix).map(|rest| (rest, Some(*unit))))
        .unwrap_or((text, None));

    if number.is_empty() || number.ends_with(char::is_whitespace) {
        return Err(Error::InvalidInput(format!("malformed quantity '{text}'")));
    }
    if number.ends_with(|c: char| c.is_ascii_alphabetic()) && !number.ends_with(['e', 'E']) {
        return Err(Error::InvalidInput(format!("unknown unit in '{text}'")));
    }
    let magnitude: f64 = number
        .parse()
        .map_err(|_| Error::InvalidInput(format!("malformed number in '{text}'")))?;
    if !magnitude.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite quantity '{text}'")));
    }
    match unit {
        Some(u) if u.is_length() && magnitude <= 0.0 => Err(Error::InvalidInput(format!(
            "length must be positive, got '{text}'"
        ))),
        Some(Unit::Kelvin) if magnitude < 0.0 => Err(Error::InvalidInput(format!(
            "temperature must be non-negative, got '{text}'"
        ))),
        _ => Ok(Quantity { magnitude, unit }),
    }
}
