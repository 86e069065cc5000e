//! Regime classification, model-versus-oracle comparison, crossover search and
//! separation sweeps.

use std::fmt;
use std::str::FromStr;

use crate::asymptotics::{
    casimir_energy_result, casimir_pressure_result, high_t_energy, high_t_pressure, low_t_energy,
    low_t_pressure,
};
use crate::error::{Error, Result};
use crate::exact::{exact_energy, exact_pressure, EnergyResult, Model, PressureResult, SummationPolicy};
use crate::gold::{corrected_casimir_energy, corrected_casimir_pressure, correction_factor};
use crate::units::{separation_for_tau, QueryPoint};

/// At or below this τ the low-temperature expansion is labelled valid.
pub const LOW_T_TAU_MAX: f64 = 0.5;
/// At or above this τ the high-temperature expansion is labelled valid.
pub const HIGH_T_TAU_MIN: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeLabel {
    LowTValid,
    Crossover,
    HighTValid,
}

impl RegimeLabel {
    pub fn tag(self) -> &'static str {
        match self {
            RegimeLabel::LowTValid => "low_t_valid",
            RegimeLabel::Crossover => "crossover",
            RegimeLabel::HighTValid => "high_t_valid",
        }
    }

    pub fn from_tau(tau: f64) -> Self {
        if tau <= LOW_T_TAU_MAX {
            RegimeLabel::LowTValid
        } else if tau >= HIGH_T_TAU_MIN {
            RegimeLabel::HighTValid
        } else {
            RegimeLabel::Crossover
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeClass {
    pub tau_value: f64,
    pub label: RegimeLabel,
}

pub fn classify_regime(point: &QueryPoint) -> RegimeClass {
    let tau_value = point.tau();
    RegimeClass {
        tau_value,
        label: RegimeLabel::from_tau(tau_value),
    }
}

/// Every model at one point, with deviations |model − exact| / |exact|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelComparison {
    pub point: QueryPoint,
    pub exact: f64,
    pub low_t: f64,
    pub high_t: f64,
    pub casimir: f64,
    pub rel_dev_low_t: f64,
    pub rel_dev_high_t: f64,
    pub rel_dev_casimir: f64,
}

pub fn compare_models(point: &QueryPoint, policy: &SummationPolicy) -> Result<ModelComparison> {
    let tau = point.tau();
    if tau < policy.tau_floor {
        return Err(Error::Domain(format!(
            "tau = {tau:.3e} below summation floor {:.1e}",
            policy.tau_floor
        )));
    }
    let exact = exact_energy(point, policy)?.value;
    let low_t = low_t_energy(point).value;
    let high_t = high_t_energy(point)?.value;
    let casimir = casimir_energy_result(point).value;
    let dev = |v: f64| (v - exact).abs() / exact.abs();
    Ok(ModelComparison {
        point: *point,
        exact,
        low_t,
        high_t,
        casimir,
        rel_dev_low_t: dev(low_t),
        rel_dev_high_t: dev(high_t),
        rel_dev_casimir: dev(casimir),
    })
}

/// Energy and pressure of one model at one point.
pub fn evaluate_model(
    model: Model,
    point: &QueryPoint,
    policy: &SummationPolicy,
) -> Result<(EnergyResult, PressureResult)> {
    match model {
        Model::Exact => Ok((exact_energy(point, policy)?, exact_pressure(point, policy)?)),
        Model::LowT => Ok((low_t_energy(point), low_t_pressure(point))),
        Model::HighT => Ok((high_t_energy(point)?, high_t_pressure(point)?)),
        Model::CasimirZeroT => Ok((casimir_energy_result(point), casimir_pressure_result(point))),
        Model::GoldCorrected => Ok((corrected_casimir_energy(point)?, corrected_casimir_pressure(point)?)),
    }
}

const CROSSOVER_TAU_BRACKET: (f64, f64) = (0.3, 3.0);
const BISECTION_LOG_WIDTH: f64 = 1e-13;

/// Separation where the low-T and high-T expansions deviate equally from the
/// exact energy, by bisection in ln l over τ ∈ [0.3, 3].
pub fn crossover_separation(temperature: f64, policy: &SummationPolicy) -> Result<f64> {
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(Error::InvalidInput(format!(
            "crossover needs a positive temperature, got {temperature} K"
        )));
    }
    let gap = |ln_l: f64| -> Result<f64> {
        let c = compare_models(&QueryPoint::new(ln_l.exp(), temperature)?, policy)?;
        Ok(c.rel_dev_low_t - c.rel_dev_high_t)
    };
    let mut lo = separation_for_tau(CROSSOVER_TAU_BRACKET.0, temperature).ln();
    let mut hi = separation_for_tau(CROSSOVER_TAU_BRACKET.1, temperature).ln();
    let (g_lo, g_hi) = (gap(lo)?, gap(hi)?);
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::Numerical(format!(
            "no sign change of the deviation gap on tau in {CROSSOVER_TAU_BRACKET:?} ({g_lo:e}, {g_hi:e})"
        )));
    }
    // Low-T deviation grows with l, so the gap is negative below the root.
    let rising = g_lo < 0.0;
    while hi - lo > BISECTION_LOG_WIDTH {
        let mid = 0.5 * (lo + hi);
        let g = gap(mid)?;
        if g == 0.0 {
            return Ok(mid.exp());
        }
        if (g < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

impl FromStr for SweepScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "lin" => Ok(SweepScale::Linear),
            "log" => Ok(SweepScale::Log),
            other => Err(Error::InvalidInput(format!("unknown sweep scale '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub l_start: f64,
    pub l_stop: f64,
    pub l_steps: usize,
    pub scale: SweepScale,
    pub temperature: f64,
    pub models: Vec<Model>,
    pub include_correction: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.l_start.is_finite() && self.l_start > 0.0 && self.l_stop.is_finite()) {
            return Err(Error::InvalidInput("sweep bounds must be positive and finite".into()));
        }
        if !(self.l_start < self.l_stop) {
            return Err(Error::InvalidInput(format!(
                "sweep needs l_start < l_stop, got {} >= {}",
                self.l_start, self.l_stop
            )));
        }
        if self.l_steps < 2 {
            return Err(Error::InvalidInput("sweep needs at least 2 steps".into()));
        }
        if !(self.temperature.is_finite() && self.temperature >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "invalid sweep temperature {}",
                self.temperature
            )));
        }
        if self.models.is_empty() {
            return Err(Error::InvalidInput("sweep needs at least one model".into()));
        }
        Ok(())
    }

    /// Grid separations in order; both endpoints are hit exactly.
    pub fn separations(&self) -> impl Iterator<Item = f64> + '_ {
        let last = (self.l_steps - 1) as f64;
        (0..self.l_steps).map(move |i| {
            if i == 0 {
                return self.l_start;
            }
            if i == self.l_steps - 1 {
                return self.l_stop;
            }
            let w = i as f64 / last;
            match self.scale {
                SweepScale::Linear => self.l_start * (1.0 - w) + self.l_stop * w,
                SweepScale::Log => (self.l_start.ln() * (1.0 - w) + self.l_stop.ln() * w).exp(),
            }
        })
    }

    pub fn points(&self) -> impl Iterator<Item = Result<QueryPoint>> + '_ {
        self.separations()
            .map(move |l| QueryPoint::new(l, self.temperature))
    }
}

/// One grid point of a sweep. Errors are captured per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub separation: f64,
    pub comparison: Result<ModelComparison>,
    pub correction: Option<Result<f64>>,
}

pub fn sweep(spec: &SweepSpec, policy: &SummationPolicy) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    Ok(spec
        .separations()
        .enumerate()
        .map(|(index, separation)| {
            let point = QueryPoint::new(separation, spec.temperature);
            SweepRow {
                index,
                separation,
                comparison: point.and_then(|p| compare_models(&p, policy)),
                correction: spec
                    .include_correction
                    .then(|| correction_factor(separation, spec.temperature)),
            }
        })
        .collect())
}
