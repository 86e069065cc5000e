//! Exact finite-temperature free energy and pressure of two ideal-conductor
//! plates from the Matsubara sum.
//!
//! Integrating `q ln(1 − e^{−2ql})` over `q ≥ ξₙ/c` term by term in the
//! expansion of the logarithm folds each Matsubara frequency into closed-form
//! polylogarithms. With `xₙ = 2πn kT/(ħc)` and `yₙ = e^{−2l xₙ} = e^{−2πnτ}`:
//!
//! ```text
//! E = −(kT/π l²) [ ζ(3)/8 + Σₙ (πnτ/2 · Li₂(yₙ) + ¼ Li₃(yₙ)) ]
//! P = −(kT/π l³) [ ζ(3)/4 + Σₙ ((πnτ)² Li₁(yₙ) + πnτ Li₂(yₙ) + ½ Li₃(yₙ)) ]
//! ```
//!
//! The n = 0 term carries weight ½ and gives −kTζ(3)/(8πl²). Every summand is
//! positive, so partial sums approach the result monotonically.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::asymptotics::{casimir_energy, casimir_pressure, TermBreakdown};
use crate::error::{Error, Result};
use crate::polylog::{polylog_bounded, CompensatedSum};
use crate::units::{QueryPoint, ZETA3};

/// Which expression produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Exact,
    LowT,
    HighT,
    CasimirZeroT,
    GoldCorrected,
}

impl Model {
    pub const ALL: [Model; 5] = [
        Model::Exact,
        Model::LowT,
        Model::HighT,
        Model::CasimirZeroT,
        Model::GoldCorrected,
    ];

    /// Tag used in serialized output.
    pub fn tag(self) -> &'static str {
        match self {
            Model::Exact => "exact",
            Model::LowT => "low_t",
            Model::HighT => "high_t",
            Model::CasimirZeroT => "casimir_zero_t",
            Model::GoldCorrected => "gold_corrected",
        }
    }

    /// Name accepted on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Model::Exact => "exact",
            Model::LowT => "low-t",
            Model::HighT => "high-t",
            Model::CasimirZeroT => "casimir",
            Model::GoldCorrected => "gold",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Model {
    type Err = Error;

    /// Accepts both the CLI names and the output tags.
    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.cli_name() == s || m.tag() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown model '{s}'")))
    }
}

/// Free energy per unit area, J/m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    pub value: f64,
    pub model: Model,
    /// Bound on |value − true value of this model's defining expression|.
    pub truncation_error: f64,
    pub terms: Option<TermBreakdown>,
}

/// Force per unit area, Pa; negative is attractive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureResult {
    pub value: f64,
    pub model: Model,
    pub truncation_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummationPolicy {
    pub relative_tolerance: f64,
    pub max_matsubara_terms: usize,
    /// Below this τ the oracle refuses and the low-T expansion should be used.
    pub tau_floor: f64,
}

impl Default for SummationPolicy {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-12,
            max_matsubara_terms: 1_000_000,
            tau_floor: 1e-3,
        }
    }
}

impl SummationPolicy {
    pub fn new(relative_tolerance: f64, max_matsubara_terms: usize, tau_floor: f64) -> Result<Self> {
        let policy = Self {
            relative_tolerance,
            max_matsubara_terms,
            tau_floor,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.relative_tolerance > 0.0 && self.relative_tolerance < 1.0) {
            return Err(Error::InvalidInput(format!(
                "relative_tolerance must lie in (0, 1), got {}",
                self.relative_tolerance
            )));
        }
        if self.max_matsubara_terms < 1 {
            return Err(Error::InvalidInput("max_matsubara_terms must be >= 1".into()));
        }
        if !(self.tau_floor.is_finite() && self.tau_floor > 0.0) {
            return Err(Error::InvalidInput(format!(
                "tau_floor must be positive, got {}",
                self.tau_floor
            )));
        }
        Ok(())
    }
}

// Relative allowance for floating-point rounding in the summands (exp and
// polylog of arguments up to ~40, compensated accumulation).
const ROUNDING_ALLOWANCE: f64 = 64.0 * f64::EPSILON;

/// One polylog component `coef · n^power · Li_order(yₙ)` of a Matsubara summand.
#[derive(Debug, Clone, Copy)]
struct Component {
    coef: f64,
    power: i32,
    order: u32,
}

#[derive(Debug, Clone, Copy)]
enum Stop {
    Tolerance { relative: f64, max_terms: usize },
    Fixed(usize),
}

#[derive(Debug, Clone, Copy)]
struct BracketSum {
    value: f64,
    error: f64,
    terms: usize,
}

/// Σ_{k>N} k^p r^{k−N} for p ∈ {0, 1, 2}.
fn shifted_moment(power: i32, n: f64, r: f64, one_minus_r: f64) -> f64 {
    let s0 = r / one_minus_r;
    let s1 = r / (one_minus_r * one_minus_r);
    match power {
        0 => s0,
        1 => n * s0 + s1,
        2 => n * n * s0 + 2.0 * n * s1 + r * (1.0 + r) / one_minus_r.powi(3),
        _ => unreachable!("moment power {power}"),
    }
}

/// Sums `head + Σₙ Σ_c coef·n^p·Li_s(e^{−2πnτ})` with a certified tail.
///
/// The tail uses Li_s(y_k) ≤ r^{k−N} Li_s(y_N) for k ≥ N, r = e^{−2πτ}.
fn matsubara_bracket(tau: f64, head: f64, components: &[Component], stop: Stop) -> Result<BracketSum> {
    let r = (-2.0 * PI * tau).exp();
    let one_minus_r = -(-2.0 * PI * tau).exp_m1();
    let max_terms = match stop {
        Stop::Tolerance { max_terms, .. } => max_terms,
        Stop::Fixed(n) => n,
    };

    let mut acc = CompensatedSum::default();
    acc.add(head);
    let mut polylog_error = 0.0;
    let mut tail = f64::INFINITY;
    let mut n = 0usize;
    while n < max_terms {
        n += 1;
        let nf = n as f64;
        let y = (-2.0 * PI * nf * tau).exp();
        let mut tail_n = 0.0;
        for c in components {
            let li = polylog_bounded(c.order, y);
            let weight = c.coef * nf.powi(c.power);
            acc.add(weight * li.value);
            polylog_error += weight * li.tail;
            tail_n += c.coef * li.value * shifted_moment(c.power, nf, r, one_minus_r);
        }
        tail = tail_n;
        if let Stop::Tolerance { relative, .. } = stop {
            if tail <= relative * acc.value() {
                break;
            }
        }
    }
    let value = acc.value();
    if let Stop::Tolerance { relative, max_terms } = stop {
        if !(tail <= relative * value) {
            return Err(Error::Convergence { max_terms, tau });
        }
    }
    if n == 0 {
        // Only the n = 0 term: the whole n ≥ 1 series is the tail, bounded
        // through Li_s(y_k) ≤ r^{k−1} Li_s(r).
        tail = components
            .iter()
            .map(|c| c.coef * polylog_bounded(c.order, r).value * shifted_moment(c.power, 0.0, r, one_minus_r) / r)
            .sum();
    }
    Ok(BracketSum {
        value,
        error: tail + polylog_error + ROUNDING_ALLOWANCE * value,
        terms: n,
    })
}

fn energy_components(tau: f64) -> [Component; 2] {
    [
        Component { coef: PI * tau / 2.0, power: 1, order: 2 },
        Component { coef: 0.25, power: 0, order: 3 },
    ]
}

fn pressure_components(tau: f64) -> [Component; 3] {
    [
        Component { coef: (PI * tau).powi(2), power: 2, order: 1 },
        Component { coef: PI * tau, power: 1, order: 2 },
        Component { coef: 0.5, power: 0, order: 3 },
    ]
}

fn check_domain(point: &QueryPoint, policy: &SummationPolicy) -> Result<f64> {
    policy.validate()?;
    let tau = point.tau();
    if tau < policy.tau_floor {
        return Err(Error::Domain(format!(
            "tau = {tau:.3e} is below the summation floor {:.1e}; use the low-temperature expansion",
            policy.tau_floor
        )));
    }
    Ok(tau)
}

fn energy_from_bracket(point: &QueryPoint, bracket: BracketSum) -> EnergyResult {
    let l = point.separation();
    let prefactor = point.thermal_energy() / (PI * l * l);
    EnergyResult {
        value: -prefactor * bracket.value,
        model: Model::Exact,
        truncation_error: prefactor * bracket.error,
        terms: None,
    }
}

fn pressure_from_bracket(point: &QueryPoint, bracket: BracketSum) -> PressureResult {
    let l = point.separation();
    let prefactor = point.thermal_energy() / (PI * l * l * l);
    PressureResult {
        value: -prefactor * bracket.value,
        model: Model::Exact,
        truncation_error: prefactor * bracket.error,
    }
}

/// Exact free energy per unit area. T = 0 returns the Casimir energy exactly.
pub fn exact_energy(point: &QueryPoint, policy: &SummationPolicy) -> Result<EnergyResult> {
    if point.temperature() == 0.0 {
        return Ok(EnergyResult {
            value: casimir_energy(point.separation()),
            model: Model::Exact,
            truncation_error: 0.0,
            terms: None,
        });
    }
    let tau = check_domain(point, policy)?;
    let stop = Stop::Tolerance {
        relative: policy.relative_tolerance,
        max_terms: policy.max_matsubara_terms,
    };
    let bracket = matsubara_bracket(tau, ZETA3 / 8.0, &energy_components(tau), stop)?;
    Ok(energy_from_bracket(point, bracket))
}

/// Exact pressure P = −∂E/∂l, differentiated analytically term by term.
pub fn exact_pressure(point: &QueryPoint, policy: &SummationPolicy) -> Result<PressureResult> {
    if point.temperature() == 0.0 {
        return Ok(PressureResult {
            value: casimir_pressure(point.separation()),
            model: Model::Exact,
            truncation_error: 0.0,
        });
    }
    let tau = check_domain(point, policy)?;
    let stop = Stop::Tolerance {
        relative: policy.relative_tolerance,
        max_terms: policy.max_matsubara_terms,
    };
    let bracket = matsubara_bracket(tau, ZETA3 / 4.0, &pressure_components(tau), stop)?;
    Ok(pressure_from_bracket(point, bracket))
}

/// The Matsubara sum cut after exactly `terms` nonzero frequencies, with the
/// bound on everything omitted. Requires T > 0.
pub fn exact_energy_truncated(point: &QueryPoint, terms: usize) -> Result<EnergyResult> {
    let tau = positive_tau(point)?;
    let bracket = matsubara_bracket(tau, ZETA3 / 8.0, &energy_components(tau), Stop::Fixed(terms))?;
    Ok(energy_from_bracket(point, bracket))
}

pub fn exact_pressure_truncated(point: &QueryPoint, terms: usize) -> Result<PressureResult> {
    let tau = positive_tau(point)?;
    let bracket = matsubara_bracket(tau, ZETA3 / 4.0, &pressure_components(tau), Stop::Fixed(terms))?;
    Ok(pressure_from_bracket(point, bracket))
}

/// Number of nonzero Matsubara frequencies the policy needs at this point.
pub fn matsubara_terms_needed(point: &QueryPoint, policy: &SummationPolicy) -> Result<usize> {
    let tau = check_domain(point, policy)?;
    let stop = Stop::Tolerance {
        relative: policy.relative_tolerance,
        max_terms: policy.max_matsubara_terms,
    };
    Ok(matsubara_bracket(tau, ZETA3 / 8.0, &energy_components(tau), stop)?.terms)
}

fn positive_tau(point: &QueryPoint) -> Result<f64> {
    if point.temperature() == 0.0 {
        return Err(Error::Domain("truncated Matsubara sum needs T > 0".into()));
    }
    Ok(point.tau())
}
