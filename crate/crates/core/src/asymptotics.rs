//! Low- and high-temperature expansions of the ideal-plate free energy, the
//! bare Casimir term, and the term-level diagnostics of the low-T series.
//!
//! Both expansions are truncations of one exact identity. Writing
//! `E = −(kT/8πl²) F(τ)`, the frequency sum done in closed form gives
//! `F = ζ(3) + 2A(πτ) − 2πτ A′(πτ)` with `A(x) = Σₖ 1/(k³(e^{2xk} − 1))`,
//! and Ramanujan's transformation of ζ(3) maps it to
//! `F = π³/(45τ) + ζ(3)τ² − π³τ³/45 + 2τ²A(π/τ) − 2πτ A′(π/τ)`.
//! Keeping the k = 1 exponential in each form gives the two standard expansions;
//! the omitted pieces are positive and bounded below in closed form.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exact::{EnergyResult, Model, PressureResult};
use crate::units::{QueryPoint, HBAR_C, ZETA3};

/// The four terms of the low-temperature expansion and their sizes relative
/// to the Casimir term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermBreakdown {
    /// −π²ħc/(720 l³)
    pub casimir_term: f64,
    /// −ζ(3)(kT)³/(2π(ħc)²), independent of l
    pub pair_term: f64,
    /// +π²(kT)⁴ l/(45(ħc)³)
    pub blackbody_term: f64,
    /// −((kT)²/(ħc l))(1 + kTl/(πħc)) e^{−πħc/(kTl)}
    pub exponential_term: f64,
    pub ratio_2_to_1: f64,
    pub ratio_3_to_1: f64,
    pub ratio_4_to_1: f64,
}

impl TermBreakdown {
    pub fn new(point: &QueryPoint) -> Self {
        let l = point.separation();
        let kt = point.thermal_energy();
        let casimir_term = casimir_energy(l);
        let (pair_term, blackbody_term, exponential_term) = if kt == 0.0 {
            (0.0, 0.0, 0.0)
        } else {
            let pair = -ZETA3 * kt.powi(3) / (2.0 * PI * HBAR_C * HBAR_C);
            let blackbody = kt.powi(4) * PI * PI * l / (45.0 * HBAR_C.powi(3));
            let log_mag = 2.0 * kt.ln() - (HBAR_C * l).ln() + (kt * l / (PI * HBAR_C)).ln_1p();
            let exponential = -flushed_exp(log_mag, PI * HBAR_C / (kt * l));
            (pair, blackbody, exponential)
        };
        let reference = casimir_term.abs();
        Self {
            casimir_term,
            pair_term,
            blackbody_term,
            exponential_term,
            ratio_2_to_1: pair_term.abs() / reference,
            ratio_3_to_1: blackbody_term.abs() / reference,
            ratio_4_to_1: exponential_term.abs() / reference,
        }
    }

    pub fn total(&self) -> f64 {
        self.casimir_term + self.pair_term + self.blackbody_term + self.exponential_term
    }

    fn thermal_total(&self) -> f64 {
        self.pair_term + self.blackbody_term + self.exponential_term
    }

    fn magnitude_sum(&self) -> f64 {
        self.casimir_term.abs() + self.pair_term.abs() + self.blackbody_term.abs() + self.exponential_term.abs()
    }
}

// Smallest exponent evaluated before flushing to zero.
const UNDERFLOW_EXPONENT: f64 = -700.0;

/// e^{log_mag − decay}, flushed to exact zero when the exponent is below −700.
fn flushed_exp(log_mag: f64, decay: f64) -> f64 {
    let exponent = log_mag - decay;
    if decay.is_infinite() || exponent < UNDERFLOW_EXPONENT {
        0.0
    } else {
        exponent.exp()
    }
}

/// e^{−x}, flushed to zero for x > 700 (and for x = ∞).
fn flushed_decay(x: f64) -> f64 {
    flushed_exp(0.0, x)
}

const ROUNDING_ALLOWANCE: f64 = 8.0 * f64::EPSILON;

/// Zero-temperature Casimir energy −π²ħc/(720 l³); `l` in meters, positive.
pub fn casimir_energy(l: f64) -> f64 {
    -PI * PI * HBAR_C / (720.0 * l.powi(3))
}

/// Zero-temperature Casimir pressure −π²ħc/(240 l⁴).
pub fn casimir_pressure(l: f64) -> f64 {
    -PI * PI * HBAR_C / (240.0 * l.powi(4))
}

/// Closed-form bounds on the omitted parts of the dual series, as functions of
/// `w = e^{−2x}`. `u` bounds A − w, `v` bounds −A′ − 2w, and `wu`, `wv` bound
/// w·d/dw of each.
#[derive(Debug, Clone, Copy)]
struct DualTail {
    u: f64,
    v: f64,
    wu: f64,
    wv: f64,
}

impl DualTail {
    fn new(w: f64) -> Self {
        let q = 1.0 - w;
        let w2 = w * w;
        Self {
            u: w2 / q * (1.0 + 1.0 / (8.0 * q)),
            v: (2.0 * w2 * (2.0 - w) + w2 / (2.0 * q)) / (q * q),
            wu: w2 * (2.0 - w) / (q * q) + w2 / (4.0 * q.powi(3)),
            wv: 2.0 * w2 * (4.0 - 3.0 * w + w2) / q.powi(3) + 2.0 * w2 / q.powi(4),
        }
    }
}

/// Low-temperature expansion with its term breakdown. Defined for all T ≥ 0.
pub fn low_t_energy(point: &QueryPoint) -> EnergyResult {
    let terms = TermBreakdown::new(point);
    let value = terms.total();
    EnergyResult {
        value,
        model: Model::LowT,
        truncation_error: low_t_remainder_energy(point) + ROUNDING_ALLOWANCE * terms.magnitude_sum(),
        terms: Some(terms),
    }
}

fn low_t_remainder_energy(point: &QueryPoint) -> f64 {
    let tau = point.tau();
    if tau == 0.0 {
        return 0.0;
    }
    let w = flushed_decay(2.0 * PI / tau);
    if w == 0.0 {
        return 0.0;
    }
    let b = DualTail::new(w);
    let l = point.separation();
    point.thermal_energy() / (8.0 * PI * l * l) * (2.0 * tau * tau * b.u + 2.0 * PI * tau * b.v)
}

pub fn low_t_pressure(point: &QueryPoint) -> PressureResult {
    let l = point.separation();
    let kt = point.thermal_energy();
    let casimir = casimir_pressure(l);
    let (blackbody, exponential) = if kt == 0.0 {
        (0.0, 0.0)
    } else {
        let blackbody = -kt.powi(4) * PI * PI / (45.0 * HBAR_C.powi(3));
        // −∂/∂l of the exponential term collapses to +πkT e^{−πħc/(kTl)}/l³.
        let log_mag = (PI * kt).ln() - 3.0 * l.ln();
        (blackbody, flushed_exp(log_mag, PI * HBAR_C / (kt * l)))
    };
    let value = casimir + blackbody + exponential;
    let magnitude = casimir.abs() + blackbody.abs() + exponential.abs();
    PressureResult {
        value,
        model: Model::LowT,
        truncation_error: low_t_remainder_pressure(point) + ROUNDING_ALLOWANCE * magnitude,
    }
}

fn low_t_remainder_pressure(point: &QueryPoint) -> f64 {
    let tau = point.tau();
    if tau == 0.0 {
        return 0.0;
    }
    let w = flushed_decay(2.0 * PI / tau);
    if w == 0.0 {
        return 0.0;
    }
    let b = DualTail::new(w);
    let l = point.separation();
    point.thermal_energy() / (8.0 * PI * l.powi(3))
        * (4.0 * PI * tau * b.wu + 4.0 * PI * PI * b.wv + 2.0 * PI * tau * b.v)
}

fn require_positive_temperature(point: &QueryPoint) -> Result<()> {
    if point.temperature() == 0.0 {
        return Err(Error::Domain(
            "high-temperature expansion is degenerate at T = 0".into(),
        ));
    }
    Ok(())
}

/// High-temperature expansion −(kT/8πl²)[ζ(3) + (4πτ + 2)e^{−2πτ}].
///
/// The bracket is often quoted without an overall minus sign; it is applied here so
/// that both expansions describe the same attractive free energy.
pub fn high_t_energy(point: &QueryPoint) -> Result<EnergyResult> {
    require_positive_temperature(point)?;
    let tau = point.tau();
    let l = point.separation();
    let prefactor = point.thermal_energy() / (8.0 * PI * l * l);
    let w = flushed_decay(2.0 * PI * tau);
    let correction = (4.0 * PI * tau + 2.0) * w;
    let b = DualTail::new(w);
    let remainder = prefactor * (2.0 * b.u + 2.0 * PI * tau * b.v);
    let value = -prefactor * (ZETA3 + correction);
    Ok(EnergyResult {
        value,
        model: Model::HighT,
        truncation_error: remainder + ROUNDING_ALLOWANCE * value.abs(),
        terms: None,
    })
}

/// Leading high-temperature term alone, −kTζ(3)/(8πl²).
pub fn high_t_leading_energy(point: &QueryPoint) -> Result<f64> {
    require_positive_temperature(point)?;
    let l = point.separation();
    Ok(-point.thermal_energy() * ZETA3 / (8.0 * PI * l * l))
}

pub fn high_t_pressure(point: &QueryPoint) -> Result<PressureResult> {
    require_positive_temperature(point)?;
    let tau = point.tau();
    let l = point.separation();
    let prefactor = point.thermal_energy() / (8.0 * PI * l.powi(3));
    let w = flushed_decay(2.0 * PI * tau);
    let correction = (8.0 * PI * PI * tau * tau + 8.0 * PI * tau + 4.0) * w;
    let b = DualTail::new(w);
    let remainder = prefactor
        * (2.0 * (2.0 * b.u + 2.0 * PI * tau * b.wu) + 2.0 * PI * tau * (b.v + 2.0 * PI * tau * b.wv));
    let value = -prefactor * (2.0 * ZETA3 + correction);
    Ok(PressureResult {
        value,
        model: Model::HighT,
        truncation_error: remainder + ROUNDING_ALLOWANCE * value.abs(),
    })
}

/// Casimir term as a model of the finite-temperature energy. Its error bound is
/// the size of the omitted thermal terms plus the low-T remainder.
pub fn casimir_energy_result(point: &QueryPoint) -> EnergyResult {
    let low = low_t_energy(point);
    let terms = low.terms.expect("low-T result carries terms");
    let omitted = if point.temperature() == 0.0 {
        0.0
    } else {
        terms.thermal_total().abs() + low.truncation_error
    };
    EnergyResult {
        value: terms.casimir_term,
        model: Model::CasimirZeroT,
        truncation_error: omitted,
        terms: None,
    }
}

pub fn casimir_pressure_result(point: &QueryPoint) -> PressureResult {
    let value = casimir_pressure(point.separation());
    let omitted = if point.temperature() == 0.0 {
        0.0
    } else {
        let low = low_t_pressure(point);
        (low.value - value).abs() + low.truncation_error
    };
    PressureResult {
        value,
        model: Model::CasimirZeroT,
        truncation_error: omitted,
    }
}

/// (ratio_2_to_1, ratio_3_to_1, ratio_4_to_1) from their closed forms in
/// kTl/ħc; the last one is evaluated from the terms directly.
pub fn term_ratios(point: &QueryPoint) -> (f64, f64, f64) {
    let s = point.thermal_energy() * point.separation() / HBAR_C;
    let r2 = 360.0 * ZETA3 / PI.powi(3) * s.powi(3);
    let r3 = 16.0 * s.powi(4);
    let r4 = TermBreakdown::new(point).ratio_4_to_1;
    (r2, r3, r4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{exact_energy, exact_pressure, SummationPolicy};
    use crate::units::separation_for_tau;

    fn point(l: f64, t: f64) -> QueryPoint {
        QueryPoint::new(l, t).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn casimir_values() {
        assert!(rel(casimir_energy(300e-9), -1.605_093_546_231_794_4e-8) < 1e-14);
        assert!(rel(casimir_energy(300e-9), -1.6052e-8) < 1e-4);
        assert!(rel(casimir_energy(600e-9), casimir_energy(300e-9) / 8.0) < 1e-15);
        assert!(rel(casimir_pressure(300e-9), -0.16051) < 5e-5);
        assert!(rel(casimir_pressure(600e-9), casimir_pressure(300e-9) / 16.0) < 1e-15);
        assert!(casimir_energy(1.0) < 0.0 && casimir_energy(1.0) > -1e-27);
    }

    #[test]
    fn casimir_pressure_is_derivative() {
        for l in [100e-9, 300e-9, 2e-6] {
            let fd = -central_difference(casimir_energy, l, 1e-5 * l);
            assert!(rel(fd, casimir_pressure(l)) < 1e-8);
        }
    }

    #[test]
    fn low_t_reference_point() {
        let r = low_t_energy(&point(300e-9, 300.0));
        let t = r.terms.unwrap();
        assert!(rel(t.casimir_term, -1.605_093_5e-8) < 1e-7);
        assert!(rel(t.pair_term, -1.360_081_8e-11) < 1e-7);
        assert!(rel(t.blackbody_term, 6.128_243_9e-13) < 1e-7);
        assert!(t.exponential_term < 0.0 && t.exponential_term > -1e-43);
        assert!(rel(r.value, -1.606_392_345_636_501_4e-8) < 1e-14);
        assert_eq!(r.model, Model::LowT);
    }

    #[test]
    fn zero_temperature_collapses_to_casimir() {
        for l in [50e-9, 800e-9, 1e-3] {
            let p = point(l, 0.0);
            let r = low_t_energy(&p);
            let t = r.terms.unwrap();
            assert_eq!(r.value, casimir_energy(l));
            assert_eq!((t.pair_term, t.blackbody_term, t.exponential_term), (0.0, 0.0, 0.0));
            assert_eq!(low_t_pressure(&p).value, casimir_pressure(l));
            assert_eq!(term_ratios(&p), (0.0, 0.0, 0.0));
            assert!(high_t_energy(&p).is_err());
            assert!(high_t_pressure(&p).is_err());
            assert_eq!(casimir_energy_result(&p).truncation_error, 0.0);
        }
    }

    #[test]
    fn ratios_at_800nm() {
        let p = point(800e-9, 300.0);
        let (r2, r3, r4) = term_ratios(&p);
        assert!((r2 - 0.0161).abs() < 5e-4);
        assert!(rel(r2, 0.016_068_335_517_082_42) < 1e-12);
        assert!(rel(r3, 0.001_930_681_456_097_188_8) < 1e-12);
        assert!(rel(r4, 7.949_000_817_520_957e-14) < 1e-9);
        let t = TermBreakdown::new(&p);
        assert!(rel(t.ratio_2_to_1, r2) < 1e-12);
        assert!(rel(t.ratio_3_to_1, r3) < 1e-12);
        assert_eq!(t.ratio_4_to_1, r4);
    }

    #[test]
    fn ratio_2_scales_as_cube() {
        for l in [100e-9, 450e-9, 3e-6] {
            let (a, _, _) = term_ratios(&point(l, 300.0));
            let (b, _, _) = term_ratios(&point(2.0 * l, 300.0));
            assert!(rel(b, 8.0 * a) < 1e-12);
            let (c, _, _) = term_ratios(&point(1.01 * l, 300.0));
            assert!(c > a);
        }
    }

    #[test]
    fn exponential_term_underflows_to_zero() {
        let t = TermBreakdown::new(&point(10e-9, 1.0));
        assert_eq!(t.exponential_term, 0.0);
        assert!(t.pair_term < 0.0 && t.blackbody_term > 0.0);
        assert!(low_t_energy(&point(10e-9, 1.0)).value.is_finite());
    }

    #[test]
    fn high_t_reference_point() {
        let p = point(20e-6, 300.0);
        let h = high_t_energy(&p).unwrap();
        assert!(rel(h.value, -4.953e-13) < 1e-4);
        assert!(rel(h.value, -4.952_559_629_849_895e-13) < 1e-13);
        let leading = high_t_leading_energy(&p).unwrap();
        assert!(rel(leading, -4.952_559_629_848_493_5e-13) < 1e-14);
        let hp = high_t_pressure(&p).unwrap();
        assert!(rel(hp.value, -BOLTZMANN_T300 * ZETA3 / (4.0 * PI * (20e-6f64).powi(3))) < 1e-11);
    }

    const BOLTZMANN_T300: f64 = crate::units::BOLTZMANN * 300.0;

    #[test]
    fn high_t_scales_linearly_in_temperature_at_large_tau() {
        let l = separation_for_tau(6.0, 300.0);
        let a = high_t_energy(&point(l, 300.0)).unwrap().value;
        let b = high_t_energy(&point(l, 600.0)).unwrap().value;
        let correction = (4.0 * PI * 6.0 + 2.0) * (-2.0 * PI * 6.0f64).exp() / ZETA3;
        assert!(rel(b, 2.0 * a) <= correction + 1e-15);
    }

    #[test]
    fn expansions_against_oracle() {
        let policy = SummationPolicy::default();
        for tau in [0.01, 0.05, 0.1, 0.15, 0.22] {
            let p = point(separation_for_tau(tau, 300.0), 300.0);
            let e = exact_energy(&p, &policy).unwrap().value;
            assert!(rel(low_t_energy(&p).value, e) <= 1e-8, "low tau {tau}");
        }
        for tau in [2.0, 3.0, 5.0, 10.0] {
            let p = point(separation_for_tau(tau, 300.0), 300.0);
            let e = exact_energy(&p, &policy).unwrap().value;
            assert!(rel(high_t_energy(&p).unwrap().value, e) <= 1e-9, "high tau {tau}");
        }
        // At τ = 1 both expansions miss by the same 8.68e-5 (τ ↔ 1/τ symmetry).
        let p = point(separation_for_tau(1.0, 300.0), 300.0);
        let e = exact_energy(&p, &policy).unwrap().value;
        let dh = rel(high_t_energy(&p).unwrap().value, e);
        let dl = rel(low_t_energy(&p).value, e);
        assert!(rel(dh, 8.680_71e-5) < 1e-5);
        assert!(rel(dl, dh) < 1e-8);
        // Above τ = 1.2 the high-T expansion is inside 1e-5.
        for tau in [1.2, 1.5, 1.8] {
            let p = point(separation_for_tau(tau, 300.0), 300.0);
            let e = exact_energy(&p, &policy).unwrap().value;
            assert!(rel(high_t_energy(&p).unwrap().value, e) <= 1e-5, "tau {tau}");
        }
    }

    #[test]
    fn remainder_bounds_are_tight_asymptotically() {
        // True next-order remainder in bracket units is (9πτ + 9/4)e^{−4πτ};
        // the certified bound should exceed it only modestly.
        let policy = SummationPolicy::default();
        for tau in [1.0, 1.5, 2.0] {
            let p = point(separation_for_tau(tau, 300.0), 300.0);
            let e = exact_energy(&p, &policy).unwrap();
            let h = high_t_energy(&p).unwrap();
            let dev = (h.value - e.value).abs();
            assert!(dev <= h.truncation_error + e.truncation_error);
            assert!(h.truncation_error < 2.0 * dev, "tau {tau}: bound {} dev {dev}", h.truncation_error);
            // Exact is always deeper than the truncated expansion.
            assert!(e.value < h.value);
        }
        for tau in [0.5, 0.7, 1.0] {
            let p = point(separation_for_tau(tau, 300.0), 300.0);
            let e = exact_energy(&p, &policy).unwrap();
            let lo = low_t_energy(&p);
            let dev = (lo.value - e.value).abs();
            assert!(dev <= lo.truncation_error + e.truncation_error);
            assert!(lo.truncation_error < 2.0 * dev, "tau {tau}");
            assert!(e.value < lo.value);
        }
    }

    #[test]
    fn pressures_match_finite_differences() {
        let policy = SummationPolicy::default();
        let p = point(500e-9, 300.0);
        let h = 1e-5 * 500e-9;
        let fd = -central_difference(|l| low_t_energy(&point(l, 300.0)).value, 500e-9, h);
        assert!(rel(fd, low_t_pressure(&p).value) < 1e-6);
        let fd = -central_difference(|l| exact_energy(&point(l, 300.0), &policy).unwrap().value, 500e-9, h);
        assert!(rel(fd, exact_pressure(&p, &policy).unwrap().value) < 1e-6);
        let l = separation_for_tau(1.5, 300.0);
        let fd = -central_difference(|x| high_t_energy(&point(x, 300.0)).unwrap().value, l, 1e-5 * l);
        assert!(rel(fd, high_t_pressure(&point(l, 300.0)).unwrap().value) < 1e-6);
        // Exponential piece of the low-T pressure at a point where it matters.
        let l = separation_for_tau(1.0, 300.0);
        let fd = -central_difference(|x| low_t_energy(&point(x, 300.0)).value, l, 1e-5 * l);
        assert!(rel(fd, low_t_pressure(&point(l, 300.0)).value) < 1e-6);
    }

    #[test]
    fn pressure_expansions_against_oracle() {
        let policy = SummationPolicy::default();
        let p = point(separation_for_tau(2.0, 300.0), 300.0);
        let e = exact_pressure(&p, &policy).unwrap();
        let h = high_t_pressure(&p).unwrap();
        // Leading term alone is the classical −kTζ(3)/(4πl³).
        let leading = -BOLTZMANN_T300 * ZETA3 / (4.0 * PI * p.separation().powi(3));
        assert!(rel(h.value, e.value) < 1e-8);
        assert!((h.value - e.value).abs() <= h.truncation_error + e.truncation_error);
        assert!(rel(leading, e.value) < 1e-3);
        for tau in [0.05, 0.2, 0.5, 1.0] {
            let p = point(separation_for_tau(tau, 300.0), 300.0);
            let e = exact_pressure(&p, &policy).unwrap();
            let lo = low_t_pressure(&p);
            assert!((lo.value - e.value).abs() <= lo.truncation_error + e.truncation_error, "tau {tau}");
        }
    }

    #[test]
    fn casimir_model_error_covers_thermal_terms() {
        let policy = SummationPolicy::default();
        for l in [300e-9, 800e-9, 3e-6] {
            let p = point(l, 300.0);
            let c = casimir_energy_result(&p);
            let e = exact_energy(&p, &policy).unwrap();
            assert!((c.value - e.value).abs() <= c.truncation_error + e.truncation_error);
            let cp = casimir_pressure_result(&p);
            let ep = exact_pressure(&p, &policy).unwrap();
            assert!((cp.value - ep.value).abs() <= cp.truncation_error + ep.truncation_error);
        }
    }
}
