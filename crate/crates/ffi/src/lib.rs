//! C ABI over `casimir-core`.
//!
//! Every function returns a [`CasimirStatus`] and writes its result through an
//! out-pointer. Status values coincide with the CLI exit codes where both
//! exist. On failure a message is kept per thread and can be read with
//! [`casimir_last_error_message`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use casimir_core::analysis::{
    classify_regime, compare_models, crossover_separation, evaluate_model, RegimeLabel, SweepScale, SweepSpec,
};
use casimir_core::asymptotics::TermBreakdown;
use casimir_core::exact::{Model, SummationPolicy};
use casimir_core::gold::correction_factor;
use casimir_core::units::{parse_quantity, QueryPoint};
use casimir_core::{polylog, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirStatus {
    Ok = 0,
    /// Malformed input, unknown unit, or a point outside a model's domain.
    InvalidInput = 2,
    /// Gold correction requested outside the tabulated range.
    OutOfTableRange = 3,
    /// Matsubara sum did not converge, or a non-finite intermediate.
    NumericalFailure = 4,
    NullPointer = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirModel {
    Exact = 0,
    LowT = 1,
    HighT = 2,
    CasimirZeroT = 3,
    GoldCorrected = 4,
}

impl From<CasimirModel> for Model {
    fn from(m: CasimirModel) -> Self {
        match m {
            CasimirModel::Exact => Model::Exact,
            CasimirModel::LowT => Model::LowT,
            CasimirModel::HighT => Model::HighT,
            CasimirModel::CasimirZeroT => Model::CasimirZeroT,
            CasimirModel::GoldCorrected => Model::GoldCorrected,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirRegimeLabel {
    LowTValid = 0,
    Crossover = 1,
    HighTValid = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirSweepScale {
    Linear = 0,
    Log = 1,
}

/// A model value with its error bound. Energies in J/m², pressures in Pa.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirValue {
    pub value: f64,
    pub truncation_error: f64,
    pub model: CasimirModel,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirTerms {
    pub casimir_term: f64,
    pub pair_term: f64,
    pub blackbody_term: f64,
    pub exponential_term: f64,
    pub ratio_2_to_1: f64,
    pub ratio_3_to_1: f64,
    pub ratio_4_to_1: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirRegime {
    pub tau: f64,
    pub label: CasimirRegimeLabel,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirComparison {
    pub tau: f64,
    pub exact: f64,
    pub low_t: f64,
    pub high_t: f64,
    pub casimir: f64,
    pub rel_dev_low_t: f64,
    pub rel_dev_high_t: f64,
    pub rel_dev_casimir: f64,
}

/// One (separation, model) record of a sweep. When `status` is not `Ok` the
/// numeric fields are NaN. `correction_factor` is NaN when absent.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirSweepRow {
    pub separation: f64,
    pub temperature: f64,
    pub tau: f64,
    pub model: CasimirModel,
    pub energy: f64,
    pub pressure: f64,
    pub correction_factor: f64,
    pub truncation_error: f64,
    pub status: CasimirStatus,
}

/// Summation settings. Create with `casimir_policy_new` or
/// `casimir_policy_default`, release with `casimir_policy_free`.
pub struct CasimirPolicy(SummationPolicy);

/// Evaluated sweep. Release with `casimir_sweep_free`.
pub struct CasimirSweep {
    rows: Vec<CasimirSweepRow>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> CasimirStatus {
    match err {
        Error::InvalidInput(_) | Error::Domain(_) => CasimirStatus::InvalidInput,
        Error::OutOfTableRange(_) => CasimirStatus::OutOfTableRange,
        Error::Convergence { .. } | Error::Numerical(_) => CasimirStatus::NumericalFailure,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), CasimirStatus>) -> CasimirStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CasimirStatus::Ok,
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            CasimirStatus::Panic
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, CasimirStatus>;
}

impl<T> OrStatus<T> for casimir_core::Result<T> {
    fn or_status(self) -> Result<T, CasimirStatus> {
        self.map_err(|e| {
            set_last_error(e.to_string());
            status_of(&e)
        })
    }
}

fn null_pointer(what: &str) -> CasimirStatus {
    set_last_error(format!("null pointer: {what}"));
    CasimirStatus::NullPointer
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), CasimirStatus> {
    if out.is_null() {
        return Err(null_pointer("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn policy_ref(policy: *const CasimirPolicy, fallback: &SummationPolicy) -> &SummationPolicy {
    if policy.is_null() {
        fallback
    } else {
        &(*policy).0
    }
}

fn query(separation: f64, temperature: f64) -> Result<QueryPoint, CasimirStatus> {
    QueryPoint::new(separation, temperature).or_status()
}

/// Message for the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn casimir_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_policy_new(
    relative_tolerance: f64,
    max_matsubara_terms: usize,
    tau_floor: f64,
    out: *mut *mut CasimirPolicy,
) -> CasimirStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_pointer("out"));
        }
        let policy = SummationPolicy::new(relative_tolerance, max_matsubara_terms, tau_floor).or_status()?;
        write_out(out, Box::into_raw(Box::new(CasimirPolicy(policy))))
    })
}

/// Default policy: tolerance 1e-12, 10⁶ terms, tau floor 1e-3.
#[no_mangle]
pub extern "C" fn casimir_policy_default() -> *mut CasimirPolicy {
    Box::into_raw(Box::new(CasimirPolicy(SummationPolicy::default())))
}

/// # Safety
/// `policy` must be NULL or a pointer from `casimir_policy_new`/`_default`
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn casimir_policy_free(policy: *mut CasimirPolicy) {
    if !policy.is_null() {
        drop(Box::from_raw(policy));
    }
}

/// τ = 2kTl/ħc. Separation in meters, temperature in kelvin.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_tau(separation: f64, temperature: f64, out: *mut f64) -> CasimirStatus {
    guard(|| write_out(out, query(separation, temperature)?.tau()))
}

/// Parses a length such as "300nm" or "0.8um" into meters. Bare numbers are meters.
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_parse_length(text: *const c_char, out: *mut f64) -> CasimirStatus {
    guard(|| {
        if text.is_null() {
            return Err(null_pointer("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Error::InvalidInput(e.to_string()))
            .or_status()?;
        let meters = parse_quantity(s).and_then(|q| q.to_meters()).or_status()?;
        write_out(out, meters)
    })
}

/// Parses a temperature such as "300K" into kelvin. Bare numbers are kelvin.
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_parse_temperature(text: *const c_char, out: *mut f64) -> CasimirStatus {
    guard(|| {
        if text.is_null() {
            return Err(null_pointer("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Error::InvalidInput(e.to_string()))
            .or_status()?;
        let kelvin = parse_quantity(s).and_then(|q| q.to_kelvin()).or_status()?;
        write_out(out, kelvin)
    })
}

/// Free energy per unit area of `model`. A NULL `policy` uses the default.
///
/// # Safety
/// `policy` must be NULL or a live policy handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_energy(
    model: CasimirModel,
    separation: f64,
    temperature: f64,
    policy: *const CasimirPolicy,
    out: *mut CasimirValue,
) -> CasimirStatus {
    guard(|| {
        let fallback = SummationPolicy::default();
        let point = query(separation, temperature)?;
        let (energy, _) = evaluate_model(model.into(), &point, policy_ref(policy, &fallback)).or_status()?;
        write_out(
            out,
            CasimirValue {
                value: energy.value,
                truncation_error: energy.truncation_error,
                model,
            },
        )
    })
}

/// Pressure of `model`; negative is attractive.
///
/// # Safety
/// `policy` must be NULL or a live policy handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_pressure(
    model: CasimirModel,
    separation: f64,
    temperature: f64,
    policy: *const CasimirPolicy,
    out: *mut CasimirValue,
) -> CasimirStatus {
    guard(|| {
        let fallback = SummationPolicy::default();
        let point = query(separation, temperature)?;
        let (_, pressure) = evaluate_model(model.into(), &point, policy_ref(policy, &fallback)).or_status()?;
        write_out(
            out,
            CasimirValue {
                value: pressure.value,
                truncation_error: pressure.truncation_error,
                model,
            },
        )
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_terms(separation: f64, temperature: f64, out: *mut CasimirTerms) -> CasimirStatus {
    guard(|| {
        let t = TermBreakdown::new(&query(separation, temperature)?);
        write_out(
            out,
            CasimirTerms {
                casimir_term: t.casimir_term,
                pair_term: t.pair_term,
                blackbody_term: t.blackbody_term,
                exponential_term: t.exponential_term,
                ratio_2_to_1: t.ratio_2_to_1,
                ratio_3_to_1: t.ratio_3_to_1,
                ratio_4_to_1: t.ratio_4_to_1,
            },
        )
    })
}

/// Gold correction factor, interpolated from the 300–800 nm, 0–300 K table.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_correction_factor(separation: f64, temperature: f64, out: *mut f64) -> CasimirStatus {
    guard(|| write_out(out, correction_factor(separation, temperature).or_status()?))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_classify_regime(
    separation: f64,
    temperature: f64,
    out: *mut CasimirRegime,
) -> CasimirStatus {
    guard(|| {
        let class = classify_regime(&query(separation, temperature)?);
        let label = match class.label {
            RegimeLabel::LowTValid => CasimirRegimeLabel::LowTValid,
            RegimeLabel::Crossover => CasimirRegimeLabel::Crossover,
            RegimeLabel::HighTValid => CasimirRegimeLabel::HighTValid,
        };
        write_out(
            out,
            CasimirRegime {
                tau: class.tau_value,
                label,
            },
        )
    })
}

/// # Safety
/// `policy` must be NULL or a live policy handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_compare_models(
    separation: f64,
    temperature: f64,
    policy: *const CasimirPolicy,
    out: *mut CasimirComparison,
) -> CasimirStatus {
    guard(|| {
        let fallback = SummationPolicy::default();
        let point = query(separation, temperature)?;
        let c = compare_models(&point, policy_ref(policy, &fallback)).or_status()?;
        write_out(
            out,
            CasimirComparison {
                tau: point.tau(),
                exact: c.exact,
                low_t: c.low_t,
                high_t: c.high_t,
                casimir: c.casimir,
                rel_dev_low_t: c.rel_dev_low_t,
                rel_dev_high_t: c.rel_dev_high_t,
                rel_dev_casimir: c.rel_dev_casimir,
            },
        )
    })
}

/// Separation (m) at which both expansions deviate equally from the exact sum.
///
/// # Safety
/// `policy` must be NULL or a live policy handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_crossover_separation(
    temperature: f64,
    policy: *const CasimirPolicy,
    out: *mut f64,
) -> CasimirStatus {
    guard(|| {
        let fallback = SummationPolicy::default();
        write_out(out, crossover_separation(temperature, policy_ref(policy, &fallback)).or_status()?)
    })
}

/// Li_order(z) for order 1..=3 and 0 ≤ z < 1.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_polylog(order: u32, z: f64, out: *mut f64) -> CasimirStatus {
    guard(|| write_out(out, polylog(order, z).or_status()?))
}

/// Evaluates `n_models` models at `steps` separations from `l_start` to
/// `l_stop` (m) at fixed temperature. Failures at individual points are
/// recorded in the row's `status` rather than failing the sweep.
///
/// # Safety
/// `models` must point to `n_models` values; `policy` NULL or live; `out`
/// valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn casimir_sweep_run(
    l_start: f64,
    l_stop: f64,
    steps: usize,
    scale: CasimirSweepScale,
    temperature: f64,
    models: *const CasimirModel,
    n_models: usize,
    include_correction: bool,
    policy: *const CasimirPolicy,
    out: *mut *mut CasimirSweep,
) -> CasimirStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_pointer("out"));
        }
        if models.is_null() && n_models > 0 {
            return Err(null_pointer("models"));
        }
        let chosen: &[CasimirModel] = if n_models == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(models, n_models)
        };
        let spec = SweepSpec {
            l_start,
            l_stop,
            l_steps: steps,
            scale: match scale {
                CasimirSweepScale::Linear => SweepScale::Linear,
                CasimirSweepScale::Log => SweepScale::Log,
            },
            temperature,
            models: chosen.iter().map(|&m| m.into()).collect(),
            include_correction,
        };
        spec.validate().or_status()?;
        let fallback = SummationPolicy::default();
        let policy = policy_ref(policy, &fallback);

        let mut rows = Vec::with_capacity(steps * chosen.len());
        for (separation, point) in spec.separations().zip(spec.points()) {
            let failed = |model, status| CasimirSweepRow {
                separation,
                temperature,
                tau: f64::NAN,
                model,
                energy: f64::NAN,
                pressure: f64::NAN,
                correction_factor: f64::NAN,
                truncation_error: f64::NAN,
                status,
            };
            let point = match point {
                Ok(p) => p,
                Err(e) => {
                    rows.extend(chosen.iter().map(|&m| failed(m, status_of(&e))));
                    continue;
                }
            };
            let correction = if include_correction {
                correction_factor(separation, temperature).unwrap_or(f64::NAN)
            } else {
                f64::NAN
            };
            for &model in chosen {
                rows.push(match evaluate_model(model.into(), &point, policy) {
                    Ok((e, p)) => CasimirSweepRow {
                        separation,
                        temperature,
                        tau: point.tau(),
                        model,
                        energy: e.value,
                        pressure: p.value,
                        correction_factor: correction,
                        truncation_error: e.truncation_error,
                        status: CasimirStatus::Ok,
                    },
                    Err(e) => failed(model, status_of(&e)),
                });
            }
        }
        write_out(out, Box::into_raw(Box::new(CasimirSweep { rows })))
    })
}

/// Number of rows in `sweep`; 0 for NULL.
///
/// # Safety
/// `sweep` must be NULL or a live sweep handle.
#[no_mangle]
pub unsafe extern "C" fn casimir_sweep_len(sweep: *const CasimirSweep) -> usize {
    if sweep.is_null() {
        0
    } else {
        let sweep = &*sweep;
        sweep.rows.len()
    }
}

/// # Safety
/// `sweep` must be a live sweep handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn casimir_sweep_row(
    sweep: *const CasimirSweep,
    index: usize,
    out: *mut CasimirSweepRow,
) -> CasimirStatus {
    guard(|| {
        if sweep.is_null() {
            return Err(null_pointer("sweep"));
        }
        let sweep = &*sweep;
        let row = sweep.rows.get(index).copied().ok_or_else(|| {
            set_last_error(format!("row {index} out of range"));
            CasimirStatus::InvalidInput
        })?;
        write_out(out, row)
    })
}

/// # Safety
/// `sweep` must be NULL or a pointer from `casimir_sweep_run` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn casimir_sweep_free(sweep: *mut CasimirSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}
