use std::ffi::{CStr, CString};
use std::ptr;

use casimir_ffi::*;

fn last_error() -> Option<String> {
    let p = casimir_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn energy(model: CasimirModel, l: f64, t: f64) -> (CasimirStatus, CasimirValue) {
    let mut out = CasimirValue {
        value: f64::NAN,
        truncation_error: f64::NAN,
        model,
    };
    let status = unsafe { casimir_energy(model, l, t, ptr::null(), &mut out) };
    (status, out)
}

#[test]
fn status_codes_match_cli_exit_codes() {
    assert_eq!(CasimirStatus::Ok as i32, 0);
    assert_eq!(CasimirStatus::InvalidInput as i32, 2);
    assert_eq!(CasimirStatus::OutOfTableRange as i32, 3);
    assert_eq!(CasimirStatus::NumericalFailure as i32, 4);
}

#[test]
fn tau_and_energies() {
    let mut tau = 0.0;
    assert_eq!(unsafe { casimir_tau(300e-9, 300.0, &mut tau) }, CasimirStatus::Ok);
    assert!((tau - 0.078_606_584_083_236_52).abs() < 1e-15);

    let (status, e) = energy(CasimirModel::Exact, 300e-9, 300.0);
    assert_eq!(status, CasimirStatus::Ok);
    assert!(((e.value - -1.606_392_345_636_501_4e-8) / e.value).abs() < 2e-12);
    assert!(e.truncation_error >= 0.0);
    assert!(last_error().is_none());

    let (_, c) = energy(CasimirModel::CasimirZeroT, 300e-9, 0.0);
    assert_eq!(c.value, casimir_core::casimir_energy(300e-9));

    let (status, g) = energy(CasimirModel::GoldCorrected, 300e-9, 300.0);
    assert_eq!(status, CasimirStatus::Ok);
    assert_eq!(g.value, 0.69 * casimir_core::casimir_energy(300e-9));

    let mut p = CasimirValue {
        value: 0.0,
        truncation_error: 0.0,
        model: CasimirModel::Exact,
    };
    let status = unsafe { casimir_pressure(CasimirModel::HighT, 20e-6, 300.0, ptr::null(), &mut p) };
    assert_eq!(status, CasimirStatus::Ok);
    assert!(p.value < 0.0 && p.model == CasimirModel::HighT);
}

#[test]
fn errors_set_status_and_message() {
    let (status, _) = energy(CasimirModel::Exact, -1.0, 300.0);
    assert_eq!(status, CasimirStatus::InvalidInput);
    assert!(last_error().unwrap().contains("separation"));

    let (status, _) = energy(CasimirModel::HighT, 1e-6, 0.0);
    assert_eq!(status, CasimirStatus::InvalidInput);

    let mut f = 0.0;
    assert_eq!(unsafe { casimir_correction_factor(1e-6, 300.0, &mut f) }, CasimirStatus::OutOfTableRange);
    assert!(last_error().is_some());

    let mut policy = ptr::null_mut();
    assert_eq!(unsafe { casimir_policy_new(1e-12, 1, 1e-4, &mut policy) }, CasimirStatus::Ok);
    let mut out = CasimirValue {
        value: 0.0,
        truncation_error: 0.0,
        model: CasimirModel::Exact,
    };
    let status = unsafe { casimir_energy(CasimirModel::Exact, 10e-9, 300.0, policy, &mut out) };
    assert_eq!(status, CasimirStatus::NumericalFailure);
    unsafe { casimir_policy_free(policy) };

    assert_eq!(unsafe { casimir_tau(1e-6, 300.0, ptr::null_mut()) }, CasimirStatus::NullPointer);
    assert_eq!(unsafe { casimir_policy_new(-1.0, 10, 1e-3, &mut policy) }, CasimirStatus::InvalidInput);
    assert_eq!(unsafe { casimir_policy_new(1e-12, 10, 1e-3, ptr::null_mut()) }, CasimirStatus::NullPointer);

    // A success clears the previous message.
    let mut tau = 0.0;
    unsafe { casimir_tau(1e-6, 300.0, &mut tau) };
    assert!(last_error().is_none());
}

#[test]
fn terms_regime_comparison_and_crossover() {
    let mut terms = CasimirTerms {
        casimir_term: 0.0,
        pair_term: 0.0,
        blackbody_term: 0.0,
        exponential_term: 0.0,
        ratio_2_to_1: 0.0,
        ratio_3_to_1: 0.0,
        ratio_4_to_1: 0.0,
    };
    assert_eq!(unsafe { casimir_terms(800e-9, 300.0, &mut terms) }, CasimirStatus::Ok);
    assert!((terms.ratio_2_to_1 - 0.016068).abs() < 1e-6);
    assert!(terms.blackbody_term > 0.0 && terms.pair_term < 0.0);

    let mut regime = CasimirRegime {
        tau: 0.0,
        label: CasimirRegimeLabel::Crossover,
    };
    assert_eq!(unsafe { casimir_classify_regime(20e-6, 300.0, &mut regime) }, CasimirStatus::Ok);
    assert_eq!(regime.label, CasimirRegimeLabel::HighTValid);
    unsafe { casimir_classify_regime(300e-9, 300.0, &mut regime) };
    assert_eq!(regime.label, CasimirRegimeLabel::LowTValid);

    let mut cmp = CasimirComparison {
        tau: 0.0,
        exact: 0.0,
        low_t: 0.0,
        high_t: 0.0,
        casimir: 0.0,
        rel_dev_low_t: 0.0,
        rel_dev_high_t: 0.0,
        rel_dev_casimir: 0.0,
    };
    let policy = casimir_policy_default();
    assert_eq!(unsafe { casimir_compare_models(800e-9, 300.0, policy, &mut cmp) }, CasimirStatus::Ok);
    assert!((cmp.rel_dev_casimir - 0.01394).abs() < 1e-5);

    let mut l_star = 0.0;
    assert_eq!(unsafe { casimir_crossover_separation(300.0, policy, &mut l_star) }, CasimirStatus::Ok);
    assert!((l_star - 3.816_474e-6).abs() < 1e-11);
    unsafe { casimir_policy_free(policy) };
}

#[test]
fn parsing_and_polylog() {
    let text = CString::new("800nm").unwrap();
    let mut l = 0.0;
    assert_eq!(unsafe { casimir_parse_length(text.as_ptr(), &mut l) }, CasimirStatus::Ok);
    assert_eq!(l, 800e-9);
    let text = CString::new("300K").unwrap();
    assert_eq!(unsafe { casimir_parse_length(text.as_ptr(), &mut l) }, CasimirStatus::InvalidInput);
    let mut t = 0.0;
    assert_eq!(unsafe { casimir_parse_temperature(text.as_ptr(), &mut t) }, CasimirStatus::Ok);
    assert_eq!(t, 300.0);
    assert_eq!(unsafe { casimir_parse_length(ptr::null(), &mut l) }, CasimirStatus::NullPointer);

    let mut li = 0.0;
    assert_eq!(unsafe { casimir_polylog(2, 0.5, &mut li) }, CasimirStatus::Ok);
    let exact = std::f64::consts::PI.powi(2) / 12.0 - 0.5 * std::f64::consts::LN_2.powi(2);
    assert!((li - exact).abs() < 1e-15);
    assert_eq!(unsafe { casimir_polylog(4, 0.5, &mut li) }, CasimirStatus::InvalidInput);
}

#[test]
fn sweep_handle_round_trip() {
    let models = [CasimirModel::Exact, CasimirModel::GoldCorrected];
    let mut sweep = ptr::null_mut();
    let status = unsafe {
        casimir_sweep_run(
            300e-9,
            900e-9,
            7,
            CasimirSweepScale::Linear,
            300.0,
            models.as_ptr(),
            models.len(),
            true,
            ptr::null(),
            &mut sweep,
        )
    };
    assert_eq!(status, CasimirStatus::Ok);
    assert_eq!(unsafe { casimir_sweep_len(sweep) }, 14);

    let mut row = CasimirSweepRow {
        separation: 0.0,
        temperature: 0.0,
        tau: 0.0,
        model: CasimirModel::Exact,
        energy: 0.0,
        pressure: 0.0,
        correction_factor: 0.0,
        truncation_error: 0.0,
        status: CasimirStatus::Ok,
    };
    let factors: Vec<f64> = (0..6)
        .map(|i| {
            assert_eq!(unsafe { casimir_sweep_row(sweep, 2 * i, &mut row) }, CasimirStatus::Ok);
            assert_eq!(row.model, CasimirModel::Exact);
            row.correction_factor
        })
        .collect();
    assert_eq!(factors, [0.69, 0.73, 0.74, 0.75, 0.75, 0.75]);

    // 900 nm lies outside the gold table: the exact row is fine, the gold row fails.
    unsafe { casimir_sweep_row(sweep, 12, &mut row) };
    assert_eq!(row.status, CasimirStatus::Ok);
    assert!(row.correction_factor.is_nan() && row.energy < 0.0);
    unsafe { casimir_sweep_row(sweep, 13, &mut row) };
    assert_eq!(row.status, CasimirStatus::OutOfTableRange);
    assert!(row.energy.is_nan());

    assert_eq!(unsafe { casimir_sweep_row(sweep, 14, &mut row) }, CasimirStatus::InvalidInput);
    unsafe { casimir_sweep_free(sweep) };

    assert_eq!(unsafe { casimir_sweep_len(ptr::null()) }, 0);
    let status = unsafe {
        casimir_sweep_run(
            1e-6,
            1e-7,
            3,
            CasimirSweepScale::Log,
            300.0,
            models.as_ptr(),
            models.len(),
            false,
            ptr::null(),
            &mut sweep,
        )
    };
    assert_eq!(status, CasimirStatus::InvalidInput);
}

#[test]
fn header_declares_the_abi() {
    let header = include_str!("../include/casimir.h");
    assert!(header.starts_with("#ifndef CASIMIR_H"));
    for symbol in [
        "casimir_last_error_message",
        "casimir_policy_new",
        "casimir_policy_default",
        "casimir_policy_free",
        "casimir_tau",
        "casimir_parse_length",
        "casimir_parse_temperature",
        "casimir_energy",
        "casimir_pressure",
        "casimir_terms",
        "casimir_correction_factor",
        "casimir_classify_regime",
        "casimir_compare_models",
        "casimir_crossover_separation",
        "casimir_polylog",
        "casimir_sweep_run",
        "casimir_sweep_len",
        "casimir_sweep_row",
        "casimir_sweep_free",
    ] {
        assert!(
            header.contains(&format!(" {symbol}(")) || header.contains(&format!("*{symbol}(")),
            "{symbol} missing from header"
        );
    }
    assert!(header.contains("typedef struct CasimirPolicy CasimirPolicy;"));
    assert!(header.contains("typedef struct CasimirSweep CasimirSweep;"));
    assert!(header.contains("CASIMIR_STATUS_OUT_OF_TABLE_RANGE = 3"));
}

#[test]
fn header_compiles_as_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let src = std::env::temp_dir().join(format!("casimir_abi_{}.c", std::process::id()));
    std::fs::write(
        &src,
        r#"#include "casimir.h"
int main(void) {
    double tau = 0.0;
    CasimirValue v;
    CasimirPolicy *p = casimir_policy_default();
    CasimirStatus s = casimir_tau(3e-7, 300.0, &tau);
    s = casimir_energy(CASIMIR_MODEL_EXACT, 3e-7, 300.0, p, &v);
    casimir_policy_free(p);
    return s == CASIMIR_STATUS_OK ? 0 : 1;
}
"#,
    )
    .unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status();
    let _ = std::fs::remove_file(&src);
    match status {
        Ok(status) => assert!(status.success(), "header does not compile as C99"),
        Err(e) => eprintln!("skipping: no C compiler ({e})"),
    }
}
