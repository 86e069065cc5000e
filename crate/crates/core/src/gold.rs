//! Tabulated real-gold correction factors for the zero-temperature Casimir term.
//!
//! Six separations, two temperature columns, two significant figures. Values
//! between rows are interpolated linearly in separation and then linearly in
//! temperature. Nothing outside [300, 800] nm × [0, 300] K is extrapolated.

use crate::asymptotics::{casimir_energy, casimir_pressure};
use crate::error::{Error, Result};
use crate::exact::{EnergyResult, Model, PressureResult};
use crate::units::QueryPoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionRow {
    pub separation_nm: f64,
    pub factor_0k: f64,
    pub factor_300k: f64,
}

const fn row(separation_nm: f64, factor_0k: f64, factor_300k: f64) -> CorrectionRow {
    CorrectionRow {
        separation_nm,
        factor_0k,
        factor_300k,
    }
}

static ROWS: [CorrectionRow; 6] = [
    row(300.0, 0.74, 0.69),
    row(400.0, 0.79, 0.73),
    row(500.0, 0.82, 0.74),
    row(600.0, 0.85, 0.75),
    row(700.0, 0.87, 0.75),
    row(800.0, 0.88, 0.75),
];

pub const TABLE_T_MAX: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionTable {
    pub rows: &'static [CorrectionRow],
}

impl CorrectionTable {
    pub fn min_separation(&self) -> f64 {
        self.rows[0].separation_nm * 1e-9
    }

    pub fn max_separation(&self) -> f64 {
        self.rows[self.rows.len() - 1].separation_nm * 1e-9
    }
}

pub fn table_rows() -> CorrectionTable {
    CorrectionTable { rows: &ROWS }
}

// Separations within this many nm of a row are treated as that row.
const GRID_SNAP_NM: f64 = 1e-6;

fn lerp(a: f64, b: f64, w: f64) -> f64 {
    // Exact at both ends: w = 0 gives a, w = 1 gives b.
    (1.0 - w) * a + w * b
}

/// Interpolated factor at separation `l` (m) and temperature `t` (K).
pub fn correction_factor(l: f64, t: f64) -> Result<f64> {
    let nm = l * 1e9;
    let first = ROWS[0].separation_nm;
    let last = ROWS[ROWS.len() - 1].separation_nm;
    if !(nm >= first - GRID_SNAP_NM && nm <= last + GRID_SNAP_NM) {
        return Err(Error::OutOfTableRange(format!(
            "separation {nm} nm outside tabulated [{first}, {last}] nm"
        )));
    }
    if !(0.0..=TABLE_T_MAX).contains(&t) {
        return Err(Error::OutOfTableRange(format!(
            "temperature {t} K outside tabulated [0, {TABLE_T_MAX}] K"
        )));
    }
    let nm = nm.clamp(first, last);

    // Linear in separation within each temperature column, then linear in T.
    let (f0, f300) = match ROWS.iter().find(|r| (r.separation_nm - nm).abs() <= GRID_SNAP_NM) {
        Some(r) => (r.factor_0k, r.factor_300k),
        None => {
            let upper = ROWS.partition_point(|r| r.separation_nm < nm);
            let (lo, hi) = (&ROWS[upper - 1], &ROWS[upper]);
            let w = (nm - lo.separation_nm) / (hi.separation_nm - lo.separation_nm);
            (lerp(lo.factor_0k, hi.factor_0k, w), lerp(lo.factor_300k, hi.factor_300k, w))
        }
    };
    Ok(lerp(f0, f300, t / TABLE_T_MAX))
}

/// Factor × Casimir energy. The factor multiplies the zero-temperature term only.
pub fn corrected_casimir_energy(point: &QueryPoint) -> Result<EnergyResult> {
    let factor = correction_factor(point.separation(), point.temperature())?;
    let casimir = casimir_energy(point.separation());
    Ok(EnergyResult {
        value: factor * casimir,
        model: Model::GoldCorrected,
        // Half a unit in the table's last digit.
        truncation_error: 0.005 * casimir.abs(),
        terms: None,
    })
}

/// Factor × Casimir pressure, treating the factor as locally constant in l.
pub fn corrected_casimir_pressure(point: &QueryPoint) -> Result<PressureResult> {
    let factor = correction_factor(point.separation(), point.temperature())?;
    let casimir = casimir_pressure(point.separation());
    Ok(PressureResult {
        value: factor * casimir,
        model: Model::GoldCorrected,
        truncation_error: 0.005 * casimir.abs(),
    })
}
