//! Temperature-dependent Casimir-Lifshitz free energy and pressure between
//! ideal-conductor plates.
//!
//! The [`exact`] module evaluates the Matsubara sum with a certified
//! truncation bound and serves as the reference for the low- and
//! high-temperature expansions in [`asymptotics`]. [`gold`] applies tabulated
//! real-gold correction factors, [`analysis`] compares the models and runs
//! sweeps, and [`cli`] wraps everything for the `casimir` binary.
//!
//! All inputs and outputs are SI: meters, kelvin, J/m², Pa.

pub mod analysis;
pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod exact;
pub mod gold;
pub mod polylog;
pub mod units;

pub use analysis::{
    classify_regime, compare_models, crossover_separation, sweep, ModelComparison, RegimeClass,
    RegimeLabel, SweepRow, SweepScale, SweepSpec,
};
pub use asymptotics::{
    casimir_energy, casimir_pressure, high_t_energy, high_t_pressure, low_t_energy,
    low_t_pressure, term_ratios, TermBreakdown,
};
pub use error::{Error, Result};
pub use exact::{
    exact_energy, exact_pressure, EnergyResult, Model, PressureResult, SummationPolicy,
};
pub use gold::{correction_factor, corrected_casimir_energy, table_rows, CorrectionTable};
pub use polylog::polylog;
pub use units::{parse_quantity, tau, PhysicalConstants, Quantity, QueryPoint, Unit, CONSTANTS};
