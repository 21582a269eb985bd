//! Scenarios, monitors, studies and their CSV reports.

mod config;
mod family;
mod monitors;
mod report;
mod scenario;
mod studies;

pub use config::{GridSection, Scenario, ScenarioId, ScenarioSection, Tolerances};
pub use family::{scalar as family_scalar, state as family_state, FamilyKind, MONOMIALS};
pub use monitors::{
    background_sup_norms, basic_coefficients, basic_energy_monitor, equivalence_ratio, family_constants,
    main_theorem_monitor, measure, run_scenario, BasicCoefficients, Flag, MainReport, MainSample, Measurement,
    MonitorReport, MonitorRow, RunReport, RunRow,
};
pub use report::{num, write_csv, CsvTable};
pub use scenario::{
    background_of, build, grid_of, require_valid, travelling_wave, validate_background, Setup, Validation,
    CONSTANT_R0, LAYER,
};
pub use studies::*;
