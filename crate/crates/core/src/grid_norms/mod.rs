//! Meshes, finite differences, degenerate-weight quadrature and the weighted
//! norms and energies built on them.

mod grid;
mod norms;
mod quadrature;

pub use grid::{Axis, AxisKind, Grid};
pub use norms::{
    energies, h2k_norm, transport_energy, tilde_h_norm_sq, weighted_sobolev_norm, write_norm_csv,
    EnergyInputs, EnergyReport, NormSpec,
};
pub use quadrature::pairwise_sum;
