//! Evolution equations: time-derivative elimination, linearized sources,
//! manufactured backgrounds, time jets and the RK4 stepper.

mod background;
mod ck;
mod fields;
mod moving;
mod pointwise;
mod state;
mod stepper;

pub use background::{check_boundary_velocity, forcing_from_jets, manufactured_forcing, Background};
pub use ck::{dt_apply, dt_power, grad_fields, BgJets, BgSlice, JetField, LinJets};
pub use fields::{linearized_sources, linearized_time_derivatives, nonlinear_time_derivatives, Sources};
pub use moving::{moving_domain_residual, perfect_derivative_residual, rpow, AleFlow};
pub use pointwise::{
    a1, check_a1, lin_four, linear_dt, linear_sources, nonlinear_dt, spacetime, Spacetime, A1_FLOOR,
};
pub use state::{BackgroundState, FieldSet, Forcing, LinearizedState, Prim, PrimGrad};
pub use stepper::{cfl_limit, evolve, step_rk4, BgSource};
