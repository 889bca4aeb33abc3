//! Kepler motion on Sₙ in the direct (singular) form and in the regularized u-space form,
//! with fictitious-time reparametrization, conservation diagnostics and Hamilton–Jacobi
//! residuals.

mod equations;
mod integrator;
mod runs;
mod state;

pub use equations::{
    direct_rhs, energy, fictitious_time_factor, first_integral, flat_energy, flat_kepler_rhs, hj_residual, levi_civita_lift,
    levi_civita_map, potential, regularized_constraint_residual, regularized_rhs, HjPicture,
};
pub use integrator::{integrate, OdeSolution, OdeSystem};
pub use runs::{equivalence_run, integrate_direct, integrate_regularized, lift_initial_data, radial_period, Clock, EquivalenceReport};
pub use state::{ClassicalState, FlatKeplerState, IntegratorConfig, RegularizedState, SampleState, TrajectoryRecord, TrajectorySample};
