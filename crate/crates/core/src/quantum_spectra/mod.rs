//! Closed-form spectra, the Coulomb/oscillator parameter dictionary, validated quantum
//! numbers, and oscillator and Coulomb eigenfunctions with their flat-space limits.

mod coulomb;
mod numbers;
mod oscillator;
mod params;

pub use coulomb::{
    coulomb_chart_function, coulomb_potential, coulomb_wavefunction, flat_limit_wavefunction, sample_coulomb, schrodinger_residual,
    WaveSample,
};
pub use numbers::{reduce_to_coulomb, Numbers, QuantumNumbers};
pub use oscillator::{oscillator_chart_function, oscillator_constant, oscillator_wavefunction, z_function};
pub use params::{coulomb_energy, curvature_term, duality_params, effective_n, oscillator_energy, oscillator_level, DualityParams};
