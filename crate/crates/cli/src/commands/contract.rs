use super::{AppError, Outcome};
use crate::config::RunConfig;
use crate::output::Table;
use kepler_duality::duality_maps::AngleChart;
use kepler_duality::quantum_spectra::{coulomb_energy, coulomb_wavefunction, curvature_term, duality_params, flat_limit_wavefunction, QuantumNumbers};
use kepler_duality::special_functions::HalfInt;
use kepler_duality::c64;
use rayon::prelude::*;

/// Flat radii at which sphere and flat wavefunctions are compared.
const SAMPLE_RADII: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

/// Rows (R, E_N(R), E_flat, E_N(R) − curvature term, sup |Ψ_R − ψ_flat|) over a radius sweep.
pub fn run(cfg: &RunConfig) -> Result<Outcome, AppError> {
    let dim = cfg.dim();
    let mu = cfg.mu();
    let n = cfg.settings.n.unwrap_or(0);
    let radii = cfg.settings.radii.clone().unwrap_or_else(|| vec![10.0, 100.0, 1000.0]);
    let q = match dim {
        2 => QuantumNumbers::coulomb2(n, 0)?,
        _ => QuantumNumbers::coulomb5(n, 0, HalfInt::int(0), HalfInt::int(0), HalfInt::int(0))?,
    };
    let flat = coulomb_energy(dim, n, mu, f64::INFINITY)?;
    let rows: Vec<Result<(f64, f64, f64, f64), AppError>> = radii
        .par_iter()
        .map(|&r| {
            let e = coulomb_energy(dim, n, mu, r)?;
            let p = duality_params(dim, mu, r, n)?;
            let mut err: f64 = 0.0;
            for x in SAMPLE_RADII.into_iter().filter(|&x| x < std::f64::consts::PI * r) {
                let a = AngleChart { chi: c64(x / r, 0.0), phi: 0.4, theta: 1.1, alpha: 0.3, beta: 0.8, gamma: 1.9, ..Default::default() };
                let sphere = coulomb_wavefunction(dim, &q, &p, &a)?;
                err = err.max((sphere - flat_limit_wavefunction(dim, &q, mu, x, &a)?).norm());
            }
            Ok((r, e, e - curvature_term(dim, n, r)?, err))
        })
        .collect();
    let mut t = Table::new(["R", "E", "E_flat", "E_minus_curvature", "wavefunction_sup_error"]);
    for row in rows {
        let (r, e, shifted, err) = row?;
        t.push(vec![r.into(), e.into(), flat.into(), shifted.into(), err.into()]);
    }
    t.note("dim", dim);
    t.note("N", n);
    t.note("mu", mu);
    Ok(Outcome { tables: vec![(None, t)], failed: false })
}
