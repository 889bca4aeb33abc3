use super::{AppError, Outcome};
use crate::config::RunConfig;
use crate::output::Table;
use kepler_duality::quantum_spectra::{coulomb_energy, curvature_term, duality_params};

/// Rows (N, E_N, flat E_N, curvature term, 𝓔, ω², ν, σ). With an infinite radius only the
/// flat columns are finite.
pub fn run(cfg: &RunConfig) -> Result<Outcome, AppError> {
    let (dim, mu, r) = (cfg.dim(), cfg.mu(), cfg.radius());
    let n_max = cfg.settings.n_max.unwrap_or(5);
    let n0 = u32::from(dim == 3);
    if n_max < n0 {
        return Err(AppError::Validation(format!("--n-max must be at least {n0} in {dim} dimensions")));
    }
    let mut t = Table::new([
        "N", "E", "E_flat", "curvature_term", "osc_energy_re", "osc_energy_im", "omega2_re", "omega2_im", "nu_re", "nu_im", "sigma",
    ]);
    for n in n0..=n_max {
        let e = coulomb_energy(dim, n, mu, r)?;
        let flat = coulomb_energy(dim, n, mu, f64::INFINITY)?;
        let curv = curvature_term(dim, n, r)?;
        let mut row = vec![n.into(), e.into(), flat.into(), curv.into()];
        if r.is_finite() {
            let p = duality_params(dim, mu, r, n)?;
            for v in [p.cal_e.re, p.cal_e.im, p.omega2.re, p.omega2.im, p.nu.re, p.nu.im, p.sigma] {
                row.push(v.into());
            }
        } else {
            row.extend(std::iter::repeat(f64::NAN).take(7).map(Into::into));
        }
        t.push(row);
    }
    t.note("dim", dim);
    t.note("mu", mu);
    t.note("radius", r);
    Ok(Outcome { tables: vec![(None, t)], failed: false })
}
