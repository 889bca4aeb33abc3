use super::{AppError, Outcome};
use crate::config::RunConfig;
use crate::output::Table;
use kepler_duality::duality_maps::AngleChart;
use kepler_duality::geometry_quadrature::sphere_inner_product;
use kepler_duality::quantum_spectra::{coulomb_chart_function, coulomb_wavefunction, duality_params, QuantumNumbers};
use kepler_duality::special_functions::HalfInt;
use std::f64::consts::PI;

fn half(name: &str, x: Option<f64>) -> Result<HalfInt, AppError> {
    HalfInt::from_f64(x.unwrap_or(0.0)).map_err(|_| AppError::Validation(format!("--{name} must be an integer or half-integer")))
}

fn numbers(cfg: &RunConfig) -> Result<QuantumNumbers, AppError> {
    let s = &cfg.settings;
    let n = s.n.unwrap_or(u32::from(cfg.dim() == 3));
    let q = match cfg.dim() {
        2 => QuantumNumbers::coulomb2(n, s.m.unwrap_or(0))?,
        3 => {
            let l = s.l.unwrap_or(0.0);
            if l.fract() != 0.0 || l < 0.0 {
                return Err(AppError::Validation(format!("--l must be a non-negative integer in 3D, got {l}")));
            }
            QuantumNumbers::coulomb3(n, l as u32, s.m.unwrap_or(0))?
        }
        _ => QuantumNumbers::coulomb5(n, s.lambda.unwrap_or(0), half("l", s.l)?, half("m1", s.m1)?, half("m2", s.m2)?)?,
    };
    Ok(q)
}

/// Open grid in (0, π) for χ and the polar angle, [0, 2π) for the azimuth. Angles not
/// sampled are fixed at generic values.
fn grid(dim: usize, k: usize) -> (Vec<&'static str>, Vec<AngleChart>) {
    let open = |i: usize| PI * (i as f64 + 0.5) / k as f64;
    let az = |j: usize| 2.0 * PI * j as f64 / k as f64;
    let mut pts = Vec::with_capacity(k * k);
    let names = match dim {
        2 => vec!["chi", "phi"],
        3 => vec!["chi", "beta", "alpha"],
        _ => vec!["chi", "theta"],
    };
    for i in 0..k {
        for j in 0..k {
            pts.push(match dim {
                2 => AngleChart::lc2(open(i), az(j)),
                3 => AngleChart::ks3(open(i), open(j), 0.7, 0.0),
                _ => AngleChart::hurwitz5(open(i), open(j), 0.7, 1.1, 2.3, 0.0, 0.0, 0.0),
            });
        }
    }
    (names, pts)
}

/// Samples Ψ on a grid and reports the quadrature norm in the summary.
pub fn run(cfg: &RunConfig) -> Result<Outcome, AppError> {
    let (dim, mu, r) = (cfg.dim(), cfg.mu(), cfg.radius());
    let q = numbers(cfg)?;
    let n = q.coulomb_n().unwrap_or(0);
    let params = duality_params(dim, mu, r, n)?;
    let k = cfg.settings.grid.unwrap_or(24);
    let (names, pts) = grid(dim, k);
    let mut cols: Vec<&str> = names.clone();
    cols.extend(["re", "im", "abs2"]);
    let mut t = Table::new(cols);
    for a in &pts {
        let v = coulomb_wavefunction(dim, &q, &params, a)?;
        let mut row: Vec<_> = names
            .iter()
            .map(|&name| match name {
                "chi" => a.chi.re,
                "phi" => a.phi,
                "beta" => a.beta,
                "alpha" => a.alpha,
                _ => a.theta,
            })
            .map(Into::into)
            .collect();
        row.extend([v.re.into(), v.im.into(), v.norm_sqr().into()]);
        t.push(row);
    }
    let f = coulomb_chart_function(&q, &params)?;
    let norm = sphere_inner_product(&f, &f, cfg.quad_order(64))?;
    t.note("state", q.to_string());
    t.note("energy", params.e);
    t.note("norm", norm.re);
    Ok(Outcome { tables: vec![(None, t)], failed: false })
}
