use super::chart_function::Chart;
use super::quadrature::gauss_legendre;
use crate::duality_maps::{chart_jacobian, parametrize, AngleChart};
use crate::{ComplexValue, Error, Result, I};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// The three volume-element relations between dv(s) and a weighted dv(u).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VolumePair {
    Vol2,
    Vol3,
    Vol5,
}

impl VolumePair {
    pub fn dim(self) -> usize {
        match self {
            VolumePair::Vol2 => 2,
            VolumePair::Vol3 => 3,
            VolumePair::Vol5 => 5,
        }
    }

    pub fn for_dim(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(VolumePair::Vol2),
            3 => Ok(VolumePair::Vol3),
            5 => Ok(VolumePair::Vol5),
            d => Err(Error::Range(format!("dimension {d} is not one of 2, 3, 5"))),
        }
    }

    /// Power k of u_last in the weight ρ/u_lastᵏ.
    fn power(self) -> i32 {
        match self {
            VolumePair::Vol2 => 2,
            VolumePair::Vol3 => 3,
            VolumePair::Vol5 => 5,
        }
    }

    /// Constant c with ∫dv(s) = c ∫(ρ/u_lastᵏ) dv(u) over the full u-chart.
    pub fn integral_prefactor(self, d: f64) -> ComplexValue {
        match self {
            VolumePair::Vol2 => -(d * d) / 2.0 * ComplexValue::new(1.0, 0.0),
            VolumePair::Vol3 => -I * d.powi(3) / (2.0 * PI),
            VolumePair::Vol5 => -I * d.powi(5) / (2.0 * PI * PI),
        }
    }
}

/// Closed-form density of dv(u) on the u-chart (with dΩ = sin β/8 dα dβ dγ in five dimensions).
pub fn u_volume_density(chart: Chart, a: &AngleChart, d: f64) -> Result<ComplexValue> {
    let chi = a.chi;
    let s = chi.sin();
    let e = |k: f64| (I * chi * k).exp();
    match chart {
        Chart::S2Cu => Ok(-I * d * d / 2.0 * e(1.0)),
        Chart::S4Cu => Ok(-(d.powi(4)) / 4.0 * e(2.0) * s * a.beta.sin()),
        Chart::S8Cu => Ok(-0.5 * d.powi(8) * e(4.0) * s.powi(3) * a.theta.sin().powi(3) * (a.beta.sin() / 8.0) * (a.beta_h.sin() / 8.0)),
        c => Err(Error::Domain(format!("{c} is not a u-chart"))),
    }
}

/// Density of dv(s) on the real sphere of radius R.
pub fn s_volume_density(chart: Chart, a: &AngleChart, r: f64) -> Result<f64> {
    let s = a.chi.re.sin();
    match chart {
        Chart::S2s => Ok(r * r * s),
        Chart::S3s => Ok(r.powi(3) * s * s * a.beta.sin()),
        Chart::S5s => Ok(r.powi(5) * s.powi(4) * a.theta.sin().powi(3) * a.beta.sin() / 8.0),
        c => Err(Error::Domain(format!("{c} is not an s-chart"))),
    }
}

/// det of the bilinear Gram matrix of the u-chart parametrization; its square root is dv(u)
/// up to sign.
pub fn gram_determinant(chart: Chart, a: &AngleChart, d: f64) -> Result<ComplexValue> {
    let kind = chart.map_kind();
    if !chart.is_u() {
        return Err(Error::Domain(format!("{chart} is not a u-chart")));
    }
    let x = a.coords(kind)?;
    let rows = chart_jacobian(kind, &x, d);
    let n = rows.len();
    let g = DMatrix::from_fn(n, n, |i, j| rows[i].iter().zip(&rows[j]).map(|(p, q)| p * q).sum::<ComplexValue>());
    Ok(g.determinant())
}

/// Both sides of a volume relation at one chart point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeWeight {
    /// The factor multiplying dv(u): −ρ/u₃² in two dimensions, ρ/u_lastᵏ otherwise.
    pub factor: ComplexValue,
    /// The s-side density as printed ((1/R) dv(s), (i/2D³) dv(s) dγ, (i/D⁵) dv(s) dΩ_H).
    pub lhs: ComplexValue,
    /// factor · dv(u).
    pub rhs: ComplexValue,
    /// |dv(u)² − det g| / |det g|: checks the closed-form dv(u) against the Gram matrix.
    pub gram_residual: f64,
}

impl VolumeWeight {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

/// Evaluates a volume relation at the given chart angles on the sphere pair of radii D and R = D².
pub fn volume_weight(pair: VolumePair, a: &AngleChart, d: f64) -> Result<VolumeWeight> {
    let dim = pair.dim();
    let (uc, sc) = (Chart::u_chart(dim)?, Chart::s_chart(dim)?);
    let u = parametrize(uc.map_kind(), a, d)?.coords;
    let last = u[u.len() - 1];
    let rho: ComplexValue = u[..u.len() - 1].iter().map(|v| v * v).sum();
    let r = d * d;
    let dvu = u_volume_density(uc, a, d)?;
    let dvs = s_volume_density(sc, a, r)?;
    let (factor, lhs) = match pair {
        VolumePair::Vol2 => (-rho / (last * last), ComplexValue::new(dvs / r, 0.0)),
        VolumePair::Vol3 => (rho / last.powi(3), I / (2.0 * d.powi(3)) * dvs),
        VolumePair::Vol5 => (rho / last.powi(5), I / d.powi(5) * dvs * a.beta_h.sin() / 8.0),
    };
    let det = gram_determinant(uc, a, d)?;
    let gram_residual = (dvu * dvu - det).norm() / det.norm().max(f64::MIN_POSITIVE);
    Ok(VolumeWeight { factor, lhs, rhs: factor * dvu, gram_residual })
}

/// vol(Sₙ) of radius R computed from the u-side integral c ∫(ρ/u_lastᵏ) dv(u).
///
/// The azimuths enter the integrand only through sin β factors, so they contribute their
/// ranges exactly; χ, θ, β and β_H use Gauss–Legendre with `order` nodes.
pub fn sphere_volume_from_u(pair: VolumePair, d: f64, order: usize) -> Result<ComplexValue> {
    if order < 8 {
        return Err(Error::QuadratureOrder(order));
    }
    let dim = pair.dim();
    let uc = Chart::u_chart(dim)?;
    let rule = gauss_legendre(order, 0.0, PI)?;
    // ρ/u_lastᵏ in closed form on the chart: ρ = D²(1 − e^{2iχ}), u_last = D e^{iχ}
    let weight = |chi: f64| -> ComplexValue {
        let c = ComplexValue::new(chi, 0.0);
        let rho = d * d * (1.0 - (2.0 * I * c).exp());
        rho / (d * (I * c).exp()).powi(pair.power())
    };
    let mut total = ComplexValue::new(0.0, 0.0);
    for (&chi, &wc) in rule.nodes.iter().zip(&rule.weights) {
        let mut a = AngleChart { chi: ComplexValue::new(chi, 0.0), ..Default::default() };
        let base = weight(chi);
        match uc {
            Chart::S2Cu => total += wc * base * u_volume_density(uc, &a, d)? * 4.0 * PI,
            Chart::S4Cu => {
                for (&b, &wb) in rule.nodes.iter().zip(&rule.weights) {
                    a.beta = b;
                    total += wc * wb * base * u_volume_density(uc, &a, d)? * (2.0 * PI) * (4.0 * PI);
                }
            }
            _ => {
                for (&th, &wt) in rule.nodes.iter().zip(&rule.weights) {
                    a.theta = th;
                    // the β and β_H dependence is sin β · sin β_H; integrate it exactly as 2 · 2
                    a.beta = PI / 2.0;
                    a.beta_h = PI / 2.0;
                    let azimuths = (8.0 * PI * PI) * (8.0 * PI * PI) * 2.0 * 2.0;
                    total += wc * wt * base * u_volume_density(uc, &a, d)? * azimuths;
                }
            }
        }
    }
    Ok(pair.integral_prefactor(d) * total)
}

/// vol(S₂) = 4πR², vol(S₃) = 2π²R³, vol(S₅) = π³R⁵.
pub fn sphere_volume(dim: usize, r: f64) -> Result<f64> {
    match dim {
        2 => Ok(4.0 * PI * r * r),
        3 => Ok(2.0 * PI * PI * r.powi(3)),
        5 => Ok(PI.powi(3) * r.powi(5)),
        d => Err(Error::Range(format!("dimension {d} is not one of 2, 3, 5"))),
    }
}
