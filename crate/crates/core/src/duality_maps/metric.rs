use super::maps::forward_generic;
use super::{quadratic, AmbientPoint, MapKind};
use crate::scalar::directional;
use crate::{c64, ComplexValue, Error, Result, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn check_len(kind: MapKind, u: &AmbientPoint, du: &[ComplexValue]) -> Result<()> {
    if u.coords.len() != kind.u_dim() {
        return Err(Error::DimensionMismatch { expected: kind.u_dim(), got: u.coords.len() });
    }
    if du.len() != kind.u_dim() {
        return Err(Error::DimensionMismatch { expected: kind.u_dim(), got: du.len() });
    }
    Ok(())
}

/// Values of the constraint one-forms at (u, du): one form for ks3, three for hurwitz5.
pub fn constraint_oneforms(kind: MapKind, u: &AmbientPoint, du: &[ComplexValue]) -> Result<Vec<ComplexValue>> {
    check_len(kind, u, du)?;
    let u = &u.coords;
    match kind {
        MapKind::Ks3Sphere => Ok(vec![u[3] * du[2] - u[2] * du[3] + u[1] * du[0] - u[0] * du[1]]),
        MapKind::Hurwitz5Sphere => {
            let (u1, u2, u3, u4, u5, u6, u7, u8) = (u[0], u[1], u[2], u[3], u[4], u[5], u[6], u[7]);
            let (d1, d2, d3, d4, d5, d6, d7, d8) = (du[0], du[1], du[2], du[3], du[4], du[5], du[6], du[7]);
            Ok(vec![
                u4 * d1 + u3 * d2 - u2 * d3 - u1 * d4 - u8 * d5 - u7 * d6 + u6 * d7 + u5 * d8,
                u3 * d1 - u4 * d2 - u1 * d3 + u2 * d4 - u7 * d5 + u8 * d6 + u5 * d7 - u6 * d8,
                u2 * d1 - u1 * d2 + u4 * d3 - u3 * d4 + u6 * d5 - u5 * d6 + u8 * d7 - u7 * d8,
            ])
        }
        k => Err(Error::Kind(format!("{k} has no constraint one-forms"))),
    }
}

/// The three pieces of a metric relation `lhs = conformal + omega`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricTerms {
    /// The s-side quadratic form, normalised as printed (ds·ds/R for lc2 and hurwitz5, ds·ds for ks3).
    pub lhs: ComplexValue,
    /// The conformal part proportional to du·du.
    pub conformal: ComplexValue,
    /// The one-form part; zero for lc2. It enters with the opposite sign to the conformal
    /// factor, so displacements along the fibre map to ds = 0.
    pub omega: ComplexValue,
}

impl MetricTerms {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.conformal - self.omega).norm()
    }
}

/// Evaluates both sides of the metric relation for the displacement `du`, with ds obtained
/// exactly as the differential of the forward map.
pub fn metric_relation_terms(kind: MapKind, u: &AmbientPoint, du: &[ComplexValue]) -> Result<MetricTerms> {
    check_len(kind, u, du)?;
    if kind != MapKind::Lc2Flat {
        let tangency = quadratic_pair(&u.coords, du);
        let scale = u.coords.iter().map(|v| v.norm()).fold(1.0, f64::max) * du.iter().map(|v| v.norm()).fold(1e-300, f64::max);
        if tangency.norm() > 1e-8 * scale.max(1.0) {
            return Err(Error::NonTangent(tangency.norm()));
        }
    }
    forward_generic(kind, &u.coords)?;
    let ds = directional(|x| forward_generic(kind, x).expect("validated above"), &u.coords, du);
    let ds2: ComplexValue = ds.iter().map(|v| v * v).sum();
    let du2: ComplexValue = du.iter().map(|v| v * v).sum();
    let x = &u.coords;
    let d = u.space.radius;
    let r = d * d;
    let zero = c64(0.0, 0.0);
    match kind {
        MapKind::Lc2Flat => Ok(MetricTerms { lhs: ds2, conformal: 4.0 * (x[0] * x[0] + x[1] * x[1]) * du2, omega: zero }),
        MapKind::Lc2Sphere => {
            let rho = x[0] * x[0] + x[1] * x[1];
            Ok(MetricTerms { lhs: ds2 / r, conformal: -(rho / (x[2] * x[2])) * du2, omega: zero })
        }
        MapKind::Ks3Sphere => {
            let rho = quadratic(&x[..4], &[1.0; 4]);
            let f = -(d * d) / (x[4] * x[4]);
            let w = constraint_oneforms(kind, u, du)?[0];
            Ok(MetricTerms { lhs: ds2, conformal: f * rho * du2, omega: -f * w * w })
        }
        MapKind::Hurwitz5Sphere => {
            let rho = quadratic(&x[..8], &[1.0; 8]);
            let f = -1.0 / (x[8] * x[8]);
            let w: ComplexValue = constraint_oneforms(kind, u, du)?.iter().map(|v| v * v).sum();
            Ok(MetricTerms { lhs: ds2 / r, conformal: f * rho * du2, omega: -f * w })
        }
        k => Err(Error::Kind(format!("{k} has no metric relation"))),
    }
}

fn quadratic_pair(a: &[ComplexValue], b: &[ComplexValue]) -> ComplexValue {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// |lhs − rhs| of the printed metric relation, ω terms included.
pub fn metric_relation_residual(kind: MapKind, u: &AmbientPoint, du: &[ComplexValue]) -> Result<f64> {
    Ok(metric_relation_terms(kind, u, du)?.residual())
}

/// The supplementary Hurwitz angles (α_H, β_H, γ_H) of a point on the real slice of the
/// 8-sphere chart. Quadrants are resolved from the phases of u₁+iu₂ and u₃+iu₄, giving
/// α_H ∈ [0, 2π) and γ_H ∈ [0, 4π).
pub fn hurwitz_angles(u: &AmbientPoint) -> Result<(f64, f64, f64)> {
    let x = &u.coords;
    if x.len() != 9 {
        return Err(Error::DimensionMismatch { expected: 9, got: x.len() });
    }
    let a12 = x[0] * x[0] + x[1] * x[1];
    let a34 = x[2] * x[2] + x[3] * x[3];
    let scale = x.iter().map(|v| v.norm_sqr()).sum::<f64>().max(1e-300);
    if a12.norm() <= 1e-14 * scale {
        return Err(Error::Degenerate("u1^2 + u2^2 = 0: beta_H and the angle phases are undefined".into()));
    }
    let beta_h = 2.0 * (a34 / a12).re.max(0.0).sqrt().atan();
    // u_{1..4} = K (cos(β_H/2) e^{ip}, sin(β_H/2) e^{iq}) with K the common complex modulus
    let s8: ComplexValue = x[..8].iter().map(|v| v * v).sum();
    let cos_theta_half = ((a12 + a34) / s8).re.max(0.0).sqrt();
    let k = s8.sqrt() * cos_theta_half;
    let e1 = (x[0] + I * x[1]) / (k * (beta_h / 2.0).cos());
    let p = e1.arg();
    let q = if (beta_h / 2.0).sin() == 0.0 {
        0.0
    } else {
        let e2 = (x[2] + I * x[3]) / (k * (beta_h / 2.0).sin());
        e2.arg()
    };
    let a = p + q;
    let s = (a / (2.0 * PI)).floor();
    let alpha_h = a - 2.0 * PI * s;
    let gamma_h = (p - q + 2.0 * PI * s).rem_euclid(4.0 * PI);
    Ok((alpha_h, beta_h, gamma_h))
}
