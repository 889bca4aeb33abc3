use super::{AmbientPoint, MapKind, SpaceSpec};
use crate::scalar::{directional, jacobian_rows, Dual, Scalar};
use crate::{c64, ComplexValue, Error, Result, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Angles of the sphere charts. Each map kind reads only the subset it needs:
///
/// * lc2: (χ, φ)
/// * ks3: (χ, β, α, γ)
/// * hurwitz5: (χ, θ, α, β, γ, α_H, β_H, γ_H)
///
/// χ may be complex (contour continuation); the other angles are real. `vartheta` is the
/// hemisphere angle of the oscillator picture, with cos ϑ = e^{iχ} on the real slice.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AngleChart {
    pub chi: ComplexValue,
    pub vartheta: f64,
    pub theta: f64,
    pub phi: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub alpha_h: f64,
    pub beta_h: f64,
    pub gamma_h: f64,
}

impl AngleChart {
    pub fn lc2(chi: f64, phi: f64) -> Self {
        Self { chi: c64(chi, 0.0), phi, ..Default::default() }
    }

    pub fn ks3(chi: f64, beta: f64, alpha: f64, gamma: f64) -> Self {
        Self { chi: c64(chi, 0.0), beta, alpha, gamma, ..Default::default() }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn hurwitz5(chi: f64, theta: f64, alpha: f64, beta: f64, gamma: f64, alpha_h: f64, beta_h: f64, gamma_h: f64) -> Self {
        Self { chi: c64(chi, 0.0), theta, alpha, beta, gamma, alpha_h, beta_h, gamma_h, ..Default::default() }
    }

    /// The chart parameters of `kind` in their canonical order.
    pub fn coords(&self, kind: MapKind) -> Result<Vec<ComplexValue>> {
        let r = |x: f64| c64(x, 0.0);
        Ok(match kind {
            MapKind::Lc2Sphere => vec![self.chi, r(self.phi)],
            MapKind::Ks3Sphere => vec![self.chi, r(self.beta), r(self.alpha), r(self.gamma)],
            MapKind::Hurwitz5Sphere => vec![
                self.chi,
                r(self.theta),
                r(self.alpha),
                r(self.beta),
                r(self.gamma),
                r(self.alpha_h),
                r(self.beta_h),
                r(self.gamma_h),
            ],
            k => return Err(Error::Kind(format!("{k} has no angle chart"))),
        })
    }

    /// Inverse of [`AngleChart::coords`]; the real parts of all but χ are taken.
    pub fn from_coords(kind: MapKind, x: &[ComplexValue]) -> Result<Self> {
        let n = kind.chart_len()?;
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        let mut a = AngleChart { chi: x[0], ..Default::default() };
        match kind {
            MapKind::Lc2Sphere => a.phi = x[1].re,
            MapKind::Ks3Sphere => {
                a.beta = x[1].re;
                a.alpha = x[2].re;
                a.gamma = x[3].re;
            }
            _ => {
                a.theta = x[1].re;
                a.alpha = x[2].re;
                a.beta = x[3].re;
                a.gamma = x[4].re;
                a.alpha_h = x[5].re;
                a.beta_h = x[6].re;
                a.gamma_h = x[7].re;
            }
        }
        Ok(a)
    }

    fn check_ranges(&self, kind: MapKind) -> Result<()> {
        let tol = 1e-12;
        let within = |name: &str, v: f64, hi: f64| -> Result<()> {
            if v < -tol || v > hi + tol || !v.is_finite() {
                return Err(Error::Range(format!("{name} = {v} outside [0, {hi}]")));
            }
            Ok(())
        };
        if self.chi.re < -tol || self.chi.re > PI + tol || self.chi.im < -tol || !self.chi.im.is_finite() {
            return Err(Error::Range(format!("chi = {} outside Re in [0, pi], Im >= 0", self.chi)));
        }
        match kind {
            MapKind::Lc2Sphere => within("phi", self.phi, 4.0 * PI),
            MapKind::Ks3Sphere => {
                within("beta", self.beta, PI)?;
                within("alpha", self.alpha, 2.0 * PI)?;
                within("gamma", self.gamma, 4.0 * PI)
            }
            _ => {
                within("theta", self.theta, PI)?;
                within("beta", self.beta, PI)?;
                within("alpha", self.alpha, 2.0 * PI)?;
                within("gamma", self.gamma, 4.0 * PI)?;
                within("beta_h", self.beta_h, PI)?;
                within("alpha_h", self.alpha_h, 2.0 * PI)?;
                within("gamma_h", self.gamma_h, 4.0 * PI)
            }
        }
    }
}

/// Spherical parametrization of the complex sphere for any scalar type. No range checks,
/// so it can be evaluated on finite-difference stencils and complex contours.
pub fn parametrize_generic<S: Scalar>(kind: MapKind, x: &[S], d: f64) -> Result<Vec<S>> {
    let n = kind.chart_len()?;
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    let half = |v: S| v.scale(c64(0.5, 0.0));
    let chi = x[0];
    let ei = (chi * S::constant(I)).exp();
    let w = (S::real(1.0) - ei * ei).sqrt().scale(c64(d, 0.0));
    let u_last = ei.scale(c64(d, 0.0));
    Ok(match kind {
        MapKind::Lc2Sphere => {
            let p = half(x[1]);
            vec![w * p.cos(), w * p.sin(), u_last]
        }
        MapKind::Ks3Sphere => {
            let (b, a, g) = (half(x[1]), x[2], x[3]);
            let sum = half(a + g);
            let dif = half(a - g);
            // u₄ carries sin((γ−α)/2) so that the s-space azimuth is α
            vec![w * b.cos() * sum.cos(), w * b.cos() * sum.sin(), w * b.sin() * dif.cos(), -(w * b.sin() * dif.sin()), u_last]
        }
        _ => {
            let (th, a, b, g, ah, bh, gh) = (half(x[1]), x[2], half(x[3]), x[4], x[5], half(x[6]), x[7]);
            let (ct, st) = (th.cos(), th.sin());
            let (cb, sb, cbh, sbh) = (b.cos(), b.sin(), bh.cos(), bh.sin());
            let hs = |v: S| half(v);
            let q1 = hs(a + g + ah + gh);
            let q2 = hs(a - g - ah + gh);
            let q3 = hs(a - g + ah + gh);
            let q4 = hs(a + g - ah + gh);
            let wc = w * ct;
            let ws = w * st;
            vec![
                wc * cbh * hs(ah + gh).cos(),
                wc * cbh * hs(ah + gh).sin(),
                wc * sbh * hs(ah - gh).cos(),
                wc * sbh * hs(ah - gh).sin(),
                ws * (cb * cbh * q1.cos() + sb * sbh * q2.cos()),
                ws * (cb * cbh * q1.sin() - sb * sbh * q2.sin()),
                ws * (sb * cbh * q3.cos() - cb * sbh * q4.cos()),
                ws * (sb * cbh * q3.sin() + cb * sbh * q4.sin()),
                u_last,
            ]
        }
    })
}

/// The u-space point of the sphere chart at the given angles, on the complex sphere of radius D.
pub fn parametrize(kind: MapKind, angles: &AngleChart, d: f64) -> Result<AmbientPoint> {
    angles.check_ranges(kind)?;
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::Range(format!("D must be positive and finite, got {d}")));
    }
    let u = parametrize_generic(kind, &angles.coords(kind)?, d)?;
    AmbientPoint::new(u, SpaceSpec::u_space(kind, d)?)
}

/// Real spherical coordinates of the s-space point on Sₙ of radius R for the chart angles
/// (real part of χ).
pub fn s_from_angles(kind: MapKind, angles: &AngleChart, r: f64) -> Result<Vec<f64>> {
    let chi = angles.chi.re;
    let (sc, cc) = (r * chi.sin(), r * chi.cos());
    Ok(match kind {
        MapKind::Lc2Sphere => vec![sc * angles.phi.cos(), sc * angles.phi.sin(), cc],
        MapKind::Ks3Sphere => {
            let (a, b) = (angles.alpha, angles.beta);
            vec![sc * b.sin() * a.cos(), sc * b.sin() * a.sin(), sc * b.cos(), cc]
        }
        MapKind::Hurwitz5Sphere => {
            let (a, b, g, th) = (angles.alpha, angles.beta, angles.gamma, angles.theta);
            let z1 = sc * th.sin() * (b / 2.0).cos();
            let z2 = sc * th.sin() * (b / 2.0).sin();
            let (p, q) = ((a + g) / 2.0, (a - g) / 2.0);
            vec![z1 * p.cos(), z1 * p.sin(), z2 * q.cos(), z2 * q.sin(), sc * th.cos(), cc]
        }
        k => return Err(Error::Kind(format!("{k} has no angle chart"))),
    })
}

/// How to produce a tangent vector ∂u/∂xₖ of the parametrization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tangent {
    /// Forward-mode dual numbers: exact to rounding.
    Analytic,
    /// Central differences with the given step.
    CentralDifference { step: f64 },
}

/// Tangent of the parametrization along chart coordinate `direction`.
pub fn chart_tangent(kind: MapKind, angles: &AngleChart, d: f64, direction: usize, method: Tangent) -> Result<Vec<ComplexValue>> {
    let x = angles.coords(kind)?;
    if direction >= x.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: direction + 1 });
    }
    match method {
        Tangent::Analytic => {
            let mut dx = vec![c64(0.0, 0.0); x.len()];
            dx[direction] = c64(1.0, 0.0);
            let f = |y: &[Dual]| parametrize_generic(kind, y, d).expect("chart length checked");
            Ok(directional(f, &x, &dx))
        }
        Tangent::CentralDifference { step } => {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[direction] += step;
            xm[direction] -= step;
            let up = parametrize_generic(kind, &xp, d)?;
            let um = parametrize_generic(kind, &xm, d)?;
            Ok(up.iter().zip(&um).map(|(a, b)| (a - b) / (2.0 * step)).collect())
        }
    }
}

/// Rows ∂u/∂xₖ of the parametrization at chart coordinates `x`.
pub(crate) fn chart_jacobian(kind: MapKind, x: &[ComplexValue], d: f64) -> Vec<Vec<ComplexValue>> {
    jacobian_rows(|y: &[Dual]| parametrize_generic(kind, y, d).expect("chart length checked"), x)
}
