use super::numbers::{Numbers, QuantumNumbers};
use super::oscillator::z_function;
use super::params::DualityParams;
use crate::duality_maps::AngleChart;
use crate::geometry_quadrature::{laplace_beltrami_apply, AngularFactor, AngularTerm, Chart, ChartFunction, FdConfig, PolarFn, RadialFn};
use crate::special_functions::{complex_log_gamma, factorial, hyp1f1_terminating, hyp2f1_terminating, HalfInt};
use crate::{c64, ComplexValue, Error, Result, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// One sampled wavefunction value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSample {
    pub angles: AngleChart,
    pub value: ComplexValue,
}

/// Everything that distinguishes the three radial Coulomb functions
/// C sinᵃχ e^{−iχ(N−a−s−iσ)} ₂F₁(−N+a+s, b+iσ; c; 1−e^{2iχ}).
struct RadialData {
    /// Power of sin χ.
    a: u32,
    /// Shift s in the exponent and degree (1 in three dimensions).
    shift: u32,
    /// Real part of the second ₂F₁ parameter.
    b: f64,
    c: f64,
    /// ln of the σ-independent part of C.
    log_c: f64,
    /// Real part of the Γ argument in |Γ(g + iσ)|.
    g: f64,
}

fn radial_data(q: &QuantumNumbers, r: f64) -> Result<(RadialData, u32)> {
    Ok(match *q.raw() {
        Numbers::Coulomb2 { n, m } => {
            let a = m.unsigned_abs();
            let ne = n as f64 + 0.5;
            let log_c = a as f64 * 2f64.ln() - r.ln() - factorial(2 * a).ln()
                + 0.5 * ((factorial(n + a) / (PI * ne * factorial(n - a))).ln());
            (RadialData { a, shift: 0, b: a as f64 + 0.5, c: 2.0 * a as f64 + 1.0, log_c, g: a as f64 + 0.5 }, n)
        }
        Numbers::Coulomb3 { n, l, .. } => {
            let nf = n as f64;
            let log_c = (l + 1) as f64 * 2f64.ln() - factorial(2 * l + 1).ln()
                + 0.5 * (factorial(n + l) / (2.0 * PI * nf * factorial(n - l - 1))).ln()
                - 1.5 * r.ln();
            (RadialData { a: l, shift: 1, b: l as f64 + 1.0, c: 2.0 * l as f64 + 2.0, log_c, g: l as f64 + 1.0 }, n)
        }
        Numbers::Coulomb5 { n, lambda, .. } => {
            let ne = n as f64 + 2.0;
            let log_c = (lambda + 2) as f64 * 2f64.ln() - factorial(2 * lambda + 3).ln()
                + 0.5 * (factorial(n + lambda + 3) / (2.0 * PI * ne * factorial(n - lambda))).ln()
                - 2.5 * r.ln();
            let lf = lambda as f64;
            (RadialData { a: lambda, shift: 0, b: lf + 2.0, c: 2.0 * lf + 4.0, log_c, g: lf + 2.0 }, n)
        }
        _ => return Err(Error::QuantumNumbers(format!("{q} is not a Coulomb state"))),
    })
}

/// The Coulomb eigenfunction on the real sphere as a separable s-chart function.
///
/// The factor e^{πσ/2}|Γ(g+iσ)| of the normalization and the e^{−σχ} decay are combined
/// in log space, which keeps large σ (large R) finite.
pub fn coulomb_chart_function(q: &QuantumNumbers, params: &DualityParams) -> Result<ChartFunction> {
    if q.is_oscillator() {
        return Err(Error::SelectionRule(format!("{q} is an oscillator state; reduce it first")));
    }
    if q.dim() != params.dim || q.coulomb_n() != Some(params.n) {
        return Err(Error::QuantumNumbers(format!("{q} does not match level N = {} in {}D", params.n, params.dim)));
    }
    let (rd, n) = radial_data(q, params.r)?;
    let sigma = params.sigma;
    let ne = super::params::effective_n(params.dim, n);
    let log_gamma = complex_log_gamma(c64(rd.g, sigma))?.re;
    let log_const = rd.log_c + 0.5 * (ne * ne + sigma * sigma).ln() + log_gamma;
    let degree = n - rd.a - rd.shift;
    let RadialData { a, shift, b, c, .. } = rd;
    let radial: RadialFn = Arc::new(move |chi: ComplexValue| {
        let z = 1.0 - (2.0 * I * chi).exp();
        let f = hyp2f1_terminating(degree, c64(b, sigma), c64(c, 0.0), z).unwrap_or_default();
        let phase = (-I * chi * (n - a - shift) as f64).exp();
        let mag = (log_const + sigma * (PI / 2.0 - chi)).exp();
        mag * phase * chi.sin().powu(a) * f
    });
    let one = c64(1.0, 0.0);
    match *q.raw() {
        Numbers::Coulomb2 { m, .. } => {
            let ang = vec![AngularTerm::new(c64(1.0 / (2.0 * PI).sqrt(), 0.0), vec![AngularFactor::Azimuth { k: HalfInt::int(m) }])];
            ChartFunction::separable(Chart::S2s, params.r, one, radial, None, ang)
        }
        Numbers::Coulomb3 { l, m, .. } => {
            let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let ang = vec![AngularTerm::new(c64(sign, 0.0), vec![AngularFactor::SphericalHarmonic { l, m }])];
            ChartFunction::separable(Chart::S3s, params.r, one, radial, None, ang)
        }
        Numbers::Coulomb5 { lambda, l, m1, m2, .. } => {
            let (polar, ang) = coulomb5_angular(lambda, l, m1, m2)?;
            ChartFunction::separable(Chart::S5s, params.r, one, radial, Some(polar), ang)
        }
        _ => unreachable!(),
    }
}

/// Z_{Lλ}(θ) √((2L+1)/(2π²)) 𝒟^L_{m1,m2}(α, β, γ).
fn coulomb5_angular(lambda: u32, l: HalfInt, m1: HalfInt, m2: HalfInt) -> Result<(PolarFn, Vec<AngularTerm>)> {
    z_function(l, l, lambda, 0.5)?;
    let polar: PolarFn = Arc::new(move |th| c64(z_function(l, l, lambda, th).unwrap_or(0.0), 0.0));
    let coeff = ((l.twice() as f64 + 1.0) / (2.0 * PI * PI)).sqrt();
    Ok((polar, vec![AngularTerm::new(c64(coeff, 0.0), vec![AngularFactor::Wigner { l, m1, m2 }])]))
}

/// Ψ at the given real chart angles (χ ∈ [0, π]).
pub fn coulomb_wavefunction(dim: usize, q: &QuantumNumbers, params: &DualityParams, angles: &AngleChart) -> Result<ComplexValue> {
    if dim != params.dim {
        return Err(Error::DimensionMismatch { expected: params.dim, got: dim });
    }
    let chi = angles.chi;
    if chi.im != 0.0 || !(0.0..=PI).contains(&chi.re) {
        return Err(Error::Range(format!("chi = {chi} outside [0, pi]")));
    }
    Ok(coulomb_chart_function(q, params)?.value(angles))
}

/// Samples Ψ at each of the given angles.
pub fn sample_coulomb(dim: usize, q: &QuantumNumbers, params: &DualityParams, points: &[AngleChart]) -> Result<Vec<WaveSample>> {
    let f = coulomb_chart_function(q, params)?;
    if dim != params.dim {
        return Err(Error::DimensionMismatch { expected: params.dim, got: dim });
    }
    Ok(points.iter().map(|a| WaveSample { angles: *a, value: f.value(a) }).collect())
}

/// The R → ∞ Coulomb eigenfunction in two or five flat dimensions at radius r, with the
/// angular part taken from `angles` as on the sphere.
pub fn flat_limit_wavefunction(dim: usize, q: &QuantumNumbers, mu: f64, r: f64, angles: &AngleChart) -> Result<ComplexValue> {
    if r < 0.0 {
        return Err(Error::Range(format!("r = {r} is negative")));
    }
    match (dim, *q.raw()) {
        (2, Numbers::Coulomb2 { n, m }) => {
            let a = m.unsigned_abs();
            let ne = n as f64 + 0.5;
            let x = 2.0 * mu * r / ne;
            let f = hyp1f1_terminating(n - a, c64(2.0 * a as f64 + 1.0, 0.0), c64(x, 0.0))?;
            let radial = mu * 2f64.sqrt() / ne.powf(1.5) * (factorial(n + a) / factorial(n - a)).sqrt() * x.powi(a as i32)
                * (-x / 2.0).exp()
                / factorial(2 * a);
            Ok(radial * f * ComplexValue::from_polar(1.0, m as f64 * angles.phi) / (2.0 * PI).sqrt())
        }
        (5, Numbers::Coulomb5 { n, lambda, l, m1, m2 }) => {
            let ne = n as f64 + 2.0;
            let x = 2.0 * mu * r / ne;
            let f = hyp1f1_terminating(n - lambda, c64(2.0 * lambda as f64 + 4.0, 0.0), c64(x, 0.0))?;
            let radial = 4.0 * mu.powf(2.5) / ne.powi(3) * (factorial(n + lambda + 3) / factorial(n - lambda)).sqrt()
                * x.powi(lambda as i32)
                * (-x / 2.0).exp()
                / factorial(2 * lambda + 3);
            let (polar, ang) = coulomb5_angular(lambda, l, m1, m2)?;
            let angular: ComplexValue = ang.iter().map(|t| t.eval(angles)).sum();
            Ok(radial * f * polar(angles.theta) * angular)
        }
        (2 | 5, _) => Err(Error::QuantumNumbers(format!("{q} is not a {dim}D Coulomb state"))),
        _ => Err(Error::Range(format!("flat limit is available in 2 and 5 dimensions, not {dim}"))),
    }
}

/// Potential V = −(μ/R) cot χ.
pub fn coulomb_potential(mu: f64, r: f64, chi: ComplexValue) -> ComplexValue {
    -mu / r * chi.cos() / chi.sin()
}

/// Relative residual ‖(H − E)Ψ‖ / ‖EΨ‖ over the sample points, with H = −½Δ + V and Δ the
/// finite-difference Laplace–Beltrami operator of the sphere.
pub fn schrodinger_residual(q: &QuantumNumbers, params: &DualityParams, points: &[AngleChart], cfg: FdConfig) -> Result<f64> {
    let f = coulomb_chart_function(q, params)?;
    let chart = f.chart;
    let psi = |a: &AngleChart| f.value(a);
    let (mut num, mut den) = (0.0, 0.0);
    for a in points {
        let lap = laplace_beltrami_apply(chart, params.r, &psi, a, cfg)?;
        let v = psi(a);
        let h = -0.5 * lap + coulomb_potential(params.mu, params.r, a.chi) * v;
        num += (h - params.e * v).norm_sqr();
        den += (params.e * v).norm_sqr();
    }
    if den == 0.0 {
        return Err(Error::Degenerate("wavefunction vanishes at every sample point".into()));
    }
    Ok((num / den).sqrt())
}
