use super::numbers::{Numbers, QuantumNumbers};
use crate::duality_maps::AngleChart;
use crate::geometry_quadrature::{AngularFactor, AngularTerm, Chart, ChartFunction, PolarFn, RadialFn};
use crate::special_functions::{clebsch_gordan, factorial, hyp2f1_terminating, jacobi_poly, pochhammer, HalfInt};
use crate::{c64, ComplexValue, Error, Result, I};
use std::f64::consts::PI;
use std::sync::Arc;

/// 1 − e^{2iπν}, rejecting integer ν where the constant is singular.
fn monodromy(nu: ComplexValue) -> Result<ComplexValue> {
    let b = 1.0 - (2.0 * PI * I * nu).exp();
    if b.norm() < 1e-14 {
        return Err(Error::Parameter(format!("nu = {nu} makes 1 - exp(2 i pi nu) vanish")));
    }
    Ok(b)
}

/// Normalization constant of the oscillator state under the ⋄ inner product.
pub fn oscillator_constant(q: &QuantumNumbers, nu: ComplexValue, d: f64) -> Result<ComplexValue> {
    let mono = monodromy(nu)?;
    match *q.raw() {
        Numbers::Oscillator2 { n_r, m } => {
            let am = m.unsigned_abs();
            let nr = n_r as f64;
            let inner = -nu * (nu + 2.0 * nr + am as f64 + 1.0) * factorial(n_r + am) * pochhammer(nu + nr + 1.0, am)
                / (d.powi(4) * mono * (2.0 * nr + am as f64 + 1.0) * factorial(n_r));
            Ok(2.0 / factorial(am) * inner.sqrt())
        }
        Numbers::Oscillator3 { n_r, l, .. } => {
            let l2 = l.twice() as u32;
            let (nr, lf) = (n_r as f64, l.value());
            let f2l1 = factorial(l2 + 1);
            let inner = 2.0 * I * nu * (nu + 2.0 * lf + 2.0 * nr + 2.0) * factorial(l2 + n_r + 1) * pochhammer(nu + nr + 1.0, l2 + 1)
                / (mono * (lf + nr + 1.0) * f2l1 * f2l1 * factorial(n_r));
            Ok(PI.sqrt() / d.powf(3.5) * inner.sqrt())
        }
        Numbers::Oscillator5 { n_r, lambda, .. } => {
            let (nr, lam) = (n_r as f64, lambda as f64);
            let inner = -I * nu * (nu + 2.0 * lam + 2.0 * nr + 4.0) * pochhammer(nu + nr + 1.0, 2 * lambda + 3) * factorial(n_r + 2 * lambda + 3)
                / (d.powi(13) * mono * (lam + nr + 2.0) * factorial(n_r));
            Ok(4.0 * 2f64.sqrt() * PI / factorial(2 * lambda + 3) * inner.sqrt())
        }
        _ => Err(Error::QuantumNumbers(format!("{q} is not an oscillator state"))),
    }
}

/// Z^{JL}_λ(θ), orthonormal under ∫₀^π Z² sin³θ dθ.
pub fn z_function(j: HalfInt, l: HalfInt, lambda: u32, theta: f64) -> Result<f64> {
    let n_theta2 = 2 * lambda as i32 - l.twice() - j.twice();
    if n_theta2 < 0 || n_theta2 % 2 != 0 {
        return Err(Error::QuantumNumbers(format!("lambda - L - J must be a non-negative integer (lambda = {lambda}, L = {l}, J = {j})")));
    }
    let nt = (n_theta2 / 2) as u32;
    let (jt, lt) = (j.twice(), l.twice());
    // (λ+J+L+2)!, (λ−L+J+1)!, (λ−J+L+1)! have integer arguments since J+L is an integer
    let lam2 = 2 * lambda as i32;
    let fa = |twice: i32| factorial((twice / 2) as u32);
    let norm = ((2.0 * lambda as f64 + 3.0) * fa(lam2 + jt + lt + 4) * factorial(nt)
        / (2f64.powi(jt + lt + 3) * fa(lam2 - lt + jt + 2) * fa(lam2 - jt + lt + 2)))
        .sqrt();
    let c = theta.cos();
    let p = jacobi_poly(nt, c64(lt as f64 + 1.0, 0.0), c64(jt as f64 + 1.0, 0.0), c).re;
    Ok(norm * (1.0 - c).powf(l.value()) * (1.0 + c).powf(j.value()) * p)
}

/// z^{a} for z = 1 − e^{2iχ}, taken as (√z)^{2a} so half-integer powers follow sin ϑ = √z.
fn zpow(z: ComplexValue, twice_a: u32) -> ComplexValue {
    z.sqrt().powu(twice_a)
}

/// The oscillator eigenfunction as a separable function on the u-chart.
pub fn oscillator_chart_function(q: &QuantumNumbers, nu: ComplexValue, d: f64) -> Result<ChartFunction> {
    let c = oscillator_constant(q, nu, d)?;
    match *q.raw() {
        Numbers::Oscillator2 { n_r, m } => {
            let am = m.unsigned_abs();
            let radial: RadialFn = Arc::new(move |chi: ComplexValue| {
                let z = 1.0 - (2.0 * I * chi).exp();
                let f = hyp2f1_terminating(n_r, n_r as f64 + nu + am as f64 + 1.0, c64(am as f64 + 1.0, 0.0), z).unwrap_or_default();
                zpow(z, am) * (I * chi * (nu + 0.5)).exp() * f
            });
            let ang = vec![AngularTerm::new(c64(1.0 / (2.0 * PI).sqrt(), 0.0), vec![AngularFactor::Azimuth { k: HalfInt::from_twice(m) }])];
            ChartFunction::separable(Chart::S2Cu, d, c, radial, None, ang)
        }
        Numbers::Oscillator3 { n_r, l, m1, m2 } => {
            let l2 = l.twice() as u32;
            let radial: RadialFn = Arc::new(move |chi: ComplexValue| {
                let z = 1.0 - (2.0 * I * chi).exp();
                let f = hyp2f1_terminating(n_r, n_r as f64 + l2 as f64 + nu + 2.0, c64(l2 as f64 + 2.0, 0.0), z).unwrap_or_default();
                zpow(z, l2) * (I * chi * (nu + 0.5)).exp() * f
            });
            let coeff = ((l2 as f64 + 1.0) / (2.0 * PI * PI)).sqrt();
            let ang = vec![AngularTerm::new(c64(coeff, 0.0), vec![AngularFactor::Wigner { l, m1, m2 }])];
            ChartFunction::separable(Chart::S4Cu, d, c, radial, None, ang)
        }
        Numbers::Oscillator5 { n_r, lambda, l, j, t, mj, m_free, t_free } => {
            let radial: RadialFn = Arc::new(move |chi: ComplexValue| {
                let z = 1.0 - (2.0 * I * chi).exp();
                let f = hyp2f1_terminating(n_r, n_r as f64 + nu + 2.0 * lambda as f64 + 4.0, c64(2.0 * lambda as f64 + 4.0, 0.0), z)
                    .unwrap_or_default();
                zpow(z, 2 * lambda) * (I * chi * (nu + 0.5)).exp() * f
            });
            z_function(j, l, lambda, 0.5)?;
            let polar: PolarFn = Arc::new(move |th| c64(z_function(j, l, lambda, th).unwrap_or(0.0), 0.0));
            let ang = coupled_terms(l, t, j, mj, m_free, t_free);
            ChartFunction::separable(Chart::S8Cu, d, c, radial, Some(polar), ang)
        }
        _ => Err(Error::QuantumNumbers(format!("{q} is not an oscillator state"))),
    }
}

/// G = √((2L+1)(2T+1))/(2π²) Σ ⟨L m; T −t' | J M⟩ 𝒟^L_{m,m_free} 𝒟^T_{t_free,t'}.
fn coupled_terms(l: HalfInt, t: HalfInt, j: HalfInt, mj: HalfInt, m_free: HalfInt, t_free: HalfInt) -> Vec<AngularTerm> {
    let scale = ((l.twice() as f64 + 1.0) * (t.twice() as f64 + 1.0)).sqrt() / (2.0 * PI * PI);
    let mut out = Vec::new();
    let mut m = -l;
    while m.twice() <= l.twice() {
        let tp = m - mj;
        if tp.abs().twice() <= t.twice() {
            let cg = clebsch_gordan(l, m, t, -tp, j, mj);
            if cg != 0.0 {
                out.push(AngularTerm::new(
                    c64(scale * cg, 0.0),
                    vec![
                        AngularFactor::Wigner { l, m1: m, m2: m_free },
                        AngularFactor::WignerH { l: t, m1: t_free, m2: tp },
                    ],
                ));
            }
        }
        m = m + HalfInt::int(1);
    }
    out
}

/// Oscillator eigenfunction at a point of the real hemisphere picture: ϑ ∈ [0, π/2) is read
/// from `angles.vartheta` and mapped to χ = −i ln cos ϑ; the other chart angles are used as given.
pub fn oscillator_wavefunction(dim: usize, q: &QuantumNumbers, nu: ComplexValue, angles: &AngleChart, d: f64) -> Result<ComplexValue> {
    if q.dim() != dim || !q.is_oscillator() {
        return Err(Error::QuantumNumbers(format!("{q} is not a {dim}D oscillator state")));
    }
    let th = angles.vartheta;
    if !(0.0..=PI / 2.0).contains(&th) {
        return Err(Error::Range(format!("vartheta = {th} outside [0, pi/2]")));
    }
    let f = oscillator_chart_function(q, nu, d)?;
    if th == PI / 2.0 {
        return Ok(c64(0.0, 0.0));
    }
    let mut a = *angles;
    a.chi = c64(0.0, -th.cos().ln());
    Ok(f.value(&a))
}
