use super::chart_function::{AngularFactor, AngularTerm, Chart, ChartFunction, Shape, Slot};
use super::quadrature::{composite_gauss_legendre, gauss_legendre, QuadratureRule};
use super::volume::{s_volume_density, u_volume_density};
use crate::duality_maps::AngleChart;
use crate::special_functions::hyp2f1_terminating;
use crate::{c64, ComplexValue, Error, Result, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Constant in front of the u-side inner product, ⟨f, g⟩ = c ∫ f g^⋄ (ρ/u_last²) dv(u).
pub fn diamond_prefactor(dim: usize, d: f64) -> Result<ComplexValue> {
    match dim {
        2 => Ok(c64(-d * d / 2.0, 0.0)),
        3 => Ok(-I * d.powi(3) / (2.0 * PI)),
        5 => Ok(-I * d.powi(5) / (2.0 * PI * PI)),
        n => Err(Error::Range(format!("dimension {n} is not one of 2, 3, 5"))),
    }
}

/// c · (ρ/u_last²) · (χ-dependent part of dv(u)); the angular measure is handled separately.
/// Equals (D⁴/2) sin χ, (D⁷/4π) e^{iχ} sin²χ and (D¹³/2π²) e^{3iχ} sin⁴χ.
pub fn u_radial_weight(dim: usize, chi: ComplexValue, d: f64) -> Result<ComplexValue> {
    let e = |k: f64| (I * chi * k).exp();
    let ratio = (1.0 - e(2.0)) / e(2.0);
    let s = chi.sin();
    let radial = match dim {
        2 => -I * d * d / 2.0 * e(1.0),
        3 => -(d.powi(4)) / 4.0 * e(2.0) * s,
        5 => -0.5 * d.powi(8) * e(4.0) * s.powi(3),
        n => return Err(Error::Range(format!("dimension {n} is not one of 2, 3, 5"))),
    };
    Ok(diamond_prefactor(dim, d)? * ratio * radial)
}

/// R^{n} sin^{n−1} χ, the χ part of dv(s) on Sₙ.
fn s_radial_weight(dim: usize, chi: f64, r: f64) -> f64 {
    r.powi(dim as i32) * chi.sin().powi(dim as i32 - 1)
}

/// Slots of a chart with (first azimuth range, second azimuth range, β measure scale).
fn slots(chart: Chart) -> Vec<(Slot, f64, Option<f64>, f64)> {
    match chart {
        Chart::S2s => vec![(Slot::Phi, 2.0 * PI, None, 1.0)],
        Chart::S2Cu => vec![(Slot::Phi, 4.0 * PI, None, 1.0)],
        Chart::S3s => vec![(Slot::Euler, 2.0 * PI, None, 1.0)],
        Chart::S4Cu => vec![(Slot::Euler, 2.0 * PI, Some(4.0 * PI), 1.0)],
        Chart::S5s => vec![(Slot::Euler, 2.0 * PI, Some(4.0 * PI), 0.125)],
        Chart::S8Cu => vec![(Slot::Euler, 2.0 * PI, Some(4.0 * PI), 0.125), (Slot::EulerH, 2.0 * PI, Some(4.0 * PI), 0.125)],
    }
}

/// ∫₀ᴸ e^{ikx} dx, exact for any real k.
fn rectangle(k: f64, len: f64) -> ComplexValue {
    if k.abs() < 1e-12 {
        c64(len, 0.0)
    } else {
        ((I * k * len).exp() - 1.0) / (I * k)
    }
}

/// ∫ (term_f)(term_g)* over the angular part of the chart.
fn angular_overlap(chart: Chart, tf: &AngularTerm, tg: &AngularTerm, beta_rule: &QuadratureRule) -> ComplexValue {
    let mut total = tf.coeff * tg.coeff.conj();
    for (slot, len1, len2, scale) in slots(chart) {
        let pick = |t: &AngularTerm| -> Vec<AngularFactor> { t.factors.iter().filter(|f| f.slot() == slot).copied().collect() };
        let (ff, gg) = (pick(tf), pick(tg));
        let phase = |fs: &[AngularFactor]| fs.iter().fold((0.0, 0.0), |(p, q), f| (p + f.phases().0, q + f.phases().1));
        let ((pf, qf), (pg, qg)) = (phase(&ff), phase(&gg));
        let mut v = rectangle(pf - pg, len1);
        match len2 {
            Some(l2) => v *= rectangle(qf - qg, l2),
            None if (qf - qg).abs() > 1e-12 => return c64(0.0, 0.0),
            None => {}
        }
        if slot != Slot::Phi {
            let polar = beta_rule.integrate(|b| {
                let pf: f64 = ff.iter().map(|f| f.polar(b)).product();
                let pg: f64 = gg.iter().map(|f| f.polar(b)).product();
                pf * pg * b.sin()
            });
            v *= polar * scale;
        }
        total *= v;
        if total == c64(0.0, 0.0) {
            break;
        }
    }
    total
}

fn check_pair(f: &ChartFunction, g: &ChartFunction, order: usize) -> Result<()> {
    if order < 8 {
        return Err(Error::QuadratureOrder(order));
    }
    if f.chart != g.chart {
        return Err(Error::Domain(format!("functions live on different charts ({} and {})", f.chart, g.chart)));
    }
    if (f.radius - g.radius).abs() > 1e-12 * f.radius.abs().max(1.0) {
        return Err(Error::Domain(format!("functions have different radii ({} and {})", f.radius, g.radius)));
    }
    Ok(())
}

/// ⟨f, g⟩ on a u-chart: c ∫ f g^⋄ (ρ/u_last²) dv(u), with g^⋄ the ⋄-conjugate (χ ↦ −χ̄ and
/// complex conjugation of the shape; the prefactor is not conjugated). On s-charts the ordinary
/// Hermitian product ∫ f ḡ dv(s) is returned instead.
pub fn diamond_inner_product(f: &ChartFunction, g: &ChartFunction, order: usize) -> Result<ComplexValue> {
    check_pair(f, g, order)?;
    let chart = f.chart;
    let dim = chart.sphere_dim();
    let rule = gauss_legendre(order, 0.0, PI)?;
    let u_side = chart.is_u();
    let r = f.radius;
    let g_pref = if u_side { g.prefactor } else { g.prefactor.conj() };
    let pref = f.prefactor * g_pref;
    match (&f.shape, &g.shape) {
        (
            Shape::Separable { radial: rf, polar: pf, angular: af },
            Shape::Separable { radial: rg, polar: pg, angular: ag },
        ) => {
            let radial = rule.integrate_complex(|chi| {
                let x = c64(chi, 0.0);
                if u_side {
                    let w = u_radial_weight(dim, x, r).unwrap_or_default();
                    w * rf(x) * rg(-x.conj()).conj()
                } else {
                    s_radial_weight(dim, chi, r) * rf(x) * rg(x).conj()
                }
            });
            let polar = if dim == 5 {
                let one = |_: f64| c64(1.0, 0.0);
                rule.integrate_complex(|th| {
                    let a = pf.as_ref().map_or_else(|| one(th), |p| p(th));
                    let b = pg.as_ref().map_or_else(|| one(th), |p| p(th));
                    a * b.conj() * th.sin().powi(3)
                })
            } else {
                c64(1.0, 0.0)
            };
            let mut ang = c64(0.0, 0.0);
            for tf in af {
                for tg in ag {
                    ang += angular_overlap(chart, tf, tg, &rule);
                }
            }
            Ok(pref * radial * polar * ang)
        }
        _ => tensor_inner_product(f, g, order),
    }
}

/// Brute-force tensor Gauss–Legendre integration over every chart variable.
fn tensor_inner_product(f: &ChartFunction, g: &ChartFunction, order: usize) -> Result<ComplexValue> {
    let chart = f.chart;
    let vars = chart.vars();
    let rules: Vec<QuadratureRule> = vars
        .iter()
        .map(|&v| if v.is_bounded() { gauss_legendre(order, 0.0, PI) } else { gauss_legendre(order, 0.0, chart.period(v)) })
        .collect::<Result<_>>()?;
    let r = f.radius;
    let mut idx = vec![0usize; vars.len()];
    let mut total = c64(0.0, 0.0);
    loop {
        let mut a = AngleChart::default();
        let mut w = 1.0;
        for (k, &v) in vars.iter().enumerate() {
            let x = rules[k].nodes[idx[k]];
            a = v.shifted(&a, x);
            w *= rules[k].weights[idx[k]];
        }
        let val = if chart.is_u() {
            let dim = chart.sphere_dim();
            let ratio = {
                let e2 = (2.0 * I * a.chi).exp();
                (1.0 - e2) / e2
            };
            let dens = diamond_prefactor(dim, r)? * ratio * u_volume_density(chart, &a, r)?;
            dens * f.value(&a) * g.diamond_value(&a)
        } else {
            s_volume_density(chart, &a, r)? * f.value(&a) * g.value(&a).conj()
        };
        total += w * val;
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(total);
            }
            idx[k] += 1;
            if idx[k] < order {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// The Hermitian inner product ∫ f ḡ dv(s) on an s-chart.
pub fn sphere_inner_product(f: &ChartFunction, g: &ChartFunction, order: usize) -> Result<ComplexValue> {
    if f.chart.is_u() {
        return Err(Error::Domain(format!("{} is not an s-chart", f.chart)));
    }
    diamond_inner_product(f, g, order)
}

/// Result of an inner product refined by doubling the quadrature order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveValue {
    pub value: ComplexValue,
    pub order: usize,
    pub change: f64,
}

/// Doubles the order from `start` until successive values differ by less than `tol`
/// (relative), up to `max_order`.
pub fn diamond_inner_product_adaptive(
    f: &ChartFunction,
    g: &ChartFunction,
    start: usize,
    max_order: usize,
    tol: f64,
) -> Result<AdaptiveValue> {
    let mut order = start.max(8);
    let mut prev = diamond_inner_product(f, g, order)?;
    loop {
        let next_order = order * 2;
        if next_order > max_order {
            return Ok(AdaptiveValue { value: prev, order, change: f64::NAN });
        }
        let next = diamond_inner_product(f, g, next_order)?;
        let change = (next - prev).norm() / next.norm().max(1e-300);
        order = next_order;
        prev = next;
        if change < tol {
            return Ok(AdaptiveValue { value: prev, order, change });
        }
    }
}

/// Both sides of the contour identity for the 2D oscillator radial function
/// R(χ) = z^{|m|/2} e^{iχ(ν+½)} F(−n_r, n_r+ν+|m|+1; |m|+1; z), z = 1 − e^{2iχ}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourCheck {
    /// ∫₀^π R R^⋄ sin χ dχ.
    pub lhs: ComplexValue,
    /// [1 − e^{iπ(ν+ν̄)}] ∫₀^{i∞} R R^⋄ sin χ dχ.
    pub rhs: ComplexValue,
    /// The same right-hand side written on the hemisphere, [1 − e^{iπ(ν+ν̄)}](−½)∫₀^{π/2}|R|² sin ϑ tan²ϑ dϑ.
    pub rhs_vartheta: ComplexValue,
    pub bracket: ComplexValue,
    /// Truncation point of the imaginary axis, where the integrand has decayed below 1e-16.
    pub t_max: f64,
}

impl ContourCheck {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).norm() / self.lhs.norm().max(1e-300)
    }

    pub fn vartheta_residual(&self) -> f64 {
        (self.rhs - self.rhs_vartheta).norm() / self.rhs.norm().max(1e-300)
    }
}

/// Bare 2D oscillator radial function on the complex χ-plane.
pub fn oscillator_radial_2d(n_r: u32, m: i32, nu: ComplexValue, chi: ComplexValue) -> Result<ComplexValue> {
    let am = m.unsigned_abs() as f64;
    let z = 1.0 - (2.0 * I * chi).exp();
    let f = hyp2f1_terminating(n_r, n_r as f64 + nu + am + 1.0, c64(am + 1.0, 0.0), z)?;
    Ok(z.sqrt().powf(am) * (I * chi * (nu + 0.5)).exp() * f)
}

/// Checks that the real-axis integral equals the imaginary-axis integral times the
/// monodromy bracket. Requires Re ν > 0 so the imaginary-axis integrand decays like e^{−2t Re ν}.
pub fn contour_identity_check(n_r: u32, m: i32, nu: ComplexValue, order: usize) -> Result<ContourCheck> {
    if order < 8 {
        return Err(Error::QuadratureOrder(order));
    }
    if !(nu.re > 0.0) {
        return Err(Error::NonDecaying(format!("Re nu = {} must be positive", nu.re)));
    }
    let r = |chi: ComplexValue| oscillator_radial_2d(n_r, m, nu, chi);
    let rule = gauss_legendre(order, 0.0, PI)?;
    let mut lhs = c64(0.0, 0.0);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let c = c64(x, 0.0);
        lhs += w * r(c)? * r(-c.conj())?.conj() * x.sin();
    }
    // along χ = it: R^⋄(it) = conj R(it), sin(it) dχ = i sinh t · i dt
    let t_max = (16.0 * 10f64.ln() + 2.0 * (n_r as f64 + 1.0)) / (2.0 * nu.re) + 2.0;
    let panels = (t_max / 2.0).ceil() as usize;
    let trule = composite_gauss_legendre(order, panels, 0.0, t_max)?;
    let mut imag = c64(0.0, 0.0);
    for (&t, &w) in trule.nodes.iter().zip(&trule.weights) {
        let v = r(c64(0.0, t))?;
        imag += w * (-(v.norm_sqr()) * t.sinh());
    }
    let bracket = 1.0 - (I * PI * (nu + nu.conj())).exp();
    // cos ϑ = e^{−t}: the same integrand on ϑ ∈ (0, π/2)
    let vrule = gauss_legendre(order, 0.0, PI / 2.0)?;
    let mut hemi = 0.0;
    for (&th, &w) in vrule.nodes.iter().zip(&vrule.weights) {
        let t = -(th.cos()).ln();
        let v = r(c64(0.0, t))?;
        hemi += w * v.norm_sqr() * th.sin() * th.tan().powi(2);
    }
    Ok(ContourCheck { lhs, rhs: bracket * imag, rhs_vartheta: bracket * (-0.5) * hemi, bracket, t_max })
}
