use super::chart_function::{Chart, Var};
use crate::duality_maps::{chart_jacobian, parametrize_generic, AngleChart};
use crate::{c64, ComplexValue, Error, Result, I};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Order of the central finite-difference stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FdOrder {
    Second,
    Fourth,
}

impl FdOrder {
    pub fn from_int(n: u32) -> Result<Self> {
        match n {
            2 => Ok(FdOrder::Second),
            4 => Ok(FdOrder::Fourth),
            n => Err(Error::Range(format!("finite-difference order must be 2 or 4, got {n}"))),
        }
    }

    pub fn nominal(self) -> f64 {
        match self {
            FdOrder::Second => 2.0,
            FdOrder::Fourth => 4.0,
        }
    }

    /// Offsets (in units of h) and weights of the first-derivative stencil.
    fn first(self) -> &'static [(f64, f64)] {
        match self {
            FdOrder::Second => &[(1.0, 0.5), (-1.0, -0.5)],
            FdOrder::Fourth => &[(2.0, -1.0 / 12.0), (1.0, 8.0 / 12.0), (-1.0, -8.0 / 12.0), (-2.0, 1.0 / 12.0)],
        }
    }

    /// Offsets and weights of the second-derivative stencil.
    fn second(self) -> &'static [(f64, f64)] {
        match self {
            FdOrder::Second => &[(1.0, 1.0), (0.0, -2.0), (-1.0, 1.0)],
            FdOrder::Fourth => &[(2.0, -1.0 / 12.0), (1.0, 16.0 / 12.0), (0.0, -30.0 / 12.0), (-1.0, 16.0 / 12.0), (-2.0, -1.0 / 12.0)],
        }
    }

    fn reach(self) -> f64 {
        match self {
            FdOrder::Second => 1.0,
            FdOrder::Fourth => 2.0,
        }
    }
}

/// Step and order of a finite-difference evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdConfig {
    pub h: f64,
    pub order: FdOrder,
}

impl FdConfig {
    pub fn new(h: f64, order: FdOrder) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Range(format!("step must be positive, got {h}")));
        }
        Ok(Self { h, order })
    }

    pub fn halved(self) -> Self {
        Self { h: self.h / 2.0, order: self.order }
    }
}

fn check_stencil(vars: &[Var], a: &AngleChart, cfg: FdConfig, depth: f64) -> Result<()> {
    let reach = cfg.order.reach() * cfg.h * depth;
    for &v in vars {
        if v.is_bounded() {
            let x = v.get(a);
            if x - reach <= 0.0 || x + reach >= PI {
                return Err(Error::Boundary(format!("{v:?} = {x} with stencil reach {reach:e} leaves (0, pi)")));
            }
        }
    }
    Ok(())
}

fn d1<F: Fn(&AngleChart) -> ComplexValue>(f: &F, a: &AngleChart, v: Var, cfg: FdConfig) -> ComplexValue {
    cfg.order.first().iter().map(|&(o, w)| w * f(&v.shifted(a, o * cfg.h))).sum::<ComplexValue>() / cfg.h
}

fn d2<F: Fn(&AngleChart) -> ComplexValue>(f: &F, a: &AngleChart, v: Var, cfg: FdConfig) -> ComplexValue {
    cfg.order.second().iter().map(|&(o, w)| w * f(&v.shifted(a, o * cfg.h))).sum::<ComplexValue>() / (cfg.h * cfg.h)
}

/// Mixed derivative ∂ᵤ∂ᵥ f by the tensor product of first-derivative stencils.
fn dmix<F: Fn(&AngleChart) -> ComplexValue>(f: &F, a: &AngleChart, u: Var, v: Var, cfg: FdConfig) -> ComplexValue {
    let st = cfg.order.first();
    let mut acc = c64(0.0, 0.0);
    for &(ou, wu) in st {
        let au = u.shifted(a, ou * cfg.h);
        for &(ov, wv) in st {
            acc += wu * wv * f(&v.shifted(&au, ov * cfg.h));
        }
    }
    acc / (cfg.h * cfg.h)
}

/// The Euler-angle bracket ∂β² + cot β ∂β + (∂γ² − 2cos β ∂γ∂α + ∂α²)/sin²β, which has
/// eigenvalue −l(l+1) on Wigner functions. Without γ it reduces to the 2-sphere Laplacian.
fn euler_bracket<F: Fn(&AngleChart) -> ComplexValue>(
    f: &F,
    a: &AngleChart,
    (al, be, ga): (Var, Var, Option<Var>),
    cfg: FdConfig,
) -> ComplexValue {
    let b = be.get(a);
    let (sb, cb) = (b.sin(), b.cos());
    let mut azimuthal = d2(f, a, al, cfg);
    if let Some(g) = ga {
        azimuthal += d2(f, a, g, cfg) - 2.0 * cb * dmix(f, a, g, al, cfg);
    }
    d2(f, a, be, cfg) + (cb / sb) * d1(f, a, be, cfg) + azimuthal / (sb * sb)
}

/// L·T applied to f. L acts on (α, β, γ) through L₁ = i(cos α cot β ∂α + sin α ∂β −
/// cos α/sin β ∂γ), L₂ = i(sin α cot β ∂α − cos α ∂β − sin α/sin β ∂γ), L₃ = −i∂α.
/// On this chart the fibre generators that couple to L are the γ_H-frame ones:
/// T₁ = i(cos γ_H/sin β_H ∂α_H − sin γ_H ∂β_H − cos γ_H cot β_H ∂γ_H),
/// T₂ = −i(sin γ_H/sin β_H ∂α_H + cos γ_H ∂β_H − sin γ_H cot β_H ∂γ_H), T₃ = i∂γ_H.
/// Their Casimir coincides with that of the α_H-frame generators.
fn l_dot_t<F: Fn(&AngleChart) -> ComplexValue>(f: &F, a: &AngleChart, cfg: FdConfig) -> ComplexValue {
    // each component is i·(row)·(∂α, ∂β, ∂γ)
    let (sa, ca, sb, cb) = (a.alpha.sin(), a.alpha.cos(), a.beta.sin(), a.beta.cos());
    let l = [[ca * cb / sb, sa, -ca / sb], [sa * cb / sb, -ca, -sa / sb], [-1.0, 0.0, 0.0]];
    let (sg, cg, sbh, cbh) = (a.gamma_h.sin(), a.gamma_h.cos(), a.beta_h.sin(), a.beta_h.cos());
    let t = [[cg / sbh, -sg, -cg * cbh / sbh], [-sg / sbh, -cg, sg * cbh / sbh], [0.0, 0.0, 1.0]];
    let lv = [Var::Alpha, Var::Beta, Var::Gamma];
    let tv = [Var::AlphaH, Var::BetaH, Var::GammaH];
    let mut acc = c64(0.0, 0.0);
    for k in 0..3 {
        for (p, &u) in lv.iter().enumerate() {
            for (q, &v) in tv.iter().enumerate() {
                let c = l[k][p] * t[k][q];
                if c != 0.0 {
                    acc += c * dmix(f, a, u, v, cfg);
                }
            }
        }
    }
    // i·i = −1
    -acc
}

/// T² applied to f on the H angles (Casimir, eigenvalue t(t+1)).
fn t_squared<F: Fn(&AngleChart) -> ComplexValue>(f: &F, a: &AngleChart, cfg: FdConfig) -> ComplexValue {
    -euler_bracket(f, a, (Var::AlphaH, Var::BetaH, Some(Var::GammaH)), cfg)
}

/// Applies the chart Laplace–Beltrami operator of `chart` to f at `at` by central
/// differences. `radius` is R on s-charts and D on u-charts.
pub fn laplace_beltrami_apply<F>(chart: Chart, radius: f64, f: &F, at: &AngleChart, cfg: FdConfig) -> Result<ComplexValue>
where
    F: Fn(&AngleChart) -> ComplexValue,
{
    check_stencil(chart.vars(), at, cfg, 1.0)?;
    let chi = at.chi;
    let (s, c) = (chi.sin(), chi.cos());
    let cot = c / s;
    let fc = d1(f, at, Var::Chi, cfg);
    let fcc = d2(f, at, Var::Chi, cfg);
    let euler = (Var::Alpha, Var::Beta, Some(Var::Gamma));
    match chart {
        Chart::S2s => {
            let inner = fcc + cot * fc + d2(f, at, Var::Phi, cfg) / (s * s);
            Ok(inner / (radius * radius))
        }
        Chart::S2Cu => {
            let inner = fcc + cot * fc + d2(f, at, Var::Phi, cfg) / (s * s);
            Ok(u_factor(chi, radius) * inner)
        }
        Chart::S3s => {
            let ang = euler_bracket(f, at, (Var::Alpha, Var::Beta, None), cfg);
            Ok((fcc + 2.0 * cot * fc + ang / (s * s)) / (radius * radius))
        }
        Chart::S4Cu => {
            let ang = euler_bracket(f, at, euler, cfg);
            Ok(u_factor(chi, radius) * (fcc + (I + 2.0 * cot) * fc + ang / (s * s)))
        }
        Chart::S5s => {
            let th = at.theta;
            let polar = d2(f, at, Var::Theta, cfg) + 3.0 * (th.cos() / th.sin()) * d1(f, at, Var::Theta, cfg);
            let l2 = -euler_bracket(f, at, euler, cfg);
            let ang = polar - 4.0 * l2 / th.sin().powi(2);
            Ok((fcc + 4.0 * cot * fc + ang / (s * s)) / (radius * radius))
        }
        Chart::S8Cu => {
            let th = at.theta;
            let sh2 = (th / 2.0).sin().powi(2);
            let polar = d2(f, at, Var::Theta, cfg) + 3.0 * (th.cos() / th.sin()) * d1(f, at, Var::Theta, cfg);
            let l2 = -euler_bracket(f, at, euler, cfg);
            let lt = l_dot_t(f, at, cfg);
            let t2 = t_squared(f, at, cfg);
            let ang = polar - 4.0 * (l2 + 2.0 * sh2 * lt + sh2 * t2) / th.sin().powi(2);
            Ok(u_factor(chi, radius) * (fcc + (3.0 * I + 4.0 * cot) * fc + ang / (s * s)))
        }
    }
}

/// (2i/D²) sin χ e^{−iχ}, the conformal factor of the u-side chart operators.
fn u_factor(chi: ComplexValue, d: f64) -> ComplexValue {
    2.0 * I / (d * d) * chi.sin() * (-I * chi).exp()
}

/// Laplace–Beltrami operator of the complex metric induced on the u-chart,
/// (1/√g) ∂ₐ(√g gᵃᵇ ∂ᵦ f), with g the bilinear (not Hermitian) Gram matrix of the
/// parametrization. The branch of √g is followed continuously from the centre point.
pub fn metric_laplacian<F>(chart: Chart, d: f64, f: &F, at: &AngleChart, cfg: FdConfig) -> Result<ComplexValue>
where
    F: Fn(&AngleChart) -> ComplexValue,
{
    if !chart.is_u() {
        return Err(Error::Domain(format!("metric_laplacian expects a u-chart, got {chart}")));
    }
    let vars = chart.vars();
    check_stencil(vars, at, cfg, 2.0)?;
    let kind = chart.map_kind();
    let n = vars.len();
    let gram = |a: &AngleChart| -> Result<(ComplexValue, DMatrix<ComplexValue>)> {
        let x = a.coords(kind)?;
        let rows = chart_jacobian(kind, &x, d);
        let g = DMatrix::from_fn(n, n, |i, j| rows[i].iter().zip(&rows[j]).map(|(p, q)| p * q).sum());
        let det = g.clone().determinant();
        let inv = g.try_inverse().ok_or_else(|| Error::Degenerate("singular induced metric".into()))?;
        Ok((det, inv))
    };
    let (det0, _) = gram(at)?;
    let root0 = det0.sqrt();
    let root = |det: ComplexValue| {
        let r = det.sqrt();
        if (r - root0).norm() <= (r + root0).norm() {
            r
        } else {
            -r
        }
    };
    // flux component a at point p: √g Σ_b g^{ab} ∂_b f
    let flux = |p: &AngleChart, comp: usize| -> Result<ComplexValue> {
        let (det, inv) = gram(p)?;
        let mut acc = c64(0.0, 0.0);
        for (b, &vb) in vars.iter().enumerate() {
            let gab = inv[(comp, b)];
            if gab.norm() > 0.0 {
                acc += gab * d1(f, p, vb, cfg);
            }
        }
        Ok(root(det) * acc)
    };
    let mut div = c64(0.0, 0.0);
    for (a_idx, &va) in vars.iter().enumerate() {
        let mut s = c64(0.0, 0.0);
        for &(o, w) in cfg.order.first() {
            s += w * flux(&va.shifted(at, o * cfg.h), a_idx)?;
        }
        div += s / cfg.h;
    }
    Ok(div / root0)
}

/// The three printed operator relations between the s-sphere Laplacian and the u-side one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LaplacianPair {
    Lb22,
    Lap3,
    Lap5,
}

impl LaplacianPair {
    pub fn dim(self) -> usize {
        match self {
            LaplacianPair::Lb22 => 2,
            LaplacianPair::Lap3 => 3,
            LaplacianPair::Lap5 => 5,
        }
    }

    pub fn for_dim(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(LaplacianPair::Lb22),
            3 => Ok(LaplacianPair::Lap3),
            5 => Ok(LaplacianPair::Lap5),
            d => Err(Error::Range(format!("dimension {d} is not one of 2, 3, 5"))),
        }
    }
}

/// Which u-side operator enters the right-hand side of a Laplacian relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum USide {
    /// The Laplace–Beltrami operator of the induced complex metric.
    Metric,
    /// The closed-form chart operator.
    Chart,
}

/// Both sides of a Laplacian relation at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplacianRelation {
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
}

impl LaplacianRelation {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

/// Evaluates Δ_s f on the s-chart and the right-hand side built from the u-side operator
/// acting on the conjugated function (u_last^{−k} f with k = 0, ½, 3/2 in dimension 2, 3, 5).
/// f is read on the shared angles (χ and the s-chart angles); D is the u-radius, R = D².
pub fn laplacian_relation<F>(pair: LaplacianPair, f: &F, at: &AngleChart, d: f64, cfg: FdConfig, u_side: USide) -> Result<LaplacianRelation>
where
    F: Fn(&AngleChart) -> ComplexValue + Sync,
{
    let dim = pair.dim();
    let (s_chart, u_chart) = (Chart::s_chart(dim)?, Chart::u_chart(dim)?);
    let kind = u_chart.map_kind();
    let r = d * d;
    let lhs = laplace_beltrami_apply(s_chart, r, f, at, cfg)?;
    // u_last = D e^{iχ}; its powers are taken on this branch
    let k = match pair {
        LaplacianPair::Lb22 => 0.0,
        LaplacianPair::Lap3 => 0.5,
        LaplacianPair::Lap5 => 1.5,
    };
    let upow = |a: &AngleChart, p: f64| d.powf(p) * (I * a.chi * p).exp();
    let g = |a: &AngleChart| upow(a, -k) * f(a);
    let delta_u = match u_side {
        USide::Metric => metric_laplacian(u_chart, d, &g, at, cfg)?,
        USide::Chart => laplace_beltrami_apply(u_chart, d, &g, at, cfg)?,
    };
    let u = parametrize_generic(kind, &at.coords(kind)?, d)?;
    let last = u[u.len() - 1];
    let rho: ComplexValue = u[..u.len() - 1].iter().map(|v| v * v).sum();
    let ratio = rho / (last * last);
    let g0 = g(at);
    let d2 = d * d;
    let rhs = match pair {
        LaplacianPair::Lb22 => -(1.0 / ratio) * delta_u / d2,
        LaplacianPair::Lap3 => -upow(at, 0.5) * (1.0 / ratio) * (delta_u / d2 - (2.0 + 0.75 * ratio) * g0 / (d2 * d2)),
        LaplacianPair::Lap5 => -upow(at, 1.5) / d2 * (1.0 / ratio) * (delta_u - (12.0 + 3.75 * ratio) * g0 / d2),
    };
    Ok(LaplacianRelation { lhs, rhs })
}

/// |LHS − RHS| of a Laplacian relation with the metric u-side operator.
pub fn laplacian_relation_residual<F>(pair: LaplacianPair, f: &F, at: &AngleChart, d: f64, cfg: FdConfig) -> Result<f64>
where
    F: Fn(&AngleChart) -> ComplexValue + Sync,
{
    Ok(laplacian_relation(pair, f, at, d, cfg, USide::Metric)?.residual())
}

/// Observed order log₂(e(h)/e(h/2)) from two error magnitudes.
pub fn observed_order(err_h: f64, err_half: f64) -> f64 {
    (err_h / err_half).log2()
}
