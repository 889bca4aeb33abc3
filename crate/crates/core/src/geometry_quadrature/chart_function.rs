use crate::duality_maps::{AngleChart, MapKind};
use crate::special_functions::{sph_harm, wigner_D, wigner_d, HalfInt};
use crate::{c64, ComplexValue, Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Coordinate charts on which functions are evaluated and integrated.
///
/// The s-charts are the real spheres S₂, S₃, S₅ of radius R; the u-charts are the complex
/// spheres S₂ᶜ, S₄ᶜ, S₈ᶜ of radius D, parametrized by the angles of the matching map kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    /// (χ, φ), φ ∈ [0, 2π)
    S2s,
    /// (χ, φ), φ ∈ [0, 4π)
    S2Cu,
    /// (χ, β, α)
    S3s,
    /// (χ, β, α, γ), γ ∈ [0, 4π)
    S4Cu,
    /// (χ, θ, α, β, γ)
    S5s,
    /// (χ, θ, α, β, γ, α_H, β_H, γ_H)
    S8Cu,
}

/// One chart variable, used to shift an [`AngleChart`] on finite-difference stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Chi,
    Theta,
    Phi,
    Alpha,
    Beta,
    Gamma,
    AlphaH,
    BetaH,
    GammaH,
}

impl Var {
    /// True for polar variables restricted to (0, π).
    pub fn is_bounded(self) -> bool {
        matches!(self, Var::Chi | Var::Theta | Var::Beta | Var::BetaH)
    }

    pub fn get(self, a: &AngleChart) -> f64 {
        match self {
            Var::Chi => a.chi.re,
            Var::Theta => a.theta,
            Var::Phi => a.phi,
            Var::Alpha => a.alpha,
            Var::Beta => a.beta,
            Var::Gamma => a.gamma,
            Var::AlphaH => a.alpha_h,
            Var::BetaH => a.beta_h,
            Var::GammaH => a.gamma_h,
        }
    }

    /// A copy of `a` with this variable moved by `h` (the real part, for χ).
    pub fn shifted(self, a: &AngleChart, h: f64) -> AngleChart {
        let mut b = *a;
        match self {
            Var::Chi => b.chi += h,
            Var::Theta => b.theta += h,
            Var::Phi => b.phi += h,
            Var::Alpha => b.alpha += h,
            Var::Beta => b.beta += h,
            Var::Gamma => b.gamma += h,
            Var::AlphaH => b.alpha_h += h,
            Var::BetaH => b.beta_h += h,
            Var::GammaH => b.gamma_h += h,
        }
        b
    }
}

impl Chart {
    pub fn sphere_dim(self) -> usize {
        match self {
            Chart::S2s | Chart::S2Cu => 2,
            Chart::S3s | Chart::S4Cu => 3,
            Chart::S5s | Chart::S8Cu => 5,
        }
    }

    pub fn is_u(self) -> bool {
        matches!(self, Chart::S2Cu | Chart::S4Cu | Chart::S8Cu)
    }

    pub fn s_chart(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(Chart::S2s),
            3 => Ok(Chart::S3s),
            5 => Ok(Chart::S5s),
            d => Err(Error::Range(format!("dimension {d} is not one of 2, 3, 5"))),
        }
    }

    pub fn u_chart(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(Chart::S2Cu),
            3 => Ok(Chart::S4Cu),
            5 => Ok(Chart::S8Cu),
            d => Err(Error::Range(format!("dimension {d} is not one of 2, 3, 5"))),
        }
    }

    pub fn map_kind(self) -> MapKind {
        match self.sphere_dim() {
            2 => MapKind::Lc2Sphere,
            3 => MapKind::Ks3Sphere,
            _ => MapKind::Hurwitz5Sphere,
        }
    }

    /// Chart variables in canonical order.
    pub fn vars(self) -> &'static [Var] {
        use Var::*;
        match self {
            Chart::S2s | Chart::S2Cu => &[Chi, Phi],
            Chart::S3s => &[Chi, Beta, Alpha],
            Chart::S4Cu => &[Chi, Beta, Alpha, Gamma],
            Chart::S5s => &[Chi, Theta, Alpha, Beta, Gamma],
            Chart::S8Cu => &[Chi, Theta, Alpha, Beta, Gamma, AlphaH, BetaH, GammaH],
        }
    }

    /// Period of an azimuthal variable in this chart.
    pub fn period(self, v: Var) -> f64 {
        match (self, v) {
            (Chart::S2Cu, Var::Phi) | (_, Var::Gamma) | (_, Var::GammaH) => 4.0 * PI,
            _ => 2.0 * PI,
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Chart::S2s => "S2",
            Chart::S2Cu => "S2C",
            Chart::S3s => "S3",
            Chart::S4Cu => "S4C",
            Chart::S5s => "S5",
            Chart::S8Cu => "S8C",
        };
        f.write_str(s)
    }
}

/// An angular factor of a separable chart function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngularFactor {
    /// e^{ikφ}; k may be a half-integer on the u-side 2-sphere.
    Azimuth { k: HalfInt },
    /// Y_lm(β, α).
    SphericalHarmonic { l: u32, m: i32 },
    /// 𝒟^l_{m1,m2}(α, β, γ).
    Wigner { l: HalfInt, m1: HalfInt, m2: HalfInt },
    /// 𝒟^l_{m1,m2}(α_H, β_H, γ_H).
    WignerH { l: HalfInt, m1: HalfInt, m2: HalfInt },
}

/// Which group of angles a factor lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Slot {
    Phi,
    Euler,
    EulerH,
}

impl AngularFactor {
    pub(crate) fn slot(&self) -> Slot {
        match self {
            AngularFactor::Azimuth { .. } => Slot::Phi,
            AngularFactor::SphericalHarmonic { .. } | AngularFactor::Wigner { .. } => Slot::Euler,
            AngularFactor::WignerH { .. } => Slot::EulerH,
        }
    }

    /// Exponents (p, q) of e^{i(p·first + q·second)} for the azimuths of the slot
    /// (φ alone, or α and γ).
    pub(crate) fn phases(&self) -> (f64, f64) {
        match *self {
            AngularFactor::Azimuth { k } => (k.value(), 0.0),
            AngularFactor::SphericalHarmonic { m, .. } => (m as f64, 0.0),
            AngularFactor::Wigner { m1, m2, .. } | AngularFactor::WignerH { m1, m2, .. } => (m1.value(), m2.value()),
        }
    }

    /// The polar part, a real function of β (or β_H); 1 for azimuth factors.
    pub(crate) fn polar(&self, beta: f64) -> f64 {
        match *self {
            AngularFactor::Azimuth { .. } => 1.0,
            AngularFactor::SphericalHarmonic { l, m } => sph_harm(l, m, beta, 0.0).map(|v| v.re).unwrap_or(0.0),
            AngularFactor::Wigner { l, m1, m2 } | AngularFactor::WignerH { l, m1, m2 } => wigner_d(l, m1, m2, beta).unwrap_or(0.0),
        }
    }

    pub fn eval(&self, a: &AngleChart) -> ComplexValue {
        match *self {
            AngularFactor::Azimuth { k } => ComplexValue::from_polar(1.0, k.value() * a.phi),
            AngularFactor::SphericalHarmonic { l, m } => sph_harm(l, m, a.beta, a.alpha).unwrap_or_default(),
            AngularFactor::Wigner { l, m1, m2 } => wigner_D(l, m1, m2, a.alpha, a.beta, a.gamma).unwrap_or_default(),
            AngularFactor::WignerH { l, m1, m2 } => wigner_D(l, m1, m2, a.alpha_h, a.beta_h, a.gamma_h).unwrap_or_default(),
        }
    }

    fn validate(&self, chart: Chart) -> Result<()> {
        let ok = match (self.slot(), chart) {
            (Slot::Phi, Chart::S2s | Chart::S2Cu) => true,
            (Slot::Euler, Chart::S3s) => matches!(self, AngularFactor::SphericalHarmonic { .. }),
            (Slot::Euler, Chart::S4Cu | Chart::S5s | Chart::S8Cu) => true,
            (Slot::EulerH, Chart::S8Cu) => true,
            _ => false,
        };
        if !ok {
            return Err(Error::Domain(format!("{self:?} is not defined on chart {chart}")));
        }
        match *self {
            AngularFactor::Azimuth { k } if !k.is_integer() && chart == Chart::S2s => {
                Err(Error::Domain("half-integer azimuthal number on the real 2-sphere".into()))
            }
            AngularFactor::SphericalHarmonic { l, m } => sph_harm(l, m, 0.5, 0.0).map(|_| ()),
            AngularFactor::Wigner { l, m1, m2 } | AngularFactor::WignerH { l, m1, m2 } => wigner_d(l, m1, m2, 0.5).map(|_| ()),
            _ => Ok(()),
        }
    }
}

/// coeff · Π factors.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularTerm {
    pub coeff: ComplexValue,
    pub factors: Vec<AngularFactor>,
}

impl AngularTerm {
    pub fn new(coeff: ComplexValue, factors: Vec<AngularFactor>) -> Self {
        Self { coeff, factors }
    }

    pub fn eval(&self, a: &AngleChart) -> ComplexValue {
        self.factors.iter().fold(self.coeff, |acc, f| acc * f.eval(a))
    }
}

pub type RadialFn = Arc<dyn Fn(ComplexValue) -> ComplexValue + Send + Sync>;
pub type PolarFn = Arc<dyn Fn(f64) -> ComplexValue + Send + Sync>;
pub type PointFn = Arc<dyn Fn(&AngleChart) -> ComplexValue + Send + Sync>;

/// How a chart function depends on its variables.
#[derive(Clone)]
pub enum Shape {
    /// Any function of the chart angles; integrated on a tensor Gauss–Legendre grid.
    General(PointFn),
    /// radial(χ) · polar(θ) · Σ terms; the angular integrals are done in closed form in the
    /// azimuths and by Gauss–Legendre in β.
    Separable { radial: RadialFn, polar: Option<PolarFn>, angular: Vec<AngularTerm> },
}

/// A function on one chart, `prefactor · shape`. The ⋄ conjugation acts on the shape only.
#[derive(Clone)]
pub struct ChartFunction {
    pub chart: Chart,
    /// R on s-charts, D on u-charts.
    pub radius: f64,
    pub prefactor: ComplexValue,
    pub shape: Shape,
}

impl fmt::Debug for ChartFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.shape {
            Shape::General(_) => "general".to_string(),
            Shape::Separable { angular, polar, .. } => {
                format!("separable({} angular terms{})", angular.len(), if polar.is_some() { ", polar" } else { "" })
            }
        };
        f.debug_struct("ChartFunction")
            .field("chart", &self.chart)
            .field("radius", &self.radius)
            .field("prefactor", &self.prefactor)
            .field("shape", &kind)
            .finish()
    }
}

impl ChartFunction {
    pub fn general(chart: Chart, radius: f64, prefactor: ComplexValue, f: PointFn) -> Self {
        Self { chart, radius, prefactor, shape: Shape::General(f) }
    }

    /// A separable function; factors are checked against the chart.
    pub fn separable(
        chart: Chart,
        radius: f64,
        prefactor: ComplexValue,
        radial: RadialFn,
        polar: Option<PolarFn>,
        angular: Vec<AngularTerm>,
    ) -> Result<Self> {
        for t in &angular {
            for f in &t.factors {
                f.validate(chart)?;
            }
        }
        if polar.is_some() && chart.sphere_dim() != 5 {
            return Err(Error::Domain(format!("chart {chart} has no polar angle θ")));
        }
        Ok(Self { chart, radius, prefactor, shape: Shape::Separable { radial, polar, angular } })
    }

    /// The shape without the prefactor.
    pub fn shape_value(&self, a: &AngleChart) -> ComplexValue {
        match &self.shape {
            Shape::General(f) => f(a),
            Shape::Separable { radial, polar, angular } => {
                let p = polar.as_ref().map_or(c64(1.0, 0.0), |p| p(a.theta));
                let ang: ComplexValue = angular.iter().map(|t| t.eval(a)).sum();
                radial(a.chi) * p * ang
            }
        }
    }

    pub fn value(&self, a: &AngleChart) -> ComplexValue {
        self.prefactor * self.shape_value(a)
    }

    /// f^⋄ at `a`: χ ↦ −χ̄ and complex conjugation of the shape, prefactor untouched.
    pub fn diamond_value(&self, a: &AngleChart) -> ComplexValue {
        let mut b = *a;
        b.chi = -a.chi.conj();
        self.prefactor * self.shape_value(&b).conj()
    }
}
