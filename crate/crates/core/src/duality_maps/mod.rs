//! Quadratic maps from complex spheres (and hyperboloids) in u-space onto real spheres in
//! s-space, their angle charts, constraint one-forms and metric relations.

mod charts;
mod maps;
mod metric;

pub(crate) use charts::chart_jacobian;
pub use charts::{chart_tangent, parametrize, parametrize_generic, s_from_angles, AngleChart, Tangent};
pub use maps::{contract_to_flat, forward_generic, forward_map, identity_residual, identity_residual_relative};
pub use metric::{constraint_oneforms, hurwitz_angles, metric_relation_residual, metric_relation_terms, MetricTerms};

use crate::{ComplexValue, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Sign choice of the two-sheet hyperboloid map (upper or lower signs throughout).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PmSign {
    Plus,
    Minus,
}

impl PmSign {
    pub fn value(self) -> f64 {
        match self {
            PmSign::Plus => 1.0,
            PmSign::Minus => -1.0,
        }
    }
}

/// The supported maps. Each fixes a pair (u-dimension, s-dimension) of ambient point counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapKind {
    /// Flat Levi-Civita map of the plane, (u₁,u₂) ↦ (u₁²−u₂², 2u₁u₂).
    Lc2Flat,
    /// Complex 2-sphere onto the real 2-sphere.
    Lc2Sphere,
    /// Complex 4-sphere onto the real 3-sphere.
    Ks3Sphere,
    /// Complex 8-sphere onto the real 5-sphere.
    Hurwitz5Sphere,
    /// Complex hyperboloid u₃²−u₁²−u₂² onto the real 2-sphere.
    Lc2H2cToS2,
    /// Two-sheet hyperboloid map with the chosen sign.
    Lc2HyperboloidPm(PmSign),
    /// One-sheet hyperboloid onto the one-sheet hyperboloid.
    Lc2OneSheet,
}

impl MapKind {
    pub const ALL: [MapKind; 8] = [
        MapKind::Lc2Flat,
        MapKind::Lc2Sphere,
        MapKind::Ks3Sphere,
        MapKind::Hurwitz5Sphere,
        MapKind::Lc2H2cToS2,
        MapKind::Lc2HyperboloidPm(PmSign::Plus),
        MapKind::Lc2HyperboloidPm(PmSign::Minus),
        MapKind::Lc2OneSheet,
    ];

    /// (u-dimension, s-dimension) as numbers of ambient coordinates.
    pub fn dims(self) -> (usize, usize) {
        match self {
            MapKind::Lc2Flat => (2, 2),
            MapKind::Ks3Sphere => (5, 4),
            MapKind::Hurwitz5Sphere => (9, 6),
            _ => (3, 3),
        }
    }

    pub fn u_dim(self) -> usize {
        self.dims().0
    }

    pub fn s_dim(self) -> usize {
        self.dims().1
    }

    /// Signature of the quadratic form on u-space.
    pub fn u_signature(self) -> Vec<f64> {
        match self {
            MapKind::Lc2H2cToS2 => vec![-1.0, -1.0, 1.0],
            MapKind::Lc2HyperboloidPm(s) => vec![s.value(), s.value(), 1.0],
            MapKind::Lc2OneSheet => vec![1.0, 1.0, -1.0],
            k => vec![1.0; k.u_dim()],
        }
    }

    /// Signature of the quadratic form on s-space.
    pub fn s_signature(self) -> Vec<f64> {
        match self {
            MapKind::Lc2HyperboloidPm(_) => vec![-1.0, -1.0, 1.0],
            MapKind::Lc2OneSheet => vec![1.0, 1.0, -1.0],
            k => vec![1.0; k.s_dim()],
        }
    }

    /// True for the three sphere maps carrying the Coulomb/oscillator duality.
    pub fn is_sphere(self) -> bool {
        matches!(self, MapKind::Lc2Sphere | MapKind::Ks3Sphere | MapKind::Hurwitz5Sphere)
    }

    /// Dimension n of the real sphere Sₙ for sphere kinds.
    pub fn sphere_dim(self) -> Option<usize> {
        match self {
            MapKind::Lc2Sphere => Some(2),
            MapKind::Ks3Sphere => Some(3),
            MapKind::Hurwitz5Sphere => Some(5),
            _ => None,
        }
    }

    /// The sphere kind for a physical dimension 2, 3 or 5.
    pub fn for_dim(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(MapKind::Lc2Sphere),
            3 => Ok(MapKind::Ks3Sphere),
            5 => Ok(MapKind::Hurwitz5Sphere),
            d => Err(Error::Range(format!("dimension {d} is not one of 2, 3, 5"))),
        }
    }

    /// Number of chart parameters of the u-space parametrization.
    pub fn chart_len(self) -> Result<usize> {
        match self {
            MapKind::Lc2Sphere => Ok(2),
            MapKind::Ks3Sphere => Ok(4),
            MapKind::Hurwitz5Sphere => Ok(8),
            k => Err(Error::Kind(k.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Lc2Flat => "lc2-flat",
            MapKind::Lc2Sphere => "lc2",
            MapKind::Ks3Sphere => "ks3",
            MapKind::Hurwitz5Sphere => "hurwitz5",
            MapKind::Lc2H2cToS2 => "lc2-h2c",
            MapKind::Lc2HyperboloidPm(PmSign::Plus) => "lc2-hyperboloid-plus",
            MapKind::Lc2HyperboloidPm(PmSign::Minus) => "lc2-hyperboloid-minus",
            MapKind::Lc2OneSheet => "lc2-one-sheet",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MapKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = MapKind::ALL.iter().map(|k| k.name()).collect();
                Error::Kind(format!("unknown map kind '{s}'; expected one of {}", names.join(", ")))
            })
    }
}

/// Ambient space descriptor: point count, radius and quadratic-form signature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub dim: usize,
    /// R for s-space, D for u-space (D² = R when the spaces are paired).
    pub radius: f64,
    pub signature: Vec<f64>,
}

impl SpaceSpec {
    pub fn new(dim: usize, radius: f64, signature: Vec<f64>) -> Result<Self> {
        if signature.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: signature.len() });
        }
        if !(radius > 0.0) {
            return Err(Error::Range(format!("radius must be positive, got {radius}")));
        }
        Ok(Self { dim, radius, signature })
    }

    /// The u-space of a map with radius D.
    pub fn u_space(kind: MapKind, d: f64) -> Result<Self> {
        Self::new(kind.u_dim(), d, kind.u_signature())
    }

    /// The s-space of a map paired with u-radius D, so that R = D².
    pub fn s_space(kind: MapKind, d: f64) -> Result<Self> {
        Self::new(kind.s_dim(), d * d, kind.s_signature())
    }
}

/// A complex point in an ambient space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbientPoint {
    pub coords: Vec<ComplexValue>,
    pub space: SpaceSpec,
}

impl AmbientPoint {
    pub fn new(coords: Vec<ComplexValue>, space: SpaceSpec) -> Result<Self> {
        if coords.len() != space.dim {
            return Err(Error::DimensionMismatch { expected: space.dim, got: coords.len() });
        }
        Ok(Self { coords, space })
    }

    /// Σ σᵢ xᵢ² under the space signature.
    pub fn quadratic_form(&self) -> ComplexValue {
        quadratic(&self.coords, &self.space.signature)
    }

    /// |Σ σᵢ xᵢ² − r²| with r the space radius.
    pub fn constraint_residual(&self) -> f64 {
        (self.quadratic_form() - self.space.radius * self.space.radius).norm()
    }
}

pub(crate) fn quadratic(x: &[ComplexValue], sig: &[f64]) -> ComplexValue {
    x.iter().zip(sig).map(|(v, s)| v * v * *s).sum()
}
