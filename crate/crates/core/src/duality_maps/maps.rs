use super::{quadratic, AmbientPoint, MapKind, SpaceSpec};
use crate::scalar::Scalar;
use crate::{c64, ComplexValue, Error, Result, I};

const DIVISOR_GUARD: f64 = 1e-14;

fn check_divisor<S: Scalar>(kind: MapKind, u: &[S]) -> Result<()> {
    if kind == MapKind::Lc2Flat {
        return Ok(());
    }
    let last = u[u.len() - 1].value().norm();
    if last < DIVISOR_GUARD {
        let coord = match kind {
            MapKind::Ks3Sphere => "u5",
            MapKind::Hurwitz5Sphere => "u9",
            _ => "u3",
        };
        return Err(Error::SingularDivisor { coord, value: last });
    }
    Ok(())
}

fn sum_sq<S: Scalar>(x: &[S]) -> S {
    x.iter().fold(S::real(0.0), |acc, &v| acc + v * v)
}

/// Forward map on any scalar type (plain complex or dual numbers for tangents).
pub fn forward_generic<S: Scalar>(kind: MapKind, u: &[S]) -> Result<Vec<S>> {
    if u.len() != kind.u_dim() {
        return Err(Error::DimensionMismatch { expected: kind.u_dim(), got: u.len() });
    }
    check_divisor(kind, u)?;
    let i = S::constant(I);
    let half = S::real(0.5);
    let two = S::real(2.0);
    Ok(match kind {
        MapKind::Lc2Flat => vec![u[0] * u[0] - u[1] * u[1], two * u[0] * u[1]],
        MapKind::Lc2Sphere => {
            let r = sum_sq(u).sqrt();
            let rho = u[0] * u[0] + u[1] * u[1];
            let (u1, u2, u3) = (u[0], u[1], u[2]);
            vec![
                i * r * (u1 * u1 - u2 * u2) * half / u3,
                i * r * u1 * u2 / u3,
                r * (u3 + rho * half / u3),
            ]
        }
        MapKind::Ks3Sphere => {
            let r = sum_sq(u).sqrt();
            let (u1, u2, u3, u4, u5) = (u[0], u[1], u[2], u[3], u[4]);
            let rho = sum_sq(&u[..4]);
            vec![
                i * r * (u1 * u3 + u2 * u4) / u5,
                i * r * (u2 * u3 - u1 * u4) / u5,
                i * r * (u1 * u1 + u2 * u2 - u3 * u3 - u4 * u4) * half / u5,
                r * (u5 + rho * half / u5),
            ]
        }
        MapKind::Hurwitz5Sphere => {
            let r = sum_sq(u).sqrt();
            let u9 = u[8];
            let f = i * r / u9;
            let p = |a: usize, b: usize| u[a - 1] * u[b - 1];
            let rho = sum_sq(&u[..8]);
            vec![
                f * (p(1, 5) + p(2, 6) - p(3, 7) - p(4, 8)),
                f * (p(1, 6) - p(2, 5) + p(3, 8) - p(4, 7)),
                f * (p(1, 7) + p(2, 8) + p(3, 5) + p(4, 6)),
                f * (p(1, 8) - p(2, 7) - p(3, 6) + p(4, 5)),
                f * half * (sum_sq(&u[..4]) - sum_sq(&u[4..8])),
                r * (u9 + rho * half / u9),
            ]
        }
        MapKind::Lc2H2cToS2 | MapKind::Lc2HyperboloidPm(_) | MapKind::Lc2OneSheet => {
            let (u1, u2, u3) = (u[0], u[1], u[2]);
            let rho = u1 * u1 + u2 * u2;
            // (prefactor², i-factor, sign in the s₃ bracket)
            let (r2, phase, sign) = match kind {
                MapKind::Lc2H2cToS2 => (u3 * u3 - rho, i, -1.0),
                MapKind::Lc2HyperboloidPm(s) => (u3 * u3 + rho.scale(c64(s.value(), 0.0)), S::real(1.0), s.value()),
                _ => (rho - u3 * u3, S::real(1.0), -1.0),
            };
            let r = r2.sqrt();
            vec![
                phase * r * (u1 * u1 - u2 * u2) * half / u3,
                phase * r * u1 * u2 / u3,
                r * (u3 + rho.scale(c64(sign, 0.0)) * half / u3),
            ]
        }
    })
}

/// Applies the map to a u-space point, returning the s-space point (radius D², with D the
/// radius of the input space).
pub fn forward_map(kind: MapKind, u: &AmbientPoint) -> Result<AmbientPoint> {
    let s = forward_generic(kind, &u.coords)?;
    let d = u.space.radius;
    AmbientPoint::new(s, SpaceSpec::new(kind.s_dim(), d * d, kind.s_signature())?)
}

/// |Σ σᵢ sᵢ² − (Σ σ'ᵢ uᵢ²)²| for the kind's signatures.
pub fn identity_residual(kind: MapKind, u: &AmbientPoint) -> Result<f64> {
    let s = forward_generic(kind, &u.coords)?;
    let lhs = quadratic(&s, &kind.s_signature());
    let q = quadratic(&u.coords, &kind.u_signature());
    Ok((lhs - q * q).norm())
}

/// Identity residual divided by max(1, Σ|sᵢ|²).
pub fn identity_residual_relative(kind: MapKind, u: &AmbientPoint) -> Result<f64> {
    let s = forward_generic(kind, &u.coords)?;
    let scale = s.iter().map(|v| v.norm_sqr()).sum::<f64>().max(1.0);
    Ok(identity_residual(kind, u)? / scale)
}

/// Nonhomogeneous form of the 2-sphere map, s̄ as a function of ū. `d = f64::INFINITY`
/// gives the contraction limit.
pub fn contract_to_flat(kind: MapKind, ubar: &[ComplexValue], d: f64) -> Result<Vec<ComplexValue>> {
    if kind != MapKind::Lc2Sphere {
        return Err(Error::Kind(format!("{kind}: contraction is defined for lc2 only")));
    }
    if ubar.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: ubar.len() });
    }
    if !(d > 0.0) {
        return Err(Error::Range(format!("D must be positive or infinite, got {d}")));
    }
    let (a, b) = (ubar[0], ubar[1]);
    let den = if d.is_infinite() { c64(1.0, 0.0) } else { 1.0 + (a * a + b * b) / (2.0 * d * d) };
    Ok(vec![I * (a * a - b * b) / (2.0 * den), I * a * b / den])
}
