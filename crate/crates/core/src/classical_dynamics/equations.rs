use super::state::{ClassicalState, FlatKeplerState, RegularizedState};
use crate::duality_maps::{constraint_oneforms, AmbientPoint, MapKind, SpaceSpec};
use crate::{ComplexValue, Error, Result, I};
use serde::{Deserialize, Serialize};

/// Below this the distance to the polar axis (or the last u-coordinate) counts as singular.
const POLE_GUARD: f64 = 1e-12;

fn transverse_radius(s: &[f64]) -> f64 {
    s[..s.len() - 1].iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn check_pole(s: &[f64], r: f64) -> Result<f64> {
    let rho = transverse_radius(s);
    if rho <= POLE_GUARD * r.max(1.0) {
        return Err(Error::PoleSingularity(format!("s = {s:?} is at a pole (transverse radius {rho:e})")));
    }
    Ok(rho)
}

/// V(s) = −(μ/R) s_{n+1}/√(s₁² + … + s_n²).
pub fn potential(s: &[f64], mu: f64, r: f64) -> Result<f64> {
    let rho = check_pole(s, r)?;
    Ok(-mu / r * s[s.len() - 1] / rho)
}

/// ½ ṡ·ṡ + V(s).
pub fn energy(state: &ClassicalState, mu: f64, r: f64) -> Result<f64> {
    let kin: f64 = 0.5 * state.velocity.iter().map(|v| v * v).sum::<f64>();
    Ok(kin + potential(&state.position, mu, r)?)
}

/// (ṡ, s̈) for the direct equations s̈ = −s (ṡ·ṡ)/R² − ∇V on the sphere Sₙ of radius R.
pub fn direct_rhs(n: usize, r: f64, mu: f64, state: &ClassicalState) -> Result<(Vec<f64>, Vec<f64>)> {
    let s = &state.position;
    if s.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, got: s.len() });
    }
    let rho = check_pole(s, r)?;
    let v2: f64 = state.velocity.iter().map(|v| v * v).sum();
    let last = s[n];
    let k = mu / r;
    let mut acc: Vec<f64> = s.iter().map(|x| -x * v2 / (r * r)).collect();
    for j in 0..n {
        acc[j] -= k * s[j] * last / rho.powi(3);
    }
    acc[n] += k / rho;
    Ok((state.velocity.clone(), acc))
}

fn check_kind(kind: MapKind, len: usize) -> Result<()> {
    if !kind.is_sphere() {
        return Err(Error::Kind(format!("{kind} carries no Kepler dynamics")));
    }
    if len != kind.u_dim() {
        return Err(Error::DimensionMismatch { expected: kind.u_dim(), got: len });
    }
    Ok(())
}

fn last_coordinate(u: &[ComplexValue]) -> Result<ComplexValue> {
    let last = u[u.len() - 1];
    if last.norm() < POLE_GUARD {
        return Err(Error::SingularDivisor { coord: "u_last", value: last.norm() });
    }
    Ok(last)
}

/// The oscillator constants A = E + iμ/D² and B = E − iμ/D².
fn couplings(e: f64, mu: f64, d: f64) -> (ComplexValue, ComplexValue) {
    (e + I * mu / (d * d), e - I * mu / (d * d))
}

/// u″ for the τ-system: u″ⱼ = −2A uⱼ for the first components and
/// u″_last = −2A u_last + 2D⁴B/u_last³.
pub fn regularized_rhs(kind: MapKind, e: f64, mu: f64, d: f64, state: &RegularizedState) -> Result<Vec<ComplexValue>> {
    let u = &state.uposition;
    check_kind(kind, u.len())?;
    let last = last_coordinate(u)?;
    let (a, b) = couplings(e, mu, d);
    let mut acc: Vec<ComplexValue> = u.iter().map(|x| -2.0 * a * x).collect();
    let n = acc.len() - 1;
    acc[n] += 2.0 * d.powi(4) * b / (last * last * last);
    Ok(acc)
}

/// u′·u′ − 2D²A + 2D⁴B/u_last², which vanishes along the τ-system.
pub fn first_integral(e: f64, mu: f64, d: f64, state: &RegularizedState) -> Result<ComplexValue> {
    let last = last_coordinate(&state.uposition)?;
    let (a, b) = couplings(e, mu, d);
    let vv: ComplexValue = state.uvelocity.iter().map(|v| v * v).sum();
    Ok(vv - 2.0 * d * d * a + 2.0 * d.powi(4) * b / (last * last))
}

/// dτ/dt = u_last²/(D² Σ_{i<last} uᵢ²). Complex off the real slice.
pub fn fictitious_time_factor(kind: MapKind, d: f64, u: &RegularizedState) -> Result<ComplexValue> {
    let u = &u.uposition;
    check_kind(kind, u.len())?;
    let last = u[u.len() - 1];
    let rho: ComplexValue = u[..u.len() - 1].iter().map(|x| x * x).sum();
    if rho.norm() < POLE_GUARD * d * d {
        return Err(Error::PoleSingularity(format!("sum of the first u-coordinates squared is {rho}")));
    }
    Ok(last * last / (d * d * rho))
}

/// max(|u·u − D²|, |u·u′|, |ωₖ(u, u′)|).
pub fn regularized_constraint_residual(kind: MapKind, d: f64, state: &RegularizedState) -> Result<f64> {
    let u = &state.uposition;
    check_kind(kind, u.len())?;
    let uu: ComplexValue = u.iter().map(|x| x * x).sum();
    let uv: ComplexValue = u.iter().zip(&state.uvelocity).map(|(a, b)| a * b).sum();
    let mut worst = (uu - d * d).norm().max(uv.norm());
    if kind != MapKind::Lc2Sphere {
        let p = AmbientPoint::new(u.clone(), SpaceSpec::u_space(kind, d)?)?;
        for w in constraint_oneforms(kind, &p, &state.uvelocity)? {
            worst = worst.max(w.norm());
        }
    }
    Ok(worst)
}

/// Which side of the duality a Hamilton–Jacobi residual is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HjPicture {
    CoulombS,
    OscillatorU,
}

/// Left-hand side of the Hamilton–Jacobi equation at `point` for the gradient `grad_s`:
///
/// * Coulomb picture: Σ (∂S/∂sₖ)² − 2(μ/R) s_last/√(Σ_{k<last} sₖ²) − 2E,
/// * oscillator picture: Σ (∂S/∂uₖ)² − 2D²(E + iμ/D²) + (2D⁴/u_last²)(E − iμ/D²).
///
/// At corresponding points the Coulomb residual equals −(dτ/dt) times the oscillator one.
pub fn hj_residual(kind: MapKind, picture: HjPicture, point: &AmbientPoint, grad_s: &[ComplexValue], e: f64, mu: f64) -> Result<ComplexValue> {
    if grad_s.len() != point.coords.len() {
        return Err(Error::DimensionMismatch { expected: point.coords.len(), got: grad_s.len() });
    }
    let p2: ComplexValue = grad_s.iter().map(|g| g * g).sum();
    match picture {
        HjPicture::CoulombS => {
            if point.coords.len() != kind.s_dim() {
                return Err(Error::DimensionMismatch { expected: kind.s_dim(), got: point.coords.len() });
            }
            let r = point.space.radius;
            let s = &point.coords;
            let rho: ComplexValue = s[..s.len() - 1].iter().map(|x| x * x).sum::<ComplexValue>().sqrt();
            if rho.norm() < POLE_GUARD {
                return Err(Error::PoleSingularity("Coulomb Hamilton-Jacobi residual at a pole".into()));
            }
            Ok(p2 - 2.0 * mu / r * s[s.len() - 1] / rho - 2.0 * e)
        }
        HjPicture::OscillatorU => {
            check_kind(kind, point.coords.len())?;
            let d = point.space.radius;
            let last = last_coordinate(&point.coords)?;
            let (a, b) = couplings(e, mu, d);
            Ok(p2 - 2.0 * d * d * a + 2.0 * d.powi(4) * b / (last * last))
        }
    }
}

/// (ṙ, r̈) for r̈ = −μ r/|r|³.
pub fn flat_kepler_rhs(mu: f64, state: &FlatKeplerState) -> Result<([f64; 2], [f64; 2])> {
    let [x, y] = state.position;
    let r = x.hypot(y);
    if r < POLE_GUARD {
        return Err(Error::PoleSingularity("collision at the origin".into()));
    }
    let k = -mu / r.powi(3);
    Ok((state.velocity, [k * x, k * y]))
}

/// ½|ṙ|² − μ/|r|.
pub fn flat_energy(mu: f64, state: &FlatKeplerState) -> Result<f64> {
    let [x, y] = state.position;
    let r = x.hypot(y);
    if r < POLE_GUARD {
        return Err(Error::PoleSingularity("collision at the origin".into()));
    }
    let [vx, vy] = state.velocity;
    Ok(0.5 * (vx * vx + vy * vy) - mu / r)
}

/// Levi-Civita variables (u, u′ = du/ds with ds = dt/r) of a planar Kepler state, so that
/// u″ = (h/2) u along the motion.
pub fn levi_civita_lift(state: &FlatKeplerState) -> Result<([f64; 2], [f64; 2])> {
    let [x, y] = state.position;
    let r = x.hypot(y);
    if r < POLE_GUARD {
        return Err(Error::PoleSingularity("collision at the origin".into()));
    }
    // r = L(u)u with L(u) = [[u1, −u2], [u2, u1]]: u1 = √((r + x)/2), u2 = y/(2u1)
    let (u1, u2) = if x >= 0.0 {
        let u1 = ((r + x) / 2.0).sqrt();
        (u1, y / (2.0 * u1))
    } else {
        let u2 = ((r - x) / 2.0).sqrt().copysign(if y == 0.0 { 1.0 } else { y });
        (y / (2.0 * u2), u2)
    };
    // r′ = r ṙ = 2 L(u) u′, and L(u)ᵀL(u) = |u|² = r
    let [vx, vy] = state.velocity;
    let (px, py) = (r * vx / 2.0, r * vy / 2.0);
    let up = [(u1 * px + u2 * py) / r, (-u2 * px + u1 * py) / r];
    Ok(([u1, u2], up))
}

/// r = L(u)u.
pub fn levi_civita_map(u: [f64; 2]) -> [f64; 2] {
    [u[0] * u[0] - u[1] * u[1], 2.0 * u[0] * u[1]]
}
