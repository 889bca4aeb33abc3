use super::equations::{
    direct_rhs, energy, fictitious_time_factor, first_integral, regularized_constraint_residual, regularized_rhs,
};
use super::integrator::{integrate, OdeSystem};
use super::state::{ClassicalState, IntegratorConfig, RegularizedState, SampleState, TrajectoryRecord, TrajectorySample};
use crate::duality_maps::{constraint_oneforms, forward_generic, AmbientPoint, MapKind, SpaceSpec};
use crate::scalar::{jacobian_rows, Dual};
use crate::{c64, ComplexValue, Error, Result};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

fn uniform_times(t0: f64, t_end: f64, samples: usize) -> Vec<f64> {
    (1..=samples).map(|i| t0 + (t_end - t0) * i as f64 / samples as f64).collect()
}

/// The direct equations as a first-order real system y = (s, ṡ).
struct DirectSystem {
    n: usize,
    r: f64,
    mu: f64,
}

impl DirectSystem {
    fn state(&self, t: f64, y: &[f64]) -> ClassicalState {
        let m = self.n + 1;
        ClassicalState { position: y[..m].to_vec(), velocity: y[m..].to_vec(), time: t }
    }
}

impl OdeSystem for DirectSystem {
    fn rhs(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        let (v, a) = direct_rhs(self.n, self.r, self.mu, &self.state(t, y))?;
        let m = self.n + 1;
        dy[..m].copy_from_slice(&v);
        dy[m..].copy_from_slice(&a);
        Ok(())
    }

    fn project(&self, y: &mut [f64]) {
        let m = self.n + 1;
        let norm = y[..m].iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut y[..m] {
            *x *= self.r / norm;
        }
        let sv: f64 = (0..m).map(|i| y[i] * y[m + i]).sum();
        for i in 0..m {
            y[m + i] -= sv / (self.r * self.r) * y[i];
        }
    }

    fn singularity_distance(&self, y: &[f64]) -> f64 {
        y[..self.n].iter().map(|x| x * x).sum::<f64>().sqrt() / self.r
    }
}

/// Integrates the direct equations on Sₙ of radius R from `state0` to `t_end`.
pub fn integrate_direct(n: usize, r: f64, mu: f64, state0: &ClassicalState, t_end: f64, cfg: &IntegratorConfig) -> Result<TrajectoryRecord> {
    if state0.position.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, got: state0.position.len() });
    }
    let e0 = energy(state0, mu, r)?;
    let sys = DirectSystem { n, r, mu };
    let y0: Vec<f64> = state0.position.iter().chain(&state0.velocity).copied().collect();
    let sol = integrate(&sys, state0.time, &y0, &uniform_times(state0.time, t_end, cfg.samples), cfg)?;
    let mut samples = vec![direct_sample(&sys, state0.time, &y0, e0)?];
    for (t, y) in sol.xs.iter().zip(&sol.ys) {
        samples.push(direct_sample(&sys, *t, y, e0)?);
    }
    Ok(TrajectoryRecord::from_samples(samples, sol.steps))
}

fn direct_sample(sys: &DirectSystem, t: f64, y: &[f64], e0: f64) -> Result<TrajectorySample> {
    let st = sys.state(t, y);
    Ok(TrajectorySample {
        time: t,
        energy_residual: (energy(&st, sys.mu, sys.r)? - e0).abs(),
        constraint_residual: st.constraint_residual(sys.r),
        state: SampleState::Direct(st),
    })
}

/// Independent variable of a regularized run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clock {
    /// Real physical time t; τ is co-integrated through dτ/dt.
    Physical,
    /// Real fictitious time τ; t is co-integrated through dt/dτ and may turn complex.
    Fictitious,
}

/// The τ-system as a real system over y = (Re/Im u, Re/Im u′, Re/Im of the other clock).
struct RegularizedSystem {
    kind: MapKind,
    e: f64,
    mu: f64,
    d: f64,
    clock: Clock,
}

fn unpack(y: &[f64]) -> Vec<ComplexValue> {
    y.chunks(2).map(|p| c64(p[0], p[1])).collect()
}

fn pack(z: &[ComplexValue]) -> Vec<f64> {
    z.iter().flat_map(|v| [v.re, v.im]).collect()
}

impl RegularizedSystem {
    fn state(&self, x: f64, y: &[f64]) -> RegularizedState {
        let z = unpack(y);
        let m = self.kind.u_dim();
        let other = z[2 * m];
        let (tau, time) = match self.clock {
            Clock::Physical => (other, c64(x, 0.0)),
            Clock::Fictitious => (c64(x, 0.0), other),
        };
        RegularizedState { uposition: z[..m].to_vec(), uvelocity: z[m..2 * m].to_vec(), tau, time }
    }
}

impl OdeSystem for RegularizedSystem {
    fn rhs(&self, x: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        let st = self.state(x, y);
        let acc = regularized_rhs(self.kind, self.e, self.mu, self.d, &st)?;
        let (scale, clock_rate) = match self.clock {
            Clock::Physical => {
                let g = fictitious_time_factor(self.kind, self.d, &st)?;
                (g, g)
            }
            Clock::Fictitious => {
                // dt/dτ = D² Σ_{i<last} uᵢ²/u_last², regular through collisions
                let u = &st.uposition;
                let last = u[u.len() - 1];
                let rho: ComplexValue = u[..u.len() - 1].iter().map(|v| v * v).sum();
                (c64(1.0, 0.0), self.d * self.d * rho / (last * last))
            }
        };
        let mut out: Vec<ComplexValue> = st.uvelocity.iter().map(|v| scale * v).collect();
        out.extend(acc.iter().map(|a| scale * a));
        out.push(clock_rate);
        dy.copy_from_slice(&pack(&out));
        Ok(())
    }

    fn project(&self, y: &mut [f64]) {
        let m = self.kind.u_dim();
        let mut z = unpack(y);
        let uu: ComplexValue = z[..m].iter().map(|v| v * v).sum();
        let f = self.d / uu.sqrt();
        for v in &mut z[..m] {
            *v *= f;
        }
        let uv: ComplexValue = (0..m).map(|i| z[i] * z[m + i]).sum();
        let d2 = self.d * self.d;
        for i in 0..m {
            let ui = z[i];
            z[m + i] -= uv / d2 * ui;
        }
        y.copy_from_slice(&pack(&z));
    }

    fn singularity_distance(&self, y: &[f64]) -> f64 {
        let z = unpack(y);
        let m = self.kind.u_dim();
        z[m - 1].norm() / self.d
    }
}

/// Integrates the τ-system with coupling E from `state0`, either in physical time up to
/// t = `x_end` or in fictitious time up to τ = `x_end`. The energy column holds the
/// first-integral residual.
#[allow(clippy::too_many_arguments)]
pub fn integrate_regularized(
    kind: MapKind,
    e: f64,
    mu: f64,
    d: f64,
    state0: &RegularizedState,
    clock: Clock,
    x_end: f64,
    cfg: &IntegratorConfig,
) -> Result<TrajectoryRecord> {
    let m = kind.u_dim();
    if state0.uposition.len() != m || state0.uvelocity.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: state0.uposition.len().min(state0.uvelocity.len()) });
    }
    let sys = RegularizedSystem { kind, e, mu, d, clock };
    let (x0, other) = match clock {
        Clock::Physical => (state0.time.re, state0.tau),
        Clock::Fictitious => (state0.tau.re, state0.time),
    };
    let mut z = state0.uposition.clone();
    z.extend(&state0.uvelocity);
    z.push(other);
    let y0 = pack(&z);
    let sol = integrate(&sys, x0, &y0, &uniform_times(x0, x_end, cfg.samples), cfg)?;
    let mut samples = vec![regularized_sample(&sys, x0, &y0)?];
    for (x, y) in sol.xs.iter().zip(&sol.ys) {
        samples.push(regularized_sample(&sys, *x, y)?);
    }
    Ok(TrajectoryRecord::from_samples(samples, sol.steps))
}

fn regularized_sample(sys: &RegularizedSystem, x: f64, y: &[f64]) -> Result<TrajectorySample> {
    let st = sys.state(x, y);
    Ok(TrajectorySample {
        time: x,
        energy_residual: first_integral(sys.e, sys.mu, sys.d, &st)?.norm(),
        constraint_residual: regularized_constraint_residual(sys.kind, sys.d, &st)?,
        state: SampleState::Regularized(st),
    })
}

/// Real unit vector x with H(x) = n for the real quadratic map H underlying `kind`
/// (Levi-Civita, Hopf or Hurwitz), where H is normalized so that |H(x)| = |x|².
fn hopf_preimage(kind: MapKind, n: &[f64]) -> Vec<f64> {
    match kind {
        MapKind::Lc2Sphere => {
            let phi = n[1].atan2(n[0]);
            vec![(phi / 2.0).cos(), (phi / 2.0).sin()]
        }
        MapKind::Ks3Sphere => {
            if n[2] >= 0.0 {
                let a = ((1.0 + n[2]) / 2.0).sqrt();
                vec![a, 0.0, n[0] / (2.0 * a), -n[1] / (2.0 * a)]
            } else {
                let b = ((1.0 - n[2]) / 2.0).sqrt();
                vec![n[0] / (2.0 * b), n[1] / (2.0 * b), b, 0.0]
            }
        }
        _ => {
            if n[4] >= 0.0 {
                let a = ((1.0 + n[4]) / 2.0).sqrt();
                let mut x = vec![a, 0.0, 0.0, 0.0];
                x.extend(n[..4].iter().map(|v| v / (2.0 * a)));
                x
            } else {
                let b = ((1.0 - n[4]) / 2.0).sqrt();
                let mut x: Vec<f64> = vec![n[0] / (2.0 * b), -n[1] / (2.0 * b), n[2] / (2.0 * b), n[3] / (2.0 * b)];
                x.extend([b, 0.0, 0.0, 0.0]);
                x
            }
        }
    }
}

/// Lifts direct initial data on Sₙ to the complex sphere of radius D = √R.
///
/// Positions use u = D(√(1 − e^{2iχ}) x, e^{iχ}) with cos χ = s_last/R and x a real preimage
/// of the transverse direction. Velocities solve J u̇ = ṡ together with u·u̇ = 0 and the
/// constraint one-forms (least squares through an SVD); then u′ = u̇/(dτ/dt).
pub fn lift_initial_data(kind: MapKind, state: &ClassicalState, r: f64) -> Result<RegularizedState> {
    if !kind.is_sphere() {
        return Err(Error::Kind(format!("{kind} carries no Kepler dynamics")));
    }
    let s = &state.position;
    if s.len() != kind.s_dim() {
        return Err(Error::DimensionMismatch { expected: kind.s_dim(), got: s.len() });
    }
    let d = r.sqrt();
    let last = s[s.len() - 1];
    let chi = (last / r).clamp(-1.0, 1.0).acos();
    let rho = s[..s.len() - 1].iter().map(|x| x * x).sum::<f64>().sqrt();
    if rho < 1e-12 * r {
        return Err(Error::PoleSingularity("cannot lift a state at a pole".into()));
    }
    let dir: Vec<f64> = s[..s.len() - 1].iter().map(|x| x / rho).collect();
    let x = hopf_preimage(kind, &dir);
    let eic = c64(0.0, chi).exp();
    let c = (1.0 - eic * eic).sqrt();
    let mut u: Vec<ComplexValue> = x.iter().map(|&xi| d * c * xi).collect();
    u.push(d * eic);

    let m = u.len();
    let jac = jacobian_rows(|v: &[Dual]| forward_generic(kind, v).unwrap_or_default(), &u);
    let p = AmbientPoint::new(u.clone(), SpaceSpec::u_space(kind, d)?)?;
    let n_forms = match kind {
        MapKind::Ks3Sphere => 1,
        MapKind::Hurwitz5Sphere => 3,
        _ => 0,
    };
    let rows = kind.s_dim() + 1 + n_forms;
    let mut a = DMatrix::<ComplexValue>::zeros(rows, m);
    let mut b = DVector::<ComplexValue>::zeros(rows);
    for i in 0..kind.s_dim() {
        for k in 0..m {
            a[(i, k)] = jac[k][i];
        }
        b[i] = c64(state.velocity[i], 0.0);
    }
    for k in 0..m {
        a[(kind.s_dim(), k)] = u[k];
    }
    // one-forms are linear in du: read their coefficients off unit vectors
    for k in 0..m {
        let mut e_k = vec![c64(0.0, 0.0); m];
        e_k[k] = c64(1.0, 0.0);
        for (f, w) in constraint_oneforms_or_empty(kind, &p, &e_k)?.into_iter().enumerate() {
            a[(kind.s_dim() + 1 + f, k)] = w;
        }
    }
    let svd = a.clone().svd(true, true);
    let udot = svd.solve(&b, 1e-13).map_err(|e| Error::Degenerate(e.to_string()))?;
    let resid = (&a * &udot - &b).norm();
    if resid > 1e-8 * (1.0 + b.norm()) {
        return Err(Error::Degenerate(format!("velocity lift residual {resid:e}")));
    }
    let mut st = RegularizedState { uposition: u, uvelocity: vec![], tau: c64(0.0, 0.0), time: c64(state.time, 0.0) };
    let g = fictitious_time_factor(kind, d, &st)?;
    st.uvelocity = udot.iter().map(|v| v / g).collect();
    Ok(st)
}

fn constraint_oneforms_or_empty(kind: MapKind, p: &AmbientPoint, du: &[ComplexValue]) -> Result<Vec<ComplexValue>> {
    if kind == MapKind::Lc2Sphere {
        return Ok(vec![]);
    }
    constraint_oneforms(kind, p, du)
}

/// Outcome of integrating both pictures from the same data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// max |s_direct(t) − Re F(u(t))| over the samples.
    pub max_deviation: f64,
    /// max |Im F(u(t))|, which vanishes when the lifted orbit stays on the real slice image.
    pub max_imaginary: f64,
    pub energy_drift: f64,
    pub constraint_drift: f64,
    pub first_integral_drift: f64,
    pub regularized_constraint_drift: f64,
    pub direct: TrajectoryRecord,
    pub regularized: TrajectoryRecord,
    /// F(u(t)) at the regularized samples.
    pub mapped: Vec<ClassicalState>,
}

/// Integrates the direct equations and the lifted τ-system in physical time over [t0, t_end]
/// and compares the mapped regularized orbit with the direct one.
pub fn equivalence_run(dim: usize, r: f64, mu: f64, state0: &ClassicalState, t_end: f64, cfg: &IntegratorConfig) -> Result<EquivalenceReport> {
    let kind = MapKind::for_dim(dim)?;
    let e = energy(state0, mu, r)?;
    let direct = integrate_direct(dim, r, mu, state0, t_end, cfg)?;
    let u0 = lift_initial_data(kind, state0, r)?;
    let d = r.sqrt();
    let regularized = integrate_regularized(kind, e, mu, d, &u0, Clock::Physical, t_end, cfg)?;
    let mut max_deviation: f64 = 0.0;
    let mut max_imaginary: f64 = 0.0;
    let mut mapped = Vec::with_capacity(regularized.samples.len());
    for (ds, rs) in direct.samples.iter().zip(&regularized.samples) {
        let (SampleState::Direct(c), SampleState::Regularized(u)) = (&ds.state, &rs.state) else {
            unreachable!()
        };
        let s = forward_generic(kind, &u.uposition)?;
        let jac = jacobian_rows(|v: &[Dual]| forward_generic(kind, v).unwrap_or_default(), &u.uposition);
        let g = fictitious_time_factor(kind, d, u)?;
        let sdot: Vec<ComplexValue> =
            (0..s.len()).map(|i| (0..u.uposition.len()).map(|k| jac[k][i] * u.uvelocity[k]).sum::<ComplexValue>() * g).collect();
        for (a, b) in c.position.iter().zip(&s) {
            max_deviation = max_deviation.max((a - b.re).abs());
            max_imaginary = max_imaginary.max(b.im.abs());
        }
        mapped.push(ClassicalState { position: s.iter().map(|z| z.re).collect(), velocity: sdot.iter().map(|z| z.re).collect(), time: rs.time });
    }
    Ok(EquivalenceReport {
        max_deviation,
        max_imaginary,
        energy_drift: direct.energy_drift,
        constraint_drift: direct.constraint_drift,
        first_integral_drift: regularized.energy_drift,
        regularized_constraint_drift: regularized.constraint_drift,
        direct,
        regularized,
        mapped,
    })
}

/// First return time of s_last to its initial value with the initial sign of ṡ_last,
/// bracketed on a grid of spacing `dt` and refined by bisection to `tol`.
#[allow(clippy::too_many_arguments)]
pub fn radial_period(n: usize, r: f64, mu: f64, state0: &ClassicalState, dt: f64, t_max: f64, tol: f64, cfg: &IntegratorConfig) -> Result<f64> {
    let sys = DirectSystem { n, r, mu };
    let inner = IntegratorConfig { samples: 1, ..*cfg };
    let y0: Vec<f64> = state0.position.iter().chain(&state0.velocity).copied().collect();
    let target = state0.position[n];
    let sign = state0.velocity[n].signum();
    if sign == 0.0 {
        return Err(Error::Degenerate("initial radial velocity is zero; start away from a turning point".into()));
    }
    let advance = |t: f64, y: &[f64], t1: f64| -> Result<Vec<f64>> {
        let sol = integrate(&sys, t, y, &[t1], &inner)?;
        Ok(sol.ys.into_iter().next().unwrap_or_else(|| y.to_vec()))
    };
    let (mut t, mut y) = (state0.time, y0);
    // f starts at zero and grows; the period ends at the next upward zero of f
    let mut f_prev = 0.0;
    while t < state0.time + t_max {
        let y1 = advance(t, &y, t + dt)?;
        let f1 = (y1[n] - target) * sign;
        if f_prev < 0.0 && f1 >= 0.0 && y1[2 * n + 1] * sign > 0.0 {
            let (mut lo, mut hi, mut ylo) = (t, t + dt, y.clone());
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                let ym = advance(lo, &ylo, mid)?;
                if (ym[n] - target) * sign < 0.0 {
                    lo = mid;
                    ylo = ym;
                } else {
                    hi = mid;
                }
            }
            return Ok(0.5 * (lo + hi) - state0.time);
        }
        f_prev = f1;
        t += dt;
        y = y1;
    }
    Err(Error::Range(format!("no radial return within t_max = {t_max}")))
}
