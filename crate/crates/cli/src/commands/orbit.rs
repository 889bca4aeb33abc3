use super::{AppError, Outcome};
use crate::config::RunConfig;
use crate::output::{Cell, Table};
use kepler_duality::classical_dynamics::{
    energy, equivalence_run, integrate_regularized, lift_initial_data, radial_period, ClassicalState, Clock, IntegratorConfig, SampleState,
    TrajectoryRecord,
};
use kepler_duality::duality_maps::MapKind;
use kepler_duality::Error;

/// Initial data at polar angle χ₀ with speeds split between the radial and the first
/// transverse direction.
fn initial_state(cfg: &RunConfig) -> Result<ClassicalState, AppError> {
    let s = &cfg.settings;
    let (dim, mu, r) = (cfg.dim(), cfg.mu(), cfg.radius());
    let chi = s.chi0.unwrap_or(0.35);
    let (vt, vr) = match (s.speed, s.radial_speed) {
        (None, None) => {
            let e = s.energy.unwrap_or(-2.0);
            // V = −(μ/R) cot χ on the sphere of radius R
            let v2 = 2.0 * (e + mu / r / chi.tan());
            if v2 < 0.0 {
                return Err(AppError::Validation(format!("energy {e} is below the potential at chi0 = {chi}")));
            }
            let f = s.radial_fraction.unwrap_or(0.04);
            ((v2 * (1.0 - f)).sqrt(), (v2 * f).sqrt())
        }
        (vt, vr) if s.energy.is_none() && s.radial_fraction.is_none() => (vt.unwrap_or(0.0), vr.unwrap_or(0.0)),
        _ => return Err(AppError::Validation("give either --energy/--radial-fraction or --speed/--radial-speed, not both".into())),
    };
    let mut pos = vec![0.0; dim + 1];
    let mut vel = vec![0.0; dim + 1];
    pos[0] = r * chi.sin();
    pos[dim] = r * chi.cos();
    vel[1] = vt;
    vel[0] = vr * chi.cos();
    vel[dim] = -vr * chi.sin();
    Ok(ClassicalState::new(pos, vel, 0.0)?)
}

fn direct_table(rec: &TrajectoryRecord, dim: usize) -> Table {
    let mut cols: Vec<String> = vec!["t".into()];
    cols.extend((1..=dim + 1).map(|i| format!("s{i}")));
    cols.extend((1..=dim + 1).map(|i| format!("sdot{i}")));
    cols.extend(["energy_residual".into(), "constraint_residual".into()]);
    let mut t = Table::new(cols);
    for s in &rec.samples {
        let SampleState::Direct(c) = &s.state else { continue };
        let mut row: Vec<Cell> = vec![s.time.into()];
        row.extend(c.position.iter().chain(&c.velocity).map(|&x| x.into()));
        row.extend([s.energy_residual.into(), s.constraint_residual.into()]);
        t.push(row);
    }
    t
}

fn mapped_table(states: &[ClassicalState], dim: usize) -> Table {
    let mut cols: Vec<String> = vec!["t".into()];
    cols.extend((1..=dim + 1).map(|i| format!("s{i}")));
    cols.extend((1..=dim + 1).map(|i| format!("sdot{i}")));
    let mut t = Table::new(cols);
    for c in states {
        let mut row: Vec<Cell> = vec![c.time.into()];
        row.extend(c.position.iter().chain(&c.velocity).map(|&x| x.into()));
        t.push(row);
    }
    t
}

fn regularized_table(rec: &TrajectoryRecord, udim: usize) -> Table {
    let mut cols: Vec<String> = vec!["tau".into()];
    for i in 1..=udim {
        cols.extend([format!("re_u{i}"), format!("im_u{i}")]);
    }
    cols.extend(["re_t".into(), "im_t".into(), "first_integral_residual".into(), "constraint_residual".into()]);
    let mut t = Table::new(cols);
    for s in &rec.samples {
        let SampleState::Regularized(u) = &s.state else { continue };
        let mut row: Vec<Cell> = vec![s.time.into()];
        for z in &u.uposition {
            row.extend([z.re.into(), z.im.into()]);
        }
        row.extend([u.time.re.into(), u.time.im.into(), s.energy_residual.into(), s.constraint_residual.into()]);
        t.push(row);
    }
    t
}

/// Integrates the direct and the regularized system from the same data. The direct run may
/// stop with a step underflow near collision; the regularized run in fictitious time is then
/// reported on its own.
pub fn run(cfg: &RunConfig) -> Result<Outcome, AppError> {
    let (dim, mu, r) = (cfg.dim(), cfg.mu(), cfg.radius());
    let state = initial_state(cfg)?;
    let icfg = IntegratorConfig {
        rel_tol: cfg.settings.rel_tol.unwrap_or(1e-12),
        max_step: 0.01,
        samples: cfg.settings.samples.unwrap_or(200),
        ..IntegratorConfig::default()
    };
    icfg.validate()?;
    let e = energy(&state, mu, r)?;
    let t_end = match cfg.settings.t_end {
        Some(t) => t,
        None => radial_period(dim, r, mu, &state, 0.01, 200.0, 1e-10, &icfg)?,
    };
    let mut summary = Table::new(Vec::<String>::new());
    summary.note("dim", dim);
    summary.note("energy", e);
    summary.note("t_end", t_end);
    match equivalence_run(dim, r, mu, &state, t_end, &icfg) {
        Ok(rep) => {
            summary.note("status", "completed");
            summary.note("max_deviation", rep.max_deviation);
            summary.note("max_imaginary", rep.max_imaginary);
            summary.note("energy_drift", rep.energy_drift);
            summary.note("constraint_drift", rep.constraint_drift);
            summary.note("first_integral_drift", rep.first_integral_drift);
            summary.note("regularized_constraint_drift", rep.regularized_constraint_drift);
            Ok(Outcome {
                tables: vec![
                    (None, summary),
                    (Some("direct"), direct_table(&rep.direct, dim)),
                    (Some("regularized"), mapped_table(&rep.mapped, dim)),
                ],
                failed: false,
            })
        }
        Err(Error::StepUnderflow { t, h, closest }) => {
            let kind = MapKind::for_dim(dim)?;
            let u0 = lift_initial_data(kind, &state, r)?;
            let reg = integrate_regularized(kind, e, mu, r.sqrt(), &u0, Clock::Fictitious, t_end, &icfg)?;
            summary.note("status", "direct_underflow");
            summary.note("direct_stop_time", t);
            summary.note("direct_last_step", h);
            summary.note("closest_approach", closest);
            summary.note("regularized_tau_end", t_end);
            summary.note("first_integral_drift", reg.energy_drift);
            summary.note("regularized_constraint_drift", reg.constraint_drift);
            Ok(Outcome { tables: vec![(None, summary), (Some("regularized"), regularized_table(&reg, kind.u_dim()))], failed: false })
        }
        Err(e) => Err(e.into()),
    }
}
