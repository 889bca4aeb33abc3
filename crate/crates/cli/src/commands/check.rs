use super::{AppError, Outcome};
use crate::config::RunConfig;
use crate::output::Table;
use kepler_duality::duality_maps::{chart_tangent, forward_generic, metric_relation_terms, parametrize, AngleChart, MapKind, Tangent};
use kepler_duality::geometry_quadrature::{
    contour_identity_check, laplacian_relation, sphere_volume, sphere_volume_from_u, FdConfig, FdOrder, LaplacianPair, USide, VolumePair,
};
use kepler_duality::quantum_spectra::{duality_params, oscillator_energy, oscillator_level};
use kepler_duality::{c64, ComplexValue, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;

/// u-radius used by the geometric checks.
const D: f64 = 1.3;

type Family = Vec<(&'static str, fn(&AngleChart) -> ComplexValue)>;

#[derive(Debug, Clone, Copy)]
enum Job {
    Identity(MapKind),
    Metric(MapKind),
    Laplacian(LaplacianPair),
    Volume(VolumePair),
    Spectrum(usize),
    Contour,
}

impl Job {
    fn kind(self) -> MapKind {
        let for_dim = |d| MapKind::for_dim(d).expect("dimension from a fixed list");
        match self {
            Job::Identity(k) | Job::Metric(k) => k,
            Job::Laplacian(p) => for_dim(p.dim()),
            Job::Volume(p) => for_dim(p.dim()),
            Job::Spectrum(d) => for_dim(d),
            Job::Contour => MapKind::Lc2Sphere,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Job::Identity(_) => "identity",
            Job::Metric(_) => "metric_relation",
            Job::Laplacian(_) => "laplacian_relation",
            Job::Volume(_) => "volume_identity",
            Job::Spectrum(_) => "spectrum_closure",
            Job::Contour => "contour_identity",
        }
    }

    fn threshold(self) -> f64 {
        match self {
            Job::Identity(_) | Job::Spectrum(_) => 1e-12,
            Job::Metric(_) => 1e-10,
            Job::Laplacian(_) => 1e-4,
            Job::Volume(_) => 1e-9,
            Job::Contour => 1e-8,
        }
    }
}

struct Settings {
    seed: u64,
    samples: usize,
    quad_order: usize,
    /// Negative control: flips the sign of one side of every comparison.
    sign: f64,
}

fn jobs() -> Vec<Job> {
    let mut v: Vec<Job> = MapKind::ALL.iter().map(|&k| Job::Identity(k)).collect();
    v.extend([MapKind::Lc2Sphere, MapKind::Ks3Sphere, MapKind::Hurwitz5Sphere].map(Job::Metric));
    v.extend([LaplacianPair::Lb22, LaplacianPair::Lap3, LaplacianPair::Lap5].map(Job::Laplacian));
    v.extend([VolumePair::Vol2, VolumePair::Vol3, VolumePair::Vol5].map(Job::Volume));
    v.extend([2, 3, 5].map(Job::Spectrum));
    v.push(Job::Contour);
    v
}

pub fn run(cfg: &RunConfig) -> std::result::Result<Outcome, AppError> {
    let filter: Option<MapKind> = cfg.settings.kind.as_deref().map(str::parse).transpose()?;
    let st = Settings {
        seed: cfg.seed,
        samples: cfg.settings.samples.unwrap_or(1000),
        quad_order: cfg.quad_order(64),
        sign: if cfg.settings.inject_fault { -1.0 } else { 1.0 },
    };
    let selected: Vec<(usize, Job)> = jobs().into_iter().enumerate().filter(|(_, j)| filter.map_or(true, |k| j.kind() == k)).collect();
    // each job is independent; collect keeps the listed order
    let results: Vec<(Job, Result<(usize, f64)>)> = selected.par_iter().map(|&(i, job)| (job, evaluate(job, i as u64, &st))).collect();

    let mut table = Table::new(["check", "kind", "cases", "max_residual", "threshold", "status"]);
    let mut failures = 0usize;
    for (job, res) in results {
        let (cases, worst, status) = match res {
            Ok((n, r)) => (n, r, r.is_finite() && r < job.threshold()),
            Err(e) => {
                table.note(&format!("{}_{}_error", job.name(), job.kind()), e.to_string());
                (0, f64::NAN, false)
            }
        };
        failures += usize::from(!status);
        table.push(vec![job.name().into(), job.kind().name().into(), cases.into(), worst.into(), job.threshold().into(), status.into()]);
    }
    table.note("seed", st.seed as i64);
    table.note("failed", failures);
    Ok(Outcome { tables: vec![(None, table)], failed: failures > 0 })
}

fn evaluate(job: Job, index: u64, st: &Settings) -> Result<(usize, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(st.seed.wrapping_add(index.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
    match job {
        Job::Identity(kind) => identity(kind, &mut rng, st),
        Job::Metric(kind) => metric(kind, &mut rng, st),
        Job::Laplacian(pair) => laplacian(pair, st),
        Job::Volume(pair) => {
            let v = sphere_volume_from_u(pair, D, st.quad_order)?;
            let exact = sphere_volume(pair.dim(), D * D)?;
            Ok((1, (v - st.sign * exact).norm() / exact))
        }
        Job::Spectrum(dim) => spectrum(dim, st),
        Job::Contour => contour(st),
    }
}

fn quadratic(x: &[ComplexValue], sig: &[f64]) -> ComplexValue {
    x.iter().zip(sig).map(|(v, s)| v * v * *s).sum()
}

fn identity(kind: MapKind, rng: &mut ChaCha8Rng, st: &Settings) -> Result<(usize, f64)> {
    let mut worst: f64 = 0.0;
    for _ in 0..st.samples {
        let u: Vec<ComplexValue> = (0..kind.u_dim()).map(|_| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let s = forward_generic(kind, &u)?;
        let q = quadratic(&u, &kind.u_signature());
        let lhs = quadratic(&s, &kind.s_signature());
        let scale = s.iter().map(|v| v.norm_sqr()).sum::<f64>().max(1.0);
        worst = worst.max((lhs - st.sign * q * q).norm() / scale);
    }
    Ok((st.samples, worst))
}

fn random_angles(kind: MapKind, rng: &mut ChaCha8Rng) -> AngleChart {
    let mut a = |lo: f64, hi: f64| rng.random_range(lo..hi);
    match kind {
        MapKind::Lc2Sphere => AngleChart::lc2(a(0.1, PI - 0.1), a(0.0, 4.0 * PI)),
        MapKind::Ks3Sphere => AngleChart::ks3(a(0.1, PI - 0.1), a(0.1, PI - 0.1), a(0.0, 2.0 * PI), a(0.0, 4.0 * PI)),
        _ => AngleChart::hurwitz5(
            a(0.1, PI - 0.1),
            a(0.1, PI - 0.1),
            a(0.0, 2.0 * PI),
            a(0.1, PI - 0.1),
            a(0.0, 4.0 * PI),
            a(0.0, 2.0 * PI),
            a(0.1, PI - 0.1),
            a(0.0, 4.0 * PI),
        ),
    }
}

fn metric(kind: MapKind, rng: &mut ChaCha8Rng, st: &Settings) -> Result<(usize, f64)> {
    let cases = (st.samples / 5).max(1);
    let n = kind.chart_len()?;
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let a = random_angles(kind, rng);
        let u = parametrize(kind, &a, D)?;
        let mut du = vec![c64(0.0, 0.0); kind.u_dim()];
        for k in 0..n {
            let w = rng.random_range(-1.0..1.0);
            for (acc, t) in du.iter_mut().zip(chart_tangent(kind, &a, D, k, Tangent::Analytic)?) {
                *acc += w * t;
            }
        }
        let terms = metric_relation_terms(kind, &u, &du)?;
        let rhs = terms.conformal + terms.omega;
        worst = worst.max((terms.lhs - st.sign * rhs).norm() / terms.lhs.norm().max(1.0));
    }
    Ok((cases, worst))
}

/// Smooth test functions on the s-chart angles of each dimension.
fn laplacian_family(pair: LaplacianPair) -> (AngleChart, Family) {
    match pair {
        LaplacianPair::Lb22 => (
            AngleChart::lc2(0.9, 0.4),
            vec![
                ("cos_chi", |a| a.chi.cos()),
                ("sin_chi_cos_phi", |a| a.chi.sin() * a.phi.cos()),
                ("sin_chi_sin_phi", |a| a.chi.sin() * a.phi.sin()),
                ("cos_2chi", |a| (2.0 * a.chi).cos()),
                ("sin2_chi_cos_2phi", |a| a.chi.sin() * a.chi.sin() * (2.0 * a.phi).cos()),
            ],
        ),
        LaplacianPair::Lap3 => (
            AngleChart::ks3(0.9, 1.2, 0.4, 0.0),
            vec![
                ("cos_chi", |a| a.chi.cos()),
                ("sin_chi_cos_beta", |a| a.chi.sin() * a.beta.cos()),
                ("sin_chi_sin_beta_cos_alpha", |a| a.chi.sin() * a.beta.sin() * a.alpha.cos()),
                ("cos_2chi", |a| (2.0 * a.chi).cos()),
                ("sin2_chi_cos2_beta", |a| a.chi.sin() * a.chi.sin() * a.beta.cos().powi(2)),
            ],
        ),
        LaplacianPair::Lap5 => (
            AngleChart::hurwitz5(0.9, 1.2, 0.7, 1.1, 2.3, 0.4, 0.9, 3.1),
            vec![
                ("cos_chi", |a| a.chi.cos()),
                ("sin_chi_cos_theta", |a| a.chi.sin() * a.theta.cos()),
                ("cos_2chi", |a| (2.0 * a.chi).cos()),
                ("sin_chi_sin_theta", |a| a.chi.sin() * a.theta.sin()),
                ("sin2_chi_cos_2theta", |a| a.chi.sin() * a.chi.sin() * (2.0 * a.theta).cos()),
            ],
        ),
    }
}

fn laplacian(pair: LaplacianPair, st: &Settings) -> Result<(usize, f64)> {
    let cfg = FdConfig::new(1e-3, FdOrder::Second)?;
    let (at, fam) = laplacian_family(pair);
    let mut worst: f64 = 0.0;
    for (_, f) in &fam {
        let rel = laplacian_relation(pair, f, &at, D, cfg, USide::Metric)?;
        worst = worst.max((rel.lhs - st.sign * rel.rhs).norm() / rel.lhs.norm().max(1.0));
    }
    Ok((fam.len(), worst))
}

fn spectrum(dim: usize, st: &Settings) -> Result<(usize, f64)> {
    let n0 = u32::from(dim == 3);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for n in n0..=10 {
        for mu in [0.5, 1.0, 2.0] {
            for r in [1.0, 4.0] {
                let p = duality_params(dim, mu, r, n)?;
                let osc = oscillator_energy(dim, oscillator_level(dim, n)?, p.nu, p.d)?;
                worst = worst.max((osc - st.sign * p.cal_e).norm() / p.cal_e.norm());
                cases += 1;
            }
        }
    }
    Ok((cases, worst))
}

fn contour(st: &Settings) -> Result<(usize, f64)> {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for n in 0..=2 {
        let nu = duality_params(2, 1.0, 1.0, n)?.nu_principal;
        for n_r in 0..=2 {
            for m in 0..=2 {
                let c = contour_identity_check(n_r, m, nu, st.quad_order)?;
                worst = worst.max((c.lhs - st.sign * c.rhs).norm() / c.lhs.norm());
                cases += 1;
            }
        }
    }
    Ok((cases, worst))
}
