use super::state::IntegratorConfig;
use crate::{Error, Result};

/// A first-order system y′ = f(x, y) over real vectors.
pub trait OdeSystem {
    fn rhs(&self, x: f64, y: &[f64], dy: &mut [f64]) -> Result<()>;

    /// Optional projection onto a constraint manifold after each accepted step.
    fn project(&self, _y: &mut [f64]) {}

    /// Distance to the nearest singularity, reported on step underflow.
    fn singularity_distance(&self, _y: &[f64]) -> f64 {
        f64::INFINITY
    }
}

/// States at the requested output points and the number of accepted steps.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeSolution {
    pub xs: Vec<f64>,
    pub ys: Vec<Vec<f64>>,
    pub steps: usize,
}

// Dormand–Prince 5(4) tableau
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// One trial step of size h. Returns the 5th-order solution and the scaled error norm.
fn trial<S: OdeSystem>(sys: &S, x: f64, y: &[f64], h: f64, cfg: &IntegratorConfig, k: &mut [Vec<f64>; 7]) -> Result<(Vec<f64>, f64)> {
    let n = y.len();
    let mut stage = vec![0.0; n];
    sys.rhs(x, y, &mut k[0])?;
    for s in 1..7 {
        for i in 0..n {
            stage[i] = y[i] + h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>();
        }
        sys.rhs(x + C[s] * h, &stage, &mut k[s])?;
    }
    let mut err = 0.0;
    let mut y5 = vec![0.0; n];
    for i in 0..n {
        let (mut s5, mut s4) = (0.0, 0.0);
        for j in 0..7 {
            s5 += B5[j] * k[j][i];
            s4 += B4[j] * k[j][i];
        }
        y5[i] = y[i] + h * s5;
        let scale = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(y5[i].abs());
        let e = h * (s5 - s4) / scale;
        err += e * e;
    }
    Ok((y5, (err / n as f64).sqrt()))
}

/// Integrates from (x0, y0) through the increasing output points `xs`, landing on each
/// exactly. Right-hand-side errors are treated as rejected steps; when the step falls below
/// round-off the run stops with [`Error::StepUnderflow`].
pub fn integrate<S: OdeSystem>(sys: &S, x0: f64, y0: &[f64], xs: &[f64], cfg: &IntegratorConfig) -> Result<OdeSolution> {
    cfg.validate()?;
    if xs.windows(2).any(|w| w[1] < w[0]) || xs.first().is_some_and(|&x| x < x0) {
        return Err(Error::Range("output points must be increasing and start after x0".into()));
    }
    let n = y0.len();
    let mut k: [Vec<f64>; 7] = std::array::from_fn(|_| vec![0.0; n]);
    let mut x = x0;
    let mut y = y0.to_vec();
    let mut closest = sys.singularity_distance(&y);
    let span = xs.last().map_or(0.0, |&e| e - x0);
    let mut h = (0.01 * span).min(cfg.max_step).max(f64::MIN_POSITIVE);
    let mut out = OdeSolution { xs: Vec::with_capacity(xs.len()), ys: Vec::with_capacity(xs.len()), steps: 0 };
    for &target in xs {
        while x < target {
            let last = target - x <= h * (1.0 + 1e-12);
            let step = if last { target - x } else { h };
            if step <= 1e-14 * x.abs().max(1.0) && !last {
                return Err(Error::StepUnderflow { t: x, h: step, closest });
            }
            match trial(sys, x, &y, step, cfg, &mut k) {
                Ok((y5, err)) if err <= 1.0 => {
                    x = if last { target } else { x + step };
                    y = y5;
                    if cfg.projection {
                        sys.project(&mut y);
                    }
                    closest = closest.min(sys.singularity_distance(&y));
                    out.steps += 1;
                    let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                    if !last || grow < 1.0 {
                        h = (step * grow).min(cfg.max_step);
                    }
                }
                Ok((_, err)) if err.is_finite() => {
                    h = step * (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
                    if h <= 1e-14 * x.abs().max(1.0) {
                        return Err(Error::StepUnderflow { t: x, h, closest });
                    }
                }
                // non-finite error estimate or a singular right-hand side
                _ => {
                    h = step * 0.25;
                    if h <= 1e-14 * x.abs().max(1.0) {
                        return Err(Error::StepUnderflow { t: x, h, closest });
                    }
                }
            }
        }
        out.xs.push(target);
        out.ys.push(y.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Harmonic;
    impl OdeSystem for Harmonic {
        fn rhs(&self, _x: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
            dy[0] = y[1];
            dy[1] = -y[0];
            Ok(())
        }
    }

    struct Blowup;
    impl OdeSystem for Blowup {
        fn rhs(&self, _x: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
            dy[0] = y[0] * y[0];
            Ok(())
        }
        fn singularity_distance(&self, y: &[f64]) -> f64 {
            1.0 / y[0].abs()
        }
    }

    #[test]
    fn harmonic_oscillator_matches_trig() {
        let cfg = IntegratorConfig::default();
        let xs: Vec<f64> = (1..=20).map(|i| i as f64 * std::f64::consts::PI / 5.0).collect();
        let sol = integrate(&Harmonic, 0.0, &[1.0, 0.0], &xs, &cfg).unwrap();
        for (x, y) in sol.xs.iter().zip(&sol.ys) {
            assert!((y[0] - x.cos()).abs() < 1e-10 && (y[1] + x.sin()).abs() < 1e-10);
        }
        assert_eq!(sol.xs, xs);
    }

    #[test]
    fn finite_time_blowup_underflows() {
        // y′ = y², y(0) = 1 blows up at x = 1
        let r = integrate(&Blowup, 0.0, &[1.0], &[2.0], &IntegratorConfig::default());
        match r {
            Err(Error::StepUnderflow { t, closest, .. }) => {
                assert!((t - 1.0).abs() < 1e-3, "{t}");
                assert!(closest < 1e-3);
            }
            other => panic!("expected underflow, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_output_points() {
        assert!(integrate(&Harmonic, 0.0, &[1.0, 0.0], &[1.0, 0.5], &IntegratorConfig::default()).is_err());
    }
}
