use crate::{ComplexValue, Error, Result};
use serde::{Deserialize, Serialize};
use std::io::Write;

/// A point of the direct (s-space) motion on Sₙ ⊂ ℝⁿ⁺¹.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalState {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub time: f64,
}

impl ClassicalState {
    pub fn new(position: Vec<f64>, velocity: Vec<f64>, time: f64) -> Result<Self> {
        if position.len() != velocity.len() {
            return Err(Error::DimensionMismatch { expected: position.len(), got: velocity.len() });
        }
        if position.len() < 2 {
            return Err(Error::Range("a state needs at least two ambient coordinates".into()));
        }
        Ok(Self { position, velocity, time })
    }

    /// max(|s·s − R²|, |s·ṡ|).
    pub fn constraint_residual(&self, r: f64) -> f64 {
        let ss: f64 = self.position.iter().map(|x| x * x).sum();
        let sv: f64 = self.position.iter().zip(&self.velocity).map(|(a, b)| a * b).sum();
        (ss - r * r).abs().max(sv.abs())
    }
}

/// A point of the regularized (u-space) motion on the complex sphere, with u′ = du/dτ.
///
/// Both clocks are complex: in the physical-time picture t is real and τ complex, in the
/// fictitious-time picture the other way round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularizedState {
    pub uposition: Vec<ComplexValue>,
    pub uvelocity: Vec<ComplexValue>,
    pub tau: ComplexValue,
    pub time: ComplexValue,
}

/// Flat Kepler motion r̈ = −μr/|r|³ in the plane with energy h.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatKeplerState {
    pub position: [f64; 2],
    pub velocity: [f64; 2],
    pub h: f64,
}

/// Adaptive step-control settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    /// Project back onto the constraint manifold after each accepted step.
    pub projection: bool,
    /// Number of uniformly spaced output samples after the initial one.
    pub samples: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-12, abs_tol: 1e-14, max_step: 0.05, projection: true, samples: 200 }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Range(format!("tolerances must be positive (rel {}, abs {})", self.rel_tol, self.abs_tol)));
        }
        if !(self.max_step > 0.0) {
            return Err(Error::Range(format!("max_step must be positive, got {}", self.max_step)));
        }
        if self.samples == 0 {
            return Err(Error::Range("at least one output sample is required".into()));
        }
        Ok(())
    }
}

/// The state carried by a trajectory sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SampleState {
    Direct(ClassicalState),
    Regularized(RegularizedState),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    /// The independent variable of the run (t, or real τ in the fictitious-time picture).
    pub time: f64,
    pub state: SampleState,
    pub energy_residual: f64,
    pub constraint_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub samples: Vec<TrajectorySample>,
    /// Maximum energy (or first-integral) residual over the samples.
    pub energy_drift: f64,
    /// Maximum constraint residual over the samples.
    pub constraint_drift: f64,
    pub steps_taken: usize,
}

impl TrajectoryRecord {
    pub(crate) fn from_samples(samples: Vec<TrajectorySample>, steps_taken: usize) -> Self {
        let energy_drift = samples.iter().map(|s| s.energy_residual).fold(0.0, f64::max);
        let constraint_drift = samples.iter().map(|s| s.constraint_residual).fold(0.0, f64::max);
        Self { samples, energy_drift, constraint_drift, steps_taken }
    }

    /// Writes `t, coords…, energy_residual, constraint_residual` with 17 significant digits.
    /// Direct samples list s then ṡ; regularized samples list Re/Im of u, u′, τ and t.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let Some(first) = self.samples.first() else {
            return writeln!(w, "t,energy_residual,constraint_residual");
        };
        let mut header = vec!["t".to_string()];
        match &first.state {
            SampleState::Direct(s) => {
                let n = s.position.len();
                header.extend((1..=n).map(|i| format!("s{i}")));
                header.extend((1..=n).map(|i| format!("sdot{i}")));
            }
            SampleState::Regularized(u) => {
                for name in ["u", "up"] {
                    for i in 1..=u.uposition.len() {
                        header.push(format!("re_{name}{i}"));
                        header.push(format!("im_{name}{i}"));
                    }
                }
                header.extend(["re_tau", "im_tau", "re_time", "im_time"].map(String::from));
            }
        }
        header.extend(["energy_residual", "constraint_residual"].map(String::from));
        writeln!(w, "{}", header.join(","))?;
        for s in &self.samples {
            let mut row = vec![s.time];
            match &s.state {
                SampleState::Direct(c) => {
                    row.extend(&c.position);
                    row.extend(&c.velocity);
                }
                SampleState::Regularized(u) => {
                    for z in u.uposition.iter().chain(&u.uvelocity).chain([&u.tau, &u.time]) {
                        row.push(z.re);
                        row.push(z.im);
                    }
                }
            }
            row.push(s.energy_residual);
            row.push(s.constraint_residual);
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }
}
