use clap::{Args, ValueEnum};
use kepler_duality::duality_maps::MapKind;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Spectrum,
    Check,
    Orbit,
    Wavefunction,
    Contract,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Check => "check",
            Command::Orbit => "orbit",
            Command::Wavefunction => "wavefunction",
            Command::Contract => "contract",
        }
    }

    /// Keys accepted by this command in addition to the common ones.
    fn own_keys(self) -> &'static [&'static str] {
        match self {
            Command::Spectrum => &["dim", "mu", "radius", "n-max"],
            Command::Check => &["kind", "quad-order", "samples", "inject-fault"],
            Command::Orbit => &["dim", "mu", "radius", "rel-tol", "chi0", "energy", "radial-fraction", "speed", "radial-speed", "t-end", "samples"],
            Command::Wavefunction => &["dim", "mu", "radius", "quad-order", "n", "m", "l", "lambda", "m1", "m2", "grid"],
            Command::Contract => &["dim", "mu", "n", "radii", "quad-order"],
        }
    }
}

const COMMON_KEYS: [&str; 6] = ["format", "output", "jobs", "seed", "no-timestamp", "config"];

/// Every flag as an optional value. The same struct is read from a JSON config file with
/// keys spelled like the flags; flags given on the command line win.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    /// Sphere dimension: 2, 3 or 5.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Coupling constant μ.
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    /// Sphere radius R; "inf" selects flat space where supported.
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Largest principal number in spectrum tables.
    #[arg(long, global = true)]
    pub n_max: Option<u32>,
    /// Restrict checks to one map kind (lc2, ks3, hurwitz5, lc2-h2c, ...).
    #[arg(long, global = true)]
    pub kind: Option<String>,
    /// Gauss-Legendre order per dimension.
    #[arg(long, global = true)]
    pub quad_order: Option<usize>,
    /// Relative tolerance of the orbit integrator.
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Omit the timestamp line so repeated runs are byte-identical.
    #[arg(long, global = true)]
    #[serde(default, skip_serializing_if = "is_false")]
    pub no_timestamp: bool,
    /// JSON file with default values for any of these flags.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Random points per map kind in check.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, hide = true)]
    #[serde(default, skip_serializing_if = "is_false")]
    pub inject_fault: bool,

    /// Initial polar angle χ₀ of the orbit.
    #[arg(long, global = true)]
    pub chi0: Option<f64>,
    /// Orbit energy, used when speeds are not given.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    /// Share of the kinetic energy in the radial direction.
    #[arg(long, global = true)]
    pub radial_fraction: Option<f64>,
    /// Transverse initial speed.
    #[arg(long, global = true)]
    pub speed: Option<f64>,
    /// Radial initial speed (positive moves away from the attracting pole).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub radial_speed: Option<f64>,
    /// End time; one radial period when absent.
    #[arg(long, global = true)]
    pub t_end: Option<f64>,

    /// Principal quantum number N.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Magnetic number m (2D and 3D states).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m: Option<i32>,
    /// Angular momentum (half-integers allowed in 5D).
    #[arg(long, global = true)]
    pub l: Option<f64>,
    /// Five-dimensional angular number λ.
    #[arg(long, global = true)]
    pub lambda: Option<u32>,
    /// First fibre projection in 5D.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m1: Option<f64>,
    /// Second fibre projection in 5D.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m2: Option<f64>,
    /// Grid points per sampled angle.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Comma-separated radii for contract.
    #[arg(long, global = true, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn to_map(s: &Settings) -> Map<String, Value> {
    match serde_json::to_value(s) {
        Ok(Value::Object(m)) => m.into_iter().filter(|(_, v)| !v.is_null()).collect(),
        _ => Map::new(),
    }
}

/// Overlays command-line settings on the config file, if any.
pub fn merge(cli: Settings) -> Result<Settings, String> {
    let Some(path) = cli.config.clone() else { return Ok(cli) };
    let mut base = read_config(&path)?;
    for (k, v) in to_map(&cli) {
        base.insert(k, v);
    }
    let mut merged: Settings = serde_json::from_value(Value::Object(base)).map_err(|e| format!("config {}: {e}", path.display()))?;
    merged.config = Some(path);
    Ok(merged)
}

fn read_config(path: &Path) -> Result<Map<String, Value>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let file: Settings = serde_json::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))?;
    Ok(to_map(&file))
}

/// Rejects flags that the command does not use, so a misplaced flag never goes unnoticed.
pub fn reject_foreign_keys(cmd: Command, s: &Settings) -> Result<(), String> {
    let foreign: Vec<String> = to_map(s)
        .keys()
        .filter(|k| !COMMON_KEYS.contains(&k.as_str()) && !cmd.own_keys().contains(&k.as_str()))
        .map(|k| format!("--{k}"))
        .collect();
    if foreign.is_empty() {
        Ok(())
    } else {
        Err(format!("{} does not accept {}", cmd.name(), foreign.join(", ")))
    }
}

/// A fully resolved and validated run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: u64,
    pub timestamp: bool,
    pub settings: Settings,
}

impl RunConfig {
    pub fn resolve(command: Command, s: Settings) -> Result<Self, String> {
        reject_foreign_keys(command, &s)?;
        if s.jobs == Some(0) {
            return Err("--jobs must be at least 1".into());
        }
        let format = s.format.unwrap_or_else(|| match s.output.as_ref().and_then(|p| p.extension()) {
            Some(ext) if ext == "json" => Format::Json,
            _ => Format::Csv,
        });
        let cfg = RunConfig { command, format, output: s.output.clone(), jobs: s.jobs, seed: s.seed.unwrap_or(42), timestamp: !s.no_timestamp, settings: s };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), String> {
        let s = &self.settings;
        if let Some(d) = s.dim {
            if ![2, 3, 5].contains(&d) {
                return Err(format!("--dim must be 2, 3 or 5, got {d}"));
            }
        }
        if let Some(mu) = s.mu {
            if !mu.is_finite() || mu < 0.0 {
                return Err(format!("--mu must be finite and non-negative, got {mu}"));
            }
        }
        if let Some(r) = s.radius {
            if !(r > 0.0) {
                return Err(format!("--radius must be positive, got {r}"));
            }
            if r.is_infinite() && self.command != Command::Spectrum {
                return Err(format!("--radius inf is only meaningful for spectrum; {} needs a finite sphere", self.command.name()));
            }
        }
        if let Some(q) = s.quad_order {
            if q < 8 {
                return Err(format!("--quad-order must be at least 8, got {q}"));
            }
        }
        if let Some(t) = s.rel_tol {
            if !(t > 0.0 && t < 1e-2) {
                return Err(format!("--rel-tol must lie in (0, 1e-2), got {t}"));
            }
        }
        if let Some(k) = &s.kind {
            k.parse::<MapKind>().map_err(|e| e.to_string())?;
        }
        if s.samples == Some(0) {
            return Err("--samples must be at least 1".into());
        }
        if let Some(g) = s.grid {
            if g < 2 {
                return Err(format!("--grid must be at least 2, got {g}"));
            }
        }
        if let Some(c) = s.chi0 {
            if !(c > 0.0 && c < std::f64::consts::PI) {
                return Err(format!("--chi0 must lie strictly between the poles (0, pi), got {c}"));
            }
        }
        if let Some(f) = s.radial_fraction {
            if !(0.0..=1.0).contains(&f) {
                return Err(format!("--radial-fraction must lie in [0, 1], got {f}"));
            }
        }
        if let Some(t) = s.t_end {
            if !(t > 0.0 && t.is_finite()) {
                return Err(format!("--t-end must be positive and finite, got {t}"));
            }
        }
        if let Some(r) = &s.radii {
            if r.is_empty() || r.iter().any(|x| !(*x > 0.0 && x.is_finite())) {
                return Err("--radii must be a non-empty list of positive finite radii".into());
            }
        }
        if self.command == Command::Contract {
            if let Some(d) = s.dim {
                if d == 3 {
                    return Err("contract supports --dim 2 or 5".into());
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.settings.dim.unwrap_or(2)
    }

    pub fn mu(&self) -> f64 {
        self.settings.mu.unwrap_or(1.0)
    }

    pub fn radius(&self) -> f64 {
        self.settings.radius.unwrap_or(1.0)
    }

    pub fn quad_order(&self, default: usize) -> usize {
        self.settings.quad_order.unwrap_or(default)
    }
}
