use crate::special_functions::HalfInt;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Quantum numbers of an oscillator state on S₂ᶜ/S₄ᶜ/S₈ᶜ or a Coulomb state on S₂/S₃/S₅.
///
/// 5D oscillator labels: `l`, `t` and `j` are the L, T and J momenta, `mj` the J₃
/// eigenvalue, `m_free` the second index of 𝒟^L and `t_free` the first index of 𝒟^T.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Numbers {
    Oscillator2 { n_r: u32, m: i32 },
    Oscillator3 { n_r: u32, l: HalfInt, m1: HalfInt, m2: HalfInt },
    Oscillator5 { n_r: u32, lambda: u32, l: HalfInt, j: HalfInt, t: HalfInt, mj: HalfInt, m_free: HalfInt, t_free: HalfInt },
    Coulomb2 { n: u32, m: i32 },
    Coulomb3 { n: u32, l: u32, m: i32 },
    /// Angular part Z_{Lλ}(θ) 𝒟^L_{m1,m2}(α,β,γ).
    Coulomb5 { n: u32, lambda: u32, l: HalfInt, m1: HalfInt, m2: HalfInt },
}

/// A validated set of quantum numbers. Only constructible through checked constructors, so
/// downstream code never sees an inconsistent record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct QuantumNumbers(Numbers);

fn projection(name: &str, j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice() < 0 || m.twice().abs() > j.twice() || (j.twice() - m.twice()) % 2 != 0 {
        return Err(Error::QuantumNumbers(format!("{name}: projection {m} is not allowed for momentum {j}")));
    }
    Ok(())
}

impl QuantumNumbers {
    /// Validates and wraps a raw record.
    pub fn new(raw: Numbers) -> Result<Self> {
        match raw {
            Numbers::Oscillator2 { .. } => {}
            Numbers::Oscillator3 { l, m1, m2, .. } => {
                projection("m1", l, m1)?;
                projection("m2", l, m2)?;
            }
            Numbers::Oscillator5 { lambda, l, j, t, mj, m_free, t_free, .. } => {
                projection("m", l, m_free)?;
                projection("t", t, t_free)?;
                projection("M", j, mj)?;
                let (a, b, c) = (l.twice(), t.twice(), j.twice());
                if c < (a - b).abs() || c > a + b || (a + b + c) % 2 != 0 {
                    return Err(Error::QuantumNumbers(format!("J = {j} cannot be coupled from L = {l} and T = {t}")));
                }
                let n_theta = 2 * lambda as i32 - a - c;
                if n_theta < 0 || n_theta % 2 != 0 {
                    return Err(Error::QuantumNumbers(format!("lambda - L - J = {} must be a non-negative integer", n_theta as f64 / 2.0)));
                }
            }
            Numbers::Coulomb2 { n, m } => {
                if m.unsigned_abs() > n {
                    return Err(Error::QuantumNumbers(format!("|M| = {} exceeds N = {n}", m.abs())));
                }
            }
            Numbers::Coulomb3 { n, l, m } => {
                if n == 0 {
                    return Err(Error::QuantumNumbers("N must be at least 1 in three dimensions".into()));
                }
                if l + 1 > n {
                    return Err(Error::QuantumNumbers(format!("l = {l} requires N > l, got N = {n}")));
                }
                if m.unsigned_abs() > l {
                    return Err(Error::QuantumNumbers(format!("|m| = {} exceeds l = {l}", m.abs())));
                }
            }
            Numbers::Coulomb5 { n, lambda, l, m1, m2 } => {
                if lambda > n {
                    return Err(Error::QuantumNumbers(format!("lambda = {lambda} exceeds N = {n}")));
                }
                if 2 * lambda as i32 - 2 * l.twice() < 0 {
                    return Err(Error::QuantumNumbers(format!("lambda - 2L must be non-negative (lambda = {lambda}, L = {l})")));
                }
                projection("m1", l, m1)?;
                projection("m2", l, m2)?;
            }
        }
        Ok(Self(raw))
    }

    pub fn oscillator2(n_r: u32, m: i32) -> Result<Self> {
        Self::new(Numbers::Oscillator2 { n_r, m })
    }

    pub fn oscillator3(n_r: u32, l: HalfInt, m1: HalfInt, m2: HalfInt) -> Result<Self> {
        Self::new(Numbers::Oscillator3 { n_r, l, m1, m2 })
    }

    #[allow(clippy::too_many_arguments)]
    pub fn oscillator5(n_r: u32, lambda: u32, l: HalfInt, j: HalfInt, t: HalfInt, mj: HalfInt, m_free: HalfInt, t_free: HalfInt) -> Result<Self> {
        Self::new(Numbers::Oscillator5 { n_r, lambda, l, j, t, mj, m_free, t_free })
    }

    pub fn coulomb2(n: u32, m: i32) -> Result<Self> {
        Self::new(Numbers::Coulomb2 { n, m })
    }

    pub fn coulomb3(n: u32, l: u32, m: i32) -> Result<Self> {
        Self::new(Numbers::Coulomb3 { n, l, m })
    }

    pub fn coulomb5(n: u32, lambda: u32, l: HalfInt, m1: HalfInt, m2: HalfInt) -> Result<Self> {
        Self::new(Numbers::Coulomb5 { n, lambda, l, m1, m2 })
    }

    pub fn raw(&self) -> &Numbers {
        &self.0
    }

    pub fn dim(&self) -> usize {
        match self.0 {
            Numbers::Oscillator2 { .. } | Numbers::Coulomb2 { .. } => 2,
            Numbers::Oscillator3 { .. } | Numbers::Coulomb3 { .. } => 3,
            _ => 5,
        }
    }

    pub fn is_oscillator(&self) -> bool {
        matches!(self.0, Numbers::Oscillator2 { .. } | Numbers::Oscillator3 { .. } | Numbers::Oscillator5 { .. })
    }

    /// Oscillator principal number n: 2n_r+|m|, 2n_r+2ℓ, 2(n_r+λ).
    pub fn oscillator_n(&self) -> Option<u32> {
        match self.0 {
            Numbers::Oscillator2 { n_r, m } => Some(2 * n_r + m.unsigned_abs()),
            Numbers::Oscillator3 { n_r, l, .. } => Some(2 * n_r + l.twice() as u32),
            Numbers::Oscillator5 { n_r, lambda, .. } => Some(2 * (n_r + lambda)),
            _ => None,
        }
    }

    /// Coulomb principal number N.
    pub fn coulomb_n(&self) -> Option<u32> {
        match self.0 {
            Numbers::Coulomb2 { n, .. } | Numbers::Coulomb3 { n, .. } | Numbers::Coulomb5 { n, .. } => Some(n),
            _ => None,
        }
    }
}

impl<'de> Deserialize<'de> for QuantumNumbers {
    fn deserialize<De: serde::Deserializer<'de>>(d: De) -> std::result::Result<Self, De::Error> {
        let raw = Numbers::deserialize(d)?;
        QuantumNumbers::new(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Numbers::Oscillator2 { n_r, m } => write!(f, "osc2(n_r={n_r}, m={m})"),
            Numbers::Oscillator3 { n_r, l, m1, m2 } => write!(f, "osc3(n_r={n_r}, l={l}, m1={m1}, m2={m2})"),
            Numbers::Oscillator5 { n_r, lambda, l, j, t, mj, m_free, t_free } => {
                write!(f, "osc5(n_r={n_r}, lambda={lambda}, L={l}, J={j}, T={t}, M={mj}, m={m_free}, t={t_free})")
            }
            Numbers::Coulomb2 { n, m } => write!(f, "coul2(N={n}, M={m})"),
            Numbers::Coulomb3 { n, l, m } => write!(f, "coul3(N={n}, l={l}, m={m})"),
            Numbers::Coulomb5 { n, lambda, l, m1, m2 } => write!(f, "coul5(N={n}, lambda={lambda}, L={l}, m={m1}, m'={m2})"),
        }
    }
}

/// Maps an oscillator state to the Coulomb state it carries, applying the selection rules:
/// even m in two dimensions, m₂ = 0 in three, T = 0 and L = J in five.
pub fn reduce_to_coulomb(q: &QuantumNumbers) -> Result<QuantumNumbers> {
    match *q.raw() {
        Numbers::Oscillator2 { n_r, m } => {
            if m % 2 != 0 {
                return Err(Error::SelectionRule(format!("odd azimuthal number m = {m} has no Coulomb partner")));
            }
            let mm = m / 2;
            QuantumNumbers::coulomb2(n_r + mm.unsigned_abs(), mm)
        }
        Numbers::Oscillator3 { n_r, l, m1, m2 } => {
            if m2 != HalfInt::ZERO {
                return Err(Error::SelectionRule(format!("m2 = {m2} must vanish")));
            }
            // m2 = 0 forces integer l and m1
            let li = (l.twice() / 2) as u32;
            QuantumNumbers::coulomb3(n_r + li + 1, li, m1.twice() / 2)
        }
        Numbers::Oscillator5 { n_r, lambda, l, j, t, mj, m_free, .. } => {
            if t != HalfInt::ZERO {
                return Err(Error::SelectionRule(format!("T = {t} must vanish")));
            }
            if l != j {
                return Err(Error::SelectionRule(format!("L = {l} and J = {j} must agree")));
            }
            QuantumNumbers::coulomb5(n_r + lambda, lambda, l, mj, m_free)
        }
        _ => Err(Error::QuantumNumbers(format!("{q} is already a Coulomb state"))),
    }
}
