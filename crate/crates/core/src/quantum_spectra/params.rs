use crate::{ComplexValue, Error, Result, I};
use serde::{Deserialize, Serialize};

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 3 | 5 => Ok(()),
        d => Err(Error::Range(format!("dimension {d} is not one of 2, 3, 5"))),
    }
}

/// The shift N + ½, N, N + 2 playing the role of the flat principal number.
pub fn effective_n(dim: usize, n: u32) -> f64 {
    match dim {
        2 => n as f64 + 0.5,
        3 => n as f64,
        _ => n as f64 + 2.0,
    }
}

/// Curvature part of the Coulomb level on the sphere of radius R (without the 1/R² factor).
fn curvature_numerator(dim: usize, n: u32) -> f64 {
    let n = n as f64;
    match dim {
        2 => n * (n + 1.0) / 2.0,
        3 => (n * n - 1.0) / 2.0,
        _ => n * (n + 4.0) / 2.0,
    }
}

/// Coulomb energy levels on Sₙ. `r = f64::INFINITY` gives the flat spectrum.
pub fn coulomb_energy(dim: usize, n: u32, mu: f64, r: f64) -> Result<f64> {
    check_dim(dim)?;
    if dim == 3 && n == 0 {
        return Err(Error::Range("N starts at 1 in three dimensions".into()));
    }
    if !(r > 0.0) {
        return Err(Error::Range(format!("R must be positive or infinite, got {r}")));
    }
    let ne = effective_n(dim, n);
    // adding 0.0 turns −0 into +0 for μ = 0
    let flat = -mu * mu / (2.0 * ne * ne) + 0.0;
    if r.is_infinite() {
        return Ok(flat);
    }
    Ok(curvature_numerator(dim, n) / (r * r) + flat)
}

/// Curvature term of [`coulomb_energy`], so that E_N(R) − term is the flat level.
pub fn curvature_term(dim: usize, n: u32, r: f64) -> Result<f64> {
    check_dim(dim)?;
    Ok(if r.is_infinite() { 0.0 } else { curvature_numerator(dim, n) / (r * r) })
}

/// Oscillator energy 𝓔 for principal number n and index ν on the sphere of radius D.
pub fn oscillator_energy(dim: usize, n: u32, nu: ComplexValue, d: f64) -> Result<ComplexValue> {
    check_dim(dim)?;
    let n = n as f64;
    let (a, b) = match dim {
        2 => ((n + 1.0) * (n + 2.0), n + 1.0),
        3 => ((n + 1.0) * (n + 4.0), n + 2.0),
        _ => ((n + 1.0) * (n + 8.0), n + 4.0),
    };
    Ok((a + (2.0 * nu - 1.0) * b) / (2.0 * d * d))
}

/// The Coulomb/oscillator parameter dictionary for one Coulomb level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityParams {
    pub dim: usize,
    /// Coulomb principal number N.
    pub n: u32,
    pub mu: f64,
    pub r: f64,
    /// D = √R.
    pub d: f64,
    /// Coulomb energy E_N.
    pub e: f64,
    /// Oscillator energy 𝓔.
    pub cal_e: ComplexValue,
    pub omega2: ComplexValue,
    /// ν = iσ − (N+½), iσ − N, iσ − (N+2).
    pub nu: ComplexValue,
    /// Principal square root of ω²D⁴ + ¼ (equal to −ν).
    pub nu_principal: ComplexValue,
    pub sigma: f64,
    /// Complexified coupling k = iμ.
    pub k: ComplexValue,
}

impl DualityParams {
    /// |ν² − (ω²D⁴ + ¼)|.
    pub fn branch_residual(&self) -> f64 {
        (self.nu * self.nu - (self.omega2 * self.d.powi(4) + 0.25)).norm()
    }
}

/// Builds the parameter record for level N of the Coulomb problem with coupling μ on the
/// sphere of radius R.
pub fn duality_params(dim: usize, mu: f64, r: f64, n: u32) -> Result<DualityParams> {
    let e = coulomb_energy(dim, n, mu, r)?;
    if r.is_infinite() {
        return Err(Error::Range("duality parameters need a finite radius".into()));
    }
    let d = r.sqrt();
    let d2 = d * d;
    let k = I * mu;
    let ne = effective_n(dim, n);
    let sigma = mu * r / ne;
    let nu = I * sigma - ne;
    let (cal_e, omega2) = match dim {
        2 => (2.0 * k, 2.0 * (e - k / d2)),
        3 => (2.0 * k - 1.0 / d2, (2.0 * e * d2 - 2.0 * k + 3.0 / (4.0 * d2)) / d2),
        _ => (2.0 * k - 6.0 / d2, 2.0 * (d2 * e - k + 15.0 / (8.0 * d2)) / d2),
    };
    let nu_principal = (omega2 * d.powi(4) + 0.25).sqrt();
    Ok(DualityParams { dim, n, mu, r, d, e, cal_e, omega2, nu, nu_principal, sigma, k })
}

/// The oscillator principal number carrying Coulomb level N: 2N in two and five dimensions,
/// 2(N−1) in three.
pub fn oscillator_level(dim: usize, n: u32) -> Result<u32> {
    check_dim(dim)?;
    match dim {
        3 if n == 0 => Err(Error::Range("N starts at 1 in three dimensions".into())),
        3 => Ok(2 * (n - 1)),
        _ => Ok(2 * n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn documented_values() {
        assert!((coulomb_energy(2, 0, 1.0, 1.0).unwrap() + 2.0).abs() < 1e-15);
        assert!((coulomb_energy(3, 1, 1.0, 1.0).unwrap() + 0.5).abs() < 1e-15);
        assert!((coulomb_energy(5, 0, 1.0, 1.0).unwrap() + 0.125).abs() < 1e-15);
        assert!((coulomb_energy(2, 3, 1.0, f64::INFINITY).unwrap() + 1.0 / (2.0 * 3.5 * 3.5)).abs() < 1e-15);
        assert!(coulomb_energy(3, 0, 1.0, 1.0).is_err());
        assert_eq!(oscillator_energy(2, 0, c64(0.5, 0.0), 1.0).unwrap(), c64(1.0, 0.0));
        assert_eq!(oscillator_energy(5, 0, c64(0.5, 0.0), 1.0).unwrap(), c64(4.0, 0.0));
        let p = duality_params(2, 1.0, 1.0, 0).unwrap();
        assert!((p.sigma - 2.0).abs() < 1e-15 && (p.nu - c64(-0.5, 2.0)).norm() < 1e-15 && (p.e + 2.0).abs() < 1e-15);
        let p = duality_params(3, 1.0, 1.0, 1).unwrap();
        assert!((p.sigma - 1.0).abs() < 1e-15 && (p.nu - c64(-1.0, 1.0)).norm() < 1e-15);
        let p = duality_params(2, 0.0, 2.0, 1).unwrap();
        assert_eq!(p.sigma, 0.0);
        assert!((p.nu - c64(-1.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn closure_and_branch() {
        for dim in [2, 3, 5] {
            for n in (if dim == 3 { 1 } else { 0 })..=10 {
                for mu in [0.5, 1.0, 2.0] {
                    for r in [1.0, 4.0] {
                        let p = duality_params(dim, mu, r, n).unwrap();
                        let osc = oscillator_energy(dim, oscillator_level(dim, n).unwrap(), p.nu, p.d).unwrap();
                        assert!((osc - p.cal_e).norm() <= 1e-12 * p.cal_e.norm(), "dim {dim} N {n}");
                        assert!(p.branch_residual() < 1e-9 * (1.0 + p.nu.norm_sqr()), "dim {dim} N {n}: {}", p.branch_residual());
                        assert!((p.nu_principal + p.nu).norm() < 1e-9 * p.nu.norm());
                    }
                }
            }
        }
    }
}
