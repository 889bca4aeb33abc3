use super::PolyCoeffs;
use crate::{c64, ComplexValue, Error, Result};

fn check_denominator(c: ComplexValue, n: u32) -> Result<()> {
    for j in 0..n {
        if c + j as f64 == c64(0.0, 0.0) {
            return Err(Error::Parameter(format!(
                "denominator (c)_k vanishes: c = {c} with n = {n}"
            )));
        }
    }
    Ok(())
}

/// Coefficients of the polynomial ₂F₁(−n, b; c; z) in ascending powers of z.
pub fn hyp2f1_coefficients(n: u32, b: ComplexValue, c: ComplexValue) -> Result<PolyCoeffs> {
    check_denominator(c, n)?;
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut term = c64(1.0, 0.0);
    coeffs.push(term);
    for k in 0..n {
        let kf = k as f64;
        term = term * (kf - n as f64) * (b + kf) / ((c + kf) * (kf + 1.0));
        coeffs.push(term);
    }
    Ok(PolyCoeffs::new(coeffs))
}

/// The terminating Gauss series ₂F₁(−n, b; c; z), summed exactly over its n+1 terms.
pub fn hyp2f1_terminating(n: u32, b: ComplexValue, c: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    check_denominator(c, n)?;
    // Horner on the nested form 1 + a0 z (1 + a1 z (1 + ...)) keeps the ratios local.
    let mut acc = c64(1.0, 0.0);
    for k in (0..n).rev() {
        let kf = k as f64;
        let ratio = (kf - n as f64) * (b + kf) / ((c + kf) * (kf + 1.0));
        acc = 1.0 + ratio * z * acc;
    }
    Ok(acc)
}

/// The terminating confluent series ₁F₁(−n; c; z).
pub fn hyp1f1_terminating(n: u32, c: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    check_denominator(c, n)?;
    let mut acc = c64(1.0, 0.0);
    for k in (0..n).rev() {
        let kf = k as f64;
        let ratio = (kf - n as f64) / ((c + kf) * (kf + 1.0));
        acc = 1.0 + ratio * z * acc;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_2f1(n: u32, b: ComplexValue, c: ComplexValue, z: ComplexValue) -> ComplexValue {
        let poch = |a: ComplexValue, k: u32| (0..k).fold(c64(1.0, 0.0), |p, j| p * (a + j as f64));
        let mut s = c64(0.0, 0.0);
        for k in 0..=n {
            let fk: f64 = (1..=k).map(|j| j as f64).product();
            s += poch(c64(-(n as f64), 0.0), k) * poch(b, k) / (poch(c, k) * fk) * z.powu(k);
        }
        s
    }

    #[test]
    fn documented_values() {
        let any = c64(0.37, -2.0);
        assert_eq!(hyp2f1_terminating(0, any, any, any).unwrap(), c64(1.0, 0.0));
        let v = hyp2f1_terminating(1, c64(2.0, 0.0), c64(3.0, 0.0), c64(0.5, 0.0)).unwrap();
        assert!((v - c64(2.0 / 3.0, 0.0)).norm() < 1e-15);
        let v = hyp2f1_terminating(2, c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-15);
        assert_eq!(hyp1f1_terminating(0, any, any).unwrap(), c64(1.0, 0.0));
        let v = hyp1f1_terminating(1, c64(2.0, 0.0), c64(1.0, 0.0)).unwrap();
        assert!((v.re - 0.5).abs() < 1e-15);
        // 1F1(-2;1;2) = 1 - 2·2 + (−2)(−1)/(1·2)·4/2 = 1 − 4 + 2 = −1
        let v = hyp1f1_terminating(2, c64(1.0, 0.0), c64(2.0, 0.0)).unwrap();
        assert!((v.re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn matches_brute_force_series() {
        for n in 0..10 {
            let b = c64(0.5 + n as f64, 1.3);
            let c = c64(2.5, -0.4);
            let z = c64(0.3, 0.8);
            let want = brute_2f1(n, b, c, z);
            let got = hyp2f1_terminating(n, b, c, z).unwrap();
            assert!((got - want).norm() <= 1e-13 * want.norm().max(1.0));
            let poly = hyp2f1_coefficients(n, b, c).unwrap();
            assert!((poly.eval(z) - want).norm() <= 1e-13 * want.norm().max(1.0));
        }
    }

    #[test]
    fn vanishing_denominator_is_an_error() {
        assert!(hyp2f1_terminating(3, c64(1.0, 0.0), c64(-1.0, 0.0), c64(0.5, 0.0)).is_err());
        assert!(hyp1f1_terminating(3, c64(-2.0, 0.0), c64(0.5, 0.0)).is_err());
        // c = -3 is fine for n = 3: only (c)_k with k ≤ 3 appears, i.e. c, c+1, c+2.
        assert!(hyp2f1_terminating(3, c64(1.0, 0.0), c64(-3.0, 0.0), c64(0.5, 0.0)).is_ok());
    }
}
