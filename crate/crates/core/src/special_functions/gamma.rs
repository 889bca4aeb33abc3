use crate::{c64, ComplexValue, Error, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(z: ComplexValue) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// log(sin πz), stable for large |Im z|.
fn ln_sin_pi(z: ComplexValue) -> ComplexValue {
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin πz = e^{-iπz} (e^{2iπz} - 1) / (2i), with |e^{2iπz}| ≤ 1 here.
    let ipz = c64(0.0, PI) * z;
    let e2 = (ipz * 2.0).exp();
    -ipz + ((e2 - 1.0) / c64(0.0, 2.0)).ln()
}

fn lanczos_ln_gamma(z: ComplexValue) -> ComplexValue {
    let z = z - 1.0;
    let mut x = c64(LANCZOS_COEF[0], 0.0);
    for (i, &p) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// log Γ(z) for complex `z` via the Lanczos approximation (g = 7, nine terms), with
/// the reflection formula for Re z < 1/2. The imaginary part is determined up to
/// multiples of 2π; `exp` of the result is Γ(z).
pub fn complex_log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Parameter(format!("non-finite argument {z}")));
    }
    if is_pole(z) {
        return Err(Error::Pole(format!("{}", z.re)));
    }
    if z.re < 0.5 {
        Ok(PI.ln() - ln_sin_pi(z) - lanczos_ln_gamma(1.0 - z))
    } else {
        Ok(lanczos_ln_gamma(z))
    }
}

/// Γ(z) for complex `z`.
pub fn complex_gamma(z: ComplexValue) -> Result<ComplexValue> {
    complex_log_gamma(z).map(|l| l.exp())
}

/// Rising factorial (a)_n = a (a+1) ··· (a+n-1).
pub fn pochhammer(a: ComplexValue, n: u32) -> ComplexValue {
    (0..n).fold(c64(1.0, 0.0), |acc, k| acc * (a + k as f64))
}

/// n! as a float; exact for n ≤ 22 and correctly rounded products beyond.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Factorial of a non-negative integer given as a signed value; panics on negative
/// arguments, which indicate a caller bug rather than bad input.
pub(crate) fn fact(n: i64) -> f64 {
    assert!(n >= 0, "factorial of negative integer {n}");
    factorial(n as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert!(complex_log_gamma(c64(1.0, 0.0)).unwrap().norm() < 1e-15);
        let half = complex_log_gamma(c64(0.5, 0.0)).unwrap();
        assert!((half - c64(PI.sqrt().ln(), 0.0)).norm() < 1e-14);
        let g5 = complex_gamma(c64(5.0, 0.0)).unwrap();
        assert!((g5.re - 24.0).abs() < 1e-12);
        let gneg = complex_gamma(c64(-0.5, 0.0)).unwrap();
        assert!((gneg.re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn modulus_identity_cosh() {
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        let g = complex_gamma(c64(0.5, 2.0)).unwrap();
        let want = PI / (2.0 * PI).cosh();
        assert!((g.norm_sqr() - want).abs() / want < 1e-12);
    }

    #[test]
    fn poles_are_rejected() {
        for n in 0..5 {
            assert!(matches!(complex_log_gamma(c64(-(n as f64), 0.0)), Err(Error::Pole(_))));
        }
        assert!(complex_log_gamma(c64(-1.0, 1e-300)).is_ok());
    }

    #[test]
    fn large_imaginary_part_stays_finite() {
        let l = complex_log_gamma(c64(-3.2, 80.0)).unwrap();
        assert!(l.re.is_finite() && l.im.is_finite());
        // recurrence Γ(z+1) = z Γ(z) in log form
        let z = c64(-3.2, 80.0);
        let d = complex_log_gamma(z + 1.0).unwrap() - l - z.ln();
        let k = (d.im / (2.0 * PI)).round();
        assert!((d - c64(0.0, 2.0 * PI * k)).norm() < 1e-11);
    }

    #[test]
    fn pochhammer_matches_gamma_ratio() {
        let a = c64(0.3, -1.7);
        let ratio = complex_gamma(a + 4.0).unwrap() / complex_gamma(a).unwrap();
        assert!((pochhammer(a, 4) - ratio).norm() / ratio.norm() < 1e-12);
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(10), 3_628_800.0);
    }
}
