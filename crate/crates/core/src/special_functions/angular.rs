use super::gamma::fact;
use crate::{ComplexValue, Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// A half-integer stored as twice its value, so integrality and triangle tests are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub const fn from_twice(twice: i32) -> Self {
        Self { twice }
    }
    pub const fn int(n: i32) -> Self {
        Self { twice: 2 * n }
    }
    /// Parses a float that must be an integer or half-integer.
    pub fn from_f64(x: f64) -> Result<Self> {
        let t = 2.0 * x;
        if (t - t.round()).abs() > 1e-12 {
            return Err(Error::Domain(format!("{x} is not a multiple of 1/2")));
        }
        Ok(Self { twice: t.round() as i32 })
    }
    pub const fn twice(self) -> i32 {
        self.twice
    }
    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }
    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }
    pub fn abs(self) -> Self {
        Self { twice: self.twice.abs() }
    }
}

impl From<i32> for HalfInt {
    fn from(n: i32) -> Self {
        Self::int(n)
    }
}

impl std::ops::Add for HalfInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { twice: self.twice + o.twice }
    }
}

impl std::ops::Sub for HalfInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { twice: self.twice - o.twice }
    }
}

impl std::ops::Neg for HalfInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Integer value of a sum of half-integers already known to be integral.
fn integral(twice: i32) -> i64 {
    debug_assert!(twice % 2 == 0);
    (twice / 2) as i64
}

fn check_projection(l: HalfInt, m: HalfInt) -> Result<()> {
    if l.twice < 0 || m.twice.abs() > l.twice || (l.twice - m.twice) % 2 != 0 {
        return Err(Error::Domain(format!("invalid (l, m) = ({l}, {m})")));
    }
    Ok(())
}

/// Small Wigner function d^l_{m1,m2}(β).
///
/// Convention: d^l_{m1,m2}(β) = ⟨l m2| e^{−iβJ_y} |l m1⟩, so that d^1_{1,0} = +sin β/√2 and
/// 𝒟^l_{m,0}(α,β,γ) = (−1)^m √(4π/(2l+1)) Y_lm(β,α) with Condon–Shortley harmonics.
pub fn wigner_d(l: HalfInt, m1: HalfInt, m2: HalfInt, beta: f64) -> Result<f64> {
    check_projection(l, m1)?;
    check_projection(l, m2)?;
    let j = l.twice;
    let lp1 = integral(j + m1.twice);
    let lm1 = integral(j - m1.twice);
    let lp2 = integral(j + m2.twice);
    let lm2 = integral(j - m2.twice);
    let d21 = integral(m2.twice - m1.twice);
    let norm = (fact(lp1) * fact(lm1) * fact(lp2) * fact(lm2)).sqrt();
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let s_min = 0.max(-d21);
    let s_max = lp1.min(lm2);
    let mut sum = 0.0;
    for k in s_min..=s_max {
        let sign = if (d21 + k) % 2 == 0 { 1.0 } else { -1.0 };
        let den = fact(lp1 - k) * fact(k) * fact(d21 + k) * fact(lm2 - k);
        let pc = (lp1 + lm2 - 2 * k) as i32; // exponent of cos(β/2): 2l + m1 − m2 − 2k
        let ps = (d21 + 2 * k) as i32;
        sum += sign * c.powi(pc) * s.powi(ps) / den;
    }
    Ok(norm * sum)
}

/// Wigner function 𝒟^l_{m1,m2}(α,β,γ) = e^{i m1 α} d^l_{m1,m2}(β) e^{i m2 γ}.
#[allow(non_snake_case)]
pub fn wigner_D(l: HalfInt, m1: HalfInt, m2: HalfInt, alpha: f64, beta: f64, gamma: f64) -> Result<ComplexValue> {
    let d = wigner_d(l, m1, m2, beta)?;
    let phase = m1.value() * alpha + m2.value() * gamma;
    Ok(ComplexValue::from_polar(d, phase))
}

/// Clebsch–Gordan coefficient ⟨j1 m1; j2 m2 | J M⟩ by Racah's formula.
/// Invalid couplings (triangle, projection or M ≠ m1+m2) give 0.
pub fn clebsch_gordan(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, jj: HalfInt, mm: HalfInt) -> f64 {
    let valid = |j: HalfInt, m: HalfInt| check_projection(j, m).is_ok();
    if !valid(j1, m1) || !valid(j2, m2) || !valid(jj, mm) || m1.twice + m2.twice != mm.twice {
        return 0.0;
    }
    let (a, b, c) = (j1.twice, j2.twice, jj.twice);
    if c < (a - b).abs() || c > a + b || (a + b + c) % 2 != 0 {
        return 0.0;
    }
    let t1 = integral(c + a - b);
    let t2 = integral(c - a + b);
    let t3 = integral(a + b - c);
    let t4 = integral(a + b + c) + 1;
    let pre = ((c as f64 + 1.0) * fact(t1) * fact(t2) * fact(t3) / fact(t4)).sqrt()
        * (fact(integral(c + mm.twice))
            * fact(integral(c - mm.twice))
            * fact(integral(a - m1.twice))
            * fact(integral(a + m1.twice))
            * fact(integral(b - m2.twice))
            * fact(integral(b + m2.twice)))
        .sqrt();
    let e1 = t3;
    let e2 = integral(a - m1.twice);
    let e3 = integral(b + m2.twice);
    let e4 = integral(c - b + m1.twice);
    let e5 = integral(c - a - m2.twice);
    let k_min = 0.max(-e4).max(-e5);
    let k_max = e1.min(e2).min(e3);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / (fact(k) * fact(e1 - k) * fact(e2 - k) * fact(e3 - k) * fact(e4 + k) * fact(e5 + k));
    }
    pre * sum
}

/// Orthonormal spherical harmonic Y_lm(β, α) with the Condon–Shortley phase.
pub fn sph_harm(l: u32, m: i32, beta: f64, alpha: f64) -> Result<ComplexValue> {
    if m.unsigned_abs() > l {
        return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    let am = m.unsigned_abs();
    let x = beta.cos();
    let sx = beta.sin();
    // normalized P̄_m^m, then upward in l
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for k in 1..=am {
        let kf = k as f64;
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * sx;
    }
    let value = if l == am {
        pmm
    } else {
        let mf = am as f64;
        let mut p_prev = pmm;
        let mut p = x * (2.0 * mf + 3.0).sqrt() * pmm;
        for ll in (am + 2)..=l {
            let lf = ll as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let a_prev = ((4.0 * (lf - 1.0).powi(2) - 1.0) / ((lf - 1.0).powi(2) - mf * mf)).sqrt();
            let next = a * (x * p - p_prev / a_prev);
            p_prev = p;
            p = next;
        }
        p
    };
    let y = ComplexValue::from_polar(value, am as f64 * alpha);
    if m < 0 {
        let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * y.conj())
    } else {
        Ok(y)
    }
}

/// Casimir eigenvalue l(l+1) of a half-integer angular momentum.
pub fn casimir(l: HalfInt) -> f64 {
    l.value() * (l.value() + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn wigner_small_cases() {
        assert_eq!(wigner_d(h(0), h(0), h(0), 1.1).unwrap(), 1.0);
        let v = wigner_d(h(2), h(0), h(0), 0.3).unwrap();
        assert!((v - 0.3f64.cos()).abs() < 1e-15);
        let v = wigner_d(h(2), h(2), h(0), 0.3).unwrap();
        assert!((v - 0.3f64.sin() / 2f64.sqrt()).abs() < 1e-15);
        assert!(wigner_d(h(2), h(1), h(0), 0.3).is_err());
        assert!(wigner_d(h(2), h(4), h(0), 0.3).is_err());
    }

    #[test]
    fn d_at_zero_is_identity() {
        for j in 0..9 {
            for a in (-j..=j).step_by(2) {
                for b in (-j..=j).step_by(2) {
                    let v = wigner_d(h(j), h(a), h(b), 0.0).unwrap();
                    assert_eq!(v, if a == b { 1.0 } else { 0.0 });
                }
            }
        }
    }

    #[test]
    fn w1_relation_with_spherical_harmonics() {
        let (alpha, beta, gamma) = (0.4, 1.1, 2.3);
        for l in 0..5i32 {
            for m in -l..=l {
                let d = wigner_D(HalfInt::int(l), HalfInt::int(m), HalfInt::ZERO, alpha, beta, gamma).unwrap();
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let y = sph_harm(l as u32, m, beta, alpha).unwrap() * sign * (4.0 * PI / (2 * l + 1) as f64).sqrt();
                assert!((d - y).norm() < 1e-13, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn cg_documented_values() {
        let z = HalfInt::ZERO;
        let one = HalfInt::int(1);
        let two = HalfInt::int(2);
        assert!((clebsch_gordan(one, z, one, z, two, z) - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        for l in 0..4 {
            for m in -l..=l {
                let (lj, mj) = (HalfInt::int(l), HalfInt::int(m));
                assert!((clebsch_gordan(lj, mj, z, z, lj, mj) - 1.0).abs() < 1e-15);
                assert_eq!(clebsch_gordan(lj, mj, z, z, HalfInt::int(l + 1), mj), 0.0);
            }
        }
        // ⟨½ ½; ½ −½|0 0⟩ = 1/√2
        let v = clebsch_gordan(h(1), h(1), h(1), h(-1), z, z);
        assert!((v - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn cg_orthogonality_exhaustive() {
        for a in 0..=4 {
            for b in 0..=4 {
                let (j1, j2) = (h(a), h(b));
                let js: Vec<i32> = ((a - b).abs()..=a + b).step_by(2).collect();
                for &c in &js {
                    for &c2 in &js {
                        for mt in (-c..=c).step_by(2) {
                            let mut s = 0.0;
                            for m1 in (-a..=a).step_by(2) {
                                let m2 = mt - m1;
                                s += clebsch_gordan(j1, h(m1), j2, h(m2), h(c), h(mt))
                                    * clebsch_gordan(j1, h(m1), j2, h(m2), h(c2), h(mt));
                            }
                            let want = if c == c2 && mt.abs() <= c2 { 1.0 } else { 0.0 };
                            assert!((s - want).abs() < 1e-13);
                        }
                    }
                }
                for m1 in (-a..=a).step_by(2) {
                    for m2 in (-b..=b).step_by(2) {
                        for m1p in (-a..=a).step_by(2) {
                            let m2p = m1 + m2 - m1p;
                            let mut s = 0.0;
                            for &c in &js {
                                s += clebsch_gordan(j1, h(m1), j2, h(m2), h(c), h(m1 + m2))
                                    * clebsch_gordan(j1, h(m1p), j2, h(m2p), h(c), h(m1 + m2));
                            }
                            let want = if m1 == m1p { 1.0 } else { 0.0 };
                            assert!((s - want).abs() < 1e-13);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spherical_harmonic_values() {
        let y = sph_harm(0, 0, 0.3, 0.1).unwrap();
        assert!((y.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-16);
        let y = sph_harm(1, 0, PI / 3.0, 0.7).unwrap();
        assert!((y.re - (3.0 / (4.0 * PI)).sqrt() / 2.0).abs() < 1e-15);
        let y = sph_harm(1, 1, 0.9, 0.2).unwrap();
        let want = ComplexValue::from_polar(-(3.0 / (8.0 * PI)).sqrt() * 0.9f64.sin(), 0.2);
        assert!((y - want).norm() < 1e-15);
        assert!(sph_harm(1, 2, 0.1, 0.1).is_err());
    }

    #[test]
    fn half_int_parsing() {
        assert_eq!(HalfInt::from_f64(1.5).unwrap().twice(), 3);
        assert!(HalfInt::from_f64(0.3).is_err());
        assert_eq!(format!("{}", h(3)), "3/2");
        assert_eq!(format!("{}", h(-4)), "-2");
    }
}
