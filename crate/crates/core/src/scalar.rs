//! A minimal scalar abstraction so the maps and charts can be evaluated either on plain
//! complex numbers or on forward-mode dual numbers (for exact tangent vectors).

use crate::ComplexValue;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field operations and the handful of analytic functions the charts need.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(c: ComplexValue) -> Self;
    fn value(&self) -> ComplexValue;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;

    fn real(x: f64) -> Self {
        Self::constant(ComplexValue::new(x, 0.0))
    }
    fn scale(self, c: ComplexValue) -> Self {
        self * Self::constant(c)
    }
}

impl Scalar for ComplexValue {
    fn constant(c: ComplexValue) -> Self {
        c
    }
    fn value(&self) -> ComplexValue {
        *self
    }
    fn sqrt(self) -> Self {
        ComplexValue::sqrt(self)
    }
    fn exp(self) -> Self {
        ComplexValue::exp(self)
    }
    fn sin(self) -> Self {
        ComplexValue::sin(self)
    }
    fn cos(self) -> Self {
        ComplexValue::cos(self)
    }
}

/// Dual number `re + eps·ε` with ε² = 0 and complex parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub re: ComplexValue,
    pub eps: ComplexValue,
}

impl Dual {
    pub fn new(re: ComplexValue, eps: ComplexValue) -> Self {
        Self { re, eps }
    }

    /// A variable seeded with unit derivative.
    pub fn variable(re: ComplexValue) -> Self {
        Self::new(re, ComplexValue::new(1.0, 0.0))
    }

    fn chain(self, f: ComplexValue, df: ComplexValue) -> Self {
        Self::new(f, df * self.eps)
    }
}

impl Add for Dual {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.eps + o.eps)
    }
}

impl Sub for Dual {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.eps - o.eps)
    }
}

impl Mul for Dual {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}

impl Div for Dual {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Self::new(q, (self.eps - q * o.eps) / o.re)
    }
}

impl Neg for Dual {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.eps)
    }
}

impl Scalar for Dual {
    fn constant(c: ComplexValue) -> Self {
        Self::new(c, ComplexValue::new(0.0, 0.0))
    }
    fn value(&self) -> ComplexValue {
        self.re
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        self.chain(s, 0.5 / s)
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e)
    }
    fn sin(self) -> Self {
        self.chain(self.re.sin(), self.re.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.re.cos(), -self.re.sin())
    }
}

/// Jacobian of `f: Cⁿ → Cᵐ` at `x` by forward-mode differentiation; row `k` is ∂f/∂x_k.
pub fn jacobian_rows<F>(f: F, x: &[ComplexValue]) -> Vec<Vec<ComplexValue>>
where
    F: Fn(&[Dual]) -> Vec<Dual>,
{
    (0..x.len())
        .map(|k| {
            let seeded: Vec<Dual> = x
                .iter()
                .enumerate()
                .map(|(j, &v)| if j == k { Dual::variable(v) } else { Dual::constant(v) })
                .collect();
            f(&seeded).iter().map(|d| d.eps).collect()
        })
        .collect()
}

/// Directional derivative of `f` at `x` along `dx`.
pub fn directional<F>(f: F, x: &[ComplexValue], dx: &[ComplexValue]) -> Vec<ComplexValue>
where
    F: Fn(&[Dual]) -> Vec<Dual>,
{
    let seeded: Vec<Dual> = x.iter().zip(dx).map(|(&v, &d)| Dual::new(v, d)).collect();
    f(&seeded).iter().map(|d| d.eps).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn dual_derivatives_match_closed_forms() {
        let z = c64(0.3, 0.2);
        let d = Dual::variable(z);
        let f = (d.sin() * d.exp()).sqrt() / (d + Dual::real(2.0));
        // f = sqrt(sin z e^z)/(z+2)
        let g = |z: ComplexValue| (z.sin() * z.exp()).sqrt() / (z + 2.0);
        let h = 1e-6;
        let fd = (g(z + h) - g(z - h)) / (2.0 * h);
        assert!((f.re - g(z)).norm() < 1e-15);
        assert!((f.eps - fd).norm() < 1e-9);
        assert!((d.cos().eps + z.sin()).norm() < 1e-15);
    }

    #[test]
    fn jacobian_of_polynomial_map() {
        let f = |x: &[Dual]| vec![x[0] * x[1], x[0] * x[0] - x[1]];
        let j = jacobian_rows(f, &[c64(2.0, 0.0), c64(3.0, 1.0)]);
        assert_eq!(j[0], vec![c64(3.0, 1.0), c64(4.0, 0.0)]);
        assert_eq!(j[1], vec![c64(2.0, 0.0), c64(-1.0, 0.0)]);
    }
}
