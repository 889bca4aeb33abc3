use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Nodes and weights of a quadrature rule on (a, b).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub interval: (f64, f64),
}

impl QuadratureRule {
    /// Σ wᵢ f(xᵢ) for a real integrand.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Σ wᵢ f(xᵢ) for a complex integrand.
    pub fn integrate_complex<F: Fn(f64) -> crate::ComplexValue>(&self, f: F) -> crate::ComplexValue {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Legendre P_n and its derivative at x by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Gauss–Legendre rule with `npoints` nodes mapped to (a, b); nodes are Newton-refined
/// roots of P_n started from the Chebyshev-like guess cos(π(i − 1/4)/(n + 1/2)).
pub fn gauss_legendre(npoints: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if npoints == 0 {
        return Err(Error::Range("a Gauss-Legendre rule needs at least one node".into()));
    }
    let n = npoints;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = mid;
    }
    Ok(QuadratureRule { nodes, weights, interval: (a, b) })
}

/// Composite Gauss–Legendre rule: `panels` equal panels with `npoints` nodes each.
pub fn composite_gauss_legendre(npoints: usize, panels: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if panels == 0 {
        return Err(Error::Range("at least one panel is required".into()));
    }
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(npoints * panels);
    let mut weights = Vec::with_capacity(npoints * panels);
    for p in 0..panels {
        let lo = a + width * p as f64;
        let rule = gauss_legendre(npoints, lo, lo + width)?;
        nodes.extend(rule.nodes);
        weights.extend(rule.weights);
    }
    Ok(QuadratureRule { nodes, weights, interval: (a, b) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_rules() {
        let r = gauss_legendre(1, -1.0, 1.0).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert!((r.weights[0] - 2.0).abs() < 1e-15);
        let r = gauss_legendre(5, -1.0, 1.0).unwrap();
        assert!((r.integrate(|x| x.powi(8)) - 2.0 / 9.0).abs() < 1e-14);
        let r = gauss_legendre(64, 0.0, PI).unwrap();
        assert!((r.integrate(f64::sin) - 2.0).abs() < 1e-14);
        assert!(gauss_legendre(0, 0.0, 1.0).is_err());
    }

    #[test]
    fn exact_to_degree_2n_minus_1() {
        for n in 1..30 {
            let r = gauss_legendre(n, 0.0, 2.0).unwrap();
            assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            let k = 2 * n - 1;
            let exact = 2f64.powi(k as i32 + 1) / (k as f64 + 1.0);
            assert!((r.integrate(|x| x.powi(k as i32)) - exact).abs() / exact < 1e-12, "n={n}");
        }
    }
}
