use crate::{c64, ComplexValue};

/// Jacobi polynomial P_n^{(α,β)}(x) for complex parameters through the Pfaff-transformed
/// terminating series
/// P = C(n+α, n) ((x+1)/2)^n ₂F₁(−n, −n−β; α+1; (x−1)/(x+1)),
/// which equals (α+1)_n / n! · ₂F₁(−n, n+α+β+1; α+1; (1−x)/2).
///
/// Expanded, the k-th term is C(n+α, n−k) C(n+β, k) ((x−1)/2)^k ((x+1)/2)^{n−k}. No
/// (α+1)_k division occurs, so every α, β is allowed, and on [−1, 1] the terms stay
/// small where the untransformed series cancels heavily.
pub fn jacobi_poly(n: u32, alpha: ComplexValue, beta: ComplexValue, x: f64) -> ComplexValue {
    let (y, w) = ((x - 1.0) / 2.0, (x + 1.0) / 2.0);
    let nf = n as f64;
    let binom = |top: ComplexValue, k: u32| (0..k).fold(c64(1.0, 0.0), |acc, i| acc * (top - i as f64) / (i as f64 + 1.0));
    let mut sum = c64(0.0, 0.0);
    let mut b_k = c64(1.0, 0.0); // C(n+β, k)
    for k in 0..=n {
        sum += binom(alpha + nf, n - k) * b_k * y.powi(k as i32) * w.powi((n - k) as i32);
        b_k = b_k * (beta + nf - k as f64) / (k as f64 + 1.0);
    }
    sum
}

/// Jacobi polynomial by the three-term recurrence; real parameters with α, β > −1.
pub fn jacobi_poly_recurrence(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let mut p1 = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + alpha + beta;
        let a1 = 2.0 * k * (k + alpha + beta) * (s - 2.0);
        let a2 = (s - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (s - 2.0) * (s - 1.0) * s;
        let a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
        let p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Gegenbauer polynomial C_n^λ(x) by its three-term recurrence.
pub fn gegenbauer(n: u32, lam: f64, x: f64) -> f64 {
    let mut c0 = 1.0;
    if n == 0 {
        return c0;
    }
    let mut c1 = 2.0 * lam * x;
    for k in 2..=n {
        let k = k as f64;
        let c2 = (2.0 * x * (k + lam - 1.0) * c1 - (k + 2.0 * lam - 2.0) * c0) / k;
        c0 = c1;
        c1 = c2;
    }
    c1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::gamma::factorial;

    #[test]
    fn documented_values() {
        assert_eq!(jacobi_poly(0, c64(3.0, 1.0), c64(-0.2, 0.0), 0.3), c64(1.0, 0.0));
        let p = jacobi_poly(2, c64(0.0, 0.0), c64(0.0, 0.0), 0.5);
        assert!((p - c64(-0.125, 0.0)).norm() < 1e-15);
        assert!((jacobi_poly_recurrence(2, 0.0, 0.0, 0.5) + 0.125).abs() < 1e-15);
        assert_eq!(gegenbauer(0, 1.5, 0.4), 1.0);
        assert!((gegenbauer(1, 1.5, 0.4) - 1.2).abs() < 1e-15);
    }

    #[test]
    fn jacobi_gegenbauer_proportionality() {
        // P^{(2L+1,2L+1)}_{λ−2L} = (4L+2)!(λ+1)!/((2L+1)!(2L+λ+2)!) C^{2L+3/2}_{λ−2L}
        let (l, lam, theta) = (1u32, 3u32, 0.7f64);
        let n = lam - 2 * l;
        let a = (2 * l + 1) as f64;
        let p = jacobi_poly(n, c64(a, 0.0), c64(a, 0.0), theta.cos()).re;
        let pref = factorial(4 * l + 2) * factorial(lam + 1) / (factorial(2 * l + 1) * factorial(2 * l + lam + 2));
        let c = pref * gegenbauer(n, 2.0 * l as f64 + 1.5, theta.cos());
        assert!((p - c).abs() / p.abs() < 1e-12);
    }

    #[test]
    fn complex_parameter_against_rf22_form() {
        // ₂F₁(−n, n+ν+|m|+1; |m|+1; sin²ϑ) = n!|m|!/(n+|m|)! · P^{(|m|,ν)}_n(cos 2ϑ)
        use crate::special_functions::hypergeometric::hyp2f1_terminating;
        let nu = c64(-0.5, 2.0);
        for (nr, m) in [(0u32, 0u32), (1, 0), (2, 1), (3, 2)] {
            for &th in &[0.2f64, 0.7, 1.3] {
                let f = hyp2f1_terminating(nr, nu + (nr + m + 1) as f64, c64((m + 1) as f64, 0.0), c64(th.sin().powi(2), 0.0))
                    .unwrap();
                let lhs = f;
                let rhs = jacobi_poly(nr, c64(m as f64, 0.0), nu, (2.0 * th).cos()) * factorial(nr) * factorial(m)
                    / factorial(nr + m);
                assert!((lhs - rhs).norm() / rhs.norm() < 1e-13, "{nr} {m} {th}");
            }
        }
    }
}
