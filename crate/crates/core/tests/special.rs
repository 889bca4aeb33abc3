mod common;

use common::{cg_table, gegenbauer_sum, h, jacobi_sum, wigner_d_expm};
use kepler_duality::quantum_spectra::z_function;
use kepler_duality::geometry_quadrature::gauss_legendre;
use kepler_duality::special_functions::*;
use kepler_duality::{c64, ComplexValue};
use proptest::prelude::*;
use std::f64::consts::PI;

const XS: [f64; 7] = [-0.97, -0.6, -0.2, 0.0, 0.35, 0.8, 0.99];
const BETAS: [f64; 6] = [0.0, 0.3, 1.1, PI / 2.0, 2.4, 3.05];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

#[test]
fn jacobi_matches_binomial_sum() {
    let params = [(0.0, 0.0), (1.0, 0.0), (0.5, 1.5), (2.0, 3.0), (-0.5, -0.5), (4.0, 1.0), (0.3, 2.7)];
    for n in 0..=12 {
        for &(a, b) in &params {
            for &x in &XS {
                let want = jacobi_sum(n, a, b, x);
                let hyper = jacobi_poly(n, c64(a, 0.0), c64(b, 0.0), x);
                let rec = jacobi_poly_recurrence(n, a, b, x);
                assert!(rel(hyper.re, want) < 1e-12 && hyper.im == 0.0, "n {n} ({a},{b}) x {x}: {hyper} vs {want}");
                assert!(rel(rec, want) < 1e-12, "recurrence n {n} ({a},{b}) x {x}: {rec} vs {want}");
            }
        }
    }
}

#[test]
fn jacobi_accepts_complex_parameters() {
    // the hypergeometric form is a polynomial in α and β, so check linearity in a small shift
    let (a, b) = (c64(0.5, 0.8), c64(1.0, -0.3));
    for n in 0..=6 {
        let p = jacobi_poly(n, a, b, 0.4);
        let pc = jacobi_poly(n, a.conj(), b.conj(), 0.4);
        assert!((p.conj() - pc).norm() < 1e-12, "n {n}");
    }
    let p1 = jacobi_poly(1, a, b, 0.4);
    let want = (a + 1.0) + (a + b + 2.0) * (0.4 - 1.0) / 2.0;
    assert!((p1 - want).norm() < 1e-14);
}

#[test]
fn gegenbauer_matches_power_series() {
    for n in 0..=12 {
        for lam in [0.5, 1.0, 1.5, 2.0, 3.5, 0.25] {
            for &x in &XS {
                let (got, want) = (gegenbauer(n, lam, x), gegenbauer_sum(n, lam, x));
                assert!(rel(got, want) < 1e-12, "n {n} lambda {lam} x {x}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn legendre_is_the_half_gegenbauer() {
    for n in 0..=12 {
        for &x in &XS {
            assert!(rel(gegenbauer(n, 0.5, x), jacobi_sum(n, 0.0, 0.0, x)) < 1e-12);
        }
    }
}

#[test]
fn wigner_d_matches_matrix_exponential() {
    for tl in 0..=24 {
        for &beta in &BETAS {
            let oracle = wigner_d_expm(tl, beta);
            for tm1 in (-tl..=tl).step_by(2) {
                for tm2 in (-tl..=tl).step_by(2) {
                    let got = wigner_d(h(tl), h(tm1), h(tm2), beta).unwrap();
                    let want = oracle(tm1, tm2);
                    assert!((got - want).abs() < 1e-12, "l {tl}/2 m {tm1}/2 {tm2}/2 beta {beta}: {got} vs {want}");
                }
            }
        }
    }
}

#[test]
fn wigner_d_documented_values() {
    let b = 0.7f64;
    assert!((wigner_d(h(2), h(2), h(0), b).unwrap() - b.sin() / 2f64.sqrt()).abs() < 1e-15);
    assert!((wigner_d(h(1), h(1), h(1), b).unwrap() - (b / 2.0).cos()).abs() < 1e-15);
    assert!((wigner_d(h(2), h(0), h(0), b).unwrap() - b.cos()).abs() < 1e-15);
    assert!(wigner_d(h(2), h(4), h(0), b).is_err());
    assert!(wigner_d(h(2), h(1), h(0), b).is_err());
    let big = wigner_D(h(2), h(2), h(0), 0.4, b, 1.3).unwrap();
    assert!((big - ComplexValue::from_polar(b.sin() / 2f64.sqrt(), 0.4)).norm() < 1e-15);
}

#[test]
fn clebsch_gordan_matches_lowering_construction() {
    for tj1 in 0..=12 {
        for tj2 in 0..=12 {
            let table = cg_table(tj1, tj2);
            let mut tjj = (tj1 - tj2).abs();
            while tjj <= tj1 + tj2 {
                for tmm in (-tjj..=tjj).step_by(2) {
                    for tm1 in (-tj1..=tj1).step_by(2) {
                        let tm2 = tmm - tm1;
                        let got = clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tjj), h(tmm));
                        let want = if tm2.abs() <= tj2 { table.get(&(tjj, tmm, tm1)).copied().unwrap_or(0.0) } else { 0.0 };
                        assert!((got - want).abs() < 1e-12, "<{tj1} {tm1}; {tj2} {tm2} | {tjj} {tmm}> (twice): {got} vs {want}");
                    }
                }
                tjj += 2;
            }
        }
    }
}

#[test]
fn clebsch_gordan_invalid_couplings_vanish() {
    assert_eq!(clebsch_gordan(h(2), h(2), h(2), h(0), h(2), h(0)), 0.0); // M ≠ m1 + m2
    assert_eq!(clebsch_gordan(h(2), h(0), h(2), h(0), h(6), h(0)), 0.0); // triangle
    assert_eq!(clebsch_gordan(h(2), h(1), h(2), h(-1), h(2), h(0)), 0.0); // parity of projection
    let half = clebsch_gordan(h(1), h(1), h(1), h(-1), h(0), h(0));
    assert!((half - 0.5f64.sqrt()).abs() < 1e-15);
}

#[test]
fn sph_harm_matches_wigner_column() {
    for l in 0..=12u32 {
        let tl = 2 * l as i32;
        for &beta in &BETAS {
            let oracle = wigner_d_expm(tl, beta);
            for m in -(l as i32)..=l as i32 {
                let alpha = 0.9;
                let want = ComplexValue::from_polar(((2 * l + 1) as f64 / (4.0 * PI)).sqrt() * oracle(0, 2 * m), m as f64 * alpha);
                let got = sph_harm(l, m, beta, alpha).unwrap();
                assert!((got - want).norm() < 1e-12, "Y_{l}{m}({beta}): {got} vs {want}");
            }
        }
    }
    let y11 = sph_harm(1, 1, 0.6, 0.0).unwrap();
    assert!((y11.re + (3.0 / (8.0 * PI)).sqrt() * 0.6f64.sin()).abs() < 1e-15);
    assert!(sph_harm(2, 3, 0.1, 0.0).is_err());
}

#[test]
fn gamma_known_values() {
    let g = complex_gamma(c64(1.0, 1.0)).unwrap();
    assert!((g - c64(0.498015668118356, -0.1549498283018106)).norm() < 1e-14);
    assert!((complex_gamma(c64(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-14);
    assert!((complex_gamma(c64(-0.5, 0.0)).unwrap().re + 2.0 * PI.sqrt()).abs() < 1e-13);
    for n in 1..=15u32 {
        let g = complex_gamma(c64(n as f64, 0.0)).unwrap();
        assert!((g.re / factorial(n - 1) - 1.0).abs() < 1e-13, "Gamma({n})");
    }
    assert!(complex_gamma(c64(-2.0, 0.0)).is_err());
    assert!(complex_gamma(c64(f64::NAN, 0.0)).is_err());
}

#[test]
fn hyp2f1_matches_direct_sum() {
    let (b, c) = (c64(1.3, -0.4), c64(2.1, 0.6));
    let z = c64(0.3, 0.45);
    for n in 0..=12u32 {
        let mut want = c64(0.0, 0.0);
        for k in 0..=n {
            want += pochhammer(c64(-(n as f64), 0.0), k) * pochhammer(b, k) / (pochhammer(c, k) * factorial(k)) * z.powu(k);
        }
        let got = hyp2f1_terminating(n, b, c, z).unwrap();
        let poly = hyp2f1_coefficients(n, b, c).unwrap().eval(z);
        assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "n {n}");
        assert!((poly - want).norm() < 1e-12 * want.norm().max(1.0), "coefficients n {n}");
    }
    assert!(hyp2f1_terminating(3, b, c64(-1.0, 0.0), z).is_err());
    assert!(hyp2f1_terminating(1, b, c64(-1.0, 0.0), z).is_ok());
}

#[test]
fn z_functions_orthonormal_across_families() {
    let rule = gauss_legendre(96, 0.0, PI).unwrap();
    for (tj, tl) in [(0, 0), (1, 1), (2, 0), (0, 2), (3, 1), (2, 4)] {
        let lams: Vec<u32> = (0..=8).filter(|&lam| { let n = 2 * lam as i32 - tj - tl; n >= 0 && n % 2 == 0 }).collect();
        for &a in &lams {
            for &b in &lams {
                let g = rule.integrate(|th| {
                    z_function(h(tj), h(tl), a, th).unwrap() * z_function(h(tj), h(tl), b, th).unwrap() * th.sin().powi(3)
                });
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-10, "J {tj}/2 L {tl}/2 lambda {a},{b}: {g}");
            }
        }
    }
}

proptest! {
    #[test]
    fn wigner_d_rows_are_orthonormal(tl in 0i32..=16, beta in 0.0f64..PI, i in 0usize..17, j in 0usize..17) {
        let n = tl as usize + 1;
        let (tm1, tm2) = (tl - 2 * (i % n) as i32, tl - 2 * (j % n) as i32);
        let dot: f64 = (-tl..=tl).step_by(2)
            .map(|tm| wigner_d(h(tl), h(tm1), h(tm), beta).unwrap() * wigner_d(h(tl), h(tm2), h(tm), beta).unwrap())
            .sum();
        let want = if tm1 == tm2 { 1.0 } else { 0.0 };
        prop_assert!((dot - want).abs() < 1e-12);
    }

    #[test]
    fn wigner_d_symmetries(tl in 0i32..=16, beta in 0.0f64..PI, i in 0usize..17, j in 0usize..17) {
        let n = tl as usize + 1;
        let (tm1, tm2) = (tl - 2 * (i % n) as i32, tl - 2 * (j % n) as i32);
        let d = |a: i32, b: i32, x: f64| wigner_d(h(tl), h(a), h(b), x).unwrap();
        let sign = if ((tm1 - tm2) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((d(tm1, tm2, beta) - sign * d(tm2, tm1, beta)).abs() < 1e-12);
        prop_assert!((d(tm1, tm2, beta) - d(-tm2, -tm1, beta)).abs() < 1e-12);
        prop_assert!((d(tm1, tm2, -beta) - d(tm2, tm1, beta)).abs() < 1e-12);
    }

    #[test]
    fn clebsch_gordan_columns_are_orthonormal(tj1 in 0i32..=8, tj2 in 0i32..=8, a in 0usize..9, b in 0usize..9, k in 0usize..17) {
        let span = ((tj1 + tj2 - (tj1 - tj2).abs()) / 2 + 1) as usize;
        let (tja, tjb) = ((tj1 - tj2).abs() + 2 * (a % span) as i32, (tj1 - tj2).abs() + 2 * (b % span) as i32);
        let top = tja.min(tjb);
        let tmm = top - 2 * (k % (top as usize + 1)) as i32;
        let dot: f64 = (-tj1..=tj1).step_by(2)
            .map(|tm1| clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tmm - tm1), h(tja), h(tmm))
                * clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tmm - tm1), h(tjb), h(tmm)))
            .sum();
        let want = if tja == tjb { 1.0 } else { 0.0 };
        prop_assert!((dot - want).abs() < 1e-12);
    }

    #[test]
    fn spherical_harmonic_addition_theorem(l in 0u32..=12, beta in 0.0f64..PI, alpha in 0.0f64..(2.0 * PI)) {
        let sum: f64 = (-(l as i32)..=l as i32).map(|m| sph_harm(l, m, beta, alpha).unwrap().norm_sqr()).sum();
        prop_assert!((sum - (2 * l + 1) as f64 / (4.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn jacobi_reflection(n in 0u32..=12, a in -0.9f64..4.0, b in -0.9f64..4.0, x in -1.0f64..1.0) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = jacobi_poly_recurrence(n, a, b, -x);
        let rhs = sign * jacobi_poly_recurrence(n, b, a, x);
        prop_assert!((lhs - rhs).abs() < 1e-10 * rhs.abs().max(1.0));
    }

    #[test]
    fn gamma_recurrence(re in -3.5f64..6.0, im in 0.1f64..4.0) {
        let z = c64(re, im);
        let lhs = complex_gamma(z + 1.0).unwrap();
        let rhs = z * complex_gamma(z).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1e-300));
    }
}
