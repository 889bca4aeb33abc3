use kepler_duality::duality_maps::AngleChart;
use kepler_duality::geometry_quadrature::{diamond_inner_product, gauss_legendre, sphere_inner_product, FdConfig, FdOrder};
use kepler_duality::quantum_spectra::*;
use kepler_duality::special_functions::HalfInt;
use kepler_duality::{c64, ComplexValue, Error};
use std::f64::consts::PI;

fn h(x: i32) -> HalfInt {
    HalfInt::from_twice(x)
}

fn close(a: ComplexValue, b: ComplexValue, tol: f64) -> bool {
    (a - b).norm() <= tol
}

#[test]
fn oscillator_states_have_unit_diamond_norm() {
    let d = 1.2;
    for nu in [c64(0.3, 0.0), c64(1.4, 0.0), c64(2.7, 0.0), c64(-0.6, 0.0)] {
        for (n_r, m) in [(0, 0), (1, 0), (0, 1), (2, -3), (1, 2)] {
            let q = QuantumNumbers::oscillator2(n_r, m).unwrap();
            let f = oscillator_chart_function(&q, nu, d).unwrap();
            let v = diamond_inner_product(&f, &f, 96).unwrap();
            assert!(close(v, c64(1.0, 0.0), 1e-8), "2D {q} nu {nu}: {v}");
        }
        for (n_r, l2, m1, m2) in [(0, 0, 0, 0), (1, 1, 1, -1), (0, 2, 2, 0), (2, 3, -1, 3)] {
            let q = QuantumNumbers::oscillator3(n_r, h(l2), h(m1), h(m2)).unwrap();
            let f = oscillator_chart_function(&q, nu, d).unwrap();
            let v = diamond_inner_product(&f, &f, 96).unwrap();
            assert!(close(v, c64(1.0, 0.0), 1e-8), "3D {q} nu {nu}: {v}");
        }
        // (n_r, λ, L, J, T, M, m', t), all doubled except n_r and λ
        for (n_r, lam, l, j, t, mj, mf, tf) in [(0, 0, 0, 0, 0, 0, 0, 0), (1, 1, 1, 1, 0, 1, -1, 0), (0, 2, 2, 2, 2, 0, 2, -2), (1, 2, 1, 1, 2, -1, 1, 0)] {
            let q = QuantumNumbers::oscillator5(n_r, lam, h(l), h(j), h(t), h(mj), h(mf), h(tf)).unwrap();
            let f = oscillator_chart_function(&q, nu, d).unwrap();
            let v = diamond_inner_product(&f, &f, 64).unwrap();
            assert!(close(v, c64(1.0, 0.0), 1e-8), "5D {q} nu {nu}: {v}");
        }
    }
}

#[test]
fn oscillator_states_with_different_m_are_diamond_orthogonal() {
    let nu = c64(0.4, 0.0);
    let a = oscillator_chart_function(&QuantumNumbers::oscillator2(0, 2).unwrap(), nu, 1.0).unwrap();
    let c = oscillator_chart_function(&QuantumNumbers::oscillator2(1, 1).unwrap(), nu, 1.0).unwrap();
    let ac = diamond_inner_product(&a, &c, 64).unwrap();
    assert!(ac.norm() < 1e-10, "{ac}");
}

#[test]
fn z_functions_are_orthonormal() {
    let rule = gauss_legendre(64, 0.0, PI).unwrap();
    for (j, l, lam) in [(0, 0, 0), (2, 2, 2), (1, 3, 3), (2, 0, 3)] {
        let z = |th: f64| z_function(h(j), h(l), lam, th).unwrap();
        let norm = rule.integrate(|th| z(th) * z(th) * th.sin().powi(3));
        assert!((norm - 1.0).abs() < 1e-10, "J {j}/2 L {l}/2 lambda {lam}: {norm}");
    }
    let a = |th: f64| z_function(h(0), h(0), 0, th).unwrap();
    let b = |th: f64| z_function(h(0), h(0), 2, th).unwrap();
    assert!(rule.integrate(|th| a(th) * b(th) * th.sin().powi(3)).abs() < 1e-12);
    assert!(z_function(h(2), h(2), 1, 0.3).is_err());
}

#[test]
fn oscillator_hemisphere_values() {
    let nu = c64(0.3, 0.5);
    let q = QuantumNumbers::oscillator2(0, 0).unwrap();
    let c = oscillator_constant(&q, nu, 1.0).unwrap();
    let at0 = oscillator_wavefunction(2, &q, nu, &AngleChart::default(), 1.0).unwrap();
    assert!(close(at0, c / (2.0 * PI).sqrt(), 1e-14));
    // ground state is (cos ϑ)^{ν+½} times the constant
    let th = 0.8;
    let a = AngleChart { vartheta: th, ..Default::default() };
    let v = oscillator_wavefunction(2, &q, nu, &a, 1.0).unwrap();
    let expect = c / (2.0 * PI).sqrt() * ComplexValue::from(th.cos()).powc(nu + 0.5);
    assert!(close(v, expect, 1e-13), "{v} vs {expect}");
    assert!(matches!(oscillator_wavefunction(2, &q, nu, &AngleChart { vartheta: 2.0, ..Default::default() }, 1.0), Err(Error::Range(_))));
    assert!(oscillator_wavefunction(3, &q, nu, &a, 1.0).is_err());
}

#[test]
fn oscillator_double_cover_parity() {
    let nu = c64(0.7, 0.1);
    for m in -3..=3 {
        let q = QuantumNumbers::oscillator2(1, m).unwrap();
        let a = AngleChart { vartheta: 0.5, phi: 0.9, ..Default::default() };
        let b = AngleChart { phi: a.phi + 2.0 * PI, ..a };
        let va = oscillator_wavefunction(2, &q, nu, &a, 1.0).unwrap();
        let vb = oscillator_wavefunction(2, &q, nu, &b, 1.0).unwrap();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        assert!(close(vb, sign * va, 1e-14 * va.norm().max(1.0)), "m {m}");
    }
}

#[test]
fn coulomb_gram_matrices_are_identity() {
    for (mu, r) in [(1.0, 1.0), (0.7, 3.0)] {
        let mut states2 = Vec::new();
        for n in 0..=3u32 {
            for m in -(n as i32)..=(n as i32) {
                let p = duality_params(2, mu, r, n).unwrap();
                states2.push(coulomb_chart_function(&QuantumNumbers::coulomb2(n, m).unwrap(), &p).unwrap());
            }
        }
        let mut states3 = Vec::new();
        for n in 1..=3u32 {
            for l in 0..n {
                for m in -(l as i32)..=(l as i32) {
                    let p = duality_params(3, mu, r, n).unwrap();
                    states3.push(coulomb_chart_function(&QuantumNumbers::coulomb3(n, l, m).unwrap(), &p).unwrap());
                }
            }
        }
        for (states, tol) in [(&states2, 1e-8), (&states3, 1e-7)] {
            for (i, a) in states.iter().enumerate() {
                for (j, b) in states.iter().enumerate() {
                    let g = sphere_inner_product(a, b, 48).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!(close(g, c64(want, 0.0), tol), "mu {mu} R {r} ({i},{j}): {g}");
                }
            }
        }
    }
}

#[test]
fn coulomb_5d_states_are_normalized() {
    for (n, lam, l2, m1, m2) in [(0, 0, 0, 0, 0), (1, 1, 0, 0, 0), (2, 2, 2, 2, -2), (3, 2, 1, 1, -1)] {
        let p = duality_params(5, 1.0, 2.0, n).unwrap();
        let q = QuantumNumbers::coulomb5(n, lam, h(l2), h(m1), h(m2)).unwrap();
        let f = coulomb_chart_function(&q, &p).unwrap();
        let v = sphere_inner_product(&f, &f, 48).unwrap();
        assert!(close(v, c64(1.0, 0.0), 1e-8), "{q}: {v}");
    }
}

#[test]
fn documented_coulomb_values() {
    let p = duality_params(2, 1.0, 1.0, 0).unwrap();
    let q = QuantumNumbers::coulomb2(0, 0).unwrap();
    let chi = 0.6;
    let v = coulomb_wavefunction(2, &q, &p, &AngleChart::lc2(chi, 0.3)).unwrap();
    let v0 = coulomb_wavefunction(2, &q, &p, &AngleChart::lc2(0.0, 0.3)).unwrap();
    assert!(close(v, v0 * (-p.sigma * chi).exp(), 1e-13));
    let q3 = QuantumNumbers::coulomb3(1, 0, 0).unwrap();
    let p3 = duality_params(3, 1.0, 1.0, 1).unwrap();
    let mid = coulomb_wavefunction(3, &q3, &p3, &AngleChart::ks3(PI / 2.0, 0.4, 0.2, 0.0)).unwrap();
    assert!(mid.norm() > 1e-3 && mid.norm().is_finite());
    assert!(matches!(coulomb_wavefunction(2, &q, &p, &AngleChart::lc2(4.0, 0.0)), Err(Error::Range(_))));
    let osc = QuantumNumbers::oscillator2(0, 0).unwrap();
    assert!(matches!(coulomb_chart_function(&osc, &p), Err(Error::SelectionRule(_))));
    // large radius stays finite thanks to the log-space constant
    let big = duality_params(2, 1.0, 400.0, 1).unwrap();
    let w = coulomb_wavefunction(2, &QuantumNumbers::coulomb2(1, 1).unwrap(), &big, &AngleChart::lc2(1.0 / 400.0, 0.0)).unwrap();
    assert!(w.norm().is_finite() && w.norm() > 0.0);
}

#[test]
fn coulomb_states_solve_the_schrodinger_equation() {
    let pts2: Vec<AngleChart> = [0.4, 1.1, 2.0, 2.7].iter().map(|&c| AngleChart::lc2(c, 0.8)).collect();
    let pts3: Vec<AngleChart> = [0.5, 1.3, 2.2].iter().map(|&c| AngleChart::ks3(c, 1.0, 0.7, 0.0)).collect();
    let pts5: Vec<AngleChart> = [0.6, 1.5, 2.4].iter().map(|&c| AngleChart::hurwitz5(c, 1.2, 0.5, 0.9, 1.7, 0.0, 0.0, 0.0)).collect();
    let c2 = FdConfig::new(1e-3, FdOrder::Second).unwrap();
    let c4 = FdConfig::new(1e-3, FdOrder::Fourth).unwrap();
    let cases: Vec<(QuantumNumbers, usize, &Vec<AngleChart>)> = vec![
        (QuantumNumbers::coulomb2(2, 1).unwrap(), 2, &pts2),
        (QuantumNumbers::coulomb2(3, -2).unwrap(), 2, &pts2),
        (QuantumNumbers::coulomb3(3, 1, -1).unwrap(), 3, &pts3),
        (QuantumNumbers::coulomb3(2, 0, 0).unwrap(), 3, &pts3),
        (QuantumNumbers::coulomb5(2, 2, h(2), h(2), h(0)).unwrap(), 5, &pts5),
        (QuantumNumbers::coulomb5(1, 1, h(0), h(0), h(0)).unwrap(), 5, &pts5),
    ];
    for (q, dim, pts) in cases {
        let p = duality_params(dim, 1.0, 2.0, q.coulomb_n().unwrap()).unwrap();
        let r2 = schrodinger_residual(&q, &p, pts, c2).unwrap();
        let r4 = schrodinger_residual(&q, &p, pts, c4).unwrap();
        assert!(r2 < 1e-5, "{q}: second order {r2}");
        assert!(r4 < r2, "{q}: fourth order {r4} vs {r2}");
    }
}

#[test]
fn sphere_wavefunction_contracts_to_flat_limit() {
    let at = |r: f64, rad: f64| AngleChart { chi: c64(r / rad, 0.0), phi: 0.4, theta: 1.1, alpha: 0.3, beta: 0.8, gamma: 1.9, ..Default::default() };
    let cases = [(2usize, QuantumNumbers::coulomb2(1, 1).unwrap()), (2, QuantumNumbers::coulomb2(1, 0).unwrap()), (5, QuantumNumbers::coulomb5(1, 1, h(0), h(0), h(0)).unwrap())];
    for (dim, q) in cases {
        let err = |rad: f64| {
            let p = duality_params(dim, 1.0, rad, 1).unwrap();
            let a = at(1.0, rad);
            (coulomb_wavefunction(dim, &q, &p, &a).unwrap() - flat_limit_wavefunction(dim, &q, 1.0, 1.0, &a).unwrap()).norm()
        };
        let (e100, e400) = (err(100.0), err(400.0));
        assert!(e400 / e100 < 0.3, "{q}: {e100} -> {e400}");
    }
    let q = QuantumNumbers::coulomb2(0, 0).unwrap();
    let v = flat_limit_wavefunction(2, &q, 1.0, 0.0, &AngleChart::default()).unwrap();
    assert!(close(v, c64(2f64.sqrt() / 0.5f64.powf(1.5) / (2.0 * PI).sqrt(), 0.0), 1e-14));
    let q5 = QuantumNumbers::coulomb5(0, 0, h(0), h(0), h(0)).unwrap();
    let r = 0.7;
    let v5 = flat_limit_wavefunction(5, &q5, 1.0, r, &AngleChart::default()).unwrap();
    let radial = 4.0 / 8.0 * 6f64.sqrt() * (-r / 2.0f64).exp() / 6.0;
    let angular = z_function(h(0), h(0), 0, 0.0).unwrap() / (2.0 * PI * PI).sqrt();
    assert!(close(v5, c64(radial * angular, 0.0), 1e-14), "{v5}");
    assert!(flat_limit_wavefunction(3, &QuantumNumbers::coulomb3(1, 0, 0).unwrap(), 1.0, 1.0, &AngleChart::default()).is_err());
}

#[test]
fn reduced_oscillator_state_matches_coulomb_level() {
    for (n_r, m) in [(1, 2), (0, 4), (2, -2)] {
        let q = QuantumNumbers::oscillator2(n_r, m).unwrap();
        let c = reduce_to_coulomb(&q).unwrap();
        assert_eq!(oscillator_level(2, c.coulomb_n().unwrap()).unwrap(), q.oscillator_n().unwrap());
    }
    assert!(matches!(reduce_to_coulomb(&QuantumNumbers::oscillator2(0, 1).unwrap()), Err(Error::SelectionRule(_))));
}
