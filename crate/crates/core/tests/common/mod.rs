//! Brute-force reference implementations, written independently of the library code.
#![allow(dead_code)]

use kepler_duality::special_functions::HalfInt;
use nalgebra::DMatrix;
use std::collections::HashMap;

/// Generalized binomial coefficient C(a, k) as a falling product.
fn binom(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a - i as f64) / (i as f64 + 1.0))
}

/// Jacobi P_n^{(α,β)}(x) from the two-sided binomial sum.
pub fn jacobi_sum(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let (lo, hi) = ((x - 1.0) / 2.0, (x + 1.0) / 2.0);
    (0..=n)
        .map(|s| binom(n as f64 + a, n - s) * binom(n as f64 + b, s) * lo.powi(s as i32) * hi.powi((n - s) as i32))
        .sum()
}

/// Gegenbauer C_n^λ(x) from its explicit power series.
pub fn gegenbauer_sum(n: u32, lam: f64, x: f64) -> f64 {
    let rising = |a: f64, k: u32| (0..k).fold(1.0, |acc, i| acc * (a + i as f64));
    let fact = |k: u32| (1..=k).fold(1.0, |acc, i| acc * i as f64);
    (0..=n / 2)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * rising(lam, n - k) * (2.0 * x).powi((n - 2 * k) as i32) / (fact(k) * fact(n - 2 * k))
        })
        .sum()
}

/// ⟨l m2| exp(−iβ J_y) |l m1⟩ from the matrix exponential in the |l m⟩ basis.
pub fn wigner_d_expm(twice_l: i32, beta: f64) -> impl Fn(i32, i32) -> f64 {
    let dim = (twice_l + 1) as usize;
    let idx = move |twice_m: i32| ((twice_l - twice_m) / 2) as usize;
    // −iβJ_y = −β(J₊ − J₋)/2 is real
    let mut a = DMatrix::<f64>::zeros(dim, dim);
    for i in 1..dim {
        let tm = twice_l - 2 * i as i32; // raising |m⟩ to |m+1⟩
        let c = (((twice_l - tm) * (twice_l + tm + 2)) as f64).sqrt() / 2.0;
        a[(i - 1, i)] -= beta * c / 2.0;
        a[(i, i - 1)] += beta * c / 2.0;
    }
    let e = a.exp();
    move |m1: i32, m2: i32| e[(idx(m2), idx(m1))]
}

/// All Clebsch–Gordan coefficients for fixed (j1, j2), built by lowering from the stretched
/// state and Gram–Schmidt at each J's top projection, Condon–Shortley phase.
/// Keys are (2J, 2M, 2m1).
pub fn cg_table(tj1: i32, tj2: i32) -> HashMap<(i32, i32, i32), f64> {
    let lower = |tj: i32, tm: i32| (((tj + tm) * (tj - tm + 2)) as f64).sqrt() / 2.0;
    let mut states: HashMap<(i32, i32), HashMap<i32, f64>> = HashMap::new();
    let mut tjj = tj1 + tj2;
    while tjj >= (tj1 - tj2).abs() {
        let mut v: HashMap<i32, f64> = HashMap::from([(tj1, 1.0)]);
        // two Gram–Schmidt passes keep the top state orthogonal to rounding level
        for _ in 0..2 {
            let mut above = tjj + 2;
            while above <= tj1 + tj2 {
                let w = &states[&(above, tjj)];
                let dot: f64 = w.iter().map(|(k, c)| c * v.get(k).copied().unwrap_or(0.0)).sum();
                for (k, c) in w {
                    *v.entry(*k).or_insert(0.0) -= dot * c;
                }
                above += 2;
            }
        }
        let sign = v[&tj1].signum();
        normalize(&mut v, sign);
        let mut tm = tjj;
        loop {
            states.insert((tjj, tm), v.clone());
            // negative projections follow from ⟨j1 −m1; j2 −m2|J −M⟩ = (−1)^{j1+j2−J} ⟨j1 m1; j2 m2|J M⟩
            let parity = if ((tj1 + tj2 - tjj) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            states.insert((tjj, -tm), v.iter().map(|(k, c)| (-k, parity * c)).collect());
            if tm <= 1 {
                break;
            }
            let mut next: HashMap<i32, f64> = HashMap::new();
            for (&tm1, &c) in &v {
                let tm2 = tm - tm1;
                if tm1 > -tj1 {
                    *next.entry(tm1 - 2).or_insert(0.0) += c * lower(tj1, tm1);
                }
                if tm2 > -tj2 {
                    *next.entry(tm1).or_insert(0.0) += c * lower(tj2, tm2);
                }
            }
            // renormalizing replaces division by the exact J₋ factor and absorbs rounding
            normalize(&mut next, 1.0);
            v = next;
            tm -= 2;
        }
        tjj -= 2;
    }
    states.into_iter().flat_map(|((tj, tm), v)| v.into_iter().map(move |(tm1, c)| ((tj, tm, tm1), c))).collect()
}

fn normalize(v: &mut HashMap<i32, f64>, sign: f64) {
    let norm = v.values().map(|c| c * c).sum::<f64>().sqrt();
    v.values_mut().for_each(|c| *c *= sign / norm);
}

pub fn h(twice: i32) -> HalfInt {
    HalfInt::from_twice(twice)
}
