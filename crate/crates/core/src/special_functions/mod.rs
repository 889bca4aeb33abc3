//! Special-function kernels: complex Γ, terminating hypergeometric series, classical
//! orthogonal polynomials and the angular-momentum functions.

mod angular;
mod gamma;
mod hypergeometric;
mod polynomials;

pub use angular::{casimir, clebsch_gordan, sph_harm, wigner_D, wigner_d, HalfInt};
pub use gamma::{complex_gamma, complex_log_gamma, factorial, pochhammer};
pub use hypergeometric::{hyp1f1_terminating, hyp2f1_coefficients, hyp2f1_terminating};
pub use polynomials::{gegenbauer, jacobi_poly, jacobi_poly_recurrence};


use crate::{c64, ComplexValue};
use serde::{Deserialize, Serialize};

/// A polynomial with complex coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyCoeffs {
    degree: usize,
    coefficients: Vec<ComplexValue>,
}

impl PolyCoeffs {
    /// Builds a polynomial, dropping trailing zero coefficients so the leading one is nonzero.
    pub fn new(mut coefficients: Vec<ComplexValue>) -> Self {
        while coefficients.len() > 1 && *coefficients.last().unwrap() == c64(0.0, 0.0) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(c64(0.0, 0.0));
        }
        Self { degree: coefficients.len() - 1, coefficients }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[ComplexValue] {
        &self.coefficients
    }

    pub fn eval(&self, z: ComplexValue) -> ComplexValue {
        self.coefficients.iter().rev().fold(c64(0.0, 0.0), |acc, &c| acc * z + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_trims_and_evaluates() {
        let p = PolyCoeffs::new(vec![c64(1.0, 0.0), c64(2.0, 0.0), c64(0.0, 0.0)]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coefficients().len(), 2);
        assert_eq!(p.eval(c64(3.0, 0.0)), c64(7.0, 0.0));
        assert_eq!(PolyCoeffs::new(vec![]).degree(), 0);
    }
}
