//! Hermite, Charlier and Krawtchouk polynomials, their normalized lattice
//! functions, and the associated Jacobi operators.

mod charlier;
mod hermite;
mod jacobi;
mod krawtchouk;

pub use charlier::{charlier, charlier_lattice_cutoff, charlier_ln_weight, charlier_normalized_row};
pub use hermite::{hermite, normalized_hermite_table, HERMITE_MAX_DEGREE};
pub use jacobi::{Eigensystem, JacobiFamily, JacobiOperator};
pub use krawtchouk::{krawtchouk, krawtchouk_ln_weight, krawtchouk_normalized_row};

use crate::error::Result;

/// Families with a weighted-lattice orthonormal system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Charlier { theta: f64 },
    Krawtchouk { p: f64, l: usize },
}

/// The orthonormal lattice function `f_m(x) = W(x)^{1/2} P_m(x) / ‖P_m‖`.
pub fn normalized_function(family: Family, m: usize, x: usize) -> Result<f64> {
    let row = match family {
        Family::Charlier { theta } => charlier_normalized_row(x, theta, m + 1)?,
        Family::Krawtchouk { p, l } => krawtchouk_normalized_row(x, p, l, m + 1)?,
    };
    Ok(row[m])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charlier_ground_state_is_poisson_root() {
        for theta in [0.5, 3.0, 40.0] {
            for x in 0..20usize {
                let v = normalized_function(Family::Charlier { theta }, 0, x).unwrap();
                let ln_pois = x as f64 * f64::ln(theta) - theta - crate::special::ln_factorial(x);
                assert!((v - (0.5 * ln_pois).exp()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn orthonormality_small() {
        let theta = 5.0;
        let cut = charlier_lattice_cutoff(theta);
        let rows: Vec<Vec<f64>> = (0..=cut)
            .map(|x| charlier_normalized_row(x, theta, 2).unwrap())
            .collect();
        let dot01: f64 = rows.iter().map(|r| r[0] * r[1]).sum();
        assert!(dot01.abs() < 1e-8);

        let (p, l) = (0.3, 20);
        let s: f64 = (0..=l)
            .map(|x| normalized_function(Family::Krawtchouk { p, l }, 1, x).unwrap().powi(2))
            .sum();
        assert!((s - 1.0).abs() < 1e-10);
    }
}
