//! Numerical unified transform method (NUTM) for the nonlinear Schrödinger
//! equation iq_t + q_xx + 2λ|q|²q = 0 posed on the half-line x ≥ 0.
//!
//! The solver evaluates q(x,t) pointwise, without time stepping, by
//! computing spectral functions from the initial and boundary data and
//! solving a deformed Riemann–Hilbert problem for each evaluation point.

pub mod bc;
pub mod cheb;
pub mod data;
pub mod error;
pub mod spectral;
pub mod validate;
pub mod zeros;

pub use error::NutmError;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

#[cfg(test)]
mod smoke {
    use ndarray::array;
    use ndarray_linalg::{Eig, Solve};
    use num_complex::Complex64 as C;

    #[test]
    fn lapack_complex_solve_and_eig() {
        let a = array![
            [C::new(2.0, 1.0), C::new(0.0, -1.0)],
            [C::new(1.0, 0.0), C::new(3.0, 0.0)]
        ];
        let b = array![C::new(1.0, 0.0), C::new(0.0, 1.0)];
        let x = a.solve(&b).unwrap();
        let r0 = a[[0, 0]] * x[0] + a[[0, 1]] * x[1] - b[0];
        assert!(r0.norm() < 1e-13);
        let (vals, _) = a.eig().unwrap();
        let prod = vals[0] * vals[1];
        let det = a[[0, 0]] * a[[1, 1]] - a[[0, 1]] * a[[1, 0]];
        assert!((prod - det).norm() < 1e-12);
    }
}
