//! Zeros of a(k) in the upper half-plane and their residue constants.
//!
//! Oracle notes. A sech potential amp·sech(x − x_c)·e^{−2i·boost·x} centered
//! far inside the domain makes the zero-extended half-line problem an
//! exponentially small perturbation of the whole-line one, whose eigenvalues
//! are known in closed form: k_n = boost + i(amp + 1/2 − n) for n = 1, 2, …
//! while the imaginary part stays positive. Each reported zero is certified
//! by |a(p)| directly, independently of that oracle; the residue constant is
//! cross-checked against finite differences of a.

use num_complex::Complex64 as C64;
use nutm::data::{sech_soliton, x_gaussian, InitialData};
use nutm::spectral::{SpectralOptions, XSpectral};
use nutm::zeros::find_a_zeros;
use std::sync::Arc;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn opts() -> SpectralOptions {
    SpectralOptions::default()
}

fn zero_data() -> InitialData {
    InitialData {
        q0: Arc::new(|_| c(0.0, 0.0)),
        dq0: Arc::new(|_| c(0.0, 0.0)),
        alpha: 1.0,
    }
}

/// amp · e^{−2i·boost·x} · sech(x − center)
fn sech_pocket(amp: f64, center: f64, boost: f64) -> InitialData {
    InitialData {
        q0: Arc::new(move |x| {
            let s = 1.0 / (x - center).cosh();
            amp * s * c(0.0, -2.0 * boost * x).exp()
        }),
        dq0: Arc::new(move |x| {
            let s = 1.0 / (x - center).cosh();
            let th = (x - center).tanh();
            amp * s * c(0.0, -2.0 * boost * x).exp() * c(-th, -2.0 * boost)
        }),
        alpha: 1.0,
    }
}

#[test]
fn zero_potential_has_no_zeros() {
    let xs = XSpectral::new(&zero_data(), 1, &opts()).unwrap();
    let poles = find_a_zeros(&xs).unwrap();
    assert!(poles.is_empty(), "expected no zeros, got {}", poles.len());
}

#[test]
fn defocusing_is_solitonless() {
    // In the defocusing case a(k) has no zeros in the upper half-plane and
    // the search short-circuits.
    let xs = XSpectral::new(&x_gaussian(), -1, &opts()).unwrap();
    let poles = find_a_zeros(&xs).unwrap();
    assert!(poles.is_empty());
}

#[test]
fn soliton_eigenvalue_and_residue() {
    let (q0, _) = sech_soliton(1.0, 1.0, 0.4);
    let xs = XSpectral::new(&q0, 1, &opts()).unwrap();
    let poles = find_a_zeros(&xs).unwrap();
    assert_eq!(poles.len(), 1, "expected one zero, got {:?}", poles);
    let p = poles[0].p;
    let exact = c(1.0, 0.8f64.tanh());
    assert!(
        (p - exact).norm() < 1e-7,
        "zero at {p}, expected {exact}"
    );
    // The zero itself, certified against the spectral function.
    let (a_p, b_p) = xs.eval(p).unwrap();
    assert!(a_p.norm() < 1e-10, "|a(p)| = {:e}", a_p.norm());

    // Residue constant c = 1/(a'(p) b(p)) with a' from central differences,
    // an oracle independent of the contour-integral route used internally.
    let h = 1e-5;
    let (a_plus, _) = xs.eval(p + h).unwrap();
    let (a_minus, _) = xs.eval(p - h).unwrap();
    let da_fd = (a_plus - a_minus) / (2.0 * h);
    let c_oracle = 1.0 / (da_fd * b_p);
    let rel = (poles[0].c - c_oracle).norm() / c_oracle.norm();
    assert!(rel < 1e-4, "residue constant off by rel {rel:e}");
}

#[test]
fn two_bound_states_match_whole_line() {
    let xs = XSpectral::new(&sech_pocket(2.2, 8.0, 1.0), 1, &opts()).unwrap();
    let mut poles = find_a_zeros(&xs).unwrap();
    assert_eq!(poles.len(), 2, "expected two zeros, got {:?}", poles);
    poles.sort_by(|u, v| u.p.im.partial_cmp(&v.p.im).unwrap());
    let expect = [c(1.0, 0.7), c(1.0, 1.7)];
    for (pole, e) in poles.iter().zip(expect.iter()) {
        assert!(
            (pole.p - e).norm() < 5e-3,
            "zero at {}, whole-line value {e}",
            pole.p
        );
        let (a_p, _) = xs.eval(pole.p).unwrap();
        assert!(a_p.norm() < 1e-10, "|a(p)| = {:e}", a_p.norm());
    }
}

#[test]
fn axis_zero_rejected() {
    // Without the oscillatory factor the eigenvalues sit exactly on the
    // imaginary axis, which the jump contour cannot accommodate.
    let xs = XSpectral::new(&sech_pocket(2.2, 8.0, 0.0), 1, &opts()).unwrap();
    assert!(find_a_zeros(&xs).is_err());
}
