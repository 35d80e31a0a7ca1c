//! Validation operations: compatibility, global relation, large-k
//! expansion coefficients.
//!
//! Oracle notes. For q0 = e^{-x}: I0 = 1/2 exactly, q0(0) = 1,
//! q0'(0) = -1, so with lambda = -1 the coefficients are a1 = i/4,
//! b1 = -i/2, b2 = -1/8. The boundedness of |a - 1 - a1/k| k^2 at large k
//! pins the sign of a1: with the wrong sign the combination grows like
//! 2 |a1| |k|. The incompatible pair (decaying datum, constant boundary
//! value) must light up both the corner check and the finite-window global
//! relation.

use num_complex::Complex64 as C64;
use nutm::data::{exp_decay, sech_soliton, x_gaussian, BoundaryTraces};
use nutm::spectral::{SpectralOptions, TSpectral, XSpectral};
use nutm::validate::{asymptotic_coefficients, check_compatibility, check_global_relation};
use std::sync::Arc;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn compatibility_passes_for_consistent_data() {
    let (init, traces) = sech_soliton(1.0, 1.0, 0.4);
    let rep = check_compatibility(&init, &traces, 1e-10);
    assert!(rep.pass);
    assert!((rep.q0_at_zero - rep.g0_at_zero).norm() < 1e-14);
    assert!((rep.dq0_at_zero - rep.g1_at_zero).norm() < 1e-14);
}

#[test]
fn compatibility_flags_corner_mismatch() {
    // e^{-x} has q0(0) = 1; zero traces cannot match it.
    let init = exp_decay();
    let traces = BoundaryTraces {
        g0: Arc::new(|_| c(0.0, 0.0)),
        g1: Arc::new(|_| c(0.0, 0.0)),
        t_end: Some(1.0),
    };
    let rep = check_compatibility(&init, &traces, 1e-8);
    assert!(!rep.pass);
    assert!((rep.q0_at_zero - 1.0).norm() < 1e-14);
}

#[test]
fn asymptotic_coefficients_closed_forms() {
    let opts = SpectralOptions::default();
    let xs = XSpectral::new(&exp_decay(), -1, &opts).unwrap();
    let co = asymptotic_coefficients(&xs, None);
    assert!((co.i0 - 0.5).abs() < 1e-9, "I0 = {}", co.i0);
    assert!((co.a1 - c(0.0, 0.25)).norm() < 1e-9, "a1 = {}", co.a1);
    assert!((co.b1 - c(0.0, -0.5)).norm() < 1e-12, "b1 = {}", co.b1);
    assert!((co.b2 - c(-0.125, 0.0)).norm() < 1e-9, "b2 = {}", co.b2);
}

#[test]
fn asymptotic_coefficients_match_spectral_functions() {
    // |a - 1 - a1/k| k^2 and |b - b1/k - b2/k^2| k^2 stay bounded at large
    // k, on the real axis and along the pi/4 ray.
    let opts = SpectralOptions::default();
    let xs = XSpectral::new(&exp_decay(), -1, &opts).unwrap();
    let co = asymptotic_coefficients(&xs, None);
    let dir = c(1.0, 1.0) / 2.0f64.sqrt();
    let samples = [c(20.0, 0.0), c(26.0, 0.0), 30.0 * dir, 50.0 * dir];
    for &k in &samples {
        let (a, b) = xs.eval(k).unwrap();
        let a_rem = ((a - 1.0 - co.a1 / k) * k * k).norm();
        let b_rem = ((b - co.b1 / k - co.b2 / (k * k)) * k * k).norm();
        assert!(a_rem < 2.0, "a remainder {a_rem} at k = {k}");
        assert!(b_rem < 0.5, "b remainder {b_rem} at k = {k}");
    }
}

#[test]
fn trace_coefficients_against_quadrature() {
    // big_a1 = lambda (int G)/2 with G purely imaginary; cross-check the
    // built-in quadrature against a trapezoid oracle.
    let (_, traces) = sech_soliton(1.0, 1.0, 0.4);
    let opts = SpectralOptions::default();
    let (init, _) = sech_soliton(1.0, 1.0, 0.4);
    let xs = XSpectral::new(&init, 1, &opts).unwrap();
    let ts = TSpectral::new(&traces, 1, &opts).unwrap();
    let co = asymptotic_coefficients(&xs, Some(&ts));
    let int_g = co.int_g.unwrap();
    assert!(int_g.re.abs() < 1e-10, "int G should be purely imaginary");

    let n = 20001;
    let h = ts.t_cut() / (n as f64 - 1.0);
    let mut acc = c(0.0, 0.0);
    for j in 0..n {
        let t = h * j as f64;
        let g0 = (traces.g0)(t);
        let g1 = (traces.g1)(t);
        let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
        acc += w * (g0.conj() * g1 - g1.conj() * g0);
    }
    acc *= h;
    assert!(
        (int_g - acc).norm() < 1e-6 * (1.0 + acc.norm()),
        "quadrature mismatch: {int_g} vs {acc}"
    );
    assert!((co.big_a1.unwrap() - int_g / 2.0).norm() < 1e-14);
    assert!((co.big_b1.unwrap() - (traces.g0)(0.0) / c(0.0, 2.0)).norm() < 1e-14);
    assert!(co.big_b_exp.is_none(), "decaying traces have no e^{{4ik^2T}} term");
}

#[test]
fn global_relation_accepts_admissible_pair() {
    let (init, traces) = sech_soliton(1.0, 1.0, 0.4);
    let opts = SpectralOptions::default();
    let xs = XSpectral::new(&init, 1, &opts).unwrap();
    let ts = TSpectral::new(&traces, 1, &opts).unwrap();
    let ks = [c(0.3, 0.0), c(2.0, 0.5), c(0.0, 1.4), c(3.0, 3.0)];
    let worst = check_global_relation(&xs, &ts, &ks).unwrap();
    assert!(worst < 1e-6, "admissible residual {worst}");
}

#[test]
fn global_relation_rejects_inconsistent_pair() {
    // Decaying datum against a constant Dirichlet value: not a trace pair
    // of any solution with this initial condition.
    let init = x_gaussian();
    let traces = BoundaryTraces {
        g0: Arc::new(|_| c(1.0, 0.0)),
        g1: Arc::new(|_| c(0.0, 0.0)),
        t_end: Some(1.0),
    };
    let opts = SpectralOptions::default();
    let xs = XSpectral::new(&init, -1, &opts).unwrap();
    let ts = TSpectral::new(&traces, -1, &opts).unwrap();
    let ks = [c(3.0, 0.0), c(5.0, 0.0), c(8.0, 0.0)];
    let worst = check_global_relation(&xs, &ts, &ks).unwrap();
    assert!(worst > 1e-2, "inconsistent pair not flagged: {worst}");
}

#[test]
fn global_relation_guards_quadrant() {
    let (init, traces) = sech_soliton(1.0, 1.0, 0.4);
    let opts = SpectralOptions::default();
    let xs = XSpectral::new(&init, 1, &opts).unwrap();
    let ts = TSpectral::new(&traces, 1, &opts).unwrap();
    assert!(check_global_relation(&xs, &ts, &[c(-1.0, 0.5)]).is_err());
}
