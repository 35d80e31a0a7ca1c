//! Oracle tests for the collocation, quadrature and Cauchy-transform kernels.
//!
//! Every closed-form value here was computed independently (contour
//! integration by hand) and frozen before the implementation was written.

use num_complex::Complex64 as C;
use nutm::cheb::{
    cheb1_nodes, cheb2_nodes, cheb_coeffs, cheb_eval, cheb_integrate, diff_matrix, q_decompose,
    Circle, Ray, Segment, Side,
};
use std::f64::consts::PI;

const I: C = C::new(0.0, 1.0);

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

#[test]
fn second_kind_nodes_three_points() {
    let n = cheb2_nodes(3);
    assert_eq!(n, vec![-1.0, 0.0, 1.0]);
}

#[test]
fn first_kind_nodes_are_interior_and_ascending() {
    let n = cheb1_nodes(8);
    assert_eq!(n.len(), 8);
    for w in n.windows(2) {
        assert!(w[0] < w[1]);
    }
    assert!(n[0] > -1.0 && n[7] < 1.0);
    // x_0 = -cos(pi/16)
    assert!((n[0] + (PI / 16.0).cos()).abs() < 1e-15);
}

#[test]
fn coefficients_reproduce_values_and_integrate() {
    // p(x) = exp(x): integral over [-1,1] is e - 1/e.
    let nodes = cheb2_nodes(24);
    let vals: Vec<C> = nodes.iter().map(|&x| c(x.exp(), 0.0)).collect();
    let a = cheb_coeffs(&vals);
    for (&x, &v) in nodes.iter().zip(vals.iter()) {
        assert!((cheb_eval(&a, c(x, 0.0)) - v).norm() < 1e-13);
    }
    // Off-node evaluation.
    assert!((cheb_eval(&a, c(0.3, 0.0)) - c(0.3f64.exp(), 0.0)).norm() < 1e-13);
    let want = 1f64.exp() - (-1f64).exp();
    assert!((cheb_integrate(&a) - c(want, 0.0)).norm() < 1e-13);
}

#[test]
fn q_decomposition_identity() {
    // p(s) - p(z) = (s - z) q(s) for arbitrary coefficients and complex z.
    let a: Vec<C> = vec![
        c(0.3, -1.1),
        c(1.0, 0.2),
        c(-0.5, 0.0),
        c(0.1, 0.7),
        c(0.0, -0.2),
        c(0.9, 0.4),
    ];
    for &z in &[c(0.3, 0.2), c(-2.0, 1.0), c(0.99, 0.0), c(0.0, -3.0)] {
        let (q, pz) = q_decompose(&a, z);
        assert!((pz - cheb_eval(&a, z)).norm() < 1e-12);
        for &x in &[-0.95, -0.5, 0.0, 0.4, 0.97] {
            let s = c(x, 0.0);
            let lhs = cheb_eval(&a, s) - pz;
            let rhs = (s - z) * cheb_eval(&q, s);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}

#[test]
fn segment_cauchy_of_constant_closed_form() {
    // (1/2pi i) \int_{-1}^{1} ds/(s-2) = ln(1/3)/(2 pi i).
    let seg = Segment::new(c(-1.0, 0.0), c(1.0, 0.0));
    let vals = vec![c(1.0, 0.0); 16];
    let got = seg.cauchy(&vals, c(2.0, 0.0));
    let want = c((1.0f64 / 3.0).ln(), 0.0) / (2.0 * PI * I);
    assert!((got - want).norm() < 1e-13, "got {got}, want {want}");
}

#[test]
fn segment_cauchy_matches_quadrature_off_contour() {
    // Smooth density, target well separated: compare against plain
    // Clenshaw-Curtis quadrature of u(s)/(s-z).
    let seg = Segment::new(c(-1.0, -0.5), c(2.0, 1.0));
    let n = 40;
    let nodes = seg.nodes(n);
    let vals: Vec<C> = nodes.iter().map(|&s| (I * s).exp() + s * s).collect();
    let z = c(0.5, 2.5);
    let got = seg.cauchy(&vals, z);
    let kernel: Vec<C> = nodes.iter().zip(&vals).map(|(&s, &u)| u / (s - z)).collect();
    let want = seg.integrate(&kernel) / (2.0 * PI * I);
    assert!((got - want).norm() < 1e-12);
}

#[test]
fn segment_boundary_value_sign_convention() {
    // For u = 1 on [-1,1] oriented left to right, the plus side (above) at
    // sigma = 0 gives C+ = +1/2 ... - ln(1)/2pi i + 1/2; minus side -1/2.
    let seg = Segment::new(c(-1.0, 0.0), c(1.0, 0.0));
    let vals = vec![c(1.0, 0.0); 12];
    let plus = seg.cauchy_boundary(&vals, 0.0, Side::Plus);
    let minus = seg.cauchy_boundary(&vals, 0.0, Side::Minus);
    assert!((plus - c(0.5, 0.0)).norm() < 1e-13, "plus = {plus}");
    assert!((minus + c(0.5, 0.0)).norm() < 1e-13, "minus = {minus}");
}

#[test]
fn segment_plemelj_jump() {
    // C+ u - C- u = u at interior first-kind points, n = 40.
    let seg = Segment::new(c(-1.0, 0.0), c(1.0, 0.0));
    let n = 40;
    let nodes = seg.nodes(n);
    let vals: Vec<C> = nodes
        .iter()
        .map(|&s| c(s.re.exp() * (2.0 * s.re).cos(), s.re * s.re))
        .collect();
    let a = cheb_coeffs(&vals);
    for &sig in cheb1_nodes(n).iter() {
        let plus = seg.cauchy_boundary(&vals, sig, Side::Plus);
        let minus = seg.cauchy_boundary(&vals, sig, Side::Minus);
        let u = cheb_eval(&a, c(sig, 0.0));
        assert!((plus - minus - u).norm() < 1e-10);
    }
}

#[test]
fn segment_cauchy_far_field_decay() {
    // |C u(z)| decays like 1/|z|: ratio of magnitudes at |z| = 1e2 and 1e3
    // is approximately 10.
    let seg = Segment::new(c(-1.0, 0.0), c(1.0, 0.0));
    let nodes = seg.nodes(24);
    let vals: Vec<C> = nodes.iter().map(|&s| (s * s + 1.0).finv()).collect();
    let v2 = seg.cauchy(&vals, c(0.0, 100.0)).norm();
    let v3 = seg.cauchy(&vals, c(0.0, 1000.0)).norm();
    let ratio = v2 / v3;
    assert!((ratio - 10.0).abs() < 0.5, "ratio = {ratio}");
}

#[test]
fn ray_integrates_decaying_exponential() {
    // \int_0^infty e^{-s} ds = 1 to 1e-10 with n = 40 and unit scale.
    let ray = Ray::new(c(0.0, 0.0), 0.0, 1.0);
    let nodes = ray.nodes(40);
    let vals: Vec<C> = nodes.iter().map(|&s| (-s).exp()).collect();
    let got = ray.integrate(&vals);
    assert!((got - c(1.0, 0.0)).norm() < 1e-10, "got {got}");
}

#[test]
fn ray_cauchy_rational_closed_form() {
    // u(s) = 1/(s+1) on the positive real ray; for z = i,
    // (1/2pi i) \int_0^infty ds/((s+1)(s-i)) = (1-i)/8.
    let ray = Ray::new(c(0.0, 0.0), 0.0, 1.0);
    let nodes = ray.nodes(24);
    let vals: Vec<C> = nodes.iter().map(|&s| (s + 1.0).finv()).collect();
    let got = ray.cauchy(&vals, c(0.0, 1.0));
    let want = c(0.125, -0.125);
    assert!((got - want).norm() < 1e-12, "got {got}, want {want}");
}

#[test]
fn ray_plemelj_jump() {
    // C+ - C- = u at interior nodes of the ray, decaying density.
    let ray = Ray::new(c(0.0, 0.0), 0.0, 1.0);
    let n = 40;
    let nodes = ray.nodes(n);
    let vals: Vec<C> = nodes.iter().map(|&s| (-s).exp()).collect();
    // The jump identity is exact for the interpolant through the samples.
    let mut padded = vals.clone();
    padded.push(c(0.0, 0.0));
    let a = cheb_coeffs(&padded);
    for &sig in &[-0.8, -0.3, 0.2, 0.6] {
        let s = ray.point(sig);
        let plus = ray.cauchy_boundary(&vals, sig, Side::Plus);
        let minus = ray.cauchy_boundary(&vals, sig, Side::Minus);
        let jump = plus - minus;
        assert!((jump - cheb_eval(&a, c(sig, 0.0))).norm() < 1e-12, "sigma = {sig}");
        // And matches the true density to interpolation accuracy.
        assert!((jump - (-s).exp()).norm() < 1e-8, "sigma = {sig}");
    }
}

#[test]
fn circle_cauchy_closed_form() {
    // u(s) = 1/(s-3) on the unit circle (counterclockwise); z = 0 inside:
    // residue calculus gives -1/3.
    let circ = Circle::new(c(0.0, 0.0), 1.0);
    let nodes = circ.nodes(32);
    let vals: Vec<C> = nodes.iter().map(|&s| (s - 3.0).finv()).collect();
    let got = circ.cauchy(&vals, c(0.0, 0.0));
    assert!((got - c(-1.0 / 3.0, 0.0)).norm() < 1e-12, "got {got}");
    // Outside but inside |s|<3 analyticity: z = 5 -> C = -(residue terms):
    // (1/2pi i) oint ds/((s-3)(s-5)) over |s|=1 encloses no poles of u but the
    // kernel pole is outside: integral = 0 ... both poles outside: 0.
    let out = circ.cauchy(&vals, c(5.0, 0.0));
    assert!(out.norm() < 1e-12, "out {out}");
}

#[test]
fn circle_plemelj_jump() {
    let circ = Circle::new(c(1.0, 1.0), 0.5);
    let m = 32;
    let nodes = circ.nodes(m);
    let vals: Vec<C> = nodes.iter().map(|&s| (s - c(1.0, 1.2)).finv() + s).collect();
    for l in [0usize, 5, 13, 27] {
        let phi = 2.0 * PI * (l as f64) / (m as f64);
        let plus = circ.cauchy_boundary(&vals, phi, Side::Plus);
        let minus = circ.cauchy_boundary(&vals, phi, Side::Minus);
        assert!((plus - minus - vals[l]).norm() < 1e-11);
    }
}

#[test]
fn circle_integral_of_kernel() {
    // oint ds/(s - center) = 2 pi i regardless of radius.
    let circ = Circle::new(c(-0.3, 0.7), 0.25);
    let nodes = circ.nodes(16);
    let vals: Vec<C> = nodes.iter().map(|&s| (s - c(-0.3, 0.7)).finv()).collect();
    let got = circ.integrate(&vals);
    assert!((got - 2.0 * PI * I).norm() < 1e-12);
}

#[test]
fn differentiation_matrix_exponential() {
    let n = 24;
    let d = diff_matrix(n);
    let nodes = cheb2_nodes(n);
    let f: Vec<f64> = nodes.iter().map(|&x| x.exp()).collect();
    for i in 0..n {
        let mut df = 0.0;
        for j in 0..n {
            df += d[[i, j]] * f[j];
        }
        assert!((df - f[i]).abs() < 1e-10, "node {i}");
    }
}

#[test]
fn cauchy_off_contour_is_analytic_average() {
    // For z far from the segment, C+ and C- boundary formulas do not apply,
    // but C(z) computed from the coefficient form must agree with the
    // direct residue-free quadrature; and for a density that is the
    // boundary value of a function analytic inside a circle, the exterior
    // Cauchy transform vanishes.
    let circ = Circle::new(c(0.0, 0.0), 1.0);
    let nodes = circ.nodes(24);
    // s^2 is entire: exterior transform of its boundary values vanishes...
    // Exterior transform of entire function = -(principal part) = 0? No:
    // C_out picks up only negative Laurent coefficients, which vanish.
    let vals: Vec<C> = nodes.iter().map(|&s| s * s).collect();
    let got = circ.cauchy(&vals, c(2.0, 0.0));
    assert!(got.norm() < 1e-13);
    // Interior transform reproduces the function inside.
    let got_in = circ.cauchy(&vals, c(0.25, 0.1));
    let want = c(0.25, 0.1) * c(0.25, 0.1);
    assert!((got_in - want).norm() < 1e-13);
}
