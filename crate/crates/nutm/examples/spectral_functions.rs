//! Compute the half-line spectral functions for one-soliton data and verify
//! the identities that certify them.
//!
//! For initial data `q0(x)` the pair `(a, b)` comes from a spectral ODE solve
//! in `x`; for boundary traces `(g0, g1)` the pair `(A, B)` comes from a solve
//! in `t`. Three checks are printed:
//!
//!   1. the determinant relation  a(k) conj(a(kbar)) + lambda b(k) conj(b(kbar)) = 1,
//!   2. the zero of `a` at the soliton eigenvalue  xi + i eta tanh(2 eta x0),
//!   3. the global relation  a(k) B(k) - b(k) A(k) = 0  for admissible data
//!      (here with T = infinity), on the closed first quadrant of k^2.
//!
//! Run with: cargo run --example spectral_functions

use num_complex::Complex64 as C64;
use nutm::data::sech_soliton;
use nutm::spectral::{SpectralOptions, TSpectral, XSpectral};

fn main() -> Result<(), nutm::NutmError> {
    let (xi, eta, x0) = (1.0, 1.0, 0.4);
    let (q0, traces) = sech_soliton(xi, eta, x0);
    let lambda = 1i8; // focusing
    let opts = SpectralOptions::default();

    let xs = XSpectral::new(&q0, lambda, &opts)?;
    let ts = TSpectral::new(&traces, lambda, &opts)?;

    println!("one-soliton data: xi = {xi}, eta = {eta}, x0 = {x0}  (focusing)");
    println!(
        "x-domain truncated at L = {:.1}, t-domain at T = {:.1}\n",
        xs.l_cutoff(),
        ts.t_cut()
    );

    // 1. Determinant relation on the real line.
    println!("k          a(k)                      b(k)                      |det - 1|");
    for &kr in &[-2.0, -0.5, 0.3, 1.7, 4.0] {
        let k = C64::new(kr, 0.0);
        let (a, b) = xs.eval(k)?;
        // On the real line conj(a(kbar)) = conj(a(k)).
        let det = a * a.conj() + b * b.conj();
        println!(
            "{kr:>5.1}   {:>+.6} {:>+.6}i   {:>+.6} {:>+.6}i   {:.2e}",
            a.re,
            a.im,
            b.re,
            b.im,
            (det - 1.0).norm()
        );
    }

    // 2. Zero of a at the soliton eigenvalue.
    let k1 = C64::new(xi, eta * (2.0 * eta * x0).tanh());
    let (a_k1, _) = xs.eval(k1)?;
    println!(
        "\neigenvalue k1 = {:.4} + {:.4}i:  |a(k1)| = {:.2e}",
        k1.re,
        k1.im,
        a_k1.norm()
    );

    // 3. Global relation aB - bA = 0 in the closed first quadrant of k^2.
    println!("\nk                  |a B - b A|");
    for &(re, im) in &[(1.5, 0.0), (0.9, 0.9), (0.0, 1.4), (2.2, 0.4)] {
        let k = C64::new(re, im);
        let (a, b) = xs.eval(k)?;
        let (aa, bb) = ts.eval(k)?;
        println!("{re:>4.1} + {im:>4.1}i   {:.2e}", (a * bb - b * aa).norm());
    }

    Ok(())
}
