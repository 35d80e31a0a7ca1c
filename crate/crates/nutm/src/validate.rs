//! Validation operations tying the spectral functions to the data: the
//! corner compatibility conditions, the global relation, and the large-k
//! expansion coefficients used as independent cross-checks.

use crate::cheb::{cheb2_nodes, cheb_coeffs, cheb_integrate};
use crate::data::{BoundaryTraces, InitialData};
use crate::spectral::{TSpectral, XSpectral};
use crate::{C64, NutmError};

/// Chebyshev quadrature of f over [a, b].
fn integral(f: &dyn Fn(f64) -> C64, a: f64, b: f64, n: usize) -> C64 {
    let nodes = cheb2_nodes(n);
    let vals: Vec<C64> = nodes
        .iter()
        .map(|&s| f(a + 0.5 * (b - a) * (s + 1.0)))
        .collect();
    cheb_integrate(&cheb_coeffs(&vals)) * 0.5 * (b - a)
}

/// Corner compatibility between the initial datum and the boundary traces.
#[derive(Clone, Copy, Debug)]
pub struct CompatibilityReport {
    pub q0_at_zero: C64,
    pub g0_at_zero: C64,
    pub dq0_at_zero: C64,
    pub g1_at_zero: C64,
    pub pass: bool,
}

/// Check q0(0) = g0(0) and q0'(0) = g1(0) to the given tolerance.
pub fn check_compatibility(
    init: &InitialData,
    traces: &BoundaryTraces,
    tol: f64,
) -> CompatibilityReport {
    let q0 = (init.q0)(0.0);
    let g0 = (traces.g0)(0.0);
    let dq0 = (init.dq0)(0.0);
    let g1 = (traces.g1)(0.0);
    CompatibilityReport {
        q0_at_zero: q0,
        g0_at_zero: g0,
        dq0_at_zero: dq0,
        g1_at_zero: g1,
        pass: (q0 - g0).norm() <= tol && (dq0 - g1).norm() <= tol,
    }
}

/// Residual of the global relation over the supplied wavenumbers; the
/// maximum is returned.
///
/// For decaying traces (T = infinity) the relation reads
/// a(k) B(k) - b(k) A(k) = 0 on the closed first quadrant, and the residual
/// is just the modulus. On a finite window the combination equals
/// e^{4ik^2 T} c+(k, T) with c+ analytic and O(1/k), so the reported
/// residual is |(aB - bA) e^{-4ik^2 T}| |k|, which stays O(1) for
/// admissible data and blows up otherwise; callers should sample real k
/// in the finite-window case.
pub fn check_global_relation(
    xs: &XSpectral,
    ts: &TSpectral,
    ks: &[C64],
) -> Result<f64, NutmError> {
    let mut worst = 0.0f64;
    for &k in ks {
        let (a, b) = xs.eval(k)?;
        let (aa, bb) = ts.eval(k)?;
        let combo = a * bb - b * aa;
        let residual = if ts.is_finite() {
            let arg = -4.0 * C64::new(0.0, 1.0) * k * k * ts.t_cut();
            (combo * arg.exp()).norm() * k.norm()
        } else {
            if k.re < -1e-12 || k.im < -1e-12 {
                return Err(NutmError::Config(format!(
                    "the decaying-trace global relation holds on the closed \
                     first quadrant; k = {k} is outside it"
                )));
            }
            combo.norm()
        };
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// Leading large-k expansion coefficients of the spectral functions,
/// computed from the data by quadrature:
///
///   a(k) = 1 + a1/k + O(1/k^2),        a1 = lambda I0 / (2i),
///   b(k) = b1/k + b2/k^2 + O(1/k^3),   b1 = q0(0)/(2i),
///                                      b2 = (q0'(0) - lambda q0(0) I0)/4,
///   I0 = int_0^inf |q0|^2 dx,
///
/// and for the traces, with G = conj(g0) g1 - conj(g1) g0 (purely
/// imaginary),
///
///   A(k,T) = 1 + big_a1/k + O(1/k^2),  big_a1 = lambda (int_0^T G) / 2,
///   B(k,T) = big_b_exp e^{4ik^2 T}/k + big_b1/k + O(1/k^2),
///            big_b1 = g0(0)/(2i),      big_b_exp = -g0(T)/(2i),
///
/// the exponential term being absent for decaying traces.
#[derive(Clone, Copy, Debug)]
pub struct AsymptoticCoefficients {
    pub i0: f64,
    pub a1: C64,
    pub b1: C64,
    pub b2: C64,
    pub int_g: Option<C64>,
    pub big_a1: Option<C64>,
    pub big_b1: Option<C64>,
    pub big_b_exp: Option<C64>,
}

pub fn asymptotic_coefficients(
    xs: &XSpectral,
    ts: Option<&TSpectral>,
) -> AsymptoticCoefficients {
    let lam = xs.lambda();
    let q0 = xs.data.q0.clone();
    let i0 = integral(
        &|x| C64::new(q0(x).norm_sqr(), 0.0),
        0.0,
        xs.l_cutoff(),
        256,
    )
    .re;
    let two_i = C64::new(0.0, 2.0);
    let q00 = xs.q0_at_zero();
    let a1 = lam * i0 / two_i;
    let b1 = q00 / two_i;
    let b2 = (xs.dq0_at_zero() - lam * q00 * i0) / 4.0;

    let (int_g, big_a1, big_b1, big_b_exp) = match ts {
        None => (None, None, None, None),
        Some(ts) => {
            let g0 = ts.traces.g0.clone();
            let g1 = ts.traces.g1.clone();
            let ig = integral(
                &|t| g0(t).conj() * g1(t) - g1(t).conj() * g0(t),
                0.0,
                ts.t_cut(),
                256,
            );
            let bexp = if ts.is_finite() {
                Some(-g0(ts.t_cut()) / two_i)
            } else {
                None
            };
            (
                Some(ig),
                Some(ts.lambda() * ig / 2.0),
                Some(g0(0.0) / two_i),
                bexp,
            )
        }
    };
    AsymptoticCoefficients {
        i0,
        a1,
        b1,
        b2,
        int_g,
        big_a1,
        big_b1,
        big_b_exp,
    }
}
