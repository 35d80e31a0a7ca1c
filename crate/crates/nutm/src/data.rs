//! Built-in initial conditions and boundary traces.
//!
//! Each initial condition carries a declared exponential decay rate
//! `alpha` (|q0(x)| decays at least like e^{-alpha x}), which bounds the
//! strip of analyticity available to the spectral functions. The declared
//! rate is deliberately conservative: evaluating (a, b) at depth m below
//! the real axis amplifies roundoff by e^{2mL}, so a rate that is
//! analytically valid can still be useless in double precision. For
//! super-exponential data the declared rate is chosen so that the strip
//! Im k >= -alpha/2 stays within the numerically certifiable depth.

use crate::C64;
use std::sync::Arc;

/// Initial condition q0(x) on the half-line with its x-derivative and a
/// declared decay rate.
#[derive(Clone)]
pub struct InitialData {
    pub q0: Arc<dyn Fn(f64) -> C64 + Send + Sync>,
    pub dq0: Arc<dyn Fn(f64) -> C64 + Send + Sync>,
    /// Decay rate: |q0(x)| ≲ e^{-alpha x}.
    pub alpha: f64,
}

/// Dirichlet and Neumann boundary traces g0(t) = q(0,t), g1(t) = q_x(0,t),
/// prescribed up to time `t_end` (`None` means the traces decay and are
/// given for all t ≥ 0).
#[derive(Clone)]
pub struct BoundaryTraces {
    pub g0: Arc<dyn Fn(f64) -> C64 + Send + Sync>,
    pub g1: Arc<dyn Fn(f64) -> C64 + Send + Sync>,
    pub t_end: Option<f64>,
}

impl std::fmt::Debug for InitialData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InitialData").field("alpha", &self.alpha).finish()
    }
}

impl std::fmt::Debug for BoundaryTraces {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundaryTraces").field("t_end", &self.t_end).finish()
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// q0(x) = e^{-x^2}.
pub fn gaussian() -> InitialData {
    InitialData {
        q0: Arc::new(|x| c((-x * x).exp(), 0.0)),
        dq0: Arc::new(|x| c(-2.0 * x * (-x * x).exp(), 0.0)),
        alpha: 2.0,
    }
}

/// q0(x) = x e^{-x^2} (vanishes at the origin; compatible with a
/// homogeneous Dirichlet condition).
pub fn x_gaussian() -> InitialData {
    InitialData {
        q0: Arc::new(|x| c(x * (-x * x).exp(), 0.0)),
        dq0: Arc::new(|x| c((1.0 - 2.0 * x * x) * (-x * x).exp(), 0.0)),
        alpha: 2.0,
    }
}

/// q0(x) = e^{-x} (used in the linear-limit checks).
pub fn exp_decay() -> InitialData {
    InitialData {
        q0: Arc::new(|x| c((-x).exp(), 0.0)),
        dq0: Arc::new(|x| c(-(-x).exp(), 0.0)),
        alpha: 0.95,
    }
}

/// q0(x) = e^{-x^2} + i sech^2(x).
pub fn gaussian_sech() -> InitialData {
    let sech = |x: f64| 1.0 / x.cosh();
    InitialData {
        q0: Arc::new(move |x| c((-x * x).exp(), sech(x) * sech(x))),
        dq0: Arc::new(move |x| {
            c(
                -2.0 * x * (-x * x).exp(),
                -2.0 * sech(x) * sech(x) * x.tanh(),
            )
        }),
        alpha: 1.8,
    }
}

/// The focusing one-soliton q(x,t) = 2 eta e^{-4it(xi^2-eta^2) - 2ix xi}
/// sech(2 eta (4 t xi + x - x0)).
pub fn soliton_field(xi: f64, eta: f64, x0: f64, x: f64, t: f64) -> C64 {
    let phase = c(0.0, -4.0 * t * (xi * xi - eta * eta) - 2.0 * x * xi).exp();
    let arg = 2.0 * eta * (4.0 * t * xi + x - x0);
    2.0 * eta * phase / arg.cosh()
}

/// x-derivative of the one-soliton field.
pub fn soliton_field_dx(xi: f64, eta: f64, x0: f64, x: f64, t: f64) -> C64 {
    let arg = 2.0 * eta * (4.0 * t * xi + x - x0);
    soliton_field(xi, eta, x0, x, t) * c(-2.0 * eta * arg.tanh(), -2.0 * xi)
}

/// Initial and boundary data carved from the one-soliton solution.
/// The true decay rate in x is 2 eta; the declared rate stays below it.
pub fn sech_soliton(xi: f64, eta: f64, x0: f64) -> (InitialData, BoundaryTraces) {
    let init = InitialData {
        q0: Arc::new(move |x| soliton_field(xi, eta, x0, x, 0.0)),
        dq0: Arc::new(move |x| soliton_field_dx(xi, eta, x0, x, 0.0)),
        alpha: 0.9 * 2.0 * eta,
    };
    let traces = BoundaryTraces {
        g0: Arc::new(move |t| soliton_field(xi, eta, x0, 0.0, t)),
        g1: Arc::new(move |t| soliton_field_dx(xi, eta, x0, 0.0, t)),
        t_end: None,
    };
    (init, traces)
}

/// The defocusing one-positon q(x,t) = 2 eta e^{-4it(xi^2-eta^2) - 2ix xi}
/// csch(2 eta (4 t xi + x - x0)); x0 < 0 keeps the singularity outside the
/// quarter plane.
pub fn positon_field(xi: f64, eta: f64, x0: f64, x: f64, t: f64) -> C64 {
    let phase = c(0.0, -4.0 * t * (xi * xi - eta * eta) - 2.0 * x * xi).exp();
    let arg = 2.0 * eta * (4.0 * t * xi + x - x0);
    2.0 * eta * phase / arg.sinh()
}

/// x-derivative of the one-positon field.
pub fn positon_field_dx(xi: f64, eta: f64, x0: f64, x: f64, t: f64) -> C64 {
    let arg = 2.0 * eta * (4.0 * t * xi + x - x0);
    positon_field(xi, eta, x0, x, t) * c(-2.0 * eta / arg.tanh(), -2.0 * xi)
}

/// Initial and boundary data carved from the one-positon solution
/// (requires xi > 0 and x0 < 0 so the data are smooth and decaying).
pub fn positon(xi: f64, eta: f64, x0: f64) -> (InitialData, BoundaryTraces) {
    assert!(xi > 0.0 && x0 < 0.0, "positon data need xi > 0, x0 < 0");
    let init = InitialData {
        q0: Arc::new(move |x| positon_field(xi, eta, x0, x, 0.0)),
        dq0: Arc::new(move |x| positon_field_dx(xi, eta, x0, x, 0.0)),
        alpha: 0.9 * 2.0 * eta,
    };
    let traces = BoundaryTraces {
        g0: Arc::new(move |t| positon_field(xi, eta, x0, 0.0, t)),
        g1: Arc::new(move |t| positon_field_dx(xi, eta, x0, 0.0, t)),
        t_end: None,
    };
    (init, traces)
}
