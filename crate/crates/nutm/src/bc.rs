//! Reflection functions for the Riemann-Hilbert problem.
//!
//! gamma(k) = b(k)/conj(a(conj k)) lives on a strip around the real axis;
//! Gamma(k) continues the boundary-trace reflection into the upper
//! half-plane. For the linearizable boundary conditions the global relation
//! and the symmetry k -> -k eliminate the unknown boundary values and give
//! Gamma in closed form from (a, b) alone:
//!
//!   Dirichlet:  Gamma = -lambda conj(b(-conj k)) / (a(k) Delta0(k)),
//!               Delta0 = a(k) conj(a(-conj k)) + lambda b(k) conj(b(-conj k));
//!   Neumann:    Gamma = +lambda conj(b(-conj k)) / (a(k) Delta1(k)),
//!               Delta1 = a(k) conj(a(-conj k)) - lambda b(k) conj(b(-conj k));
//!   Robin q_x(0,t) = rho q(0,t), rho > 0:
//!               Gamma = lambda (2k - i rho) conj(b(-conj k)) /
//!                       { a(k) [ (2k + i rho) a(k) conj(a(-conj k))
//!                                - lambda (2k - i rho) b(k) conj(b(-conj k)) ] },
//!
//! which recovers the Dirichlet (rho -> infinity) and Neumann (rho -> 0)
//! forms. For overdetermined admissible data with decaying traces the
//! global relation collapses the exact ratio to
//! Gamma(k) = -lambda conj(b(conj k)) / a(k), valid on the whole strip by
//! analytic continuation; then lambda conj(gamma(conj k)) + Gamma(k) = 0,
//! so tau = 1 identically and certification reduces to the pole reset.
//!
//! Certification picks the strip half-width: start from alpha/2, reset to
//! (min Im p)/8 when a pole sits at or below alpha/2, then halve until
//! (i) the datum supports the depth in double precision and (ii) the
//! function tau = 1 + (lambda conj(gamma(conj k)) + Gamma)(lambda
//! conj(Gamma(conj k)) + gamma) stays away from zero on the sampled strip
//! edges and on the real axis.

use crate::spectral::{TSpectral, XSpectral};
use crate::zeros::PoleData;
use crate::{C64, NutmError};
use std::sync::Arc;

/// A function of the complex wavenumber.
pub type KFn = Arc<dyn Fn(C64) -> Result<C64, NutmError> + Send + Sync>;

/// Where the reflection functions are actually evaluable, which decides
/// which contour constructions may use them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// Closed forms from a linearizable boundary condition: gamma on the
    /// strip, Gamma meromorphic on the whole upper half-plane.
    Linearizable,
    /// Overdetermined data with decaying traces, reduced through the global
    /// relation: Gamma is only the strip continuation of -lambda
    /// conj(gamma(conj k)), so no contour may leave the certified strip.
    OverdeterminedStrip,
    /// Overdetermined data on a finite time window: the trace spectral
    /// functions are entire, so Gamma is meromorphic on the upper
    /// half-plane and the deformed contours are available.
    OverdeterminedUhp,
    /// Prescribed rational reflection data.
    Dressing,
}

/// Knobs for the strip certification scan.
#[derive(Clone, Debug)]
pub struct BcOptions {
    /// Real-axis extent of the tau sampling, [-cert_range, cert_range].
    pub cert_range: f64,
    /// Samples per unit length along each sampled line.
    pub cert_density: f64,
    /// Narrowest strip half-width before certification gives up.
    pub min_width: f64,
}

impl Default for BcOptions {
    fn default() -> Self {
        BcOptions {
            cert_range: 6.0,
            cert_density: 100.0,
            min_width: 1e-3,
        }
    }
}

/// The reflection data entering the Riemann-Hilbert problem: gamma on the
/// strip, Gamma on the upper half-plane, the poles with their constants,
/// and the certified strip half-width.
pub struct GammaPair {
    pub lambda: f64,
    pub poles: Vec<PoleData>,
    pub alpha_strip: f64,
    pub kind: PairKind,
    gamma_fn: KFn,
    big_gamma_fn: KFn,
}

impl GammaPair {
    /// Assemble from explicit closures (used by the dressing construction,
    /// where the reflection functions are prescribed rather than computed).
    pub fn from_parts(
        lambda: f64,
        gamma_fn: KFn,
        big_gamma_fn: KFn,
        poles: Vec<PoleData>,
        alpha_strip: f64,
        kind: PairKind,
    ) -> Self {
        GammaPair {
            lambda,
            poles,
            alpha_strip,
            kind,
            gamma_fn,
            big_gamma_fn,
        }
    }

    pub fn gamma(&self, k: C64) -> Result<C64, NutmError> {
        (self.gamma_fn)(k)
    }

    pub fn big_gamma(&self, k: C64) -> Result<C64, NutmError> {
        (self.big_gamma_fn)(k)
    }

    /// tau(k) = 1 + (lambda conj(gamma(conj k)) + Gamma(k))
    ///            (lambda conj(Gamma(conj k)) + gamma(k)).
    pub fn tau(&self, k: C64) -> Result<C64, NutmError> {
        let u = self.lambda * self.gamma(k.conj())?.conj() + self.big_gamma(k)?;
        let v = self.lambda * self.big_gamma(k.conj())?.conj() + self.gamma(k)?;
        Ok(1.0 + u * v)
    }
}

fn guarded_div(num: C64, den: C64, what: &str, k: C64) -> Result<C64, NutmError> {
    if den.norm() < 1e-12 {
        // An exactly vanishing numerator (e.g. b = 0 for the zero datum)
        // makes the ratio a removable 0/0; anything else is a pole on the
        // evaluation set.
        if num.norm() <= 1e-15 {
            return Ok(C64::new(0.0, 0.0));
        }
        return Err(NutmError::Deformation(format!(
            "{what} vanishes at k = {k}; the reflection function has a pole there"
        )));
    }
    Ok(num / den)
}

fn gamma_of(xs: &Arc<XSpectral>) -> KFn {
    let xs = xs.clone();
    Arc::new(move |k| {
        let (_, b) = xs.eval(k)?;
        let (abar, _) = xs.eval(k.conj())?;
        guarded_div(b, abar.conj(), "conj(a(conj k))", k)
    })
}

/// Gamma for the homogeneous Dirichlet condition q(0,t) = 0.
pub fn dirichlet_gamma(
    xs: &Arc<XSpectral>,
    poles: &[PoleData],
    opts: &BcOptions,
) -> Result<GammaPair, NutmError> {
    let lam = xs.lambda();
    let xsc = xs.clone();
    let big: KFn = Arc::new(move |k| {
        let (ak, bk) = xsc.eval(k)?;
        let (am, bm) = xsc.eval(-k.conj())?;
        let delta0 = ak * am.conj() + lam * bk * bm.conj();
        guarded_div(-lam * bm.conj(), ak * delta0, "a(k) Delta0(k)", k)
    });
    finish_pair(xs, lam, gamma_of(xs), big, poles, opts, true, PairKind::Linearizable)
}

/// Gamma for the homogeneous Neumann condition q_x(0,t) = 0.
pub fn neumann_gamma(
    xs: &Arc<XSpectral>,
    poles: &[PoleData],
    opts: &BcOptions,
) -> Result<GammaPair, NutmError> {
    let lam = xs.lambda();
    let xsc = xs.clone();
    let big: KFn = Arc::new(move |k| {
        let (ak, bk) = xsc.eval(k)?;
        let (am, bm) = xsc.eval(-k.conj())?;
        let delta1 = ak * am.conj() - lam * bk * bm.conj();
        guarded_div(lam * bm.conj(), ak * delta1, "a(k) Delta1(k)", k)
    });
    finish_pair(xs, lam, gamma_of(xs), big, poles, opts, true, PairKind::Linearizable)
}

/// Gamma for the Robin condition q_x(0,t) - rho q(0,t) = 0 with rho > 0.
/// Negative rho generically places zeros of a(k) on the positive imaginary
/// axis, which the contour machinery does not support.
pub fn robin_gamma(
    xs: &Arc<XSpectral>,
    poles: &[PoleData],
    rho: f64,
    opts: &BcOptions,
) -> Result<GammaPair, NutmError> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(NutmError::Config(format!(
            "the Robin parameter must satisfy rho > 0, got {rho}; \
             use the Dirichlet/Neumann constructors for the limiting cases"
        )));
    }
    let lam = xs.lambda();
    let xsc = xs.clone();
    let big: KFn = Arc::new(move |k| {
        let (ak, bk) = xsc.eval(k)?;
        let (am, bm) = xsc.eval(-k.conj())?;
        let wp = 2.0 * k + C64::new(0.0, rho);
        let wm = 2.0 * k - C64::new(0.0, rho);
        let den = ak * (wp * ak * am.conj() - lam * wm * bk * bm.conj());
        guarded_div(lam * wm * bm.conj(), den, "the Robin denominator", k)
    });
    finish_pair(xs, lam, gamma_of(xs), big, poles, opts, true, PairKind::Linearizable)
}

/// Gamma reduced from overdetermined admissible data (decaying traces
/// consistent with the initial datum through the global relation).
/// `extra_poles` are user-supplied zeros of d(k) in the second quadrant
/// with their constants; they are appended to the zeros of a(k).
pub fn overdetermined_gamma(
    xs: &Arc<XSpectral>,
    a_poles: &[PoleData],
    extra_poles: &[PoleData],
    opts: &BcOptions,
) -> Result<GammaPair, NutmError> {
    let lam = xs.lambda();
    let xsc = xs.clone();
    let big: KFn = Arc::new(move |k| {
        let (ak, _) = xsc.eval(k)?;
        let (_, bbar) = xsc.eval(k.conj())?;
        guarded_div(-lam * bbar.conj(), ak, "a(k)", k)
    });
    let mut poles = a_poles.to_vec();
    poles.extend_from_slice(extra_poles);
    // tau = 1 identically for the reduced ratio, so only the width checks run.
    finish_pair(
        xs,
        lam,
        gamma_of(xs),
        big,
        &poles,
        opts,
        false,
        PairKind::OverdeterminedStrip,
    )
}

/// Gamma for overdetermined admissible data prescribed on a finite time
/// window [0, T]. The trace spectral functions are entire in k, so the
/// exact ratio
///
///   Gamma = -lambda conj(B(conj k, T)) /
///           { a(k) [ a(k) conj(A(conj k, T)) + lambda b(k) conj(B(conj k, T)) ] }
///
/// is meromorphic on the whole upper half-plane, with poles only at the
/// zeros of a and of the bracket. The exponential e^{-4ik^2 T} common to
/// numerator and denominator cancels analytically and is never formed:
/// both factors come from decaying-mode solves (see
/// `TSpectral::gamma_mantissas`).
///
/// Each tau sample costs a few ODE solves, so the certification density is
/// capped at 8 samples per unit internally.
pub fn overdetermined_finite_gamma(
    xs: &Arc<XSpectral>,
    ts: &Arc<TSpectral>,
    a_poles: &[PoleData],
    extra_poles: &[PoleData],
    opts: &BcOptions,
) -> Result<GammaPair, NutmError> {
    if !ts.is_finite() {
        return Err(NutmError::Config(
            "the finite-window reflection needs traces with a final time; \
             decaying traces go through the strip-reduced constructor"
                .into(),
        ));
    }
    let lam = xs.lambda();
    if (ts.lambda() - lam).abs() > 0.0 {
        return Err(NutmError::Config(
            "initial datum and boundary traces disagree on the nonlinearity sign".into(),
        ));
    }
    let xsc = xs.clone();
    let tsc = ts.clone();
    let big: KFn = Arc::new(move |k| {
        let (ak, bk) = xsc.eval(k)?;
        let (m2, m1b) = tsc.gamma_mantissas(k)?;
        let num = lam * m1b.conj();
        let den = ak * (ak * m2 - lam * bk * m1b.conj());
        guarded_div(num, den, "a(k) d(k)", k)
    });
    let mut poles = a_poles.to_vec();
    poles.extend_from_slice(extra_poles);
    let mut eff = opts.clone();
    eff.cert_density = eff.cert_density.min(8.0);
    finish_pair(
        xs,
        lam,
        gamma_of(xs),
        big,
        &poles,
        &eff,
        true,
        PairKind::OverdeterminedUhp,
    )
}

#[allow(clippy::too_many_arguments)]
fn finish_pair(
    xs: &Arc<XSpectral>,
    lambda: f64,
    gamma_fn: KFn,
    big_gamma_fn: KFn,
    poles: &[PoleData],
    opts: &BcOptions,
    sample_tau: bool,
    kind: PairKind,
) -> Result<GammaPair, NutmError> {
    let pair = GammaPair {
        lambda,
        poles: poles.to_vec(),
        alpha_strip: 0.0,
        kind,
        gamma_fn,
        big_gamma_fn,
    };
    let width = certify_strip(xs, &pair, opts, sample_tau)?;
    Ok(GammaPair {
        alpha_strip: width,
        ..pair
    })
}

/// Choose the certified strip half-width (see the module notes).
fn certify_strip(
    xs: &XSpectral,
    pair: &GammaPair,
    opts: &BcOptions,
    sample_tau: bool,
) -> Result<f64, NutmError> {
    let mut s = 0.5 * xs.alpha();
    if let Some(min_im) = pair
        .poles
        .iter()
        .map(|p| p.p.im)
        .min_by(f64::total_cmp)
    {
        if min_im <= s {
            s = 0.25 * min_im / 2.0;
        }
    }
    loop {
        if s < opts.min_width {
            return Err(NutmError::Deformation(format!(
                "no certifiable strip wider than {} around the real axis",
                opts.min_width
            )));
        }
        if xs.strip_accuracy(s) > 1e-6 {
            s *= 0.5;
            continue;
        }
        if !sample_tau || tau_clear_on_strip(pair, s, opts) {
            return Ok(s);
        }
        s *= 0.5;
    }
}

/// Sample tau on Im k in {-s, 0, +s} and require it to stay away from
/// zero. Evaluation failures at depth count as failures of the width, not
/// of the whole construction.
pub(crate) fn tau_clear_on_strip(pair: &GammaPair, s: f64, opts: &BcOptions) -> bool {
    let n = (2.0 * opts.cert_range * opts.cert_density).ceil() as usize;
    for level in [-s, 0.0, s] {
        for j in 0..=n {
            let x = -opts.cert_range + 2.0 * opts.cert_range * (j as f64) / (n as f64);
            match pair.tau(C64::new(x, level)) {
                Ok(tau) => {
                    if tau.norm() < 1e-3 {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
    }
    true
}
