//! Jump-matrix factory for the sectionally analytic function built from a
//! reflection pair.
//!
//! Notation inside the closures: g = gamma(k), gb = conj(gamma(conj k)),
//! G = Gamma(k), Gb = conj(Gamma(conj k)), e2 = e^{2 i theta},
//! em2 = e^{-2 i theta}, u = lambda gb + G, v = lambda Gb + g,
//! tau = 1 + u v. All pieces are oriented outward from their anchor, so
//! the stored matrices are the outward jumps:
//!
//!   positive real axis      J4   = [[1 + lambda g gb, g em2], [lambda gb e2, 1]]
//!   positive imaginary axis J1^{-1} = [[1, 0], [G e2, 1]]
//!   negative real axis      J2   = [[1, -v em2], [-u e2, tau]]
//!   negative imaginary axis J3^{-1} = [[1, lambda Gb em2], [0, 1]]
//!
//! and the factor identities J4 = M P and J2 = U D L = Ltilde Utilde hold
//! with M = [[1, g em2],[0,1]], P = [[1,0],[lambda gb e2, 1]],
//! U = [[1, -(v/tau) em2],[0,1]], D = diag(1/tau, tau),
//! L = [[1,0],[-(u/tau) e2, 1]], Ltilde = [[1,0],[-u e2,1]],
//! Utilde = [[1, -v em2],[0,1]]. The deformed lens legs carry
//! Ltilde^{-1} (northeast) and Utilde^{-1} (southeast).

use super::{JumpFn, PhaseParams};
use crate::bc::GammaPair;
use crate::mat2::M2;
use crate::rhp::delta::DeltaFunction;
use crate::{C64, NutmError};
use std::sync::Arc;

/// Evaluate (u, v) for a pair at one wavenumber.
pub fn uv_at(pair: &GammaPair, k: C64) -> Result<(C64, C64), NutmError> {
    let u = pair.lambda * pair.gamma(k.conj())?.conj() + pair.big_gamma(k)?;
    let v = pair.lambda * pair.big_gamma(k.conj())?.conj() + pair.gamma(k)?;
    Ok((u, v))
}

fn tau_checked(pair: &GammaPair, k: C64) -> Result<(C64, C64, C64), NutmError> {
    let (u, v) = uv_at(pair, k)?;
    let tau = 1.0 + u * v;
    if tau.norm() < 1e-12 {
        return Err(NutmError::Deformation(format!(
            "tau vanishes at k = {k}; the factorization contour crosses a zero of tau"
        )));
    }
    Ok((u, v, tau))
}

/// Factory of jump closures sharing one reflection pair and phase.
pub struct JumpSet {
    pair: Arc<GammaPair>,
    phase: PhaseParams,
}

impl JumpSet {
    pub fn new(pair: Arc<GammaPair>, phase: PhaseParams) -> Self {
        JumpSet { pair, phase }
    }

    pub fn phase(&self) -> PhaseParams {
        self.phase
    }

    /// J4, the outward jump on the positive real axis.
    pub fn j4(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let lam = pair.lambda;
            let g = pair.gamma(k)?;
            let gb = pair.gamma(k.conj())?.conj();
            let e2 = ph.e2(k);
            let em2 = ph.em2(k);
            Ok(M2([
                [1.0 + lam * g * gb, g * em2],
                [lam * gb * e2, C64::new(1.0, 0.0)],
            ]))
        })
    }

    /// J4^{-1}, the outward jump on the negative real axis of the t = 0
    /// whole-line reduction.
    pub fn j4_inv(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let lam = pair.lambda;
            let g = pair.gamma(k)?;
            let gb = pair.gamma(k.conj())?.conj();
            let e2 = ph.e2(k);
            let em2 = ph.em2(k);
            Ok(M2([
                [C64::new(1.0, 0.0), -g * em2],
                [-lam * gb * e2, 1.0 + lam * g * gb],
            ]))
        })
    }

    /// J1^{-1}, the outward jump on the positive imaginary axis (and on the
    /// deformed ray at angle pi/4 from the bend).
    pub fn j1_inv(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let big = pair.big_gamma(k)?;
            let e2 = ph.e2(k);
            let mut m = M2::identity();
            m.0[1][0] = big * e2;
            Ok(m)
        })
    }

    /// J3^{-1}, the outward jump on the negative imaginary axis (and on the
    /// deformed ray at angle -pi/4 from the bend).
    pub fn j3_inv(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let lam = pair.lambda;
            let bigb = pair.big_gamma(k.conj())?.conj();
            let em2 = ph.em2(k);
            let mut m = M2::identity();
            m.0[0][1] = lam * bigb * em2;
            Ok(m)
        })
    }

    /// J2, the outward jump on the negative real axis.
    pub fn j2(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let (u, v) = uv_at(&pair, k)?;
            let e2 = ph.e2(k);
            let em2 = ph.em2(k);
            Ok(M2([
                [C64::new(1.0, 0.0), -v * em2],
                [-u * e2, 1.0 + u * v],
            ]))
        })
    }

    /// P, the lower-triangular factor of J4 (outward east horizontal).
    pub fn p_mat(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let lam = pair.lambda;
            let gb = pair.gamma(k.conj())?.conj();
            let mut m = M2::identity();
            m.0[1][0] = lam * gb * ph.e2(k);
            Ok(m)
        })
    }

    /// M, the upper-triangular factor of J4 (outward east horizontal,
    /// lower branch).
    pub fn m_mat(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let g = pair.gamma(k)?;
            let mut m = M2::identity();
            m.0[0][1] = g * ph.em2(k);
            Ok(m)
        })
    }

    /// Ltilde^{-1} = [[1,0],[u e2,1]], the outward northeast lens leg.
    pub fn ne_leg(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let (u, _) = uv_at(&pair, k)?;
            let mut m = M2::identity();
            m.0[1][0] = u * ph.e2(k);
            Ok(m)
        })
    }

    /// Utilde^{-1} = [[1, v em2],[0,1]], the outward southeast lens leg.
    pub fn se_leg(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let (_, v) = uv_at(&pair, k)?;
            let mut m = M2::identity();
            m.0[0][1] = v * ph.em2(k);
            Ok(m)
        })
    }

    /// U = [[1, -(v/tau) em2],[0,1]], the outward northwest pieces.
    pub fn u_mat(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let (_, v, tau) = tau_checked(&pair, k)?;
            let mut m = M2::identity();
            m.0[0][1] = -(v / tau) * ph.em2(k);
            Ok(m)
        })
    }

    /// L = [[1,0],[-(u/tau) e2,1]], the outward southwest pieces.
    pub fn l_mat(&self) -> JumpFn {
        let pair = self.pair.clone();
        let ph = self.phase;
        Arc::new(move |k| {
            let (u, _, tau) = tau_checked(&pair, k)?;
            let mut m = M2::identity();
            m.0[1][0] = -(u / tau) * ph.e2(k);
            Ok(m)
        })
    }

    /// D = diag(1/tau, tau), the outward west diagonal jump.
    pub fn d_mat(&self) -> JumpFn {
        let pair = self.pair.clone();
        Arc::new(move |k| {
            let (_, _, tau) = tau_checked(&pair, k)?;
            Ok(M2::diag(1.0 / tau, tau))
        })
    }
}

/// Conjugate a jump by Delta(k) = diag(delta(k), 1/delta(k)): the 12 entry
/// picks up delta^2, the 21 entry delta^{-2}, the diagonal is unchanged.
pub fn wrap_delta(inner: JumpFn, delta: Arc<DeltaFunction>) -> JumpFn {
    Arc::new(move |k| {
        let j = inner(k)?;
        let d2 = delta.eval_sq(k)?;
        Ok(M2([
            [j.0[0][0], j.0[0][1] * d2],
            [j.0[1][0] / d2, j.0[1][1]],
        ]))
    })
}

/// Conjugate a jump by V(k) = diag(v(k), 1/v(k)) with
/// v(k) = prod (k - z_j)/(k - conj z_j) over the inverted poles: the 12
/// entry picks up v^{-2}, the 21 entry v^{2}.
pub fn wrap_v(inner: JumpFn, inverted: Arc<Vec<C64>>) -> JumpFn {
    Arc::new(move |k| {
        let j = inner(k)?;
        let mut v = C64::new(1.0, 0.0);
        for &z in inverted.iter() {
            v *= (k - z) / (k - z.conj());
        }
        let v2 = v * v;
        Ok(M2([
            [j.0[0][0], j.0[0][1] / v2],
            [j.0[1][0] * v2, j.0[1][1]],
        ]))
    })
}
