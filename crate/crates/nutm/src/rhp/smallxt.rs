//! The eight-ray contour for small x and t.
//!
//! The half-line reflection functions decay only like 1/k, so the
//! undeformed cross needs contours far beyond any practical truncation
//! radius when x and t are too small for the oscillatory factors to decay.
//! Subtracting the known 1/k tails
//!
//!   gamma_0(k) = q0(0) / (2i (k - khat)),
//!   Gamma_0(k) = lambda conj(q0(0)) / (2i (k - khat)),   khat = 1 - 2i,
//!
//! leaves remainders gamma_r = gamma - gamma_0, Gamma_r = Gamma - Gamma_0
//! of order 1/k^2 on the axes; the subtracted tails reappear as decaying
//! jumps on the four diagonals. With u0 = lambda conj(gamma_0(conj k)) +
//! Gamma_0 and v0 = lambda conj(Gamma_0(conj k)) + gamma_0 (both O(1/k^2):
//! the leading tails cancel between the two terms), the outward jumps are
//!
//!   arg 0:      J4 with gamma -> gamma_r
//!   arg pi/4:   [[1,0],[ u0 e2,1]]
//!   arg pi/2:   [[1,0],[ Gamma_r e2,1]]
//!   arg 3pi/4:  [[1,0],[-u0 e2,1]]
//!   arg pi:     J2 with (gamma,Gamma) -> (gamma_r,Gamma_r)
//!   arg 5pi/4:  [[1,-v0 em2],[0,1]]
//!   arg 3pi/2:  [[1, lambda conj(Gamma_r(conj k)) em2],[0,1]]
//!   arg 7pi/4:  [[1, v0 em2],[0,1]]
//!
//! pinned by the telescoping identity J2 = Ltilde0 V2 Utilde0 across the
//! west axis and the factor identities at the other junctions. Every
//! exponential decays along its ray at t = 0. For t > 0 the phase on the
//! northwest/southwest diagonals turns around at r = sqrt(2) x/(8t); the
//! diagonals are clipped there and the (recorded) leftover is the price of
//! evaluating this close to the corner.
//!
//! When q0(0) = 0 the tails vanish and the plain four-ray cross already
//! decays like 1/k^2. Prescribed rational reflection data (dressing) has
//! gamma = 0: the east axis carries no jump at all and the cross reduces
//! to three rays with no subtraction.

use super::jumps::{uv_at, JumpSet};
use super::{JumpFn, PhaseParams, Piece, PieceGeom, RHProblem};
use crate::bc::{GammaPair, PairKind};
use crate::cheb::{Ray, Segment};
use crate::mat2::M2;
use crate::{C64, NutmError};
use std::f64::consts::PI;
use std::sync::Arc;

const KHAT: C64 = C64::new(1.0, -2.0);

fn gamma0(q0_0: C64, k: C64) -> C64 {
    q0_0 / (2.0 * C64::new(0.0, 1.0) * (k - KHAT))
}

fn big_gamma0(lambda: f64, q0_0: C64, k: C64) -> C64 {
    lambda * q0_0.conj() / (2.0 * C64::new(0.0, 1.0) * (k - KHAT))
}

/// u0 and v0 at one wavenumber.
fn uv0(lambda: f64, q0_0: C64, k: C64) -> (C64, C64) {
    let u0 = lambda * gamma0(q0_0, k.conj()).conj() + big_gamma0(lambda, q0_0, k);
    let v0 = lambda * big_gamma0(lambda, q0_0, k.conj()).conj() + gamma0(q0_0, k);
    (u0, v0)
}

/// Build the small-x,t contour appropriate for the pair.
pub fn build_smallxt(
    pair: &Arc<GammaPair>,
    phase: PhaseParams,
    q0_at_zero: C64,
) -> Result<RHProblem, NutmError> {
    if phase.t < 0.0 {
        return Err(NutmError::Config("t must be nonnegative".into()));
    }
    match pair.kind {
        PairKind::OverdeterminedStrip => Err(NutmError::Deformation(
            "the strip-reduced reflection of decaying overdetermined traces \
             is not evaluable on the imaginary axis, so the small-x,t \
             contour is unavailable; restrict the traces to a finite window \
             or evaluate at larger x or t"
                .into(),
        )),
        PairKind::Dressing => Ok(dressing_cross(pair, phase)),
        _ => {
            let r_clip = if phase.t > 0.0 {
                std::f64::consts::SQRT_2 * phase.x / (8.0 * phase.t)
            } else {
                f64::INFINITY
            };
            if q0_at_zero.norm() < 1e-9 || r_clip < 1e-6 {
                Ok(plain_cross(pair, phase))
            } else {
                Ok(subtracted_cross(pair, phase, q0_at_zero, r_clip))
            }
        }
    }
}

/// The undeformed four-ray cross (used when the reflection functions
/// already decay like 1/k^2).
fn plain_cross(pair: &Arc<GammaPair>, phase: PhaseParams) -> RHProblem {
    let mut rhp = super::build::undeformed(pair, phase, 5.0);
    rhp.provenance = "smallxt-cross".to_string();
    rhp
}

/// Three rays for prescribed reflection data with gamma = 0.
fn dressing_cross(pair: &Arc<GammaPair>, phase: PhaseParams) -> RHProblem {
    let js = JumpSet::new(pair.clone(), phase);
    let mut rhp = RHProblem::new(pair.lambda, phase, "smallxt-dressing");
    let zero = C64::new(0.0, 0.0);
    let ray = |angle: f64| {
        PieceGeom::HalfRay(Ray {
            base: zero,
            angle,
            scale: 5.0,
        })
    };
    rhp.push(Piece::new(ray(PI / 2.0), js.j1_inv(), "im+", true));
    rhp.push(Piece::new(ray(PI), js.j2(), "re-", true));
    rhp.push(Piece::new(ray(1.5 * PI), js.j3_inv(), "im-", true));
    rhp
}

fn subtracted_cross(
    pair: &Arc<GammaPair>,
    phase: PhaseParams,
    q0_0: C64,
    r_clip: f64,
) -> RHProblem {
    let lam = pair.lambda;
    let mut rhp = RHProblem::new(lam, phase, "smallxt");
    let zero = C64::new(0.0, 0.0);
    let ray = |angle: f64| {
        PieceGeom::HalfRay(Ray {
            base: zero,
            angle,
            scale: 5.0,
        })
    };
    // Northwest/southwest diagonals: rays at t = 0, phase-limited segments
    // for t > 0.
    let diag = |angle: f64| -> PieceGeom {
        if r_clip.is_finite() {
            PieceGeom::Seg(Segment {
                a: zero,
                b: C64::from_polar(r_clip, angle),
            })
        } else {
            PieceGeom::HalfRay(Ray {
                base: zero,
                angle,
                scale: 5.0,
            })
        }
    };

    // arg 0: J4 in the remainder functions.
    let p = pair.clone();
    let v4: JumpFn = Arc::new(move |k| {
        let gr = p.gamma(k)? - gamma0(q0_0, k);
        let grb = (p.gamma(k.conj())? - gamma0(q0_0, k.conj())).conj();
        let e2 = phase.e2(k);
        let em2 = phase.em2(k);
        Ok(M2([
            [1.0 + lam * gr * grb, gr * em2],
            [lam * grb * e2, C64::new(1.0, 0.0)],
        ]))
    });
    rhp.push(Piece::new(ray(0.0), v4, "v4", true));

    // arg pi/4: +u0 e2, lower triangular.
    let ne: JumpFn = Arc::new(move |k| {
        let (u0, _) = uv0(lam, q0_0, k);
        let mut m = M2::identity();
        m.0[1][0] = u0 * phase.e2(k);
        Ok(m)
    });
    rhp.push(Piece::new(ray(PI / 4.0), ne, "ne0", true));

    // arg pi/2: Gamma_r e2, lower triangular.
    let p = pair.clone();
    let v1: JumpFn = Arc::new(move |k| {
        let big_r = p.big_gamma(k)? - big_gamma0(lam, q0_0, k);
        let mut m = M2::identity();
        m.0[1][0] = big_r * phase.e2(k);
        Ok(m)
    });
    rhp.push(Piece::new(ray(PI / 2.0), v1, "v1", true));

    // arg 3pi/4: -u0 e2, lower triangular.
    let nw: JumpFn = Arc::new(move |k| {
        let (u0, _) = uv0(lam, q0_0, k);
        let mut m = M2::identity();
        m.0[1][0] = -u0 * phase.e2(k);
        Ok(m)
    });
    rhp.push(Piece::new(diag(3.0 * PI / 4.0), nw, "nw0", true));

    // arg pi: J2 in the remainder functions.
    let p = pair.clone();
    let v2: JumpFn = Arc::new(move |k| {
        let (u, v) = uv_at(&p, k)?;
        let (u0, v0) = uv0(lam, q0_0, k);
        let ur = u - u0;
        let vr = v - v0;
        let e2 = phase.e2(k);
        let em2 = phase.em2(k);
        Ok(M2([
            [C64::new(1.0, 0.0), -vr * em2],
            [-ur * e2, 1.0 + ur * vr],
        ]))
    });
    rhp.push(Piece::new(ray(PI), v2, "v2", true));

    // arg 5pi/4: -v0 em2, upper triangular.
    let sw: JumpFn = Arc::new(move |k| {
        let (_, v0) = uv0(lam, q0_0, k);
        let mut m = M2::identity();
        m.0[0][1] = -v0 * phase.em2(k);
        Ok(m)
    });
    rhp.push(Piece::new(diag(5.0 * PI / 4.0), sw, "sw0", true));

    // arg 3pi/2: lambda conj(Gamma_r(conj k)) em2, upper triangular.
    let p = pair.clone();
    let v3: JumpFn = Arc::new(move |k| {
        let big_rb = (p.big_gamma(k.conj())? - big_gamma0(lam, q0_0, k.conj())).conj();
        let mut m = M2::identity();
        m.0[0][1] = lam * big_rb * phase.em2(k);
        Ok(m)
    });
    rhp.push(Piece::new(ray(1.5 * PI), v3, "v3", true));

    // arg 7pi/4: +v0 em2, upper triangular.
    let se: JumpFn = Arc::new(move |k| {
        let (_, v0) = uv0(lam, q0_0, k);
        let mut m = M2::identity();
        m.0[0][1] = v0 * phase.em2(k);
        Ok(m)
    });
    rhp.push(Piece::new(ray(7.0 * PI / 4.0), se, "se0", true));

    rhp
}
