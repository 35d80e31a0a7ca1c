//! Steepest-descent deformation of the cross through the saddle
//! k0 = -x/(4t), and the lens conjugation that removes the retained
//! diagonal jump west of the saddle.
//!
//! Step one bends the four rays onto the descent directions through k0.
//! With bend half-height s, B+- = k0 + s(1 +- i) and C+- = k0 + s(-1 +- i),
//! the outward pieces are
//!
//!   west ray from k0:            D = diag(1/tau, tau)
//!   k0 -> B+ leg:                Ltilde^{-1}
//!   ray at pi/4 from B+:         J1^{-1}
//!   horizontal east from B+:     P
//!   k0 -> B- leg:                Utilde^{-1}
//!   ray at -pi/4 from B-:        J3^{-1}
//!   horizontal east from B-:     M
//!   k0 -> C+ leg and west ray:   U
//!   k0 -> C- leg and west ray:   L
//!
//! Every junction product closes to the identity, which pins the signs:
//! J4 = M P at B+-, J2 = U D L at the saddle, and the lens legs satisfy
//! J2 = Ltilde Utilde.
//!
//! Step two (optional) conjugates by Delta = diag(delta, 1/delta) outside a
//! square of half-side h < s centered at k0: the D jump disappears west of
//! the square, the pieces outside pick up delta^{+-2} factors, and the
//! square boundary carries the jump Delta itself, counterclockwise. Inside
//! the square the original stubs remain.

use super::delta::DeltaFunction;
use super::jumps::{wrap_delta, JumpSet};
use super::{JumpFn, PhaseParams, Piece, PieceGeom, RHProblem};
use crate::bc::{GammaPair, PairKind};
use crate::cheb::{Ray, Segment};
use crate::mat2::M2;
use crate::{C64, NutmError};
use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::Arc;

fn check_deformable(pair: &GammaPair, phase: &PhaseParams) -> Result<f64, NutmError> {
    if pair.kind == PairKind::OverdeterminedStrip {
        return Err(NutmError::Deformation(
            "the strip-reduced reflection of decaying overdetermined traces \
             cannot leave the strip, so the deformed contour is unavailable; \
             restrict the traces to a finite window [0, T] covering the \
             evaluation times to get reflection functions on the upper \
             half-plane"
                .into(),
        ));
    }
    phase.k0().ok_or_else(|| {
        NutmError::Deformation("the deformed contour needs t > 0".into())
    })
}

/// The eleven-piece deformed contour with bend half-height `s`.
pub fn deform_steepest(
    pair: &Arc<GammaPair>,
    phase: PhaseParams,
    s: f64,
) -> Result<RHProblem, NutmError> {
    let k0 = check_deformable(pair, &phase)?;
    if !(s > 0.0) {
        return Err(NutmError::Config(format!(
            "bend height must be positive, got {s}"
        )));
    }
    let js = JumpSet::new(pair.clone(), phase);
    let k0c = C64::new(k0, 0.0);
    let bp = k0c + s * C64::new(1.0, 1.0);
    let bm = k0c + s * C64::new(1.0, -1.0);
    let cp = k0c + s * C64::new(-1.0, 1.0);
    let cm = k0c + s * C64::new(-1.0, -1.0);
    let mut rhp = RHProblem::new(pair.lambda, phase, "deformed");

    let seg = |a: C64, b: C64| PieceGeom::Seg(Segment { a, b });
    let ray = |base: C64, angle: f64, scale: f64| PieceGeom::HalfRay(Ray { base, angle, scale });

    rhp.push(Piece::new(ray(k0c, PI, 5.0), js.d_mat(), "d-ray", false));
    rhp.push(Piece::new(seg(k0c, bp), js.ne_leg(), "ne-leg", true));
    rhp.push(Piece::new(ray(bp, FRAC_PI_4, 2.0), js.j1_inv(), "j1-ray", true));
    rhp.push(Piece::new(ray(bp, 0.0, 5.0), js.p_mat(), "p-horiz", true));
    rhp.push(Piece::new(seg(k0c, bm), js.se_leg(), "se-leg", true));
    rhp.push(Piece::new(ray(bm, -FRAC_PI_4, 2.0), js.j3_inv(), "j3-ray", true));
    rhp.push(Piece::new(ray(bm, 0.0, 5.0), js.m_mat(), "m-horiz", true));
    rhp.push(Piece::new(seg(k0c, cp), js.u_mat(), "u-leg", true));
    rhp.push(Piece::new(ray(cp, PI, 5.0), js.u_mat(), "u-horiz", true));
    rhp.push(Piece::new(seg(k0c, cm), js.l_mat(), "l-leg", true));
    rhp.push(Piece::new(ray(cm, PI, 5.0), js.l_mat(), "l-horiz", true));
    Ok(rhp)
}

/// The deformed contour conjugated outside the lens square of half-side
/// `h` (strictly less than the bend height `s`), with the square boundary
/// carrying Delta = diag(delta, 1/delta) counterclockwise.
pub fn deform_conjugate_lens(
    pair: &Arc<GammaPair>,
    phase: PhaseParams,
    s: f64,
    h: f64,
    delta: Arc<DeltaFunction>,
) -> Result<RHProblem, NutmError> {
    let k0 = check_deformable(pair, &phase)?;
    if !(h > 0.0 && h < s) {
        return Err(NutmError::Config(format!(
            "lens half-side must satisfy 0 < h < s, got h = {h}, s = {s}"
        )));
    }
    let js = JumpSet::new(pair.clone(), phase);
    let k0c = C64::new(k0, 0.0);
    let bp = k0c + s * C64::new(1.0, 1.0);
    let bm = k0c + s * C64::new(1.0, -1.0);
    let cp = k0c + s * C64::new(-1.0, 1.0);
    let cm = k0c + s * C64::new(-1.0, -1.0);
    let ne = k0c + h * C64::new(1.0, 1.0);
    let nw = k0c + h * C64::new(-1.0, 1.0);
    let sw = k0c + h * C64::new(-1.0, -1.0);
    let se = k0c + h * C64::new(1.0, -1.0);
    let w_mid = k0c - h;

    let mut rhp = RHProblem::new(pair.lambda, phase, "deformed+lens");
    let seg = |a: C64, b: C64| PieceGeom::Seg(Segment { a, b });
    let ray = |base: C64, angle: f64, scale: f64| PieceGeom::HalfRay(Ray { base, angle, scale });
    let wrap = |f: JumpFn| wrap_delta(f, delta.clone());

    // Unconjugated stubs inside the lens, outward from the saddle.
    rhp.push(Piece::new(seg(k0c, w_mid), js.d_mat(), "d-stub", false));
    rhp.push(Piece::new(seg(k0c, ne), js.ne_leg(), "ne-stub", true));
    rhp.push(Piece::new(seg(k0c, se), js.se_leg(), "se-stub", true));
    rhp.push(Piece::new(seg(k0c, nw), js.u_mat(), "u-stub", true));
    rhp.push(Piece::new(seg(k0c, sw), js.l_mat(), "l-stub", true));

    // Conjugated continuations outside the lens. The D ray west of the
    // lens is removed identically by the conjugation.
    rhp.push(Piece::new(seg(ne, bp), wrap(js.ne_leg()), "ne-out", true));
    rhp.push(Piece::new(seg(se, bm), wrap(js.se_leg()), "se-out", true));
    rhp.push(Piece::new(seg(nw, cp), wrap(js.u_mat()), "u-out", true));
    rhp.push(Piece::new(seg(sw, cm), wrap(js.l_mat()), "l-out", true));
    rhp.push(Piece::new(ray(bp, FRAC_PI_4, 2.0), wrap(js.j1_inv()), "j1-ray", true));
    rhp.push(Piece::new(ray(bm, -FRAC_PI_4, 2.0), wrap(js.j3_inv()), "j3-ray", true));
    rhp.push(Piece::new(ray(bp, 0.0, 5.0), wrap(js.p_mat()), "p-horiz", true));
    rhp.push(Piece::new(ray(bm, 0.0, 5.0), wrap(js.m_mat()), "m-horiz", true));
    rhp.push(Piece::new(ray(cp, PI, 5.0), wrap(js.u_mat()), "u-horiz", true));
    rhp.push(Piece::new(ray(cm, PI, 5.0), wrap(js.l_mat()), "l-horiz", true));

    // Lens boundary, counterclockwise (interior on the left), carrying
    // Delta itself. The west side is split at the D-stub endpoint.
    let dl = delta.clone();
    let lens_jump: JumpFn = Arc::new(move |k| {
        let d = dl.eval(k)?;
        Ok(M2::diag(d, 1.0 / d))
    });
    for (a, b, label) in [
        (se, ne, "lens-e"),
        (ne, nw, "lens-n"),
        (nw, w_mid, "lens-wn"),
        (w_mid, sw, "lens-ws"),
        (sw, se, "lens-s"),
    ] {
        rhp.push(Piece::new(seg(a, b), lens_jump.clone(), label, false));
    }
    Ok(rhp)
}
