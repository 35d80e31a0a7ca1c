//! Conversion of residue conditions at the poles of Gamma into circle
//! jumps.
//!
//! At a pole p in the first quadrant with residue constant c (including
//! the phase and any conjugation, chat = c e^{2 i theta(p)} delta(p)^{-2}),
//! the sectionally analytic function satisfies
//!
//!   Res_p    col1 = chat col2(p),
//!   Res_pbar col2 = -lambda conj(chat) col1(pbar).
//!
//! These become jump conditions on small counterclockwise circles. When
//! |chat| > 1 the direct jump entries are large and the conditioning
//! degrades with e^{|2 i theta(p)|}; those poles are inverted, which swaps
//! the role of the columns inside the circle and replaces chat by
//! ccheck = -4 eta^2 / chat in the symmetric condition (eta = Im p). The
//! printed jumps below keep determinant one in both variants:
//!
//!   direct:   at p  [[1, 0], [-chat/(k-p), 1]]
//!             at pbar [[1, lambda conj(chat)/(k-pbar)], [0, 1]]
//!   inverted: at p  [[1, -(k-p)/chat], [0, 1]]
//!             at pbar [[1, 0], [-(k-pbar)/cchk, 1]],  cchk = -lambda conj(chat)
//!
//! Inversion changes the solution inside the circles only; outside, and in
//! particular in the recovery moments, a global conjugation by
//! V = diag(v, 1/v), v = prod_{inverted} (k-p_j)/(k-pbar_j), restores the
//! original normalization. The recovery formulas are invariant under that
//! conjugation, so the solver needs no correction terms.

use super::delta::DeltaFunction;
use super::jumps::wrap_v;
use super::{JumpFn, Piece, PieceGeom, RHProblem};
use crate::cheb::Circle;
use crate::mat2::M2;
use crate::zeros::PoleData;
use crate::{C64, NutmError};
use std::sync::Arc;

/// Largest circle radius ever used.
const EPS_CAP: f64 = 0.2;
/// Poles closer to the contour than this are a hard error.
const EPS_FLOOR: f64 = 1e-3;

/// Append residue circles for `poles` to `rhp`, inverting where the
/// dressed constant exceeds one in modulus, and conjugating all jumps
/// globally when any pole is inverted. `delta` accounts for a lens
/// conjugation already applied to the problem.
pub fn convert_residues(
    rhp: &mut RHProblem,
    poles: &[PoleData],
    delta: &DeltaFunction,
) -> Result<(), NutmError> {
    if poles.is_empty() {
        return Ok(());
    }
    let lambda = rhp.lambda;
    let phase = rhp.phase;

    // Dressed constants.
    let mut chats: Vec<C64> = Vec::with_capacity(poles.len());
    for pd in poles {
        if pd.p.im <= 0.0 {
            return Err(NutmError::Deformation(format!(
                "pole {} is not in the upper half-plane",
                pd.p
            )));
        }
        let e2 = phase.e2(pd.p);
        let dsq = if delta.is_trivial() {
            C64::new(1.0, 0.0)
        } else {
            delta.eval_sq(pd.p)?
        };
        let chat = pd.c * e2 / dsq;
        if !chat.is_finite() {
            return Err(NutmError::Deformation(format!(
                "residue constant overflowed at pole {}",
                pd.p
            )));
        }
        chats.push(chat);
    }

    // Circle radii: half the clearance to the other poles (and their
    // conjugates), to the existing contour, and to the real axis.
    let mut radii: Vec<f64> = Vec::with_capacity(poles.len());
    for (j, pd) in poles.iter().enumerate() {
        let mut clearance = f64::INFINITY;
        clearance = clearance.min(2.0 * pd.p.im); // own conjugate
        for (i, other) in poles.iter().enumerate() {
            if i != j {
                clearance = clearance.min((pd.p - other.p).norm());
                clearance = clearance.min((pd.p - other.p.conj()).norm());
            }
        }
        for piece in rhp.pieces.iter() {
            for m in 0..33 {
                let param = match piece.geom {
                    PieceGeom::Loop(_) => 2.0 * std::f64::consts::PI * m as f64 / 33.0,
                    // Stop short of sigma = 1 on rays.
                    _ => -1.0 + 1.995 * m as f64 / 32.0,
                };
                clearance = clearance.min((pd.p - piece.geom.point(param)).norm());
            }
        }
        let eps = (0.5 * clearance).min(EPS_CAP);
        if !(eps > EPS_FLOOR) {
            return Err(NutmError::Deformation(format!(
                "pole {} sits within {clearance:.2e} of the contour; \
                 no residue circle fits",
                pd.p
            )));
        }
        radii.push(eps);
    }

    let inverted: Vec<C64> = poles
        .iter()
        .zip(&chats)
        .filter(|(_, c)| c.norm() > 1.0)
        .map(|(p, _)| p.p)
        .collect();

    let mut circles: Vec<Piece> = Vec::new();
    for ((pd, &chat), &eps) in poles.iter().zip(&chats).zip(&radii) {
        let p = pd.p;
        let pb = p.conj();
        let inv = chat.norm() > 1.0;
        let upper: JumpFn = if inv {
            Arc::new(move |k: C64| {
                let mut m = M2::identity();
                m.0[0][1] = -(k - p) / chat;
                Ok(m)
            })
        } else {
            Arc::new(move |k: C64| {
                let mut m = M2::identity();
                m.0[1][0] = -chat / (k - p);
                Ok(m)
            })
        };
        let lower: JumpFn = if inv {
            let ccheck = -lambda * chat.conj();
            Arc::new(move |k: C64| {
                let mut m = M2::identity();
                m.0[1][0] = -(k - pb) / ccheck;
                Ok(m)
            })
        } else {
            Arc::new(move |k: C64| {
                let mut m = M2::identity();
                m.0[0][1] = lambda * chat.conj() / (k - pb);
                Ok(m)
            })
        };
        circles.push(Piece::new(
            PieceGeom::Loop(Circle {
                center: p,
                radius: eps,
            }),
            upper,
            &format!("circle+({:.3},{:.3})", p.re, p.im),
            false,
        ));
        circles.push(Piece::new(
            PieceGeom::Loop(Circle {
                center: pb,
                radius: eps,
            }),
            lower,
            &format!("circle-({:.3},{:.3})", pb.re, pb.im),
            false,
        ));
    }
    rhp.pieces.append(&mut circles);

    if !inverted.is_empty() {
        let zs = Arc::new(inverted);
        for piece in rhp.pieces.iter_mut() {
            piece.jump = wrap_v(piece.jump.clone(), zs.clone());
        }
    }
    Ok(())
}
