//! Riemann-Hilbert problems on explicit contours.
//!
//! A problem is a list of pieces, each a contour element (segment, ray, or
//! circle) carrying a 2x2 jump closure. Orientation conventions, fixed once
//! and used everywhere:
//!
//! * the (+) boundary value is on the LEFT of the walking direction;
//! * every unbounded or anchored piece is oriented OUTWARD from its anchor
//!   (the origin for the undeformed cross, the saddle for the deformed
//!   one), so that reversing a textbook orientation replaces J by J^{-1};
//! * circles are counterclockwise, so (+) is the interior.
//!
//! `truncate` clips the unbounded pieces where the jump is within the
//! tolerance of the identity (or at the truncation radius), records what
//! was discarded, and splits retained pieces whose phase winds by more
//! than a budgeted number of radians into subsegments the dense solver can
//! resolve piecewise.

pub mod delta;
pub mod deform;
pub mod jumps;
pub mod residues;
pub mod smallxt;

use crate::cheb::{Circle, Ray, Segment, Side};
use crate::mat2::M2;
use crate::{C64, NutmError};
use serde::Serialize;
use std::sync::Arc;

/// A jump matrix as a function of the contour point.
pub type JumpFn = Arc<dyn Fn(C64) -> Result<M2, NutmError> + Send + Sync>;

/// The phase theta = k x + 2 k^2 t of the oscillatory factors e^{2 i theta}.
#[derive(Clone, Copy, Debug)]
pub struct PhaseParams {
    pub x: f64,
    pub t: f64,
}

impl PhaseParams {
    pub fn new(x: f64, t: f64) -> Self {
        PhaseParams { x, t }
    }

    /// Stationary point -x/(4t) of the phase, where it exists.
    pub fn k0(&self) -> Option<f64> {
        if self.t > 0.0 {
            Some(-self.x / (4.0 * self.t))
        } else {
            None
        }
    }

    /// 2 i theta(k), computed in completed-square form
    /// -i x^2/(4t) + 4 i t (k - k0)^2 when t > 0 so that the decay along
    /// the steepest-descent directions is explicit; 2 i k x at t = 0.
    pub fn exponent(&self, k: C64) -> C64 {
        let i = C64::new(0.0, 1.0);
        if self.t > 0.0 {
            let k0 = -self.x / (4.0 * self.t);
            let d = k - k0;
            -i * (self.x * self.x / (4.0 * self.t)) + 4.0 * i * self.t * d * d
        } else {
            2.0 * i * k * self.x
        }
    }

    /// e^{+2 i theta(k)}.
    pub fn e2(&self, k: C64) -> C64 {
        self.exponent(k).exp()
    }

    /// e^{-2 i theta(k)}.
    pub fn em2(&self, k: C64) -> C64 {
        (-self.exponent(k)).exp()
    }
}

/// Geometry of one contour piece.
#[derive(Clone, Copy, Debug)]
pub enum PieceGeom {
    Seg(Segment),
    HalfRay(Ray),
    Loop(Circle),
}

impl PieceGeom {
    /// Parameters of the solution nodes (where densities are stored).
    pub fn node_params(&self, n: usize) -> Vec<f64> {
        match self {
            PieceGeom::Seg(_) => crate::cheb::cheb2_nodes(n),
            PieceGeom::HalfRay(_) => crate::cheb::cheb2_nodes(n + 1)[..n].to_vec(),
            PieceGeom::Loop(_) => (0..n)
                .map(|j| 2.0 * std::f64::consts::PI * j as f64 / n as f64)
                .collect(),
        }
    }

    /// Parameters of the collocation points (where the jump is enforced).
    pub fn colloc_params(&self, n: usize) -> Vec<f64> {
        match self {
            PieceGeom::Seg(_) | PieceGeom::HalfRay(_) => crate::cheb::cheb1_nodes(n),
            PieceGeom::Loop(_) => self.node_params(n),
        }
    }

    pub fn point(&self, param: f64) -> C64 {
        match self {
            PieceGeom::Seg(s) => s.point(param),
            PieceGeom::HalfRay(r) => r.point(param),
            PieceGeom::Loop(c) => c.point(param),
        }
    }

    pub fn nodes(&self, n: usize) -> Vec<C64> {
        self.node_params(n).iter().map(|&p| self.point(p)).collect()
    }

    pub fn integrate(&self, values: &[C64]) -> C64 {
        match self {
            PieceGeom::Seg(s) => s.integrate(values),
            PieceGeom::HalfRay(r) => r.integrate(values),
            PieceGeom::Loop(c) => c.integrate(values),
        }
    }

    pub fn cauchy(&self, values: &[C64], z: C64) -> C64 {
        match self {
            PieceGeom::Seg(s) => s.cauchy(values, z),
            PieceGeom::HalfRay(r) => r.cauchy(values, z),
            PieceGeom::Loop(c) => c.cauchy(values, z),
        }
    }

    pub fn cauchy_boundary(&self, values: &[C64], param: f64, side: Side) -> C64 {
        match self {
            PieceGeom::Seg(s) => s.cauchy_boundary(values, param, side),
            PieceGeom::HalfRay(r) => r.cauchy_boundary(values, param, side),
            PieceGeom::Loop(c) => c.cauchy_boundary(values, param, side),
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, PieceGeom::Loop(_))
    }
}

/// One oriented contour piece with its jump.
#[derive(Clone)]
pub struct Piece {
    pub geom: PieceGeom,
    pub jump: JumpFn,
    pub label: String,
    /// Whether the jump carries the oscillatory factors e^{+-2 i theta}
    /// (such pieces are candidates for phase-budget splitting).
    pub oscillatory: bool,
}

impl Piece {
    pub fn new(geom: PieceGeom, jump: JumpFn, label: &str, oscillatory: bool) -> Self {
        Piece {
            geom,
            jump,
            label: label.to_string(),
            oscillatory,
        }
    }

    /// Evaluate the jump at a contour parameter.
    pub fn jump_at_param(&self, param: f64) -> Result<M2, NutmError> {
        (self.jump)(self.geom.point(param))
    }
}

/// Why a piece ended up with its final extent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClipRule {
    /// Shortened where the jump fell below the tolerance.
    Tolerance,
    /// Shortened at the truncation radius with the jump still above the
    /// tolerance there.
    Radius,
    /// Entirely below the tolerance; removed.
    Dropped,
    /// Left as built.
    Kept,
}

/// Log entry for one piece of the truncation pass.
#[derive(Clone, Debug, Serialize)]
pub struct ClipRecord {
    pub label: String,
    pub rule: ClipRule,
    /// Largest sampled |J - I| over the discarded part, when all discarded
    /// samples were evaluable.
    pub discarded_sup: Option<f64>,
}

/// A Riemann-Hilbert problem ready for (or being prepared for) the solver.
pub struct RHProblem {
    pub pieces: Vec<Piece>,
    pub lambda: f64,
    pub phase: PhaseParams,
    /// Short machine-readable name of the construction that produced this
    /// problem ("undeformed", "deformed", "deformed+lens", "smallxt", ...).
    pub provenance: String,
    pub clip_log: Vec<ClipRecord>,
}

const TRUNC_SAMPLES: usize = 96;

impl RHProblem {
    pub fn new(lambda: f64, phase: PhaseParams, provenance: &str) -> Self {
        RHProblem {
            pieces: Vec::new(),
            lambda,
            phase,
            provenance: provenance.to_string(),
            clip_log: Vec::new(),
        }
    }

    pub fn push(&mut self, piece: Piece) {
        self.pieces.push(piece);
    }

    /// Clip every non-circle piece where its jump drops below `tol` (or at
    /// the truncation disk |k| = `radius`), drop pieces that are below the
    /// tolerance everywhere, and split retained oscillatory pieces into
    /// subsegments of phase range at most `phase_budget` radians.
    pub fn truncate(
        &mut self,
        tol: f64,
        radius: f64,
        phase_budget: f64,
    ) -> Result<(), NutmError> {
        let mut kept: Vec<Piece> = Vec::new();
        let pieces = std::mem::take(&mut self.pieces);
        for piece in pieces {
            match self.clip_piece(&piece, tol, radius)? {
                Some(clipped) => {
                    let mut split = self.split_piece(clipped, phase_budget)?;
                    kept.append(&mut split);
                }
                None => {}
            }
        }
        self.pieces = kept;
        Ok(())
    }

    /// Returns the clipped piece, or None when the whole piece is dropped.
    fn clip_piece(
        &mut self,
        piece: &Piece,
        tol: f64,
        radius: f64,
    ) -> Result<Option<Piece>, NutmError> {
        if piece.geom.is_loop() {
            self.clip_log.push(ClipRecord {
                label: piece.label.clone(),
                rule: ClipRule::Kept,
                discarded_sup: None,
            });
            return Ok(Some(piece.clone()));
        }

        // Sample |J - I| along the piece. Rays are sampled on the open
        // parameter range; evaluation failures far out (e.g. an ODE-backed
        // coefficient asked too deep) count as "unknown", not as small.
        let m = TRUNC_SAMPLES;
        let params: Vec<f64> = match piece.geom {
            PieceGeom::Seg(_) => (0..=m)
                .map(|j| -1.0 + 2.0 * j as f64 / m as f64)
                .collect(),
            PieceGeom::HalfRay(_) => (0..m)
                .map(|j| -1.0 + 2.0 * j as f64 / m as f64)
                .collect(),
            PieceGeom::Loop(_) => unreachable!(),
        };
        let pts: Vec<C64> = params.iter().map(|&p| piece.geom.point(p)).collect();
        let devs: Vec<Option<f64>> = pts
            .iter()
            .map(|&z| match (piece.jump)(z) {
                Ok(j) if j.is_finite() => Some(j.dist_to_identity()),
                _ => None,
            })
            .collect();

        // Outermost sample index still inside the truncation disk.
        let inside_last = match pts.iter().rposition(|z| z.norm() <= radius) {
            Some(j) => j,
            None => {
                // The entire piece lies outside the disk.
                let sup = max_known(&devs[..]);
                self.clip_log.push(ClipRecord {
                    label: piece.label.clone(),
                    rule: ClipRule::Dropped,
                    discarded_sup: sup,
                });
                return Ok(None);
            }
        };

        // Within the disk, find the outermost sample above tolerance.
        let over = devs[..=inside_last]
            .iter()
            .rposition(|d| match d {
                Some(v) => *v > tol,
                None => true, // unknown counts as "cannot certify small"
            });

        let (cut_idx, rule) = match over {
            None => {
                let sup = max_known(&devs[..]);
                self.clip_log.push(ClipRecord {
                    label: piece.label.clone(),
                    rule: ClipRule::Dropped,
                    discarded_sup: sup,
                });
                return Ok(None);
            }
            Some(j) if j >= inside_last => (inside_last, ClipRule::Radius),
            Some(j) => (j + 1, ClipRule::Tolerance),
        };

        let is_seg_end = matches!(piece.geom, PieceGeom::Seg(_)) && cut_idx == params.len() - 1;
        if is_seg_end {
            self.clip_log.push(ClipRecord {
                label: piece.label.clone(),
                rule: ClipRule::Kept,
                discarded_sup: None,
            });
            return Ok(Some(piece.clone()));
        }

        let a = piece.geom.point(-1.0);
        let b = pts[cut_idx];
        let discarded_sup = max_known(&devs[cut_idx + 1..]);
        self.clip_log.push(ClipRecord {
            label: piece.label.clone(),
            rule,
            discarded_sup,
        });
        if (b - a).norm() < 1e-12 {
            return Ok(None);
        }
        Ok(Some(Piece {
            geom: PieceGeom::Seg(Segment { a, b }),
            jump: piece.jump.clone(),
            label: piece.label.clone(),
            oscillatory: piece.oscillatory,
        }))
    }

    /// Split an oscillatory segment into subsegments whose sampled phase
    /// range stays within the budget. Non-oscillatory pieces, circles, and
    /// rays (none survive truncation) pass through unchanged.
    fn split_piece(&self, piece: Piece, phase_budget: f64) -> Result<Vec<Piece>, NutmError> {
        let seg = match (&piece.geom, piece.oscillatory) {
            (PieceGeom::Seg(s), true) => *s,
            (PieceGeom::HalfRay(_), _) => {
                return Err(NutmError::Deformation(format!(
                    "piece '{}' was not truncated to a bounded segment",
                    piece.label
                )))
            }
            _ => return Ok(vec![piece]),
        };
        let m = 64usize;
        let psi: Vec<f64> = (0..=m)
            .map(|j| {
                let sigma = -1.0 + 2.0 * j as f64 / m as f64;
                self.phase.exponent(seg.point(sigma)).im
            })
            .collect();
        // Total variation of the sampled phase, robust to non-monotone
        // phases (the completed square makes them quadratic along lines).
        let tv: f64 = psi.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
        if tv <= phase_budget {
            return Ok(vec![piece]);
        }
        let nseg = (tv / (0.8 * phase_budget)).ceil() as usize;
        if nseg > 64 {
            return Err(NutmError::Deformation(format!(
                "piece '{}' winds through {tv:.0} radians of phase; \
                 the evaluation point is too deep in the oscillatory regime",
                piece.label
            )));
        }
        // Breakpoints at equal increments of cumulative variation.
        let step = tv / nseg as f64;
        let mut cuts: Vec<f64> = vec![-1.0];
        let mut acc = 0.0;
        let mut next = step;
        for j in 0..m {
            let d = (psi[j + 1] - psi[j]).abs();
            acc += d;
            if acc >= next && cuts.len() < nseg {
                cuts.push(-1.0 + 2.0 * (j + 1) as f64 / m as f64);
                next += step;
            }
        }
        cuts.push(1.0);
        let mut out = Vec::new();
        for (i, w) in cuts.windows(2).enumerate() {
            let a = seg.point(w[0]);
            let b = seg.point(w[1]);
            if (b - a).norm() < 1e-14 {
                continue;
            }
            out.push(Piece {
                geom: PieceGeom::Seg(Segment { a, b }),
                jump: piece.jump.clone(),
                label: format!("{}#{}", piece.label, i),
                oscillatory: true,
            });
        }
        Ok(out)
    }

    /// Sup of |J - I| over all pieces at `n` parameters per piece
    /// (a cheap diagnostic used by tests).
    pub fn sup_deviation(&self, n: usize) -> Result<f64, NutmError> {
        let mut sup: f64 = 0.0;
        for piece in &self.pieces {
            for j in 0..n {
                let p = match piece.geom {
                    PieceGeom::Loop(_) => 2.0 * std::f64::consts::PI * j as f64 / n as f64,
                    _ => -1.0 + 2.0 * (j as f64 + 0.5) / n as f64,
                };
                let m = piece.jump_at_param(p)?;
                sup = sup.max(m.dist_to_identity());
            }
        }
        Ok(sup)
    }
}

fn max_known(devs: &[Option<f64>]) -> Option<f64> {
    let mut sup = 0.0f64;
    for d in devs {
        match d {
            Some(v) => sup = sup.max(*v),
            None => return None,
        }
    }
    Some(sup)
}

/// Builders for the undeformed cross and the t = 0 whole-line reduction.
pub mod build {
    use super::*;
    use crate::bc::GammaPair;
    use crate::rhp::jumps::JumpSet;

    /// The undeformed four-ray cross at the origin. All four pieces run
    /// outward; crossing identities tie them to the sector analysis:
    /// positive real axis J4, positive imaginary axis J1^{-1}, negative
    /// real axis J2, negative imaginary axis J3^{-1}.
    pub fn undeformed(pair: &Arc<GammaPair>, phase: PhaseParams, scale: f64) -> RHProblem {
        let js = JumpSet::new(pair.clone(), phase);
        let mut rhp = RHProblem::new(pair.lambda, phase, "undeformed");
        let zero = C64::new(0.0, 0.0);
        let ray = |angle: f64| {
            PieceGeom::HalfRay(Ray {
                base: zero,
                angle,
                scale,
            })
        };
        rhp.push(Piece::new(ray(0.0), js.j4(), "re+", true));
        rhp.push(Piece::new(
            ray(std::f64::consts::FRAC_PI_2),
            js.j1_inv(),
            "im+",
            true,
        ));
        rhp.push(Piece::new(ray(std::f64::consts::PI), js.j2(), "re-", true));
        rhp.push(Piece::new(
            ray(1.5 * std::f64::consts::PI),
            js.j3_inv(),
            "im-",
            true,
        ));
        rhp
    }

    /// The t = 0 reduction: only the real axis carries a jump (J4 going
    /// right, its inverse going left), plus whatever residue circles are
    /// added afterwards.
    pub fn t0_reduction(pair: &Arc<GammaPair>, x: f64, scale: f64) -> RHProblem {
        let phase = PhaseParams::new(x, 0.0);
        let js = JumpSet::new(pair.clone(), phase);
        let mut rhp = RHProblem::new(pair.lambda, phase, "t0");
        let zero = C64::new(0.0, 0.0);
        rhp.push(Piece::new(
            PieceGeom::HalfRay(Ray {
                base: zero,
                angle: 0.0,
                scale,
            }),
            js.j4(),
            "re+",
            true,
        ));
        rhp.push(Piece::new(
            PieceGeom::HalfRay(Ray {
                base: zero,
                angle: std::f64::consts::PI,
                scale,
            }),
            js.j4_inv(),
            "re-",
            true,
        ));
        rhp
    }
}
