//! The scalar conjugating function
//!
//!   delta(k) = exp( (1/2 pi i) int_{-infty}^{k0} log tau(z) / (z - k) dz ),
//!
//! which satisfies delta_+ = tau delta_- across (-infty, k0) and removes
//! the retained diagonal jump there: conjugating by
//! Delta = diag(delta, 1/delta) turns diag(1/tau, tau) into the identity.
//!
//! The integral is discretized on two parts: a dense segment
//! [k0 - near, k0] right under the lens, whose Cauchy transform keeps full
//! accuracy arbitrarily close to the contour (the lens west edges collocate
//! near its interior), and a semi-infinite ray tail westward from
//! k0 - near. The ray is parametrized away from k0, i.e. against the
//! integration direction, so its contribution enters with a minus sign.
//! log tau is unwrapped along the physical west-to-east chain starting from
//! log tau = 0 at the far end (tau -> 1 as |k| -> infinity).

use crate::cheb::{Ray, Segment};
use crate::{C64, NutmError};

enum PartGeom {
    S(Segment),
    R(Ray),
}

struct DeltaPart {
    geom: PartGeom,
    vals: Vec<C64>,
    sign: f64,
}

/// A numeric realization of delta(k); `trivial()` stands for delta = 1
/// (lens skipped or no conjugation requested).
pub struct DeltaFunction {
    parts: Vec<DeltaPart>,
}

/// Beyond this radius tau is taken as exactly 1: the reflection tails
/// contribute O(1/k^2) there, below every tolerance in use once weighted
/// by the Cauchy kernel.
const TAU_FAR_RADIUS: f64 = 60.0;

impl DeltaFunction {
    /// delta identically one.
    pub fn trivial() -> Self {
        DeltaFunction { parts: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.is_empty()
    }

    /// Build from tau along (-infty, k0]: a dense segment of length `near`
    /// ending at k0 plus a ray tail with the given Moebius scale.
    pub fn build(
        tau: &dyn Fn(C64) -> Result<C64, NutmError>,
        k0: f64,
        near: f64,
        scale: f64,
        n_near: usize,
        n_far: usize,
    ) -> Result<Self, NutmError> {
        let seg = Segment {
            a: C64::new(k0 - near, 0.0),
            b: C64::new(k0, 0.0),
        };
        let ray = Ray {
            base: C64::new(k0 - near, 0.0),
            angle: std::f64::consts::PI,
            scale,
        };
        let seg_pts = seg.nodes(n_near);
        let ray_pts = ray.nodes(n_far);

        // Physical chain, west to east: ray nodes reversed, then segment.
        let mut chain: Vec<C64> = ray_pts.iter().rev().cloned().collect();
        chain.extend(seg_pts.iter().cloned());
        let mut logs: Vec<C64> = Vec::with_capacity(chain.len());
        let mut prev_im = 0.0;
        for &z in &chain {
            let t = if z.norm() > TAU_FAR_RADIUS {
                C64::new(1.0, 0.0)
            } else {
                tau(z)?
            };
            if t.norm() < 1e-12 {
                return Err(NutmError::Deformation(format!(
                    "tau vanishes at {z} on the conjugation ray"
                )));
            }
            let mut l = t.ln();
            let twopi = 2.0 * std::f64::consts::PI;
            let shift = ((prev_im - l.im) / twopi).round();
            l.im += twopi * shift;
            prev_im = l.im;
            logs.push(l);
        }

        let ray_vals: Vec<C64> = logs[..n_far].iter().rev().cloned().collect();
        let seg_vals: Vec<C64> = logs[n_far..].to_vec();
        Ok(DeltaFunction {
            parts: vec![
                DeltaPart {
                    geom: PartGeom::S(seg),
                    vals: seg_vals,
                    sign: 1.0,
                },
                DeltaPart {
                    geom: PartGeom::R(ray),
                    vals: ray_vals,
                    sign: -1.0,
                },
            ],
        })
    }

    /// Build from explicit segments carrying log tau values at their
    /// Chebyshev nodes, each oriented along the integration direction
    /// (used by tests against closed forms).
    pub fn from_segments(parts: Vec<(Segment, Vec<C64>)>) -> Self {
        DeltaFunction {
            parts: parts
                .into_iter()
                .map(|(s, vals)| DeltaPart {
                    geom: PartGeom::S(s),
                    vals,
                    sign: 1.0,
                })
                .collect(),
        }
    }

    /// log delta(k), off the contour.
    pub fn log_delta(&self, k: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for part in &self.parts {
            let c = match &part.geom {
                PartGeom::S(s) => s.cauchy(&part.vals, k),
                PartGeom::R(r) => r.cauchy(&part.vals, k),
            };
            acc += part.sign * c;
        }
        acc
    }

    pub fn eval(&self, k: C64) -> Result<C64, NutmError> {
        let d = self.log_delta(k).exp();
        if d.is_finite() && d.norm() > 1e-200 {
            Ok(d)
        } else {
            Err(NutmError::Deformation(format!(
                "conjugation function overflowed at k = {k}"
            )))
        }
    }

    /// delta(k)^2 (the factor appearing in conjugated 12 entries).
    pub fn eval_sq(&self, k: C64) -> Result<C64, NutmError> {
        let d = (2.0 * self.log_delta(k)).exp();
        if d.is_finite() && d.norm() > 1e-200 {
            Ok(d)
        } else {
            Err(NutmError::Deformation(format!(
                "conjugation function overflowed at k = {k}"
            )))
        }
    }
}
