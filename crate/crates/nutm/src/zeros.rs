//! Zeros of a(k) in the upper half-plane (discrete eigenvalues).
//!
//! Seeds come from a Fourier discretization of the scattering operator
//! i sigma3 (d/dx - Q_e) on a symmetric interval containing the support of
//! the datum (extended by zero to x < 0): its eigenvalues approximate the
//! spectrum, whose non-real points converge to the eigenvalues. Each seed
//! above the real axis is polished by a Newton iteration on a(k) itself,
//! then the derivative a'(p) is recovered from a Cauchy integral over a
//! small circle, giving the residue constant c = 1/(a'(p) b(p)).
//!
//! Only the focusing sign can produce eigenvalues; defocusing and linear
//! runs return the empty set immediately. Zeros on or near the coordinate
//! axes fall outside the assumptions (they collide with the jump contours)
//! and are reported as unsupported configurations, as are non-simple zeros.

use crate::spectral::XSpectral;
use crate::{C64, NutmError};
use ndarray::Array2;
use ndarray_linalg::EigVals;

/// A pole location in the upper half-plane with its residue-type constant.
#[derive(Clone, Copy, Debug)]
pub struct PoleData {
    pub p: C64,
    pub c: C64,
}

const SEED_MIN_IM: f64 = 1e-4;
const AXIS_TOL: f64 = 1e-3;
const NEWTON_TOL: f64 = 1e-10;
const NEWTON_MAX: usize = 25;
const MAX_CANDIDATES: usize = 64;

/// Locate the zeros of a(k) for Im k > 0 and compute their residue
/// constants. Returns them sorted by increasing imaginary part.
pub fn find_a_zeros(xs: &XSpectral) -> Result<Vec<PoleData>, NutmError> {
    if xs.lambda() <= 0.0 {
        return Ok(Vec::new());
    }
    let mut seeds = ffh_seeds(xs)?;
    seeds.retain(|s| s.im > SEED_MIN_IM && s.re.abs() < 60.0 && s.im < 60.0);

    // Rank candidates by |a(seed)|: genuine zeros sit close to a root, so
    // |a| is already small there, while spurious discretization eigenvalues
    // see |a| = O(1).
    let mut ranked: Vec<(f64, C64)> = Vec::new();
    for s in seeds {
        if let Ok((a, _)) = xs.eval(s) {
            if a.norm() < 0.5 {
                ranked.push((a.norm(), s));
            }
        }
    }
    ranked.sort_by(|x, y| x.0.total_cmp(&y.0));
    ranked.truncate(MAX_CANDIDATES);

    let mut zeros: Vec<C64> = Vec::new();
    for &(_, seed) in &ranked {
        if let Some(p) = newton(xs, seed) {
            if zeros.iter().all(|z| (z - p).norm() > 1e-5) {
                if p.im < AXIS_TOL {
                    return Err(NutmError::Deformation(format!(
                        "zero of a(k) at {p} is too close to the real axis"
                    )));
                }
                if p.re.abs() < AXIS_TOL {
                    return Err(NutmError::Deformation(format!(
                        "zero of a(k) at {p} lies on the imaginary axis"
                    )));
                }
                zeros.push(p);
            }
        }
    }
    if zeros.len() > 16 {
        return Err(NutmError::Deformation(format!(
            "{} zeros of a(k) found; the datum is outside the supported class",
            zeros.len()
        )));
    }
    zeros.sort_by(|u, v| u.im.total_cmp(&v.im).then(u.re.total_cmp(&v.re)));

    let mut poles = Vec::with_capacity(zeros.len());
    for (i, &p) in zeros.iter().enumerate() {
        let mut r = (0.5 * p.im).min(0.1);
        for (j, &other) in zeros.iter().enumerate() {
            if i != j {
                r = r.min(0.5 * (p - other).norm());
            }
        }
        let da = cauchy_derivative(xs, p, r)?;
        if da.norm() < 1e-8 {
            return Err(NutmError::Deformation(format!(
                "zero of a(k) at {p} is not simple (|a'| = {:.2e})",
                da.norm()
            )));
        }
        let (_, b) = xs.eval(p)?;
        if b.norm() < 1e-12 {
            return Err(NutmError::Deformation(format!(
                "b(k) vanishes at the eigenvalue {p}"
            )));
        }
        poles.push(PoleData {
            p,
            c: 1.0 / (da * b),
        });
    }
    Ok(poles)
}

/// Newton iteration on a(k) with a finite-difference derivative. Returns
/// None when the iteration leaves the search region or stalls.
fn newton(xs: &XSpectral, seed: C64) -> Option<C64> {
    let mut k = seed;
    for _ in 0..NEWTON_MAX {
        if k.im < 1e-6 || k.norm() > 100.0 {
            return None;
        }
        let (a, _) = xs.eval(k).ok()?;
        if a.norm() < NEWTON_TOL {
            return Some(k);
        }
        let h = 1e-6 * (1.0 + k.norm());
        let (ap, _) = xs.eval(k + h).ok()?;
        let (am, _) = xs.eval(k - h).ok()?;
        let da = (ap - am) / (2.0 * h);
        if da.norm() < 1e-14 {
            return None;
        }
        let mut step = a / da;
        if step.norm() > 1.0 {
            step *= 1.0 / step.norm();
        }
        k -= step;
        // Stagnation at the roundoff floor of |a| still counts as a root.
        if step.norm() < 1e-11 * (1.0 + k.norm()) && a.norm() < 1e-8 {
            return Some(k);
        }
    }
    None
}

/// a'(p) by the Cauchy integral over a circle of radius r around p,
/// evaluated with the trapezoid rule (spectrally accurate for periodic
/// integrands).
fn cauchy_derivative(xs: &XSpectral, p: C64, r: f64) -> Result<C64, NutmError> {
    let m = 32;
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..m {
        let phi = 2.0 * std::f64::consts::PI * (j as f64) / (m as f64);
        let dir = C64::new(phi.cos(), phi.sin());
        let (a, _) = xs.eval(p + r * dir)?;
        acc += a / dir;
    }
    Ok(acc / (m as f64 * r))
}

/// Eigenvalues of the discretized scattering operator
/// L = [[i D, -i q_e], [-i lambda conj(q_e), -i D]] on [-Lf, Lf] with
/// periodic spectral differentiation; q_e is the datum extended by zero.
fn ffh_seeds(xs: &XSpectral) -> Result<Vec<C64>, NutmError> {
    let q0 = xs.data.q0.clone();
    let dq0 = xs.data.dq0.clone();
    // Seeds only need a couple of digits: truncate where the datum falls
    // below 1e-6 (capped by the solver's own domain cap).
    let lf = crate::spectral::cutoff(q0.as_ref(), dq0.as_ref(), 0.0, 1e-6, 100.0).max(4.0);
    let mut m = 128usize;
    while 2.0 * lf / (m as f64) > 0.2 && m < 512 {
        m *= 2;
    }
    let lam = xs.lambda();
    let i = C64::new(0.0, 1.0);
    let h = 2.0 * std::f64::consts::PI / (m as f64);
    let scale = std::f64::consts::PI / lf;
    let mut mat = Array2::<C64>::zeros((2 * m, 2 * m));
    for j in 0..m {
        for l in 0..m {
            if j == l {
                continue;
            }
            let sign = if (j + l) % 2 == 0 { 1.0 } else { -1.0 };
            let d = 0.5 * sign / ((j as f64 - l as f64) * h / 2.0).tan() * scale;
            mat[[j, l]] = i * d;
            mat[[m + j, m + l]] = -i * d;
        }
        let x = -lf + 2.0 * lf * (j as f64) / (m as f64);
        let q = if x >= 0.0 { q0(x) } else { C64::new(0.0, 0.0) };
        mat[[j, m + j]] = -i * q;
        mat[[m + j, j]] = -i * lam * q.conj();
    }
    let evs = mat
        .eigvals()
        .map_err(|e| NutmError::Spectral(format!("eigenvalue solve failed: {e}")))?;
    Ok(evs.to_vec())
}
