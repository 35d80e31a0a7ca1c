//! Chebyshev collocation primitives on segments, rays and circles.
//!
//! These are the numerical kernels everything else is built from: mapped
//! collocation grids, Chebyshev coefficient transforms, Clenshaw–Curtis
//! integration and Cauchy transforms with accurate boundary values on the
//! contour itself.
//!
//! Conventions: contours are oriented (segments from `a` to `b`, rays
//! outward from their base, circles counterclockwise) and the `+` side of
//! any boundary value is the side to the *left* of the orientation, so the
//! Sokhotski–Plemelj identity reads `C⁺u − C⁻u = u`.

use crate::C64;
use ndarray::Array2;
use std::f64::consts::PI;

/// Side of an oriented contour: `Plus` is to the left of the direction of
/// travel (the interior of a counterclockwise circle).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

const TWO_PI_I: C64 = C64::new(0.0, 2.0 * PI);

/// Chebyshev points of the second kind (extrema grid), ascending on [-1,1].
/// `n` is the number of points, n >= 2.
pub fn cheb2_nodes(n: usize) -> Vec<f64> {
    assert!(n >= 2, "need at least two collocation points");
    let nm1 = (n - 1) as f64;
    let mut x = vec![0.0f64; n];
    for j in 0..n / 2 {
        let v = if j == 0 {
            1.0
        } else {
            (PI * j as f64 / nm1).cos()
        };
        x[j] = -v;
        x[n - 1 - j] = v;
    }
    x
}

/// Chebyshev points of the first kind (roots grid), ascending on (-1,1).
pub fn cheb1_nodes(n: usize) -> Vec<f64> {
    assert!(n >= 1);
    let mut x = vec![0.0f64; n];
    for j in 0..n / 2 {
        let v = (PI * (2 * j + 1) as f64 / (2 * n) as f64).cos();
        x[j] = -v;
        x[n - 1 - j] = v;
    }
    x
}

/// Chebyshev coefficients of the interpolant through values at the
/// ascending second-kind grid: p(x) = sum a_k T_k(x).
pub fn cheb_coeffs(values: &[C64]) -> Vec<C64> {
    let n = values.len();
    assert!(n >= 2);
    let nn = n - 1; // polynomial degree
    let nf = nn as f64;
    // Values at the conventional descending grid x_j = cos(pi j / N).
    let v = |j: usize| values[nn - j];
    let mut a = vec![C64::new(0.0, 0.0); n];
    for (k, ak) in a.iter_mut().enumerate() {
        let kf = k as f64;
        let mut s = 0.5 * (v(0) + v(nn) * C64::new((PI * kf).cos(), 0.0));
        for j in 1..nn {
            s += v(j) * (PI * kf * j as f64 / nf).cos();
        }
        *ak = s * (2.0 / nf);
    }
    a[0] *= 0.5;
    a[nn] *= 0.5;
    a
}

/// Evaluate p(z) = sum a_k T_k(z) by the Clenshaw recurrence.
pub fn cheb_eval(coeffs: &[C64], z: C64) -> C64 {
    let n = coeffs.len();
    if n == 0 {
        return C64::new(0.0, 0.0);
    }
    let mut b1 = C64::new(0.0, 0.0);
    let mut b2 = C64::new(0.0, 0.0);
    for k in (1..n).rev() {
        let b = coeffs[k] + 2.0 * z * b1 - b2;
        b2 = b1;
        b1 = b;
    }
    coeffs[0] + z * b1 - b2
}

/// Integral over [-1,1] of the polynomial with the given Chebyshev
/// coefficients: only even-order terms contribute, with weight 2/(1-k^2).
pub fn cheb_integrate(coeffs: &[C64]) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    let mut k = 0usize;
    while k < coeffs.len() {
        let kf = k as f64;
        s += coeffs[k] * (2.0 / (1.0 - kf * kf));
        k += 2;
    }
    s
}

/// Given p = sum a_k T_k and a point z, return the Chebyshev coefficients of
/// q with p(s) - p(z) = (s - z) q(s), together with p(z). The backward
/// recurrence is stable and also yields p(z) as a by-product.
pub fn q_decompose(coeffs: &[C64], z: C64) -> (Vec<C64>, C64) {
    let n = coeffs.len();
    let deg = n.saturating_sub(1);
    if deg == 0 {
        return (Vec::new(), coeffs.first().copied().unwrap_or_default());
    }
    if deg == 1 {
        let b0 = coeffs[1];
        return (vec![b0], coeffs[0] + z * b0);
    }
    let mut b = vec![C64::new(0.0, 0.0); deg];
    b[deg - 1] = 2.0 * coeffs[deg];
    if deg >= 2 {
        for m in (2..deg).rev() {
            let bp1 = if m + 1 < deg { b[m + 1] } else { C64::new(0.0, 0.0) };
            b[m - 1] = 2.0 * (coeffs[m] + z * b[m]) - bp1;
        }
        let b2 = if deg > 2 { b[2] } else { C64::new(0.0, 0.0) };
        b[0] = coeffs[1] + z * b[1] - 0.5 * b2;
    }
    let pz = coeffs[0] - 0.5 * b[1] + z * b[0];
    (b, pz)
}

/// Principal-branch value of \int_{-1}^{1} d sigma / (sigma - z) for z off
/// the interval: log((z-1)/(z+1)).
fn mu0(z: C64) -> C64 {
    ((z - 1.0) / (z + 1.0)).ln()
}

/// Shared boundary-value kernel: \int_{-1}^{1} dsig/(sig - x0) taken on the
/// given side of the interval, x0 strictly inside (-1,1).
fn mu0_boundary(x0: f64, side: Side) -> C64 {
    let re = ((1.0 - x0) / (1.0 + x0)).ln();
    match side {
        Side::Plus => C64::new(re, PI),
        Side::Minus => C64::new(re, -PI),
    }
}

/// Spectral differentiation matrix on the ascending second-kind grid with
/// `n` points, built from barycentric weights with the negative-sum trick.
pub fn diff_matrix(n: usize) -> Array2<f64> {
    let x = cheb2_nodes(n);
    let mut w = vec![0.0f64; n];
    for (j, wj) in w.iter_mut().enumerate() {
        let mut s = if j % 2 == 0 { 1.0 } else { -1.0 };
        if j == 0 || j == n - 1 {
            s *= 0.5;
        }
        *wj = s;
    }
    let mut d = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i != j {
                let v = (w[j] / w[i]) / (x[i] - x[j]);
                d[[i, j]] = v;
                row_sum += v;
            }
        }
        d[[i, i]] = -row_sum;
    }
    d
}

/// An oriented straight segment from `a` to `b` in the complex plane.
#[derive(Clone, Copy, Debug)]
pub struct Segment {
    pub a: C64,
    pub b: C64,
}

impl Segment {
    pub fn new(a: C64, b: C64) -> Self {
        Segment { a, b }
    }

    /// Map from the parameter sigma in [-1,1] to the plane.
    pub fn point(&self, sigma: f64) -> C64 {
        0.5 * (self.a + self.b) + 0.5 * (self.b - self.a) * sigma
    }

    /// Inverse parameter map; z need not lie on the segment.
    pub fn sigma_of(&self, z: C64) -> C64 {
        (2.0 * z - self.a - self.b) / (self.b - self.a)
    }

    /// Mapped second-kind nodes (where densities are stored).
    pub fn nodes(&self, n: usize) -> Vec<C64> {
        cheb2_nodes(n).into_iter().map(|s| self.point(s)).collect()
    }

    /// Mapped first-kind nodes (where collocation equations are imposed).
    pub fn colloc(&self, n: usize) -> Vec<C64> {
        cheb1_nodes(n).into_iter().map(|s| self.point(s)).collect()
    }

    /// Arc integral of the interpolated density.
    pub fn integrate(&self, values: &[C64]) -> C64 {
        let a = cheb_coeffs(values);
        0.5 * (self.b - self.a) * cheb_integrate(&a)
    }

    /// Cauchy transform (1/2 pi i) \int u(s)/(s - z) ds for z off the
    /// segment. The affine Jacobian cancels in the kernel, so this is the
    /// parameter-plane integral with the mapped target.
    ///
    /// Near the segment the pole is subtracted analytically; far away the
    /// subtraction cancels catastrophically (the interpolant grows like a
    /// Bernstein ellipse), so plain quadrature of the smooth kernel is used
    /// instead. The switch keys on the magnitude of the extrapolated
    /// interpolant, which is what controls the cancellation.
    pub fn cauchy(&self, values: &[C64], z: C64) -> C64 {
        let a = cheb_coeffs(values);
        let sz = self.sigma_of(z);
        let (q, pz) = q_decompose(&a, sz);
        if far_field(pz, values) {
            let grid = cheb2_nodes(values.len());
            let kernel: Vec<C64> = grid
                .iter()
                .zip(values)
                .map(|(&s, &u)| u / (C64::new(s, 0.0) - sz))
                .collect();
            cheb_integrate(&cheb_coeffs(&kernel)) / TWO_PI_I
        } else {
            (cheb_integrate(&q) + pz * mu0(sz)) / TWO_PI_I
        }
    }

    /// One-sided boundary value of the Cauchy transform at the interior
    /// parameter `sigma` (strictly inside (-1,1)).
    pub fn cauchy_boundary(&self, values: &[C64], sigma: f64, side: Side) -> C64 {
        let a = cheb_coeffs(values);
        let (q, pz) = q_decompose(&a, C64::new(sigma, 0.0));
        (cheb_integrate(&q) + pz * mu0_boundary(sigma, side)) / TWO_PI_I
    }
}

/// A ray from `base` to infinity in direction `angle`, parameterized by the
/// Möbius map m(sigma) = base + e^{i angle} scale (1+sigma)/(1-sigma).
/// Densities on rays must vanish at infinity; the interpolant pins the
/// value 0 at sigma = 1.
#[derive(Clone, Copy, Debug)]
pub struct Ray {
    pub base: C64,
    pub angle: f64,
    pub scale: f64,
}

impl Ray {
    pub fn new(base: C64, angle: f64, scale: f64) -> Self {
        assert!(scale > 0.0);
        Ray { base, angle, scale }
    }

    fn dir(&self) -> C64 {
        C64::new(self.angle.cos(), self.angle.sin())
    }

    /// Map from sigma in [-1,1) to the plane.
    pub fn point(&self, sigma: f64) -> C64 {
        self.base + self.dir() * self.scale * (1.0 + sigma) / (1.0 - sigma)
    }

    /// Derivative of the parameter map.
    fn dpoint(&self, sigma: f64) -> C64 {
        self.dir() * (2.0 * self.scale / ((1.0 - sigma) * (1.0 - sigma)))
    }

    /// Inverse parameter map (z anywhere off the ray, or on it).
    pub fn sigma_of(&self, z: C64) -> C64 {
        let zeta = (z - self.base) * self.dir().conj();
        (zeta - self.scale) / (zeta + self.scale)
    }

    /// The n finite nodes: the (n+1)-point second-kind grid minus sigma = 1.
    pub fn nodes(&self, n: usize) -> Vec<C64> {
        let grid = cheb2_nodes(n + 1);
        grid[..n].iter().map(|&s| self.point(s)).collect()
    }

    /// Interior collocation nodes (first-kind points of the full grid).
    pub fn colloc(&self, n: usize) -> Vec<C64> {
        cheb1_nodes(n).into_iter().map(|s| self.point(s)).collect()
    }

    /// Coefficients of the parameter-plane interpolant through the density
    /// values, with the value at sigma = 1 pinned to zero.
    fn coeffs_padded(&self, values: &[C64]) -> Vec<C64> {
        let mut v = values.to_vec();
        v.push(C64::new(0.0, 0.0));
        cheb_coeffs(&v)
    }

    /// Arc integral of the interpolated density (must decay at infinity
    /// fast enough that u * m' vanishes at sigma = 1).
    pub fn integrate(&self, values: &[C64]) -> C64 {
        let n = values.len();
        let grid = cheb2_nodes(n + 1);
        let mut v: Vec<C64> = grid[..n]
            .iter()
            .zip(values)
            .map(|(&s, &u)| u * self.dpoint(s))
            .collect();
        v.push(C64::new(0.0, 0.0));
        let a = cheb_coeffs(&v);
        cheb_integrate(&a)
    }

    /// Cauchy transform for z off the ray. Uses the kernel identity
    /// m'(s)/(m(s) - z) = 1/(s - s_z) + 1/(1 - s); the pole term switches
    /// to plain quadrature when the target is far in the parameter plane
    /// (see `Segment::cauchy`).
    pub fn cauchy(&self, values: &[C64], z: C64) -> C64 {
        let a = self.coeffs_padded(values);
        let sz = self.sigma_of(z);
        let (q, pz) = q_decompose(&a, sz);
        let jp = self.log_tail(&a);
        if far_field(pz, values) {
            let n = values.len();
            let grid = cheb2_nodes(n + 1);
            let mut kernel: Vec<C64> = grid[..n]
                .iter()
                .zip(values)
                .map(|(&s, &u)| u / (C64::new(s, 0.0) - sz))
                .collect();
            kernel.push(C64::new(0.0, 0.0));
            (cheb_integrate(&cheb_coeffs(&kernel)) + jp) / TWO_PI_I
        } else {
            (cheb_integrate(&q) + pz * mu0(sz) + jp) / TWO_PI_I
        }
    }

    /// One-sided boundary value at interior parameter sigma.
    pub fn cauchy_boundary(&self, values: &[C64], sigma: f64, side: Side) -> C64 {
        let a = self.coeffs_padded(values);
        let (q, pz) = q_decompose(&a, C64::new(sigma, 0.0));
        let jp = self.log_tail(&a);
        (cheb_integrate(&q) + pz * mu0_boundary(sigma, side) + jp) / TWO_PI_I
    }

    /// \int_{-1}^{1} p(s)/(1 - s) ds where p(1) = 0: equals -\int qhat with
    /// p(s) = (s - 1) qhat(s).
    fn log_tail(&self, coeffs: &[C64]) -> C64 {
        let (qhat, _) = q_decompose(coeffs, C64::new(1.0, 0.0));
        -cheb_integrate(&qhat)
    }
}

/// A counterclockwise circle. Densities are represented by a Laurent
/// interpolant through equispaced samples; the `+` side is the interior.
#[derive(Clone, Copy, Debug)]
pub struct Circle {
    pub center: C64,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: C64, radius: f64) -> Self {
        assert!(radius > 0.0);
        Circle { center, radius }
    }

    pub fn point(&self, phi: f64) -> C64 {
        self.center + self.radius * C64::new(phi.cos(), phi.sin())
    }

    /// m equispaced nodes starting at angle 0.
    pub fn nodes(&self, m: usize) -> Vec<C64> {
        (0..m)
            .map(|l| self.point(2.0 * PI * l as f64 / m as f64))
            .collect()
    }

    /// Balanced Laurent coefficients a_j, j = -m/2 .. m/2-1, of the trig
    /// interpolant u(s) = sum a_j ((s - c)/r)^j.
    fn laurent(&self, values: &[C64]) -> (Vec<C64>, i64) {
        let m = values.len() as i64;
        let jmin = -(m / 2);
        let mut a = vec![C64::new(0.0, 0.0); m as usize];
        for (idx, aj) in a.iter_mut().enumerate() {
            let j = jmin + idx as i64;
            let mut s = C64::new(0.0, 0.0);
            for (l, &u) in values.iter().enumerate() {
                let phi = 2.0 * PI * (l as f64) / (m as f64);
                s += u * C64::new(0.0, -(j as f64) * phi).exp();
            }
            *aj = s / (m as f64);
        }
        (a, jmin)
    }

    /// Cauchy transform at z (side decided by |z - center| vs radius).
    pub fn cauchy(&self, values: &[C64], z: C64) -> C64 {
        let (a, jmin) = self.laurent(values);
        let w = (z - self.center) / self.radius;
        if w.norm() < 1.0 {
            power_sum(&a, jmin, w, true)
        } else {
            -power_sum(&a, jmin, w, false)
        }
    }

    /// One-sided boundary value at angle phi; `Plus` is the interior limit.
    pub fn cauchy_boundary(&self, values: &[C64], phi: f64, side: Side) -> C64 {
        let (a, jmin) = self.laurent(values);
        let w = C64::new(phi.cos(), phi.sin());
        match side {
            Side::Plus => power_sum(&a, jmin, w, true),
            Side::Minus => -power_sum(&a, jmin, w, false),
        }
    }

    /// Contour integral of the interpolated density (exact for the trig
    /// interpolant: the trapezoid rule).
    pub fn integrate(&self, values: &[C64]) -> C64 {
        let m = values.len();
        let mut s = C64::new(0.0, 0.0);
        for (l, &u) in values.iter().enumerate() {
            let phi = 2.0 * PI * (l as f64) / (m as f64);
            let tangent = C64::new(0.0, 1.0) * self.radius * C64::new(phi.cos(), phi.sin());
            s += u * tangent;
        }
        s * (2.0 * PI / m as f64)
    }
}

/// True when the extrapolated interpolant value is so large relative to the
/// sampled density that the analytic pole subtraction would cancel
/// catastrophically; plain quadrature of the (then smooth) kernel is
/// accurate in exactly that regime.
fn far_field(pz: C64, values: &[C64]) -> bool {
    let scale = values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    pz.norm() > 100.0 * scale.max(f64::MIN_POSITIVE)
}

/// Sum of the nonnegative (if `upper`) or negative powers of the Laurent
/// interpolant at w.
fn power_sum(a: &[C64], jmin: i64, w: C64, upper: bool) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    if upper {
        // sum_{j >= 0} a_j w^j, Horner from the top.
        let jmax = jmin + a.len() as i64 - 1;
        for j in (0..=jmax).rev() {
            let idx = (j - jmin) as usize;
            s = s * w + a[idx];
        }
    } else {
        // sum_{j < 0} a_j w^j = (1/w) * (a_{-1} + (1/w)(a_{-2} + ...)).
        let wi = w.finv();
        let mut j = jmin;
        // Horner in 1/w starting from the most negative power.
        let mut acc = C64::new(0.0, 0.0);
        while j < 0 {
            let idx = (j - jmin) as usize;
            acc = acc * wi + a[idx] * wi;
            j += 1;
        }
        // acc currently holds sum_{j<0} ... built as (((a_{jmin} wi) wi + a_{jmin+1} wi) ...)
        s = acc;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_negative_power_sum() {
        // u(w) = 1/w on the unit circle: a_{-1} = 1; exterior sum at w = 2
        // must be 1/2.
        let circ = Circle::new(C64::new(0.0, 0.0), 1.0);
        let nodes = circ.nodes(8);
        let vals: Vec<C64> = nodes.iter().map(|&s| s.finv()).collect();
        let got = circ.cauchy(&vals, C64::new(2.0, 0.0));
        // exterior: -sum_{j<0} a_j w^j = -1/2.
        assert!((got - C64::new(-0.5, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn ray_sigma_inverse_roundtrip() {
        let ray = Ray::new(C64::new(1.0, -2.0), 0.7, 1.3);
        for &s in &[-0.9, -0.2, 0.5, 0.95] {
            let z = ray.point(s);
            let back = ray.sigma_of(z);
            assert!((back - C64::new(s, 0.0)).norm() < 1e-12);
        }
    }
}
