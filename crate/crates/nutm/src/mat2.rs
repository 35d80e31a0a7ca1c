//! Small dense 2x2 complex matrices used by the jump algebra.

use crate::C64;
use std::ops::{Add, Mul, Sub};

/// A 2x2 complex matrix with value semantics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct M2(pub [[C64; 2]; 2]);

impl M2 {
    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        M2([[one, zero], [zero, one]])
    }

    pub fn zeros() -> Self {
        let zero = C64::new(0.0, 0.0);
        M2([[zero, zero], [zero, zero]])
    }

    pub fn diag(d1: C64, d2: C64) -> Self {
        let zero = C64::new(0.0, 0.0);
        M2([[d1, zero], [zero, d2]])
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// General inverse via the adjugate; errors are the caller's problem
    /// (jump matrices have determinant one, so this never divides by a
    /// small number in practice).
    pub fn inv(&self) -> M2 {
        let d = self.det();
        M2([
            [self.0[1][1] / d, -self.0[0][1] / d],
            [-self.0[1][0] / d, self.0[0][0] / d],
        ])
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// Deviation from the identity in the Frobenius norm.
    pub fn dist_to_identity(&self) -> f64 {
        (*self - M2::identity()).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }

    pub fn transpose(&self) -> M2 {
        M2([
            [self.0[0][0], self.0[1][0]],
            [self.0[0][1], self.0[1][1]],
        ])
    }
}

impl Mul for M2 {
    type Output = M2;
    fn mul(self, rhs: M2) -> M2 {
        let mut out = M2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] =
                    self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}

impl Add for M2 {
    type Output = M2;
    fn add(self, rhs: M2) -> M2 {
        let mut out = M2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for M2 {
    type Output = M2;
    fn sub(self, rhs: M2) -> M2 {
        let mut out = M2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}

impl Mul<M2> for C64 {
    type Output = M2;
    fn mul(self, rhs: M2) -> M2 {
        let mut out = M2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self * rhs.0[i][j];
            }
        }
        out
    }
}
