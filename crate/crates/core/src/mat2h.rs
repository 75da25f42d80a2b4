//! 2×2 quaternionic matrices and their 4×4 complex adjoint image.
//!
//! Matrices act on column vectors from the left, so `(λ·I₂)v = λv` and the
//! product `M·N` keeps the quaternion factor order `Σ m_ik·n_kj`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Relative threshold on the smallest singular value used by [`Mat2H::inverse`].
pub const INVERSE_SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2H {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub d: Quaternion,
}

impl Mat2H {
    pub const IDENTITY: Self = Self::diag(Quaternion::ONE, Quaternion::ONE);
    pub const ZERO: Self = Self::diag(Quaternion::ZERO, Quaternion::ZERO);
    /// `J = diag(1, −1)`, the Gram matrix of the Hermitian form of signature (1,1).
    pub const J: Self = Self::diag(Quaternion::ONE, Quaternion::real(-1.0));

    pub const fn new(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Self {
        Self { a, b, c, d }
    }

    pub const fn diag(a: Quaternion, d: Quaternion) -> Self {
        Self::new(a, Quaternion::ZERO, Quaternion::ZERO, d)
    }

    /// `q·M`, every entry multiplied by `q` on the left.
    pub fn scale_left(self, q: Quaternion) -> Self {
        Self::new(q * self.a, q * self.b, q * self.c, q * self.d)
    }

    pub fn scale(self, r: f64) -> Self {
        Self::new(self.a * r, self.b * r, self.c * r, self.d * r)
    }

    /// Conjugate transpose.
    pub fn adjoint(self) -> Self {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    /// `M − λ·I₂`.
    pub fn shift(self, lambda: Quaternion) -> Self {
        Self::new(self.a - lambda, self.b, self.c, self.d - lambda)
    }

    pub fn pow(self, n: u32) -> Self {
        (0..n).fold(Self::IDENTITY, |acc, _| acc * self)
    }

    /// `Tr(M) = 2·Re(a + d)`, the similarity-invariant trace.
    pub fn tr(self) -> f64 {
        2.0 * (self.a.re() + self.d.re())
    }

    /// `‖M‖_F² = Σ |entry|²`.
    pub fn frobenius_sqr(self) -> f64 {
        self.entries().iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn frobenius(self) -> f64 {
        self.frobenius_sqr().sqrt()
    }

    pub fn entries(self) -> [Quaternion; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_finite(self) -> bool {
        self.entries().iter().all(|q| q.is_finite())
    }

    /// Largest modulus of the off-diagonal entries.
    pub fn off_diagonal(self) -> f64 {
        self.b.norm().max(self.c.norm())
    }

    /// Complex adjoint representation.
    pub fn chi(self) -> CMat4 {
        let mut m = Matrix4::zeros();
        for (idx, q) in self.entries().into_iter().enumerate() {
            let (r, c) = (2 * (idx / 2), 2 * (idx % 2));
            let z = Complex64::new(q.w, q.x);
            let w = Complex64::new(q.y, q.z);
            m[(r, c)] = z;
            m[(r, c + 1)] = w;
            m[(r + 1, c)] = -w.conj();
            m[(r + 1, c + 1)] = z.conj();
        }
        CMat4(m)
    }

    /// Two-sided inverse, computed through the complex image.
    pub fn inverse(self) -> Result<Self> {
        let chi = self.chi();
        let sv = chi.singular_values();
        let (smin, smax) = (sv[3], sv[0]);
        if smin.is_nan() || smin <= INVERSE_SINGULAR_TOL * smax {
            return Err(Error::Singular { sigma_min: smin });
        }
        let inv = chi
            .0
            .try_inverse()
            .ok_or(Error::Singular { sigma_min: smin })?;
        Ok(CMat4(inv).to_mat2h())
    }

    /// Smallest singular value of `chi(M)`; zero iff `M` is not invertible over ℍ.
    pub fn min_singular_value(self) -> f64 {
        self.chi().singular_values()[3]
    }

    /// True iff `σ_min(chi(M)) ≤ tol·(1 + ‖chi(M)‖₂)`.
    pub fn is_singular(self, tol: f64) -> bool {
        let sv = self.chi().singular_values();
        sv[3] <= tol * (1.0 + sv[0])
    }
}

impl Add for Mat2H {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2H {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2H {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Mat2H {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// A 4×4 complex matrix; the image of [`Mat2H::chi`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat4(pub Matrix4<Complex64>);

impl CMat4 {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> [f64; 4] {
        let sv = self.0.singular_values();
        let mut out = [sv[0], sv[1], sv[2], sv[3]];
        out.sort_by(|x, y| y.total_cmp(x));
        out
    }

    /// The four complex eigenvalues, read off the triangular Schur factor.
    pub fn eigenvalues(&self) -> [Complex64; 4] {
        let (_, t) = Schur::new(self.0).unpack();
        [t[(0, 0)], t[(1, 1)], t[(2, 2)], t[(3, 3)]]
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maps a chi-image back to its quaternionic matrix, averaging the two
    /// copies of each complex coordinate in every 2×2 block.
    pub fn to_mat2h(&self) -> Mat2H {
        let m = &self.0;
        let block = |r: usize, c: usize| {
            let z = (m[(r, c)] + m[(r + 1, c + 1)].conj()) * 0.5;
            let w = (m[(r, c + 1)] - m[(r + 1, c)].conj()) * 0.5;
            Quaternion::new(z.re, z.im, w.re, w.im)
        };
        Mat2H::new(block(0, 0), block(0, 2), block(2, 0), block(2, 2))
    }
}

impl Mul for CMat4 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(self.0 * o.0)
    }
}
