//! Real quaternions `w + x·i + y·j + z·k` with `i² = j² = k² = ijk = −1`.
//!
//! Besides the field operations this module carries the similarity test
//! (two quaternions are similar iff they share real part and modulus), the
//! canonical complex representative of a similarity class and a closed-form
//! solver for the conjugation equation `s·x = x·u`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance on real part and modulus for [`is_similar`].
pub const SIMILARITY_TOL: f64 = 1e-9;

/// Threshold on `‖I·J − 1‖` below which the axes are treated as antipodal.
const ANTIPODAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "[f64; 4]", try_from = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    /// `re + im·i`, an element of the complex slice spanned by `1, i`.
    #[inline]
    pub const fn complex(re: f64, im: f64) -> Self {
        Self::new(re, im, 0.0, 0.0)
    }

    /// Pure quaternion `v[0]·i + v[1]·j + v[2]·k`.
    #[inline]
    pub const fn pure(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    #[inline]
    pub fn im(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    /// Imaginary part as a 3-vector.
    #[inline]
    pub fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Modulus `|q|`, computed without intermediate overflow.
    #[inline]
    pub fn norm(self) -> f64 {
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    /// Modulus of the imaginary part.
    #[inline]
    pub fn im_norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    /// Euclidean inner product of the component vectors, `Re(p·conj(q))`.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj() / n2)
    }

    /// `self / |self|`, or `None` for the zero quaternion.
    pub fn normalize(self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self / n)
    }

    /// `self^n` by repeated Hamilton products (`n = 0` yields 1).
    pub fn pow(self, n: u32) -> Self {
        (0..n).fold(Self::ONE, |acc, _| acc * self)
    }

    /// Canonical complex representative `Re q + i·|Im q|` of the similarity class of `q`.
    pub fn standard_rep(self) -> Self {
        Self::complex(self.w, self.im_norm())
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// `p` and `q` are similar iff `| |p| − |q| | ≤ tol` and `|Re p − Re q| ≤ tol`.
pub fn is_similar(p: Quaternion, q: Quaternion, tol: f64) -> bool {
    (p.norm() - q.norm()).abs() <= tol && (p.re() - q.re()).abs() <= tol
}

/// Returns a unit quaternion `x` with `s·x = x·u`, i.e. `x⁻¹·s·x = u`.
///
/// With `s = s₀ + β·I` and `u = s₀ + β·J` (`I`, `J` unit imaginary) the
/// solution is `1 − I·J` normalized, because `I(1 − IJ) = I + J = (1 − IJ)J`.
/// When `J ≈ −I` that vanishes and any unit imaginary orthogonal to `I` is a
/// solution; the first of `i, j, k` that survives Gram–Schmidt is used.
pub fn solve_similarity(s: Quaternion, u: Quaternion, tol: f64) -> Result<Quaternion> {
    if !is_similar(s, u, tol) {
        return Err(Error::NotSimilar {
            re_gap: (s.re() - u.re()).abs(),
            modulus_gap: (s.norm() - u.norm()).abs(),
        });
    }
    let (beta_s, beta_u) = (s.im_norm(), u.im_norm());
    if beta_s.max(beta_u) <= tol {
        return Ok(Quaternion::ONE);
    }
    let axis_s = s.im() / beta_s;
    let axis_u = u.im() / beta_u;
    let prod = axis_s * axis_u;
    if (prod - Quaternion::ONE).norm() > ANTIPODAL_TOL {
        let x = Quaternion::ONE - prod;
        return Ok(x / x.norm());
    }
    Ok(orthogonal_unit(axis_s))
}

/// First of `i, j, k` made orthogonal to the unit imaginary `axis`, normalized.
fn orthogonal_unit(axis: Quaternion) -> Quaternion {
    [Quaternion::I, Quaternion::J, Quaternion::K]
        .into_iter()
        .map(|e| e - axis * e.dot(axis))
        .find(|r| r.norm() >= 0.5)
        .map(|r| r / r.norm())
        // at least one candidate keeps squared length ≥ 2/3
        .expect("unit axis admits an orthogonal basis vector")
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl TryFrom<[f64; 4]> for Quaternion {
    type Error = String;

    fn try_from(v: [f64; 4]) -> std::result::Result<Self, Self::Error> {
        let q = Quaternion::new(v[0], v[1], v[2], v[3]);
        if q.is_finite() {
            Ok(q)
        } else {
            Err(format!("quaternion components must be finite, got {v:?}"))
        }
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Self::real(r)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, r: f64) -> Self {
        Self::new(self.w * r, self.x * r, self.y * r, self.z * r)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, r: f64) -> Self {
        Self::new(self.w / r, self.x / r, self.y / r, self.z / r)
    }
}
