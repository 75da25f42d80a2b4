//! The group `U(1,1;ℍ) = {A ∈ GL₂(ℍ) : A*·J·A = J}` with `J = diag(1, −1)`.
//!
//! [`GroupElement`] is a validated wrapper: it can only be built through a
//! membership check, so downstream code may rely on the entry relations
//! `|a| = |d|`, `|b| = |c|`, `|a|² − |c|² = 1`, `āb = c̄d`, `ac̄ = bd̄`.

use std::ops::Deref;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat2h::Mat2H;
use crate::moebius::{classify, MoebiusClass};
use crate::quaternion::Quaternion;

/// Default absolute membership tolerance.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Rejection cap for class-hinted sampling.
pub const HINT_ATTEMPTS: usize = 100_000;

/// Individual residuals of the membership relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MembershipResiduals {
    /// `| |a| − |d| |`
    pub modulus_ad: f64,
    /// `| |b| − |c| |`
    pub modulus_bc: f64,
    /// `| |a|² − |c|² − 1 |`
    pub hyperbolic: f64,
    /// `‖āb − c̄d‖`
    pub cross_ab: f64,
    /// `‖ac̄ − bd̄‖`
    pub cross_ac: f64,
    /// `‖A*·J·A − J‖_F`
    pub j_form: f64,
}

impl MembershipResiduals {
    pub fn of(m: &Mat2H) -> Self {
        let Mat2H { a, b, c, d } = *m;
        let j_defect = m.adjoint() * Mat2H::J * *m - Mat2H::J;
        Self {
            modulus_ad: (a.norm() - d.norm()).abs(),
            modulus_bc: (b.norm() - c.norm()).abs(),
            hyperbolic: (a.norm_sqr() - c.norm_sqr() - 1.0).abs(),
            cross_ab: (a.conj() * b - c.conj() * d).norm(),
            cross_ac: (a * c.conj() - b * d.conj()).norm(),
            j_form: j_defect.frobenius(),
        }
    }

    pub fn max(&self) -> f64 {
        [
            self.modulus_ad,
            self.modulus_bc,
            self.hyperbolic,
            self.cross_ab,
            self.cross_ac,
            self.j_form,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Both the entry relations and the `J`-form identity hold within `tol`.
pub fn is_member(m: &Mat2H, tol: f64) -> bool {
    m.is_finite() && MembershipResiduals::of(m).max() <= tol
}

/// A matrix validated as an element of `U(1,1;ℍ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupElement {
    m: Mat2H,
    membership_residual: f64,
}

impl GroupElement {
    pub const IDENTITY: Self = Self {
        m: Mat2H::IDENTITY,
        membership_residual: 0.0,
    };

    pub fn new(m: Mat2H, tol: f64) -> Result<Self> {
        let residual = if m.is_finite() {
            MembershipResiduals::of(&m).max()
        } else {
            f64::INFINITY
        };
        if residual <= tol {
            Ok(Self {
                m,
                membership_residual: residual,
            })
        } else {
            Err(Error::NotMember { residual })
        }
    }

    pub fn matrix(&self) -> Mat2H {
        self.m
    }

    pub fn membership_residual(&self) -> f64 {
        self.membership_residual
    }

    /// `T⁻¹ = J·T*·J`.
    pub fn inverse(&self) -> Self {
        Self {
            m: Mat2H::J * self.m.adjoint() * Mat2H::J,
            membership_residual: self.membership_residual,
        }
    }

    /// Product of two members, revalidated at `tol`.
    pub fn compose(&self, other: &Self, tol: f64) -> Result<Self> {
        Self::new(self.m * other.m, tol)
    }

    pub fn pow(&self, n: u32, tol: f64) -> Result<Self> {
        Self::new(self.m.pow(n), tol)
    }
}

impl Deref for GroupElement {
    type Target = Mat2H;
    fn deref(&self) -> &Mat2H {
        &self.m
    }
}

/// `J·T*·J`, the inverse of a member.
pub fn inverse_u11(t: &GroupElement) -> GroupElement {
    t.inverse()
}

/// `G·T·G⁻¹`; fails with [`Error::MembershipDrift`] when the product's
/// membership residual exceeds `100·tol`.
pub fn conjugate(t: &GroupElement, g: &GroupElement, tol: f64) -> Result<GroupElement> {
    let m = g.m * t.m * g.inverse().m;
    let residual = MembershipResiduals::of(&m).max();
    if residual > 100.0 * tol || !residual.is_finite() {
        return Err(Error::MembershipDrift { residual });
    }
    Ok(GroupElement {
        m,
        membership_residual: residual,
    })
}

/// `[[cosh t, sinh t], [sinh t, cosh t]]`.
pub fn boost(t: f64) -> Mat2H {
    let (ch, sh) = (Quaternion::real(t.cosh()), Quaternion::real(t.sinh()));
    Mat2H::new(ch, sh, sh, ch)
}

/// Normal forms used by [`Sampler::trace_zero_element`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceZeroKind {
    SignedJ,
    Elliptic,
    Loxodromic,
}

impl TraceZeroKind {
    pub const ALL: [TraceZeroKind; 3] = [Self::SignedJ, Self::Elliptic, Self::Loxodromic];
}

/// Deterministic sampler of group elements.
///
/// Each `(seed, stream)` pair selects an independent ChaCha stream, so batch
/// runs can hand trial `k` the stream `k` and stay order independent.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Uniform point of `S³`: a normalized standard Gaussian 4-vector.
    pub fn unit_quaternion(&mut self) -> Quaternion {
        loop {
            let q = Quaternion::new(self.gaussian(), self.gaussian(), self.gaussian(), self.gaussian());
            if let Some(u) = q.normalize().filter(|_| q.norm() > 1e-6) {
                return u;
            }
        }
    }

    /// Uniform unit imaginary quaternion.
    pub fn unit_imaginary(&mut self) -> Quaternion {
        loop {
            let q = Quaternion::pure([self.gaussian(), self.gaussian(), self.gaussian()]);
            if q.norm() > 1e-6 {
                return q / q.norm();
            }
        }
    }

    /// Unit quaternion with prescribed real part `re ∈ [−1, 1]` and a random axis.
    pub fn unit_with_re(&mut self, re: f64) -> Quaternion {
        let im = (1.0 - re * re).max(0.0).sqrt();
        Quaternion::real(re) + self.unit_imaginary() * im
    }

    /// Rapidity `|N(0,1)|`.
    pub fn rapidity(&mut self) -> f64 {
        self.gaussian().abs()
    }

    /// `D₁·B(t)·D₂` with unit diagonal factors and boost rapidity `t`.
    pub fn kak(&mut self, t: f64) -> Mat2H {
        let d1 = Mat2H::diag(self.unit_quaternion(), self.unit_quaternion());
        let d2 = Mat2H::diag(self.unit_quaternion(), self.unit_quaternion());
        d1 * boost(t) * d2
    }

    /// A generic element `D₁·B(t)·D₂` with `t = |N(0,1)|`.
    pub fn element(&mut self) -> GroupElement {
        let t = self.rapidity();
        let m = self.kak(t);
        self.member(m)
    }

    /// Conjugating element with a damped rapidity, used by the class families.
    fn conjugator(&mut self) -> Mat2H {
        let t = 0.5 * self.rapidity();
        self.kak(t)
    }

    fn member(&self, m: Mat2H) -> GroupElement {
        // products of exact members stay within roundoff of the group
        let residual = MembershipResiduals::of(&m).max();
        GroupElement {
            m,
            membership_residual: residual,
        }
    }

    fn conjugated(&mut self, m: Mat2H) -> GroupElement {
        let g = self.conjugator();
        let g_inv = Mat2H::J * g.adjoint() * Mat2H::J;
        self.member(g * m * g_inv)
    }

    /// One draw from the constructive family associated with `class`.
    ///
    /// * elliptic: conjugates of `diag(u, v)` with unit `u, v` (equal real
    ///   parts for the simple class);
    /// * simple parabolic: conjugates of `±[[1 + iy, β], [β̄, 1 − iy]]` with
    ///   complex `β`, `|β| = |y|`, by unit diagonal matrices;
    /// * compound parabolic: the same parabolic twisted by the commuting
    ///   rotation `diag(u, u)`, `u` complex non-real, then conjugated;
    /// * loxodromic: conjugates of `±B(t)` (simple) or `diag(u, u)·B(t)` (compound).
    pub fn family_member(&mut self, class: MoebiusClass) -> GroupElement {
        match class {
            MoebiusClass::SimpleElliptic => {
                let re = self.uniform(-0.98, 0.98);
                let (u, v) = (self.unit_with_re(re), self.unit_with_re(re));
                self.conjugated(Mat2H::diag(u, v))
            }
            MoebiusClass::CompoundElliptic => {
                let (u, v) = loop {
                    let (u, v) = (self.unit_quaternion(), self.unit_quaternion());
                    if (u.re() - v.re()).abs() > 1e-3 {
                        break (u, v);
                    }
                };
                self.conjugated(Mat2H::diag(u, v))
            }
            MoebiusClass::SimpleParabolic => {
                let p = self.complex_parabolic();
                let d = Mat2H::diag(self.unit_quaternion(), self.unit_quaternion());
                let d_inv = d.adjoint();
                self.member(d * p * d_inv)
            }
            MoebiusClass::CompoundParabolic => {
                let p = self.complex_parabolic();
                let theta = self.uniform(0.2, std::f64::consts::PI - 0.2);
                let u = Quaternion::complex(theta.cos(), theta.sin());
                self.conjugated(p.scale_left(u))
            }
            MoebiusClass::SimpleLoxodromic => {
                let t = 0.1 + self.rapidity();
                let sign = if self.rng.random_bool(0.5) { 1.0 } else { -1.0 };
                self.conjugated(boost(t).scale(sign))
            }
            MoebiusClass::CompoundLoxodromic => {
                let t = 0.1 + self.rapidity();
                let theta = self.uniform(0.2, std::f64::consts::PI - 0.2);
                let u = Quaternion::complex(theta.cos(), theta.sin());
                self.conjugated(boost(t).scale_left(u))
            }
        }
    }

    /// `±[[1 + iy, β], [β̄, 1 − iy]]` with complex `β` of modulus `|y|`.
    fn complex_parabolic(&mut self) -> Mat2H {
        let y = self.uniform(0.2, 2.0) * if self.rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let phi = self.uniform(0.0, std::f64::consts::TAU);
        let beta = Quaternion::complex(y.abs() * phi.cos(), y.abs() * phi.sin());
        let sign = if self.rng.random_bool(0.5) { 1.0 } else { -1.0 };
        Mat2H::new(
            Quaternion::complex(1.0, y),
            beta,
            beta.conj(),
            Quaternion::complex(1.0, -y),
        )
        .scale(sign)
    }

    /// A conjugate of a trace-zero normal form.
    ///
    /// `SignedJ` conjugates `±J`, which keeps `d` real; `Elliptic` conjugates
    /// `diag(u, v)` with `Re u = −Re v`; `Loxodromic` conjugates `u·B(t)` with
    /// `u` unit imaginary.
    pub fn trace_zero_element(&mut self, kind: TraceZeroKind) -> GroupElement {
        let base = match kind {
            TraceZeroKind::SignedJ => {
                Mat2H::J.scale(if self.rng.random_bool(0.5) { 1.0 } else { -1.0 })
            }
            TraceZeroKind::Elliptic => {
                let re = self.uniform(-0.99, 0.99);
                Mat2H::diag(self.unit_with_re(re), self.unit_with_re(-re))
            }
            TraceZeroKind::Loxodromic => {
                let t = 0.1 + self.rapidity();
                boost(t).scale_left(self.unit_imaginary())
            }
        };
        self.conjugated(base)
    }

    /// Rejection sampling of the requested class; unhinted draws use [`Sampler::element`].
    pub fn sample(&mut self, hint: Option<MoebiusClass>) -> Result<GroupElement> {
        let Some(class) = hint else {
            return Ok(self.element());
        };
        for _ in 0..HINT_ATTEMPTS {
            let t = self.family_member(class);
            if t.membership_residual <= MEMBERSHIP_TOL && classify(&t) == Ok(class) {
                return Ok(t);
            }
        }
        Err(Error::HintExhausted {
            class,
            attempts: HINT_ATTEMPTS,
        })
    }
}

/// Deterministic random element for `seed`, optionally of a requested class.
pub fn random_element(seed: u64, class_hint: Option<MoebiusClass>) -> Result<GroupElement> {
    Sampler::new(seed).sample(class_hint)
}
