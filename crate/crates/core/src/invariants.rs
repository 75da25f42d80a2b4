//! Similarity invariants `Tr(Tⁿ)` and `Δ(T) = |b − c̄|² − (a₀ − d₀)²`, and
//! evaluators for the trace/Δ identities that hold on `U(1,1;ℍ)`.
//!
//! Every identity is reported as a normalized residual
//! `|lhs − rhs| / (1 + scale)`, where `scale` is the larger of the
//! documented polynomial in the traces and the magnitude of the operands that
//! enter the subtraction. A residual is compared against the identity's own
//! tolerance ([`Identity::default_tol`]).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::mat2h::Mat2H;

/// Trace-zero threshold for the trace-zero corollaries.
pub const TRACE_ZERO_TOL: f64 = 1e-10;
/// `|Im d|` threshold selecting the equality case `Tr(T²) = 4`.
pub const REAL_D_TOL: f64 = 1e-12;

/// `Δ(T) = |b − c̄|² − (a₀ − d₀)²`.
pub fn delta(m: &Mat2H) -> f64 {
    let gap = m.a.re() - m.d.re();
    (m.b - m.c.conj()).norm_sqr() - gap * gap
}

/// Magnitude of the two terms of [`delta`]; the natural scale of its rounding error.
pub fn delta_scale(m: &Mat2H) -> f64 {
    let gap = m.a.re() - m.d.re();
    (m.b - m.c.conj()).norm_sqr() + gap * gap
}

/// `|Im(c̄⁻¹·b·d̄ + d)|² − |c̄⁻¹·b − 1|²`, defined when `b`, `c` are nonzero and `b ≠ c̄`.
pub fn delta_legacy(t: &GroupElement) -> Result<f64> {
    let Mat2H { b, c, d, .. } = t.matrix();
    let scale = 1e-12 * (1.0 + t.frobenius());
    if b.norm() <= scale || c.norm() <= scale {
        return Err(Error::NotApplicable("legacy Δ needs b ≠ 0 and c ≠ 0"));
    }
    if (b - c.conj()).norm() <= scale {
        return Err(Error::NotApplicable("legacy Δ needs b ≠ c̄"));
    }
    let ratio = c.conj().inv()? * b;
    let im = (ratio * d.conj() + d).im();
    Ok(im.norm_sqr() - (ratio - crate::Quaternion::ONE).norm_sqr())
}

/// `¼·Tr(T)² − ½·Tr(T²) − 2`.
pub fn delta_via_traces(t: &GroupElement) -> f64 {
    let tr1 = t.tr();
    let tr2 = (t.matrix() * t.matrix()).tr();
    0.25 * tr1 * tr1 - 0.5 * tr2 - 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantReport {
    pub tr1: f64,
    pub tr2: f64,
    pub tr3: f64,
    pub tr4: f64,
    pub tr6: f64,
    pub delta: f64,
    pub delta_legacy: Option<f64>,
}

/// Powers `T, T², T³, T⁴, T⁶` by repeated products.
struct Powers {
    p1: Mat2H,
    p2: Mat2H,
    p3: Mat2H,
    p4: Mat2H,
    p6: Mat2H,
}

impl Powers {
    fn of(m: Mat2H) -> Self {
        let p2 = m * m;
        let p3 = p2 * m;
        let p4 = p3 * m;
        let p6 = p4 * m * m;
        Self { p1: m, p2, p3, p4, p6 }
    }
}

pub fn report(t: &GroupElement) -> InvariantReport {
    let p = Powers::of(t.matrix());
    InvariantReport {
        tr1: p.p1.tr(),
        tr2: p.p2.tr(),
        tr3: p.p3.tr(),
        tr4: p.p4.tr(),
        tr6: p.p6.tr(),
        delta: delta(&p.p1),
        delta_legacy: delta_legacy(t).ok(),
    }
}

/// The identities checked by [`identity_checks`] and [`trace_zero_checks`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Identity {
    /// `Δ = ¼Tr² − ½Tr(T²) − 2`
    DeltaViaTraces,
    /// `Δ(T²) = Tr(T)²·Δ(T)`
    DeltaSquare,
    /// `Δ(T³) = (½Tr(T)² + ½Tr(T²) − 1)²·Δ(T)`
    DeltaCube,
    /// `Δ(T⁶) = (½Tr(T²)² + ½Tr(T⁴) − 1)²·Tr(T)²·Δ(T)`
    DeltaSixthViaSquare,
    /// `Δ(T⁶) = (½Tr(T)² + ½Tr(T²) − 1)²·Tr(T³)²·Δ(T)`
    DeltaSixthViaCube,
    /// The two `Δ(T⁶)` expressions against each other.
    DeltaSixthMutual,
    /// Legacy Δ against `Δ(T)` when `b ≠ c̄ ≠ 0`.
    DeltaLegacy,
    /// `Tr T = 0 ⇒ (T²)₁₂ = conj((T²)₂₁)`
    TraceZeroOffDiagonal,
    /// `Tr T = 0 ⇒ Re (T²)₁₁ = Re (T²)₂₂`
    TraceZeroDiagonal,
    /// `Tr T = 0 ⇒ Tr(T²) ≤ 4`
    TraceZeroBound,
    /// `Tr T = 0`, `d ∈ ℝ ⇒ Tr(T²) = 4`
    TraceZeroEquality,
}

impl Identity {
    pub const ALL: [Identity; 11] = [
        Identity::DeltaViaTraces,
        Identity::DeltaSquare,
        Identity::DeltaCube,
        Identity::DeltaSixthViaSquare,
        Identity::DeltaSixthViaCube,
        Identity::DeltaSixthMutual,
        Identity::DeltaLegacy,
        Identity::TraceZeroOffDiagonal,
        Identity::TraceZeroDiagonal,
        Identity::TraceZeroBound,
        Identity::TraceZeroEquality,
    ];

    pub fn default_tol(self) -> f64 {
        use Identity::*;
        match self {
            DeltaViaTraces => 1e-8,
            DeltaSquare => 1e-7,
            DeltaCube => 1e-6,
            DeltaSixthViaSquare | DeltaSixthViaCube | DeltaSixthMutual => 1e-5,
            DeltaLegacy => 1e-9,
            TraceZeroOffDiagonal | TraceZeroDiagonal | TraceZeroBound | TraceZeroEquality => 1e-8,
        }
    }

    pub fn name(self) -> &'static str {
        use Identity::*;
        match self {
            DeltaViaTraces => "delta_via_traces",
            DeltaSquare => "delta_square",
            DeltaCube => "delta_cube",
            DeltaSixthViaSquare => "delta_sixth_via_square",
            DeltaSixthViaCube => "delta_sixth_via_cube",
            DeltaSixthMutual => "delta_sixth_mutual",
            DeltaLegacy => "delta_legacy",
            TraceZeroOffDiagonal => "trace_zero_off_diagonal",
            TraceZeroDiagonal => "trace_zero_diagonal",
            TraceZeroBound => "trace_zero_bound",
            TraceZeroEquality => "trace_zero_equality",
        }
    }
}

/// One evaluated identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Check {
    pub identity: Identity,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl Check {
    fn relative(identity: Identity, lhs: f64, rhs: f64, scale: f64) -> Self {
        let scale = scale.max(lhs.abs()).max(rhs.abs());
        Self {
            identity,
            lhs,
            rhs,
            residual: (lhs - rhs).abs() / (1.0 + scale),
        }
    }

    fn absolute(identity: Identity, lhs: f64, rhs: f64) -> Self {
        Self {
            identity,
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

/// Evaluates the Δ identities (and the legacy form when applicable) on `t`.
pub fn identity_checks(t: &GroupElement) -> Vec<Check> {
    use Identity::*;
    let p = Powers::of(t.matrix());
    let (tr1, tr2, tr3, tr4) = (p.p1.tr(), p.p2.tr(), p.p3.tr(), p.p4.tr());
    let d1 = delta(&p.p1);

    let traces = 0.25 * tr1 * tr1 - 0.5 * tr2 - 2.0;
    let traces_scale = 0.25 * tr1 * tr1 + 0.5 * tr2.abs() + 2.0;

    let cube_factor = 0.5 * tr1 * tr1 + 0.5 * tr2 - 1.0;
    let sq_factor = 0.5 * tr2 * tr2 + 0.5 * tr4 - 1.0;
    let sixth_a = sq_factor * sq_factor * tr1 * tr1 * d1;
    let sixth_b = cube_factor * cube_factor * tr3 * tr3 * d1;
    let tr_pow = |n: i32| tr1.abs().powi(n);

    let mut out = vec![
        Check::relative(DeltaViaTraces, d1, traces, traces_scale.max(delta_scale(&p.p1))),
        Check::relative(
            DeltaSquare,
            delta(&p.p2),
            tr1 * tr1 * d1,
            tr_pow(2).max(delta_scale(&p.p2)),
        ),
        Check::relative(
            DeltaCube,
            delta(&p.p3),
            cube_factor * cube_factor * d1,
            tr_pow(4).max(delta_scale(&p.p3)),
        ),
        Check::relative(
            DeltaSixthViaSquare,
            delta(&p.p6),
            sixth_a,
            tr_pow(8).max(delta_scale(&p.p6)),
        ),
        Check::relative(
            DeltaSixthViaCube,
            delta(&p.p6),
            sixth_b,
            tr_pow(8).max(delta_scale(&p.p6)),
        ),
        Check::relative(DeltaSixthMutual, sixth_a, sixth_b, tr_pow(8)),
    ];
    if let Ok(legacy) = delta_legacy(t) {
        out.push(Check::relative(DeltaLegacy, legacy, d1, delta_scale(&p.p1)));
    }
    out
}

/// Trace-zero corollaries; empty unless `|Tr T| ≤ TRACE_ZERO_TOL`.
///
/// The equality check is only emitted when `|Im d| ≤ REAL_D_TOL`.
pub fn trace_zero_checks(t: &GroupElement) -> Vec<Check> {
    use Identity::*;
    let m = t.matrix();
    if m.tr().abs() > TRACE_ZERO_TOL {
        return Vec::new();
    }
    let sq = m * m;
    let tr2 = sq.tr();
    let mut out = vec![
        Check::absolute(TraceZeroOffDiagonal, (sq.b - sq.c.conj()).norm(), 0.0),
        Check::absolute(TraceZeroDiagonal, sq.a.re(), sq.d.re()),
        Check {
            identity: TraceZeroBound,
            lhs: tr2,
            rhs: 4.0,
            residual: (tr2 - 4.0).max(0.0),
        },
    ];
    if m.d.im_norm() <= REAL_D_TOL {
        out.push(Check::absolute(TraceZeroEquality, tr2, 4.0));
    }
    out
}
