//! Diagonalization of elliptic elements by conjugation inside U(1,1;ℍ).
//!
//! Three constructions, chosen by the entry pattern of `T`:
//! diagonal input is returned as is; `b = c̄` is handled by a product of
//! three explicit conjugators; `b ≠ c̄` builds the rows of `X` as J-normalized
//! row eigenvectors for the two standard representatives `s`, `s′`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, MembershipResiduals};
use crate::invariants::delta;
use crate::mat2h::Mat2H;
use crate::moebius::{classify, entry_pattern, CoarseClass, EntryPattern, CLASS_EPS};
use crate::quaternion::{solve_similarity, Quaternion};

/// Membership tolerance for the constructed conjugator.
pub const CONJUGATOR_TOL: f64 = 1e-8;

/// Claim residuals above this abort with [`Error::AssertionFailure`].
pub const CLAIM_ABORT_TOL: f64 = 1e-6;

const UNIT_ROOT_FLOOR: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiagCase {
    Case1,
    Case2,
    Case3,
}

/// Internal quantities of the `b ≠ c̄` construction.
///
/// `w_row1` and `w_row2` are the ratios `((b − c̄)p⁻¹ + a)c⁻¹` for the value
/// placed in each row; the construction needs `|w_row1| < 1 < |w_row2|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClaimDiagnostics {
    pub w_row1: f64,
    pub w_row2: f64,
    /// `|w·conj(w′) − 1|`
    pub reciprocity: f64,
    /// `max(| |p| − |b − c̄| |, | |p′| − |b − c̄| |) / |b − c̄|`
    pub p_modulus: f64,
    /// Worst of `|x₁| = |x₄|`, `x₁x̄₃ = x₂x̄₄`, `x̄₁x₂ = x̄₃x₄`, relative.
    pub row_relations: f64,
    /// Largest similarity mismatch fed to the row-eigenvector solver.
    pub similarity_mismatch: f64,
}

impl ClaimDiagnostics {
    /// The largest residual among the checked claims; the two modulus claims
    /// contribute how far they are on the wrong side of 1.
    pub fn worst(&self) -> f64 {
        [
            (self.w_row1 - 1.0).max(0.0),
            (1.0 - self.w_row2).max(0.0),
            self.reciprocity,
            self.p_modulus,
            self.row_relations,
            self.similarity_mismatch,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalizationResult {
    pub x: GroupElement,
    pub d: Mat2H,
    pub residual_conjugation: f64,
    pub residual_membership: f64,
    pub case_used: DiagCase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<ClaimDiagnostics>,
}

impl DiagonalizationResult {
    fn finish(x: Mat2H, t: &GroupElement, d: Mat2H, case_used: DiagCase, claims: Option<ClaimDiagnostics>) -> Result<Self> {
        let x = GroupElement::new(x, CONJUGATOR_TOL)?;
        let conj = x.matrix() * t.matrix() * x.inverse().matrix();
        Ok(Self {
            residual_conjugation: (conj - d).frobenius(),
            residual_membership: MembershipResiduals::of(&x.matrix()).max(),
            x,
            d,
            case_used,
            claims,
        })
    }
}

/// Finds `X ∈ U(1,1;ℍ)` with `X T X⁻¹` diagonal.
pub fn diagonalize_elliptic(t: &GroupElement) -> Result<DiagonalizationResult> {
    let class = classify(t)?;
    if class.coarse() != CoarseClass::Elliptic {
        return Err(Error::NotElliptic(class));
    }
    match entry_pattern(&t.matrix(), CLASS_EPS)? {
        EntryPattern::Diagonal => Ok(DiagonalizationResult {
            x: GroupElement::IDENTITY,
            d: t.matrix(),
            residual_conjugation: 0.0,
            residual_membership: 0.0,
            case_used: DiagCase::Case1,
            claims: None,
        }),
        EntryPattern::Simple => case2_transform(t),
        EntryPattern::Compound => case3_transform(t),
    }
}

/// `√(1 − re²)`, read as 0 when the radicand is at roundoff level: near
/// `re = ±1` the square root would turn 1e-16 noise into 1e-8.
fn unit_root(re: f64) -> f64 {
    let r = (1.0 - re) * (1.0 + re);
    if r <= UNIT_ROOT_FLOOR {
        0.0
    } else {
        r.sqrt()
    }
}

/// `b = c̄ ≠ 0` with `d₀² < 1`.
pub fn case2_transform(t: &GroupElement) -> Result<DiagonalizationResult> {
    let m = t.matrix();
    if entry_pattern(&m, CLASS_EPS)? != EntryPattern::Simple {
        return Err(Error::CaseMismatch("case 2 needs b = conj(c) != 0"));
    }
    let d0 = m.d.re();
    if d0 * d0 >= 1.0 - CLASS_EPS {
        return Err(Error::CaseMismatch("case 2 needs d0^2 < 1"));
    }
    let cn = m.c.norm();
    let x = Mat2H::diag(m.c / cn, Quaternion::ONE);

    let inner = 1.0 - d0 * d0;
    let outer = inner + cn * cn;
    let target = Quaternion::complex(d0, outer.sqrt());
    let y1 = solve_similarity(target, m.d.conj(), CLAIM_ABORT_TOL)?;
    let y = Mat2H::diag(y1, y1);

    let (ri, ro) = (inner.sqrt(), outer.sqrt());
    let k = (1.0 / (2.0 - 2.0 * d0 * d0 + 2.0 * ri * ro)).sqrt();
    let alpha = Quaternion::real(k * (ri + ro));
    let off = Quaternion::complex(0.0, k * cn);
    let z = Mat2H::new(alpha, -off, off, alpha);

    let root = unit_root(d0);
    let d = Mat2H::diag(Quaternion::complex(d0, root), Quaternion::complex(d0, -root));
    DiagonalizationResult::finish(z * y * x, t, d, DiagCase::Case2, None)
}

/// One row `[x, −x·w]` of the conjugator for the spectral value `sigma`.
struct Row {
    x: Quaternion,
    w: Quaternion,
    p_gap: f64,
    mismatch: f64,
}

fn row_for(m: &Mat2H, sigma: Quaternion) -> Result<Row> {
    let e = m.b - m.c.conj();
    let en2 = e.norm_sqr();
    let p = m.c.conj() * (2.0 * sigma.re()) - m.b * m.d.conj() - m.c.conj() * m.d;
    let u = -(e * p.conj()) / en2;
    let mismatch = (sigma.re() - u.re()).abs().max((sigma.norm() - u.norm()).abs());
    let x = solve_similarity(sigma, u, CLAIM_ABORT_TOL)?;
    let w = (e * p.inv()? + m.a) * m.c.inv()?;
    Ok(Row {
        x,
        w,
        p_gap: (p.norm() - en2.sqrt()).abs() / en2.sqrt(),
        mismatch,
    })
}

fn check(claim: &'static str, residual: f64) -> Result<()> {
    if residual > CLAIM_ABORT_TOL || !residual.is_finite() {
        Err(Error::AssertionFailure { claim, residual })
    } else {
        Ok(())
    }
}

/// `b ≠ c̄`, both nonzero, `Δ < 0`.
///
/// Row 1 holds the value whose ratio `w` has modulus below 1 and is scaled
/// to J-norm `+1`; row 2 holds the other value, scaled to J-norm `−1`. The
/// value with the larger real part goes first exactly when `a₀ > d₀`.
pub fn case3_transform(t: &GroupElement) -> Result<DiagonalizationResult> {
    let m = t.matrix();
    if entry_pattern(&m, CLASS_EPS)? != EntryPattern::Compound {
        return Err(Error::CaseMismatch("case 3 needs b != conj(c), both nonzero"));
    }
    let dl = delta(&m);
    if dl >= -CLASS_EPS {
        return Err(Error::CaseMismatch("case 3 needs delta < 0"));
    }
    let (a0, d0) = (m.a.re(), m.d.re());
    if (a0 - d0).abs() <= CLASS_EPS {
        return Err(Error::CaseMismatch("case 3 cannot have a0 = d0"));
    }

    let root = (-dl).sqrt();
    let s0 = 0.5 * (a0 + d0 + root);
    let s0p = 0.5 * (a0 + d0 - root);
    let s = Quaternion::complex(s0, unit_root(s0));
    let sp = Quaternion::complex(s0p, unit_root(s0p));
    let (first, second) = if a0 > d0 { (s, sp) } else { (sp, s) };

    let r1 = row_for(&m, first)?;
    let r2 = row_for(&m, second)?;
    let (n1, n2) = (r1.w.norm(), r2.w.norm());
    check("|w| < 1 for row 1", (n1 - 1.0).max(0.0))?;
    check("|w'| > 1 for row 2", (1.0 - n2).max(0.0))?;
    if n1 >= 1.0 || n2 <= 1.0 {
        return Err(Error::AssertionFailure {
            claim: "row ratios straddle the unit sphere",
            residual: (n1 - 1.0).max(1.0 - n2),
        });
    }

    let x1 = r1.x / (1.0 - n1 * n1).sqrt();
    let x2 = -(x1 * r1.w);
    let x3 = r2.x / (n2 * n2 - 1.0).sqrt();
    let x4 = -(x3 * r2.w);

    let reciprocity = (r1.w * r2.w.conj() - Quaternion::ONE).norm();
    let scale = x1.norm_sqr().max(1.0);
    let row_relations = [
        (x1.norm() - x4.norm()).abs() / x1.norm().max(1.0),
        (x1 * x3.conj() - x2 * x4.conj()).norm() / scale,
        (x1.conj() * x2 - x3.conj() * x4).norm() / scale,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let claims = ClaimDiagnostics {
        w_row1: n1,
        w_row2: n2,
        reciprocity,
        p_modulus: r1.p_gap.max(r2.p_gap),
        row_relations,
        similarity_mismatch: r1.mismatch.max(r2.mismatch),
    };
    check("|p| = |b - conj(c)|", claims.p_modulus)?;
    check("w conj(w') = 1", claims.reciprocity)?;
    check("row relations", claims.row_relations)?;

    let x = Mat2H::new(x1, x2, x3, x4);
    DiagonalizationResult::finish(x, t, Mat2H::diag(first, second), DiagCase::Case3, Some(claims))
}
