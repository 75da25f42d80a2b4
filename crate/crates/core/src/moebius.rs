//! Quaternionic Möbius transformations `g_T(z) = (az + b)(cz + d)⁻¹` of the
//! unit ball and their six-way classification.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::invariants::delta;
use crate::mat2h::Mat2H;
use crate::quaternion::Quaternion;

/// Dispatch tolerance for the case tests `b = c̄`, `Δ = 0`, `d₀² = 1`.
pub const CLASS_EPS: f64 = 1e-10;

const POLE_TOL: f64 = 1e-14;
const BALL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoebiusClass {
    SimpleElliptic,
    CompoundElliptic,
    SimpleParabolic,
    CompoundParabolic,
    SimpleLoxodromic,
    CompoundLoxodromic,
}

pub const ALL_CLASSES: [MoebiusClass; 6] = [
    MoebiusClass::SimpleElliptic,
    MoebiusClass::CompoundElliptic,
    MoebiusClass::SimpleParabolic,
    MoebiusClass::CompoundParabolic,
    MoebiusClass::SimpleLoxodromic,
    MoebiusClass::CompoundLoxodromic,
];

/// Elliptic / parabolic / loxodromic, forgetting simple vs compound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoarseClass {
    Elliptic,
    Parabolic,
    Loxodromic,
}

impl MoebiusClass {
    pub fn coarse(self) -> CoarseClass {
        use MoebiusClass::*;
        match self {
            SimpleElliptic | CompoundElliptic => CoarseClass::Elliptic,
            SimpleParabolic | CompoundParabolic => CoarseClass::Parabolic,
            SimpleLoxodromic | CompoundLoxodromic => CoarseClass::Loxodromic,
        }
    }

    pub fn is_simple(self) -> bool {
        use MoebiusClass::*;
        matches!(self, SimpleElliptic | SimpleParabolic | SimpleLoxodromic)
    }

    pub fn name(self) -> &'static str {
        use MoebiusClass::*;
        match self {
            SimpleElliptic => "SimpleElliptic",
            CompoundElliptic => "CompoundElliptic",
            SimpleParabolic => "SimpleParabolic",
            CompoundParabolic => "CompoundParabolic",
            SimpleLoxodromic => "SimpleLoxodromic",
            CompoundLoxodromic => "CompoundLoxodromic",
        }
    }
}

impl fmt::Display for MoebiusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoebiusClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key = s.replace(['-', '_'], "").to_ascii_lowercase();
        ALL_CLASSES
            .into_iter()
            .find(|c| c.name().to_ascii_lowercase() == key)
            .ok_or_else(|| format!("unknown Moebius class `{s}`"))
    }
}

/// Which of the three entry patterns the dispatch selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EntryPattern {
    /// `b = c̄ = 0`
    Diagonal,
    /// `b = c̄ ≠ 0`
    Simple,
    /// `b ≠ c̄`, both nonzero
    Compound,
}

/// The quantities the classifier looked at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassEvidence {
    pub class: MoebiusClass,
    pub pattern: EntryPattern,
    pub delta: f64,
    pub a0: f64,
    pub d0: f64,
    pub b_minus_cbar: f64,
}

/// Entry-pattern dispatch shared by the classifier, the casewise spectrum
/// and the diagonalizer.
pub(crate) fn entry_pattern(m: &Mat2H, eps: f64) -> Result<EntryPattern> {
    let scale = eps * (1.0 + m.frobenius());
    let (bn, cn) = (m.b.norm(), m.c.norm());
    if bn + cn <= scale {
        return Ok(EntryPattern::Diagonal);
    }
    if bn <= scale || cn <= scale {
        return Err(Error::InvalidMember);
    }
    if (m.b - m.c.conj()).norm() <= scale {
        Ok(EntryPattern::Simple)
    } else {
        Ok(EntryPattern::Compound)
    }
}

pub fn classify_with_evidence(t: &GroupElement, eps: f64) -> Result<ClassEvidence> {
    use MoebiusClass::*;
    let m = t.matrix();
    let pattern = entry_pattern(&m, eps)?;
    let (a0, d0) = (m.a.re(), m.d.re());
    let delta = delta(&m);
    let class = match pattern {
        EntryPattern::Diagonal if (a0 - d0).abs() <= eps => SimpleElliptic,
        EntryPattern::Diagonal => CompoundElliptic,
        EntryPattern::Simple => {
            let gap = d0 * d0 - 1.0;
            if gap.abs() <= eps {
                SimpleParabolic
            } else if gap < 0.0 {
                SimpleElliptic
            } else {
                SimpleLoxodromic
            }
        }
        EntryPattern::Compound => {
            if delta.abs() <= eps {
                CompoundParabolic
            } else if delta < 0.0 {
                CompoundElliptic
            } else {
                CompoundLoxodromic
            }
        }
    };
    Ok(ClassEvidence {
        class,
        pattern,
        delta,
        a0,
        d0,
        b_minus_cbar: (m.b - m.c.conj()).norm(),
    })
}

pub fn classify_eps(t: &GroupElement, eps: f64) -> Result<MoebiusClass> {
    classify_with_evidence(t, eps).map(|e| e.class)
}

pub fn classify(t: &GroupElement) -> Result<MoebiusClass> {
    classify_eps(t, CLASS_EPS)
}

pub fn is_elliptic(t: &GroupElement) -> bool {
    classify(t).is_ok_and(|c| c.coarse() == CoarseClass::Elliptic)
}

/// `g_T(z) = (az + b)(cz + d)⁻¹` for `|z| < 1`.
pub fn apply(t: &GroupElement, z: Quaternion) -> Result<Quaternion> {
    let m = t.matrix();
    let den = m.c * z + m.d;
    let modulus = den.norm();
    if modulus <= POLE_TOL {
        return Err(Error::PoleHit { modulus });
    }
    let w = (m.a * z + m.b) * den.inv()?;
    let r = w.norm();
    if r.is_nan() || r >= 1.0 + BALL_SLACK {
        return Err(Error::BallEscape { modulus: r });
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugate, Sampler, MEMBERSHIP_TOL};

    fn member(m: Mat2H) -> GroupElement {
        GroupElement::new(m, MEMBERSHIP_TOL).unwrap()
    }

    fn example() -> GroupElement {
        let r = 2f64.sqrt();
        member(Mat2H::new(
            Quaternion::complex(2.0, 1.0),
            Quaternion::complex(-r, r),
            Quaternion::complex(-r, r),
            Quaternion::complex(-1.0, -2.0),
        ))
    }

    fn lox() -> GroupElement {
        let r = 2f64.sqrt();
        member(Mat2H::new(Quaternion::real(r), Quaternion::I, -Quaternion::I, Quaternion::real(r)))
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&GroupElement::IDENTITY), Ok(MoebiusClass::SimpleElliptic));
        assert_eq!(classify(&lox()), Ok(MoebiusClass::SimpleLoxodromic));
        assert_eq!(classify(&example()), Ok(MoebiusClass::CompoundElliptic));
        let d = member(Mat2H::diag(Quaternion::I, Quaternion::new(0.6, 0.8, 0.0, 0.0)));
        assert_eq!(classify(&d), Ok(MoebiusClass::CompoundElliptic));
    }

    #[test]
    fn elliptic_predicate() {
        assert!(is_elliptic(&member(Mat2H::diag(Quaternion::I, Quaternion::J))));
        assert!(!is_elliptic(&lox()));
        assert!(is_elliptic(&example()));
    }

    #[test]
    fn evidence_reports_dispatch_inputs() {
        let e = classify_with_evidence(&example(), CLASS_EPS).unwrap();
        assert_eq!(e.pattern, EntryPattern::Compound);
        assert!((e.delta + 1.0).abs() < 1e-12);
        assert!((e.d0 + 1.0).abs() < 1e-15);
        assert!((e.b_minus_cbar - 8f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn apply_examples() {
        let z = Quaternion::new(0.1, -0.2, 0.3, 0.05);
        assert_eq!(apply(&GroupElement::IDENTITY, z).unwrap(), z);
        let d = member(Mat2H::diag(Quaternion::J, Quaternion::new(0.6, 0.0, 0.0, 0.8)));
        assert_eq!(apply(&d, Quaternion::ZERO).unwrap(), Quaternion::ZERO);
        let w = apply(&lox(), Quaternion::ZERO).unwrap();
        assert!((w - Quaternion::I / 2f64.sqrt()).norm() < 1e-15);
        assert!(w.norm() < 1.0);
    }

    #[test]
    fn apply_is_a_homomorphism_with_sign_kernel() {
        let mut s = Sampler::new(11);
        for _ in 0..200 {
            let (t, g) = (s.element(), s.element());
            let z = s.unit_quaternion() * s.uniform(0.0, 0.95);
            let tg = t.compose(&g, 1e-8).unwrap();
            let lhs = apply(&tg, z).unwrap();
            let rhs = apply(&t, apply(&g, z).unwrap()).unwrap();
            assert!((lhs - rhs).norm() <= 1e-9);
            let neg = member(-t.matrix());
            assert_eq!(apply(&neg, z).unwrap(), apply(&t, z).unwrap());
        }
    }

    #[test]
    fn class_names_round_trip() {
        for c in ALL_CLASSES {
            assert_eq!(c.name().parse::<MoebiusClass>(), Ok(c));
        }
        assert_eq!("simple-parabolic".parse(), Ok(MoebiusClass::SimpleParabolic));
        assert!("hyperbolic".parse::<MoebiusClass>().is_err());
    }

    #[test]
    fn coarse_class_survives_conjugation() {
        let mut s = Sampler::new(5);
        for class in ALL_CLASSES {
            for _ in 0..30 {
                let t = s.sample(Some(class)).unwrap();
                let g = s.element();
                let c = conjugate(&t, &g, MEMBERSHIP_TOL).unwrap();
                assert_eq!(classify(&c).unwrap().coarse(), class.coarse());
            }
        }
    }
}
