//! Right, S- and left spectra of 2×2 quaternionic matrices.
//!
//! Right spectra are unions of whole similarity classes, so they are reported
//! as [`SpectralSphere`]s `{s : Re s = re, |s| = modulus}`. Left spectra are
//! not similarity invariant and are reported as isolated points plus affine
//! 2-sphere families.

mod left;
mod poly;
mod right;

use serde::Serialize;

pub use left::{left_eigenvalues, LeftSpectrumDescription, SphereFamily, LEFT_SINGULAR_TOL};
pub use right::{right_spectrum, right_spectrum_casewise, right_spectrum_casewise_eps, right_spectrum_oracle};

use crate::error::Result;
use crate::group::GroupElement;
use crate::mat2h::Mat2H;
use crate::quaternion::Quaternion;

/// Default agreement tolerance between spectrum routes.
pub const SPECTRUM_TOL: f64 = 1e-7;

/// Spheres closer than this (in both parameters) are reported once.
pub const SPHERE_MERGE_TOL: f64 = 1e-10;

/// The similarity class `{s ∈ ℍ : Re s = re, |s| = modulus}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSphere {
    pub re: f64,
    pub modulus: f64,
}

impl SpectralSphere {
    pub fn new(re: f64, modulus: f64) -> Self {
        Self { re, modulus }
    }

    /// Radius of the imaginary part, `√(modulus² − re²)` clamped at zero.
    pub fn im_radius(&self) -> f64 {
        (self.modulus * self.modulus - self.re * self.re).max(0.0).sqrt()
    }

    /// True when the class is the single real point `re`.
    pub fn is_degenerate(&self) -> bool {
        (self.modulus - self.re.abs()).abs() <= 1e-12
    }

    /// Canonical representative `re + i·√(modulus² − re²)`.
    pub fn representative(&self) -> Quaternion {
        Quaternion::complex(self.re, self.im_radius())
    }

    /// The point `re + axis·√(modulus² − re²)` for a unit imaginary `axis`.
    pub fn point(&self, axis: Quaternion) -> Quaternion {
        Quaternion::real(self.re) + axis * self.im_radius()
    }

    pub fn of(q: Quaternion) -> Self {
        Self::new(q.re(), q.norm())
    }

    /// Max-norm distance on the `(re, modulus)` parameters.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.re - other.re).abs().max((self.modulus - other.modulus).abs())
    }
}

/// One or two spectral spheres, sorted by `re` then `modulus`, both descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RightSpectrum {
    pub spheres: Vec<SpectralSphere>,
}

impl RightSpectrum {
    /// Sorts and merges spheres that coincide within `merge_tol`.
    pub fn from_spheres(mut spheres: Vec<SpectralSphere>, merge_tol: f64) -> Self {
        spheres.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.modulus.total_cmp(&x.modulus)));
        let mut out: Vec<(SpectralSphere, usize)> = Vec::with_capacity(spheres.len());
        for s in spheres {
            match out.iter_mut().find(|(o, _)| o.distance(&s) <= merge_tol) {
                Some((o, n)) => {
                    let k = *n as f64;
                    o.re = (o.re * k + s.re) / (k + 1.0);
                    o.modulus = (o.modulus * k + s.modulus) / (k + 1.0);
                    *n += 1;
                }
                None => out.push((s, 1)),
            }
        }
        Self {
            spheres: out.into_iter().map(|(s, _)| s).collect(),
        }
    }

    /// Hausdorff distance between the two sphere sets in `(re, modulus)`.
    pub fn distance(&self, other: &Self) -> f64 {
        let one_way = |a: &Self, b: &Self| {
            a.spheres
                .iter()
                .map(|s| {
                    b.spheres
                        .iter()
                        .map(|t| s.distance(t))
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max)
        };
        one_way(self, other).max(one_way(other, self))
    }

    /// Similarity data of `sⁿ` for the representative `s` of every sphere.
    pub fn powered(&self, n: u32) -> Self {
        let spheres = self
            .spheres
            .iter()
            .map(|s| SpectralSphere::of(s.representative().pow(n)))
            .collect();
        Self::from_spheres(spheres, SPHERE_MERGE_TOL)
    }

    /// Whether `q` lies on one of the spheres within `tol`.
    pub fn contains(&self, q: Quaternion, tol: f64) -> bool {
        let probe = SpectralSphere::of(q);
        self.spheres.iter().any(|s| s.distance(&probe) <= tol)
    }
}

/// The S-spectrum, which coincides with the right spectrum for matrices.
pub fn s_spectrum(t: &GroupElement) -> Result<RightSpectrum> {
    right_spectrum(t)
}

/// `s` is an S-spectral point iff `T² − 2·Re(s)·T + |s|²·I₂` is singular.
pub fn verify_s_point(t: &Mat2H, s: Quaternion, tol: f64) -> bool {
    characteristic_operator(t, s).is_singular(tol)
}

/// `T² − 2·Re(s)·T + |s|²·I₂`.
pub fn characteristic_operator(t: &Mat2H, s: Quaternion) -> Mat2H {
    *t * *t - t.scale(2.0 * s.re()) + Mat2H::IDENTITY.scale(s.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugate, Sampler, MEMBERSHIP_TOL};
    use crate::moebius::ALL_CLASSES;

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

    fn spheres(s: &RightSpectrum) -> Vec<(f64, f64)> {
        s.spheres.iter().map(|s| (s.re, s.modulus)).collect()
    }

    fn assert_spheres(s: &RightSpectrum, expected: &[(f64, f64)], tol: f64) {
        let got = spheres(s);
        assert_eq!(got.len(), expected.len(), "{got:?} vs {expected:?}");
        for (g, e) in got.iter().zip(expected) {
            assert!((g.0 - e.0).abs() <= tol && (g.1 - e.1).abs() <= tol, "{got:?} vs {expected:?}");
        }
    }

    #[test]
    fn unified_examples() {
        assert_spheres(&right_spectrum(&GroupElement::IDENTITY).unwrap(), &[(1.0, 1.0)], 0.0);
        assert!(right_spectrum(&GroupElement::IDENTITY).unwrap().spheres[0].is_degenerate());
        assert_spheres(&right_spectrum(&example()).unwrap(), &[(1.0, 1.0), (0.0, 1.0)], 1e-12);
        let r = 2f64.sqrt();
        assert_spheres(
            &right_spectrum(&lox()).unwrap(),
            &[(r + 1.0, r + 1.0), (r - 1.0, r - 1.0)],
            1e-12,
        );
    }

    #[test]
    fn casewise_examples() {
        let d = member(Mat2H::diag(Quaternion::I, Quaternion::J));
        assert_spheres(&right_spectrum_casewise(&d).unwrap(), &[(0.0, 1.0)], 0.0);
        let d = member(Mat2H::diag(Quaternion::new(0.6, 0.8, 0.0, 0.0), Quaternion::J));
        assert_spheres(&right_spectrum_casewise(&d).unwrap(), &[(0.6, 1.0), (0.0, 1.0)], 0.0);
        let e = example();
        let c = right_spectrum_casewise(&e).unwrap();
        assert!(c.distance(&right_spectrum(&e).unwrap()) <= 1e-12);
    }

    #[test]
    fn oracle_examples() {
        assert_spheres(&right_spectrum_oracle(&Mat2H::IDENTITY), &[(1.0, 1.0)], 1e-12);
        let d = Mat2H::diag(Quaternion::I, Quaternion::J);
        assert_spheres(&right_spectrum_oracle(&d), &[(0.0, 1.0)], 1e-12);
        assert_spheres(&right_spectrum_oracle(&example()), &[(1.0, 1.0), (0.0, 1.0)], 1e-12);
        let r = 2f64.sqrt();
        assert_spheres(
            &right_spectrum_oracle(&lox()),
            &[(r + 1.0, r + 1.0), (r - 1.0, r - 1.0)],
            1e-12,
        );
    }

    #[test]
    fn s_spectrum_is_right_spectrum() {
        assert_spheres(&s_spectrum(&GroupElement::IDENTITY).unwrap(), &[(1.0, 1.0)], 0.0);
        assert_spheres(&s_spectrum(&example()).unwrap(), &[(1.0, 1.0), (0.0, 1.0)], 1e-12);
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            let t = s.element();
            let sp = s_spectrum(&t).unwrap();
            assert_eq!(sp, right_spectrum(&t).unwrap());
            for sphere in &sp.spheres {
                assert!(verify_s_point(&t, sphere.representative(), 1e-7));
            }
        }
    }

    #[test]
    fn s_points() {
        assert!(verify_s_point(&Mat2H::IDENTITY, Quaternion::ONE, 1e-7));
        assert!(verify_s_point(&example(), Quaternion::I, 1e-7));
        assert!(!verify_s_point(&example(), Quaternion::real(0.5), 1e-7));
        // σ_min of the characteristic operator at s = ½
        let smin = characteristic_operator(&example(), Quaternion::real(0.5)).min_singular_value();
        assert!(smin > 0.05, "{smin}");
    }

    #[test]
    fn three_routes_agree_across_classes() {
        let mut s = Sampler::new(21);
        for class in ALL_CLASSES {
            for _ in 0..40 {
                let t = s.sample(Some(class)).unwrap();
                let unified = right_spectrum(&t).unwrap();
                let casewise = right_spectrum_casewise(&t).unwrap();
                let oracle = right_spectrum_oracle(&t);
                assert!(unified.distance(&casewise) <= 1e-8, "{class}: {unified:?} {casewise:?}");
                assert!(unified.distance(&oracle) <= SPECTRUM_TOL, "{class}: {unified:?} {oracle:?}");
            }
        }
    }

    #[test]
    fn spectrum_is_similarity_invariant() {
        let mut s = Sampler::new(22);
        for _ in 0..100 {
            let (t, g) = (s.element(), s.element());
            let c = conjugate(&t, &g, MEMBERSHIP_TOL).unwrap();
            let d = right_spectrum(&c).unwrap().distance(&right_spectrum(&t).unwrap());
            assert!(d <= SPECTRUM_TOL, "{d}");
        }
    }

    #[test]
    fn power_law() {
        let mut s = Sampler::new(23);
        for _ in 0..100 {
            let t = s.element();
            let base = right_spectrum(&t).unwrap();
            for n in [2, 3] {
                let tn = t.pow(n, 1e-6).unwrap();
                let d = right_spectrum(&tn).unwrap().distance(&base.powered(n));
                assert!(d <= SPECTRUM_TOL, "n={n}: {d}");
            }
        }
    }

    #[test]
    fn merging_and_sorting() {
        let s = RightSpectrum::from_spheres(
            vec![
                SpectralSphere::new(0.0, 1.0),
                SpectralSphere::new(0.5, 1.0),
                SpectralSphere::new(0.0, 1.0 + 1e-12),
            ],
            SPHERE_MERGE_TOL,
        );
        assert_eq!(s.spheres.len(), 2);
        assert_eq!(s.spheres[0].re, 0.5);
        let q = Quaternion::new(0.0, 0.0, 0.6, 0.8);
        assert!(s.contains(q, 1e-9));
    }
}
