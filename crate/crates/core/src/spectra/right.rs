use num_complex::Complex64;

use super::{RightSpectrum, SpectralSphere, SPHERE_MERGE_TOL};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::invariants::delta;
use crate::mat2h::Mat2H;
use crate::moebius::{entry_pattern, EntryPattern, CLASS_EPS};

/// Radicands down to this (relative) size are treated as roundoff and clamped.
const RADICAND_CLAMP: f64 = 1e-9;

/// The oracle merges spheres this close. A perturbed Jordan block splits by
/// about `√ε·‖M‖`, so the threshold grows with the input's scale.
const ORACLE_MERGE_TOL: f64 = 1e-6;

fn oracle_merge_tol(m: &Mat2H) -> f64 {
    ORACLE_MERGE_TOL.max(4.0 * f64::EPSILON.sqrt() * (1.0 + m.frobenius()))
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn root(value: f64, scale: f64, context: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value.sqrt())
    } else if value >= -RADICAND_CLAMP * (1.0 + scale) {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand { context, value })
    }
}

/// The two loxodromic-type spheres from the trace datum `sum = a₀ + d₀`
/// (or its casewise substitute) and `Δ`.
///
/// The larger real part goes with the larger modulus when `sum ≥ 0` and with
/// the smaller modulus otherwise, so that `modulus ≥ |re|` always holds.
fn spheres_from(sum: f64, delta: f64) -> Result<Vec<SpectralSphere>> {
    let a = sum * sum;
    let scale = a + delta.abs() + 4.0;
    let inner = root((a + delta - 4.0).powi(2) + 8.0 * delta * (sgn(delta) + 1.0), scale * scale, "X'")?;
    let mut x = (a + delta + inner) / 4.0;
    if (x - 1.0).abs() <= 2.0 * CLASS_EPS {
        x = 1.0;
    }
    let spread = root(2.0 * x - 2.0 - delta, scale, "real part")?;
    let split = root(x * x - 1.0, x * x, "modulus")?;
    let sign = if sum < 0.0 { -1.0 } else { 1.0 };
    let hi = SpectralSphere::new(0.5 * (sum + sign * spread), (x + split).sqrt());
    let lo = SpectralSphere::new(0.5 * (sum - sign * spread), (x - split).max(0.0).sqrt());
    Ok(vec![hi, lo])
}

/// Right spectrum from the closed form in `a₀ + d₀` and `Δ`.
///
/// `|Δ| ≤ CLASS_EPS` is read as `Δ = 0`, matching the parabolic tie-break of
/// the classifier.
pub fn right_spectrum(t: &GroupElement) -> Result<RightSpectrum> {
    let m = t.matrix();
    let mut dl = delta(&m);
    if dl.abs() <= CLASS_EPS {
        dl = 0.0;
    }
    let spheres = spheres_from(m.a.re() + m.d.re(), dl)?;
    Ok(RightSpectrum::from_spheres(spheres, SPHERE_MERGE_TOL))
}

pub fn right_spectrum_casewise(t: &GroupElement) -> Result<RightSpectrum> {
    right_spectrum_casewise_eps(t, CLASS_EPS)
}

/// Right spectrum dispatched on the entry pattern, one formula per case.
pub fn right_spectrum_casewise_eps(t: &GroupElement, eps: f64) -> Result<RightSpectrum> {
    let m = t.matrix();
    let (a0, d0) = (m.a.re(), m.d.re());
    let spheres = match entry_pattern(&m, eps)? {
        EntryPattern::Diagonal => vec![SpectralSphere::new(a0, 1.0), SpectralSphere::new(d0, 1.0)],
        EntryPattern::Simple => {
            let gap = d0 * d0 - 1.0;
            if gap.abs() <= eps {
                vec![SpectralSphere::new(d0, d0.abs())]
            } else if gap < 0.0 {
                vec![SpectralSphere::new(d0, 1.0)]
            } else {
                let r = gap.sqrt();
                vec![
                    SpectralSphere::new(d0 + r, (d0 + r).abs()),
                    SpectralSphere::new(d0 - r, (d0 - r).abs()),
                ]
            }
        }
        EntryPattern::Compound => {
            // Re(c̄⁻¹ b d̄ + d) equals a₀ + d₀ on the group.
            let sum = (m.c.conj().inv()? * m.b * m.d.conj() + m.d).re();
            let dl = delta(&m);
            if dl.abs() <= eps {
                vec![SpectralSphere::new(sum / 2.0, 1.0)]
            } else if dl < 0.0 {
                let r = (-dl).sqrt();
                vec![
                    SpectralSphere::new(0.5 * (sum + r), 1.0),
                    SpectralSphere::new(0.5 * (sum - r), 1.0),
                ]
            } else {
                spheres_from(sum, dl)?
            }
        }
    };
    Ok(RightSpectrum::from_spheres(spheres, SPHERE_MERGE_TOL))
}

/// Independent route through the complex 4×4 image: the eigenvalues of
/// `chi(M)` come in conjugate pairs, one pair per spectral sphere.
pub fn right_spectrum_oracle(m: &Mat2H) -> RightSpectrum {
    let ev = m.chi().eigenvalues();
    let matchings = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    let cost = |p: &[(usize, usize); 2]| -> f64 {
        p.iter().map(|&(i, j)| (ev[i] - ev[j].conj()).norm()).sum()
    };
    let best = matchings
        .iter()
        .min_by(|x, y| cost(x).total_cmp(&cost(y)))
        .expect("three matchings");
    let sphere = |(i, j): (usize, usize)| {
        let (x, y): (Complex64, Complex64) = (ev[i], ev[j]);
        SpectralSphere::new(0.5 * (x.re + y.re), 0.5 * (x.norm() + y.norm()))
    };
    RightSpectrum::from_spheres(best.iter().map(|&p| sphere(p)).collect(), oracle_merge_tol(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;

    #[test]
    fn negative_trace_pairs_large_modulus_with_large_magnitude() {
        let r = 2f64.sqrt();
        let m = Mat2H::new(Quaternion::real(-r), Quaternion::I, -Quaternion::I, Quaternion::real(-r));
        let t = GroupElement::new(m, 1e-9).unwrap();
        let s = right_spectrum(&t).unwrap();
        for sphere in &s.spheres {
            assert!(sphere.modulus + 1e-12 >= sphere.re.abs(), "{s:?}");
        }
        assert!(s.distance(&right_spectrum_oracle(&m)) < 1e-12);
    }

    #[test]
    fn radicand_clamping() {
        assert_eq!(root(-1e-12, 1.0, "x"), Ok(0.0));
        assert!(matches!(root(-1e-3, 1.0, "x"), Err(Error::NegativeRadicand { .. })));
        assert_eq!(sgn(0.0), 0.0);
    }
}
