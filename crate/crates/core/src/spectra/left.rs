//! Left eigenvalues `T v = λ v`.
//!
//! With `b ≠ 0` an eigenvector can be normalized to `v = (1, q)`, which gives
//! `λ = a + b q` where `q` solves the one-sided quadratic
//! `q² + B q + C = 0`, `B = b⁻¹(a − d)`, `C = −b⁻¹ c`.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::Serialize;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::mat2h::Mat2H;
use crate::quaternion::Quaternion;

/// Singularity tolerance used when checking `T − λI` for a left eigenvalue.
pub const LEFT_SINGULAR_TOL: f64 = 1e-7;

const ROOT_RESIDUAL_TOL: f64 = 1e-9;
const PARALLEL_TOL: f64 = 1e-10;

/// The 2-sphere `{α + β u : u² = −1}`: centre `α`, radius `|β|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereFamily {
    pub alpha: Quaternion,
    pub beta: Quaternion,
    pub radius: f64,
}

impl SphereFamily {
    pub fn new(alpha: Quaternion, beta: Quaternion) -> Self {
        Self {
            alpha,
            beta,
            radius: beta.norm(),
        }
    }

    /// `α + β u` for a unit imaginary `u`.
    pub fn point(&self, u: Quaternion) -> Quaternion {
        self.alpha + self.beta * u
    }

    pub fn contains(&self, lambda: Quaternion, tol: f64) -> bool {
        match self.beta.inv() {
            Ok(bi) => {
                let u = bi * (lambda - self.alpha);
                u.re().abs() <= tol && (u.norm() - 1.0).abs() <= tol
            }
            Err(_) => (lambda - self.alpha).norm() <= tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeftSpectrumDescription {
    pub points: Vec<Quaternion>,
    pub sphere_families: Vec<SphereFamily>,
}

impl LeftSpectrumDescription {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.sphere_families.is_empty()
    }
}

fn quadratic(q: Quaternion, b: Quaternion, c: Quaternion) -> Quaternion {
    q * q + b * q + c
}

fn residual_scale(q: Quaternion, b: Quaternion, c: Quaternion) -> f64 {
    1.0 + q.norm_sqr() + b.norm() * q.norm() + c.norm()
}

fn as_vec(q: Quaternion) -> Vector4<f64> {
    Vector4::new(q.w, q.x, q.y, q.z)
}

/// Newton iteration on `f(q) = q² + Bq + C` in ℝ⁴; keeps the best iterate.
fn polish(mut q: Quaternion, b: Quaternion, c: Quaternion) -> Quaternion {
    let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let mut best = quadratic(q, b, c).norm();
    for _ in 0..6 {
        if best == 0.0 {
            break;
        }
        let mut jac = Matrix4::<f64>::zeros();
        for (k, h) in basis.iter().enumerate() {
            jac.set_column(k, &as_vec(q * *h + *h * q + b * *h));
        }
        let Some(step) = jac.lu().solve(&as_vec(quadratic(q, b, c))) else {
            break;
        };
        let next = q - Quaternion::new(step[0], step[1], step[2], step[3]);
        let r = quadratic(next, b, c).norm();
        if r.is_nan() || r >= best {
            break;
        }
        q = next;
        best = r;
    }
    q
}

fn cross(u: [f64; 3], v: [f64; 3]) -> [f64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn dot(u: [f64; 3], v: [f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn norm3(u: [f64; 3]) -> f64 {
    dot(u, u).sqrt()
}

enum Roots {
    Points(Vec<Quaternion>),
    /// `q = centre + radius·u` over unit imaginary `u`.
    Sphere { centre: f64, radius: f64 },
}

/// Solves `q² + Bq + C = 0` over ℍ.
fn solve_quadratic(b: Quaternion, c: Quaternion) -> Roots {
    let (bv, cv) = (b.vector(), c.vector());
    let (nb, nc) = (norm3(bv), norm3(cv));
    let b_real = nb <= PARALLEL_TOL * (1.0 + b.norm());
    let c_real = nc <= PARALLEL_TOL * (1.0 + c.norm());

    if b_real && c_real {
        let (b0, c0) = (b.re(), c.re());
        let disc = b0 * b0 - 4.0 * c0;
        let tol = 1e-12 * (1.0 + b0 * b0 + c0.abs());
        return if disc < -tol {
            Roots::Sphere {
                centre: -b0 / 2.0,
                radius: (c0 - b0 * b0 / 4.0).sqrt(),
            }
        } else if disc <= tol {
            Roots::Points(vec![Quaternion::real(-b0 / 2.0)])
        } else {
            let r = disc.sqrt();
            Roots::Points(vec![Quaternion::real((-b0 + r) / 2.0), Quaternion::real((-b0 - r) / 2.0)])
        };
    }

    if b_real || c_real || norm3(cross(bv, cv)) <= PARALLEL_TOL * nb * nc {
        // Both coefficients live in one complex slice ℂ_I.
        let axis = if nb >= nc { b.im() / nb } else { c.im() / nc };
        let iv = axis.vector();
        let bz = Complex64::new(b.re(), dot(bv, iv));
        let cz = Complex64::new(c.re(), dot(cv, iv));
        let sq = (bz * bz - 4.0 * cz).sqrt();
        let lift = |z: Complex64| Quaternion::real(z.re) + axis * z.im;
        return Roots::Points(vec![lift((-bz + sq) / 2.0), lift((-bz - sq) / 2.0)]);
    }

    Roots::Points(general_roots(b, c))
}

/// Non-parallel case: eliminate `q⃗` through `μ = 2q₀ + B₀` and solve the
/// resulting degree-8 real polynomial in `μ`.
fn general_roots(b: Quaternion, c: Quaternion) -> Vec<Quaternion> {
    let (b0, c0) = (b.re(), c.re());
    let (bv, cv) = (b.vector(), c.vector());
    let bb = dot(bv, bv);

    let q0 = Poly::linear(-b0 / 2.0, 0.5);
    // r(μ) = −q₀ b⃗ − c⃗
    let r: Vec<Poly> = (0..3)
        .map(|k| q0.scale(-bv[k]).add(&Poly::constant(-cv[k])))
        .collect();
    // b⃗ × r does not depend on μ.
    let bxr = cross(bv, cv.map(|x| -x));
    let b_dot_r = (0..3).fold(Poly::constant(0.0), |acc, k| acc.add(&r[k].scale(bv[k])));
    let mu = Poly::linear(0.0, 1.0);
    let mu2 = mu.mul(&mu);
    let n: Vec<Poly> = (0..3)
        .map(|k| {
            mu2.mul(&r[k])
                .sub(&mu.scale(bxr[k]))
                .add(&b_dot_r.scale(bv[k]))
        })
        .collect();
    let d = mu.mul(&mu2.add(&Poly::constant(bb)));
    let real_part = q0.mul(&q0).add(&q0.scale(b0)).add(&Poly::constant(c0));
    let n_sq = n.iter().fold(Poly::constant(0.0), |acc, p| acc.add(&p.mul(p)));
    let b_dot_n = (0..3).fold(Poly::constant(0.0), |acc, k| acc.add(&n[k].scale(bv[k])));
    let p = real_part.mul(&d).mul(&d).sub(&n_sq).sub(&b_dot_n.mul(&d));

    let mut out = Vec::new();
    for m in p.real_roots(1e-6) {
        let den = d.eval(m);
        if den.abs() <= 1e-13 * (1.0 + m.abs().powi(3)) {
            continue;
        }
        let v = [n[0].eval(m) / den, n[1].eval(m) / den, n[2].eval(m) / den];
        out.push(Quaternion::new((m - b0) / 2.0, v[0], v[1], v[2]));
    }

    // μ = 0: solvable iff b⃗ ⟂ r.
    let q00 = -b0 / 2.0;
    let r0 = [-q00 * bv[0] - cv[0], -q00 * bv[1] - cv[1], -q00 * bv[2] - cv[2]];
    if dot(bv, r0).abs() <= 1e-9 * (1.0 + norm3(bv) * norm3(r0)) {
        let pv = cross(r0, bv).map(|x| x / bb);
        let k = dot(pv, pv) - q00 * q00 - b0 * q00 - c0;
        let disc = bb * bb - 4.0 * bb * k;
        if disc >= 0.0 {
            for s in [1.0, -1.0] {
                let tau = (-bb + s * disc.sqrt()) / (2.0 * bb);
                out.push(Quaternion::new(
                    q00,
                    pv[0] + tau * bv[0],
                    pv[1] + tau * bv[1],
                    pv[2] + tau * bv[2],
                ));
            }
        }
    }
    out
}

fn push_unique(points: &mut Vec<Quaternion>, q: Quaternion) {
    if !points
        .iter()
        .any(|p| (*p - q).norm() <= 1e-9 * (1.0 + q.norm()))
    {
        points.push(q);
    }
}

/// All left eigenvalues of `m`: isolated points plus 2-sphere families.
pub fn left_eigenvalues(m: &Mat2H) -> Result<LeftSpectrumDescription> {
    let mut points = Vec::new();
    let mut sphere_families = Vec::new();

    if m.b.norm() <= 1e-14 * (1.0 + m.frobenius()) {
        push_unique(&mut points, m.a);
        push_unique(&mut points, m.d);
        return Ok(LeftSpectrumDescription {
            points,
            sphere_families,
        });
    }

    let binv = m.b.inv()?;
    let bq = binv * (m.a - m.d);
    let cq = -(binv * m.c);
    match solve_quadratic(bq, cq) {
        Roots::Sphere { centre, radius } => {
            sphere_families.push(SphereFamily::new(m.a + m.b * centre, m.b * radius));
        }
        Roots::Points(cands) => {
            for q in cands {
                if !q.is_finite() {
                    continue;
                }
                let q = polish(q, bq, cq);
                if quadratic(q, bq, cq).norm() <= ROOT_RESIDUAL_TOL * residual_scale(q, bq, cq) {
                    push_unique(&mut points, m.a + m.b * q);
                }
            }
        }
    }

    let out = LeftSpectrumDescription {
        points,
        sphere_families,
    };
    if out.is_empty() {
        return Err(Error::NoRootFound);
    }
    Ok(out)
}
