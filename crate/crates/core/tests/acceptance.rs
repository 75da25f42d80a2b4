//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::process::ExitCode;

use nalgebra::Matrix4;
use num_complex::Complex64;
use u11h::diagonalize::{diagonalize_elliptic, DiagCase};
use u11h::group::{conjugate, is_member, Sampler, TraceZeroKind, MEMBERSHIP_TOL};
use u11h::invariants::{delta, delta_legacy, identity_checks, trace_zero_checks, Identity};
use u11h::moebius::{classify, ALL_CLASSES};
use u11h::spectra::{
    left_eigenvalues, right_spectrum, right_spectrum_casewise, right_spectrum_oracle, verify_s_point,
    SpectralSphere,
};
use u11h::{GroupElement, Mat2H, MoebiusClass, Quaternion};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn member(m: Mat2H) -> GroupElement {
    GroupElement::new(m, MEMBERSHIP_TOL).expect("member")
}

fn worked_example() -> Mat2H {
    let r = 2f64.sqrt();
    Mat2H::new(
        Quaternion::complex(2.0, 1.0),
        Quaternion::complex(-r, r),
        Quaternion::complex(-r, r),
        Quaternion::complex(-1.0, -2.0),
    )
}

/// Smallest singular value of the complex 4×4 image, built here from
/// scratch: `z + w·j ↦ [[z, w], [−w̄, z̄]]` entrywise.
fn sigma_min(m: &Mat2H) -> f64 {
    let mut c = Matrix4::<Complex64>::zeros();
    for (r, row) in [[m.a, m.b], [m.c, m.d]].iter().enumerate() {
        for (k, q) in row.iter().enumerate() {
            let z = Complex64::new(q.w, q.x);
            let w = Complex64::new(q.y, q.z);
            c[(2 * r, 2 * k)] = z;
            c[(2 * r, 2 * k + 1)] = w;
            c[(2 * r + 1, 2 * k)] = -w.conj();
            c[(2 * r + 1, 2 * k + 1)] = z.conj();
        }
    }
    c.singular_values().min()
}

fn frob(m: &Mat2H) -> f64 {
    m.entries().iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
}

fn criterion_1() -> Outcome {
    let m = worked_example();
    let t = member(m);
    let mut notes = Vec::new();
    let mut ok = is_member(&m, MEMBERSHIP_TOL);
    let d = delta(&m);
    ok &= (d + 1.0).abs() <= 1e-12;
    notes.push(format!("delta={d:.3e}"));
    ok &= classify(&t) == Ok(MoebiusClass::CompoundElliptic);
    let spec = right_spectrum(&t).unwrap();
    let want = [(1.0, 1.0), (0.0, 1.0)];
    ok &= spec.spheres.len() == 2
        && spec
            .spheres
            .iter()
            .zip(want)
            .all(|(s, (re, md))| (s.re - re).abs() <= 1e-10 && (s.modulus - md).abs() <= 1e-10);

    let r = 2f64.sqrt();
    let x = Mat2H::new(
        Quaternion::real(r),
        Quaternion::I,
        Quaternion::real(-1.0),
        Quaternion::complex(0.0, -r),
    );
    let given = x * m * x.inverse().unwrap() - Mat2H::diag(Quaternion::ONE, -Quaternion::I);
    ok &= frob(&given) <= 1e-12;
    notes.push(format!("given conjugator residual={:.1e}", frob(&given)));

    match diagonalize_elliptic(&t) {
        Ok(res) => {
            let target = Mat2H::diag(Quaternion::ONE, Quaternion::I);
            ok &= res.residual_conjugation < 1e-9 && frob(&(res.d - target)) <= 1e-9;
            notes.push(format!("own residual={:.1e}", res.residual_conjugation));
        }
        Err(e) => {
            ok = false;
            notes.push(format!("diagonalize failed: {e}"));
        }
    }
    outcome(ok, notes.join(", "))
}

fn criterion_2() -> Outcome {
    let mut worst = [0.0f64; 7];
    let mut legacy_count = 0;
    let ids = &Identity::ALL[..7];
    let tols = [1e-8, 1e-7, 1e-6, 1e-5, 1e-5, 1e-5, 1e-9];
    for k in 0..1000 {
        let t = Sampler::with_stream(SEED, k).element();
        for c in identity_checks(&t) {
            let i = ids.iter().position(|id| *id == c.identity).unwrap();
            worst[i] = worst[i].max(if c.residual.is_nan() { f64::INFINITY } else { c.residual });
        }
        if delta_legacy(&t).is_ok() {
            legacy_count += 1;
        }
    }
    let ok = worst.iter().zip(tols).all(|(w, t)| *w <= t) && legacy_count > 0;
    let detail = ids
        .iter()
        .zip(worst)
        .map(|(id, w)| format!("{}={w:.1e}", id.name()))
        .collect::<Vec<_>>()
        .join(" ");
    outcome(ok, format!("{detail} (legacy on {legacy_count})"))
}

fn criterion_3() -> Outcome {
    let mut s = Sampler::new(SEED + 3);
    let (mut bound, mut simple, mut equality, mut real_d) = (f64::NEG_INFINITY, 0.0f64, 0.0f64, 0);
    let mut ok = true;
    for k in 0..200 {
        let t = s.trace_zero_element(TraceZeroKind::ALL[k % 3]);
        let tr2 = (t.matrix() * t.matrix()).tr();
        bound = bound.max(tr2);
        let checks = trace_zero_checks(&t);
        ok &= checks.len() >= 3;
        for c in checks {
            match c.identity {
                Identity::TraceZeroOffDiagonal | Identity::TraceZeroDiagonal => simple = simple.max(c.residual),
                Identity::TraceZeroEquality => {
                    real_d += 1;
                    equality = equality.max((tr2 - 4.0).abs());
                }
                _ => {}
            }
        }
    }
    ok &= bound <= 4.0 + 1e-8 && simple <= 1e-8 && equality <= 1e-8 && real_d > 0;
    outcome(
        ok,
        format!("max Tr(T^2)={bound:.6}, simple-relation residual={simple:.1e}, real-d samples={real_d} with |Tr(T^2)-4|<={equality:.1e}"),
    )
}

fn criterion_4() -> Outcome {
    let mut s = Sampler::new(SEED + 4);
    let mut worst = 0.0f64;
    let mut elements = Vec::new();
    for k in 0..500 {
        let class = ALL_CLASSES[k % 6];
        let t = match s.sample(Some(class)) {
            Ok(t) => t,
            Err(e) => return outcome(false, format!("sampling {class}: {e}")),
        };
        let unified = match right_spectrum(&t) {
            Ok(u) => u,
            Err(e) => return outcome(false, format!("unified: {e}")),
        };
        let casewise = right_spectrum_casewise(&t).unwrap();
        let oracle = right_spectrum_oracle(&t.matrix());
        worst = worst.max(unified.distance(&casewise)).max(unified.distance(&oracle));
        if k % 25 == 0 {
            elements.push((t, unified));
        }
    }
    let (mut on_fail, mut off_pass) = (0, 0);
    for (t, spec) in &elements {
        for i in 0..100 {
            let sphere = spec.spheres[i % spec.spheres.len()];
            let on = sphere.point(s.unit_imaginary());
            if !verify_s_point(&t.matrix(), on, 1e-7) {
                on_fail += 1;
            }
            let off = loop {
                let delta_re = s.uniform(-0.1, 0.1);
                let delta_mod = s.uniform(-0.1, 0.1);
                let moved = SpectralSphere::new(sphere.re + delta_re, (sphere.modulus + delta_mod).max(sphere.re.abs() + delta_re.abs()));
                let gap = spec.spheres.iter().map(|x| x.distance(&moved)).fold(f64::INFINITY, f64::min);
                if gap >= 0.01 {
                    break moved.point(s.unit_imaginary());
                }
            };
            if verify_s_point(&t.matrix(), off, 1e-7) {
                off_pass += 1;
            }
        }
    }
    outcome(
        worst <= 1e-7 && on_fail == 0 && off_pass == 0,
        format!("max route disagreement={worst:.1e}; S-point checks on {} elements: on-sphere misses={on_fail}, off-sphere hits={off_pass}", elements.len()),
    )
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..200 {
        let t = Sampler::with_stream(SEED + 5, k).element();
        let base = right_spectrum(&t).unwrap();
        for n in [2, 3] {
            let tn = GroupElement::new(t.matrix().pow(n), 1e-6).unwrap();
            worst = worst.max(right_spectrum(&tn).unwrap().distance(&base.powered(n)));
        }
    }
    outcome(worst <= 1e-7, format!("max sphere deviation={worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let r = 2f64.sqrt();
    let t = Mat2H::new(Quaternion::real(r), Quaternion::I, -Quaternion::I, Quaternion::real(r));
    let mut s = Sampler::new(SEED + 6);
    let mut notes = Vec::new();
    let mut ok = true;

    // family (s0 − √2)² + s2² + s3² = 1, s1 = 0
    let left = left_eigenvalues(&t).unwrap();
    ok &= left.points.is_empty() && left.sphere_families.len() == 1;
    if let Some(f) = left.sphere_families.first() {
        let mut eq = 0.0f64;
        let mut sing = 0.0f64;
        for _ in 0..200 {
            let l = f.point(s.unit_imaginary());
            eq = eq.max(l.x.abs()).max(((l.w - r).powi(2) + l.y * l.y + l.z * l.z - 1.0).abs());
            sing = sing.max(sigma_min(&t.shift(l)));
            // and the other way round: a point of the stated set lies in the family
            let (th, ph) = (s.uniform(0.0, std::f64::consts::PI), s.uniform(0.0, std::f64::consts::TAU));
            let p = Quaternion::new(r + th.cos(), 0.0, th.sin() * ph.cos(), th.sin() * ph.sin());
            ok &= f.contains(p, 1e-12);
        }
        ok &= eq <= 1e-12 && sing <= 1e-7;
        notes.push(format!("T family residual={eq:.1e}"));
    }

    let t2 = t * t;
    let left2 = left_eigenvalues(&t2).unwrap();
    match left2.sphere_families.first() {
        Some(f) => {
            ok &= left2.points.is_empty() && (f.alpha - Quaternion::real(3.0)).norm() <= 1e-12;
            ok &= (f.radius * f.radius - 8.0).abs() <= 1e-12;
            notes.push(format!("T^2 centre={} radius^2={:.12}", f.alpha, f.radius * f.radius));
        }
        None => ok = false,
    }

    for (dm, want) in [
        (Mat2H::diag(Quaternion::I, Quaternion::J), [Quaternion::I, Quaternion::J]),
        (Mat2H::diag(Quaternion::I, -Quaternion::J), [Quaternion::I, -Quaternion::J]),
    ] {
        let l = left_eigenvalues(&dm).unwrap();
        ok &= l.points == want && l.sphere_families.is_empty();
    }

    let mut emitted = 0;
    let mut sing = 0.0f64;
    for k in 0..300 {
        let m = if k % 2 == 0 {
            Sampler::with_stream(SEED + 60, k).element().matrix()
        } else {
            let mut g = Sampler::with_stream(SEED + 61, k);
            Mat2H::new(g.unit_quaternion(), g.unit_quaternion(), g.unit_quaternion(), g.unit_quaternion())
        };
        let l = left_eigenvalues(&m).unwrap();
        for p in &l.points {
            emitted += 1;
            sing = sing.max(sigma_min(&m.shift(*p)) / (1.0 + frob(&m)));
        }
    }
    ok &= sing <= 1e-7;
    notes.push(format!("{emitted} emitted eigenvalues, worst scaled sigma_min={sing:.1e}"));
    outcome(ok, notes.join(", "))
}

fn criterion_7() -> Outcome {
    let mut s = Sampler::new(SEED + 7);
    // Case 1, Case 2, Case 3 with a0 > d0, Case 3 with a0 < d0
    let mut counts = [0usize; 4];
    let (mut conj, mut memb, mut diag, mut unit, mut sphere, mut claims) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut order_violations = 0;
    let mut total = 0;
    let mut errors = Vec::new();
    let mut draws = 0;
    while (counts.iter().any(|c| *c < 100) || total < 500) && draws < 20_000 {
        draws += 1;
        let t = match draws % 3 {
            0 => member(Mat2H::diag(s.unit_quaternion(), s.unit_quaternion())),
            1 => s.sample(Some(MoebiusClass::SimpleElliptic)).unwrap(),
            _ => s.sample(Some(MoebiusClass::CompoundElliptic)).unwrap(),
        };
        let m = t.matrix();
        let res = match diagonalize_elliptic(&t) {
            Ok(r) => r,
            Err(e) => {
                errors.push(e.to_string());
                continue;
            }
        };
        let slot = match res.case_used {
            DiagCase::Case1 => 0,
            DiagCase::Case2 => 1,
            DiagCase::Case3 if m.a.re() > m.d.re() => 2,
            DiagCase::Case3 => 3,
        };
        if counts[slot] >= 150 {
            continue;
        }
        counts[slot] += 1;
        total += 1;
        conj = conj.max(res.residual_conjugation);
        memb = memb.max(res.residual_membership);
        diag = diag.max(res.d.b.norm()).max(res.d.c.norm());
        unit = unit.max((res.d.a.norm() - 1.0).abs()).max((res.d.d.norm() - 1.0).abs());
        let spec = right_spectrum(&t).unwrap();
        let on = |q: Quaternion| {
            spec.spheres
                .iter()
                .map(|x| x.distance(&SpectralSphere::of(q)))
                .fold(f64::INFINITY, f64::min)
        };
        sphere = sphere.max(on(res.d.a)).max(on(res.d.d));
        if let Some(c) = res.claims {
            claims = claims.max(c.worst());
        }
        if res.case_used == DiagCase::Case3 && (res.d.a.re() > res.d.d.re()) != (m.a.re() > m.d.re()) {
            order_violations += 1;
        }
    }
    let ok = errors.is_empty()
        && counts.iter().all(|c| *c >= 100)
        && total >= 500
        && conj < 1e-8
        && memb < 1e-8
        && diag <= 1e-9
        && unit <= 1e-9
        && sphere <= 1e-7
        && claims <= 1e-8
        && order_violations == 0;
    outcome(
        ok,
        format!(
            "{total} elements (case1/case2/case3 a0>d0/case3 a0<d0 = {counts:?}); conj={conj:.1e} membership={memb:.1e} offdiag={diag:.1e} unit={unit:.1e} sphere={sphere:.1e} claims={claims:.1e} order violations={order_violations} errors={}",
            errors.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut s = Sampler::new(SEED + 8);
    let (mut changed, mut failed) = (0, 0);
    for k in 0..500 {
        let t = s.sample(Some(ALL_CLASSES[k % 6])).unwrap();
        let g = s.element();
        match conjugate(&t, &g, MEMBERSHIP_TOL).map(|c| classify(&c)) {
            Ok(Ok(c)) if c.coarse() == classify(&t).unwrap().coarse() => {}
            Ok(Ok(_)) => changed += 1,
            _ => failed += 1,
        }
    }
    outcome(changed == 0 && failed == 0, format!("500 pairs: coarse class changed {changed}, conjugation failures {failed}"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("worked elliptic example", criterion_1),
        ("delta identity suite", criterion_2),
        ("trace-zero corollaries", criterion_3),
        ("spectrum triple agreement and S-points", criterion_4),
        ("power-spectrum law", criterion_5),
        ("left-spectrum golden values", criterion_6),
        ("diagonalization properties", criterion_7),
        ("coarse-class conjugation invariance", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let o = f();
        if !o.pass {
            failures += 1;
        }
        println!(
            "{} criterion {} ({name}): {} [{:.2}s]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
