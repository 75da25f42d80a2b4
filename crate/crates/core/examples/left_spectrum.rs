//! Left eigenvalues: isolated points or whole 2-spheres.
//!
//!     cargo run --example left_spectrum

use u11h::group::Sampler;
use u11h::spectra::left_eigenvalues;
use u11h::{Mat2H, Quaternion};

fn show(name: &str, m: &Mat2H) -> u11h::Result<()> {
    let l = left_eigenvalues(m)?;
    println!("{name}:");
    for p in &l.points {
        println!("  point {p}   σ_min(T − λI) = {:.1e}", m.shift(*p).min_singular_value());
    }
    for f in &l.sphere_families {
        println!("  sphere α + βu, α = {}, β = {}, radius {:.6}", f.alpha, f.beta, f.radius);
    }
    Ok(())
}

fn main() -> u11h::Result<()> {
    let r = 2f64.sqrt();
    let boost = Mat2H::new(Quaternion::real(r), Quaternion::I, -Quaternion::I, Quaternion::real(r));
    show("boost", &boost)?;
    show("boost²", &(boost * boost))?;
    show("diag(i, j)", &Mat2H::diag(Quaternion::I, Quaternion::J))?;
    show("random element", &Sampler::new(9).element().matrix())?;
    Ok(())
}
