//! Sampling each of the six Moebius classes and applying the maps to the ball.
//!
//!     cargo run --example classification

use u11h::group::Sampler;
use u11h::moebius::{apply, classify_with_evidence, ALL_CLASSES, CLASS_EPS};
use u11h::Quaternion;

fn main() -> u11h::Result<()> {
    let mut sampler = Sampler::new(2024);
    let z = Quaternion::new(0.2, -0.1, 0.3, 0.05);
    for class in ALL_CLASSES {
        let t = sampler.sample(Some(class))?;
        let ev = classify_with_evidence(&t, CLASS_EPS)?;
        let w = apply(&t, z)?;
        println!(
            "{:<20} pattern {:<9} Δ = {:>10.3e}  d₀ = {:>7.3}  |g(z)| = {:.4}",
            ev.class.name(),
            format!("{:?}", ev.pattern),
            ev.delta,
            ev.d0,
            w.norm()
        );
    }
    Ok(())
}
