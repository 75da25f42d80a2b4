//! Right spectrum three ways: the closed form, the casewise formulas and the
//! eigenvalues of the complex 4×4 image.
//!
//!     cargo run --example right_spectrum

use u11h::group::Sampler;
use u11h::moebius::{classify, ALL_CLASSES};
use u11h::spectra::{right_spectrum, right_spectrum_casewise, right_spectrum_oracle, verify_s_point};

fn main() -> u11h::Result<()> {
    let mut sampler = Sampler::new(5);
    for class in ALL_CLASSES {
        let t = sampler.sample(Some(class))?;
        let unified = right_spectrum(&t)?;
        let casewise = right_spectrum_casewise(&t)?;
        let oracle = right_spectrum_oracle(&t.matrix());
        let spheres: Vec<String> = unified
            .spheres
            .iter()
            .map(|s| format!("{{re {:.5}, |s| {:.5}}}", s.re, s.modulus))
            .collect();
        let s_ok = unified.spheres.iter().all(|s| verify_s_point(&t.matrix(), s.representative(), 1e-7));
        println!(
            "{:<20} {:<44} casewise Δ {:.1e}  oracle Δ {:.1e}  S-points {}",
            classify(&t)?.name(),
            spheres.join(" "),
            unified.distance(&casewise),
            unified.distance(&oracle),
            if s_ok { "ok" } else { "FAIL" }
        );
    }
    Ok(())
}
