//! Diagonalizing elliptic elements by conjugation inside the group.
//!
//!     cargo run --example diagonalize

use u11h::diagonalize::diagonalize_elliptic;
use u11h::group::{GroupElement, Sampler, MEMBERSHIP_TOL};
use u11h::{Mat2H, MoebiusClass, Quaternion};

fn main() -> u11h::Result<()> {
    let r = 2f64.sqrt();
    let example = GroupElement::new(
        Mat2H::new(
            Quaternion::complex(2.0, 1.0),
            Quaternion::complex(-r, r),
            Quaternion::complex(-r, r),
            Quaternion::complex(-1.0, -2.0),
        ),
        MEMBERSHIP_TOL,
    )?;

    let mut sampler = Sampler::new(17);
    let mut inputs = vec![("worked example", example)];
    inputs.push(("simple elliptic", sampler.sample(Some(MoebiusClass::SimpleElliptic))?));
    inputs.push(("compound elliptic", sampler.sample(Some(MoebiusClass::CompoundElliptic))?));

    for (name, t) in inputs {
        let res = diagonalize_elliptic(&t)?;
        println!(
            "{name:<18} {:?}: D = diag({}, {})  ‖XTX⁻¹ − D‖ = {:.1e}  membership {:.1e}",
            res.case_used, res.d.a, res.d.d, res.residual_conjugation, res.residual_membership
        );
    }

    let lox = sampler.sample(Some(MoebiusClass::SimpleLoxodromic))?;
    if let Err(e) = diagonalize_elliptic(&lox) {
        println!("loxodromic input: {e}");
    }
    Ok(())
}
