//! Membership in U(1,1;H), the fast inverse J·T*·J and closure under products.
//!
//!     cargo run --example membership

use u11h::group::{is_member, MembershipResiduals, Sampler, MEMBERSHIP_TOL};
use u11h::{GroupElement, Mat2H, Quaternion};

fn main() -> u11h::Result<()> {
    let r = 2f64.sqrt();
    let boost = Mat2H::new(Quaternion::real(r), Quaternion::I, -Quaternion::I, Quaternion::real(r));
    let shear = Mat2H::new(Quaternion::ONE, Quaternion::ONE, Quaternion::ZERO, Quaternion::ONE);

    for (name, m) in [("boost", boost), ("shear", shear)] {
        let res = MembershipResiduals::of(&m);
        println!("{name:>6}: member = {:5}  worst residual = {:.2e}", is_member(&m, MEMBERSHIP_TOL), res.max());
    }

    let t = GroupElement::new(boost, MEMBERSHIP_TOL)?;
    let inv = t.inverse();
    println!("boost⁻¹ = {}", serde_json::to_string(&inv.matrix()).expect("finite entries"));
    println!("‖T·T⁻¹ − I‖ = {:.2e}", (t.matrix() * inv.matrix() - Mat2H::IDENTITY).frobenius());

    let mut sampler = Sampler::new(7);
    let (a, b) = (sampler.element(), sampler.element());
    let ab = a.compose(&b, 1e-8)?;
    println!("random product stays in the group: residual {:.2e}", ab.membership_residual());
    Ok(())
}
