//! Traces, the invariant Δ and the power identities it satisfies.
//!
//!     cargo run --example invariants

use u11h::group::{conjugate, Sampler, MEMBERSHIP_TOL};
use u11h::invariants::{delta, identity_checks, report};

fn main() -> u11h::Result<()> {
    let mut sampler = Sampler::new(3);
    let t = sampler.element();
    let rep = report(&t);
    println!("Tr T = {:.6}, Tr T² = {:.6}, Δ = {:.6}", rep.tr1, rep.tr2, rep.delta);

    println!("{:<24} {:>14} {:>14} {:>10}", "identity", "lhs", "rhs", "residual");
    for c in identity_checks(&t) {
        println!("{:<24} {:>14.6e} {:>14.6e} {:>10.2e}", c.identity.name(), c.lhs, c.rhs, c.residual);
    }

    // Δ does not see conjugation by the group
    let g = sampler.element();
    let c = conjugate(&t, &g, MEMBERSHIP_TOL)?;
    println!("Δ(GTG⁻¹) − Δ(T) = {:.2e}", delta(&c.matrix()) - delta(&t.matrix()));
    Ok(())
}
