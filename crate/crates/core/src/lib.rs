//! Quaternionic Möbius transformations of the unit ball and the group
//! U(1,1;ℍ) that induces them: membership, conjugacy invariants, the
//! six-way classification, right/S/left spectra and diagonalization of
//! elliptic elements.

pub mod cli;
pub mod diagonalize;
pub mod error;
pub mod group;
pub mod invariants;
pub mod mat2h;
pub mod moebius;
pub mod quaternion;
pub mod spectra;

pub use error::{Error, Result};
pub use group::{GroupElement, Sampler};
pub use mat2h::{CMat4, Mat2H};
pub use moebius::{classify, MoebiusClass};
pub use quaternion::Quaternion;
