//! Exact computation in finite-rank free nilpotent groups and their
//! automorphism groups.
//!
//! Everything is generic over an exact integer [`Scalar`]; the aliases below
//! fix it to [`BigInt`], which is what the verification harness uses.

pub mod aut;
pub mod error;
pub mod glz;
pub mod interp;
pub mod json;
pub mod nilgroup;
pub mod sample;
pub mod scalar;
pub mod sigma;

pub use error::{Error, Result};
pub use scalar::{Mod61, Ring, Scalar};

pub use num_bigint::BigInt;

pub type Int = BigInt;
pub type Context = nilgroup::GroupContext<BigInt>;
pub type Element = nilgroup::GroupElement<BigInt>;
pub type Endo = aut::Endomorphism<BigInt>;
pub type IntMatrix = glz::Matrix<BigInt>;
pub type IntSublattice = glz::Sublattice<BigInt>;
pub type Trace = sigma::SigmaTrace<BigInt>;
