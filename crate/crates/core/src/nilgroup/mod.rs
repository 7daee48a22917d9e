//! Free nilpotent groups of finite rank: Hall basis, Mal'cev normal forms
//! and the group operations.
//!
//! Normal forms are computed through the Magnus embedding into truncated
//! non-commutative power series: a product is formed as series and its
//! coordinates are peeled off weight by weight against the Magnus images of
//! the basic commutators. Exponents are exact and the filtration
//! `N = N_1 > N_2 > .. > N_s > 1` is visible as the weight of the leading
//! nonzero coordinate.

mod context;
mod element;
pub mod hall;
pub(crate) mod series;
mod text;
mod word;

pub(crate) use context::magnus_commutator;
pub use context::GroupContext;
pub use element::GroupElement;
pub use hall::{HallElement, Shape};
pub use text::parse_element;
pub use word::{collect, FreeWord, Letter};
