//! Integer matrices, normal forms, sublattices of `Z^n` and `GL(2, Z)`.

pub mod gl2;
pub mod lattice;
mod matrix;
pub mod normal_form;

pub use gl2::{classify_involution2, element_order, InvolutionClass, Mode, Order, Orientation, Parity};
pub use lattice::{invariant_splitting, is_diagonalizable_involution, relation_r, Splitting, Sublattice};
pub use matrix::Matrix;
pub use normal_form::{hermite_form, right_kernel, smith_normal_form};
