//! Polynomials over Z_q, the middle product and Toeplitz matrices.

mod matrix;
mod modulus;
mod poly;

pub use matrix::{family_matrix, toeplitz, IntMatrix};
pub(crate) use matrix::toeplitz_coeffs;
pub use modulus::{Modulus, MAX_MODULUS};
pub use poly::{
    inner_product, middle_product, middle_product_auto, poly_add, poly_mul, Poly, PolyFamily, ShortFamily,
    SignedPoly,
};
