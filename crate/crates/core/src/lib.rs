//! Middle-product polynomial algebra, gadget trapdoors with delegation, and a
//! hierarchical identity-based encryption scheme built on them.

pub mod cli;
pub mod dmplwe;
pub mod error;
pub mod format;
pub mod gauss;
pub mod hibe;
pub mod trapdoor;
pub mod zqpoly;

pub use error::{Error, Result};
