//! Gadget trapdoors: generation, preimage sampling and delegation.

mod delegate;
mod gadget;
mod gen;
mod params;
mod sampler;

pub use delegate::{sample_trap, trap_del};
pub use gadget::{gadget_family, gadget_matrix, gadget_permutation, gadget_poly, gadget_width, g_sample, GadgetSampler};
pub use gen::{min_sigma, s1_bound, trap_gen, trapdoor_matrix, verify_trapdoor, Trapdoor};
pub use params::Params;
pub use sampler::{gen_sample_pre, PreimageSampler};
