//! Hierarchical identity-based encryption over bit-path identities.

mod schedule;
mod scheme;

pub use schedule::{
    correctness_bound, derive_params, noise_floor, preset, ModulusChoice, Preset, Profile, Schedule, SchemeParams,
    PRESETS,
};
pub use scheme::{
    build_family, decrypt, decrypt_with_preimage, decryption_sampler, derive, encrypt, encrypt_with_noise, extract,
    setup, Ciphertext, Identity, MasterPublicKey, MasterSecretKey, Plaintext, SecretKey,
};
