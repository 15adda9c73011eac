//! Middle-product LWE samples with per-sample output degrees.

use crate::error::{Error, Result};
use crate::gauss::{sample_noise, NoiseParam, RandomSource};
use crate::trapdoor::Params;
use crate::zqpoly::{middle_product_auto, Modulus, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector {
    entries: Vec<usize>,
    n_prime: usize,
}

impl DegreeVector {
    pub fn new(entries: Vec<usize>, n_prime: usize) -> Result<Self> {
        if let Some(&d) = entries.iter().find(|&&d| d == 0 || 2 * d > n_prime) {
            return Err(Error::InvalidParams(format!("degree {d} outside 1..={}", n_prime / 2)));
        }
        Ok(Self { entries, n_prime })
    }

    /// Degrees of an encryption at `depth`: `k+2`, then `2d+k` or `d+k+1` per position.
    pub fn for_encryption(params: &Params, depth: usize) -> Result<Self> {
        let (d, k) = (params.d(), params.k());
        let mut entries = vec![k + 2];
        for _ in 0..=depth {
            entries.extend((0..params.t_prime()).map(|j| if j < params.t() { 2 * d + k } else { d + k + 1 }));
        }
        Self::new(entries, params.n() + 2 * d + k)
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }
}

fn check_secret(s: &Poly, dv: &DegreeVector) -> Result<()> {
    if s.bound() + 1 != dv.n_prime {
        return Err(Error::BoundMismatch { left: s.bound(), right: dv.n_prime - 1 });
    }
    Ok(())
}

/// `(f_i, f_i (.)_{d_i} s + e_i)` with uniform `f_i` of bound `n' - d_i`.
pub fn dmp_sample(s: &Poly, dv: &DegreeVector, noise: NoiseParam, rng: &mut RandomSource) -> Result<Vec<(Poly, Poly)>> {
    check_secret(s, dv)?;
    dv.entries
        .iter()
        .map(|&d| {
            let f = Poly::random(s.modulus(), dv.n_prime - d, rng);
            let ct = middle_product_auto(&f, s, d)?.add_signed(&sample_noise(noise, d, rng))?;
            Ok((f, ct))
        })
        .collect()
}

/// Same as [`dmp_sample`] with the `f_i` supplied and noise multiplied by `noise_scale`.
pub fn dmp_sample_with(
    fs: &[Poly],
    s: &Poly,
    dv: &DegreeVector,
    noise: NoiseParam,
    noise_scale: u64,
    rng: &mut RandomSource,
) -> Result<Vec<(Poly, Poly)>> {
    check_secret(s, dv)?;
    if fs.len() != dv.entries.len() {
        return Err(Error::LengthMismatch { left: fs.len(), right: dv.entries.len() });
    }
    fs.iter()
        .zip(&dv.entries)
        .map(|(f, &d)| {
            if f.bound() != dv.n_prime - d {
                return Err(Error::BoundMismatch { left: f.bound(), right: dv.n_prime - d });
            }
            let e = sample_noise(noise, d, rng).to_poly(s.modulus()).scaled(noise_scale);
            Ok((f.clone(), middle_product_auto(f, s, d)?.add(&e)?))
        })
        .collect()
}

/// Uniform pairs with the same shapes as [`dmp_sample`].
pub fn uniform_sample(dv: &DegreeVector, modulus: Modulus, rng: &mut RandomSource) -> Vec<(Poly, Poly)> {
    dv.entries
        .iter()
        .map(|&d| (Poly::random(modulus, dv.n_prime - d, rng), Poly::random(modulus, d, rng)))
        .collect()
}
