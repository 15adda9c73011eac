use super::gadget::{g_sample_with, gadget_width, GadgetSampler};
use super::gen::{min_sigma, s1_bound, verify_trapdoor, Trapdoor};
use super::Params;
use crate::error::{Error, Result};
use crate::gauss::{PerturbationSampler, RandomSource};
use crate::zqpoly::{family_matrix, IntMatrix, Poly, PolyFamily, ShortFamily, SignedPoly};

/// Preimage sampler for one (family, trapdoor, width) triple. Construction does
/// the offline work; [`PreimageSampler::sample`] is the online phase.
#[derive(Debug, Clone)]
pub struct PreimageSampler {
    params: Params,
    level: usize,
    family: IntMatrix,
    trap: IntMatrix,
    perturbation: PerturbationSampler,
    gadget: GadgetSampler,
}

impl PreimageSampler {
    pub fn new(f: &PolyFamily, td: &Trapdoor, sigma: f64, params: &Params) -> Result<Self> {
        if !verify_trapdoor(f, td, params)? {
            return Err(Error::TrapdoorMismatch);
        }
        let required = min_sigma(s1_bound(td), params);
        if !(sigma >= required) {
            return Err(Error::SigmaTooSmall { sigma, required });
        }
        let s_g = gadget_width(params);
        let trap = td.matrix();
        let perturbation = PerturbationSampler::new(&trap, sigma, s_g)?;
        Ok(Self {
            params: *params,
            level: td.level(),
            family: family_matrix(f, params)?.reduced(params.modulus()),
            trap,
            perturbation,
            gadget: GadgetSampler::new(params.modulus(), s_g),
        })
    }

    /// `r` with `<f, r> = u`, profile `t` entries of bound `2d-1` then bound `d`.
    pub fn sample(&self, u: &Poly, rng: &mut RandomSource) -> Result<ShortFamily> {
        let p = &self.params;
        if u.bound() > p.dg() {
            return Err(Error::BoundOverflow { bound: u.bound(), limit: p.dg() });
        }
        let u = u.resized(p.dg())?;
        let m = p.modulus();
        let pert = self.perturbation.sample(rng);
        let ap = self.family.mul_vec_mod(&pert, m)?;
        let v: Vec<u64> = u.coeffs().iter().zip(&ap).map(|(&a, &b)| m.sub(a, b)).collect();
        let z = g_sample_with(&self.gadget, &v, p, rng)?;

        let top = self.trap.rows();
        let mut x = pert;
        for r in 0..top {
            x[r] += self.trap.row(r).iter().zip(&z).map(|(&a, &b)| a * b).sum::<i128>();
        }
        for (xi, zi) in x[top..].iter_mut().zip(&z) {
            *xi += zi;
        }

        let mut polys = Vec::with_capacity(p.family_len(self.level));
        let mut offset = 0;
        for i in 0..p.family_len(self.level) {
            let b = p.preimage_bound(i);
            polys.push(SignedPoly::new(x[offset..offset + b].to_vec()));
            offset += b;
        }
        debug_assert_eq!(offset, x.len());
        Ok(ShortFamily(polys))
    }
}

pub fn gen_sample_pre(
    f: &PolyFamily,
    td: &Trapdoor,
    u: &Poly,
    sigma: f64,
    params: &Params,
    rng: &mut RandomSource,
) -> Result<ShortFamily> {
    PreimageSampler::new(f, td, sigma, params)?.sample(u, rng)
}
