use rayon::prelude::*;

use super::gadget::gadget_poly;
use super::gen::Trapdoor;
use super::sampler::PreimageSampler;
use super::Params;
use crate::error::{Error, Result};
use crate::gauss::RandomSource;
use crate::zqpoly::PolyFamily;

/// Trapdoor of level `k+1` for `(a | h)` from a level-`k` trapdoor for `a`.
///
/// Column `i = alpha + d*beta` is a preimage of `x^alpha (g_beta - h_beta)`.
/// Columns are sampled in parallel, each on its own substream.
pub fn trap_del(
    a: &PolyFamily,
    h: &PolyFamily,
    td_a: &Trapdoor,
    sigma: f64,
    params: &Params,
    rng: &mut RandomSource,
) -> Result<Trapdoor> {
    if h.len() != params.gt() {
        return Err(Error::ProfileMismatch(format!("h has {} entries, expected {}", h.len(), params.gt())));
    }
    let bound = params.n() + params.d() - 1;
    if let Some(p) = h.polys().iter().find(|p| p.bound() != bound) {
        return Err(Error::ProfileMismatch(format!("h entry of bound {}, expected {bound}", p.bound())));
    }
    let sampler = PreimageSampler::new(a, td_a, sigma, params)?;
    let d = params.d();
    let targets: Vec<_> = h
        .polys()
        .iter()
        .enumerate()
        .map(|(j, hj)| gadget_poly(j + 1, params).and_then(|g| g.sub(hj)))
        .collect::<Result<_>>()?;
    let seed = rng.fork_seed();
    let columns = (0..params.dgt())
        .into_par_iter()
        .map(|i| {
            let v = targets[i / d].shifted(i % d);
            sampler.sample(&v, &mut RandomSource::substream(seed, i as u64))
        })
        .collect::<Result<Vec<_>>>()?;
    Trapdoor::new(td_a.level() + 1, columns, params)
}

/// `m'` successive delegations, one per block of `gamma*tau` entries of `h`.
pub fn sample_trap(
    a: &PolyFamily,
    h: &PolyFamily,
    td_a: &Trapdoor,
    sigmas: &[f64],
    params: &Params,
    rng: &mut RandomSource,
) -> Result<Trapdoor> {
    let gt = params.gt();
    if h.is_empty() || h.len() % gt != 0 {
        return Err(Error::ProfileMismatch(format!("h length {} is not a positive multiple of {gt}", h.len())));
    }
    if sigmas.len() != h.len() / gt {
        return Err(Error::LengthMismatch { left: sigmas.len(), right: h.len() / gt });
    }
    let mut family = a.clone();
    let mut td = td_a.clone();
    for (block, &sigma) in h.polys().chunks(gt).zip(sigmas) {
        let block = PolyFamily(block.to_vec());
        td = trap_del(&family, &block, &td, sigma, params, rng)?;
        family = family.concat(&block);
    }
    Ok(td)
}
