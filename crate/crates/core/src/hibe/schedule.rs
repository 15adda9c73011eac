use crate::error::{Error, Result};
use crate::gauss::{omega_log, omega_sqrt_log, NoiseParam};
use crate::trapdoor::{min_sigma, Params};
use crate::zqpoly::{Modulus, MAX_MODULUS};

/// Gaussian widths for every delegation step plus decryption widths and noise rates.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    /// `sigma_1, ..., sigma_{m*lambda}`, one per delegation step.
    pub sigmas: Vec<f64>,
    /// `psi_1, ..., psi_lambda`, decryption widths per depth.
    pub psi: Vec<f64>,
    /// `alpha_1, ..., alpha_lambda`, noise rates per depth.
    pub alpha: Vec<f64>,
}

impl Schedule {
    pub fn compute(params: &Params) -> Self {
        let (m, lambda) = (params.m(), params.lambda());
        let cols = params.dgt() as f64;
        let tail = omega_log(params.n() as f64);
        let root = (((2 * params.d() - 1) * params.t()) as f64 * cols).sqrt() * params.beta() as f64;
        let mut chain = vec![min_sigma(root, params)];
        for i in 2..=m * lambda + 1 {
            let rows = params.trapdoor_rows(i) as f64;
            let s1 = (rows * cols).sqrt() * tail * chain[i - 2];
            chain.push(min_sigma(s1, params));
        }
        let psi: Vec<f64> = (1..=lambda).map(|l| chain[l * m]).collect();
        let alpha = psi
            .iter()
            .enumerate()
            .map(|(i, &p)| 0.5 * correctness_bound(params, i + 1, p))
            .collect();
        chain.truncate(m * lambda);
        Self { sigmas: chain, psi, alpha }
    }

    pub fn psi(&self, depth: usize) -> f64 {
        self.psi[depth - 1]
    }

    pub fn alpha(&self, depth: usize) -> f64 {
        self.alpha[depth - 1]
    }

    /// Widths for extending a depth-`from` key to depth `to`.
    pub fn sigmas_between(&self, from: usize, to: usize, m: usize) -> &[f64] {
        &self.sigmas[from * m..to * m]
    }
}

/// `1/4 * [t'(l+1)(k+2) omega(log n) psi + omega(sqrt(log n))]^-1`.
pub fn correctness_bound(params: &Params, depth: usize, psi: f64) -> f64 {
    let n = params.n() as f64;
    let terms = (params.t_prime() * (depth + 1) * (params.k() + 2)) as f64;
    0.25 / (terms * omega_log(n) * psi + omega_sqrt_log(n))
}

/// Smallest noise width `alpha*q` accepted when the modulus is searched.
pub fn noise_floor(n: usize) -> f64 {
    omega_sqrt_log(n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusChoice {
    Fixed(u64),
    /// Smallest prime whose noise widths `alpha_l * q` all reach [`noise_floor`].
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Profile {
    pub d: usize,
    pub k: usize,
    pub m: usize,
    pub modulus: ModulusChoice,
}

/// Params together with their schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeParams {
    pub params: Params,
    pub schedule: Schedule,
}

impl SchemeParams {
    pub fn from_params(params: Params) -> Self {
        Self { schedule: Schedule::compute(&params), params }
    }

    pub fn noise(&self, depth: usize) -> NoiseParam {
        NoiseParam::new(self.schedule.alpha(depth) * self.params.q() as f64)
    }
}

pub fn derive_params(n: usize, lambda: usize, profile: &Profile) -> Result<SchemeParams> {
    let build = |q: u64| Params::new(n, profile.d, Modulus::new(q)?, profile.m, lambda, profile.k);
    match profile.modulus {
        ModulusChoice::Fixed(q) => Ok(SchemeParams::from_params(build(q)?)),
        ModulusChoice::Search => {
            let floor = noise_floor(n);
            for tau in 2..=62u32 {
                let lo = (1u64 << (tau - 1)) + 1;
                let hi = (1u64 << tau).min(MAX_MODULUS - 1);
                let Some(probe) = next_prime(lo, hi) else { continue };
                let schedule = Schedule::compute(&build(probe)?);
                let alpha_min = schedule.alpha.iter().cloned().fold(f64::INFINITY, f64::min);
                let needed = (floor / alpha_min).ceil();
                if needed > hi as f64 {
                    continue;
                }
                let Some(q) = next_prime(lo.max(needed as u64), hi) else { continue };
                let sp = SchemeParams::from_params(build(q)?);
                debug_assert!((1..=lambda).all(|l| sp.noise(l).alpha_q >= floor));
                return Ok(sp);
            }
            Err(Error::NoFeasibleQ { depth: lambda })
        }
    }
}

fn next_prime(from: u64, to: u64) -> Option<u64> {
    (from..=to).find(|&c| primal_check::miller_rabin(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub n: usize,
    pub lambda: usize,
    pub profile: Profile,
}

const TOY: Profile = Profile { d: 2, k: 0, m: 2, modulus: ModulusChoice::Fixed(257) };
const MINI: Profile = Profile { d: 1, k: 1, m: 2, modulus: ModulusChoice::Fixed(13) };
const NOISY: Profile = Profile { d: 1, k: 1, m: 2, modulus: ModulusChoice::Search };

pub const PRESETS: &[Preset] = &[
    Preset { name: "toy-l1", n: 4, lambda: 1, profile: TOY },
    Preset { name: "toy-l2", n: 4, lambda: 2, profile: TOY },
    Preset { name: "mini-l3", n: 3, lambda: 3, profile: MINI },
    Preset { name: "noisy-l1", n: 3, lambda: 1, profile: NOISY },
    Preset { name: "noisy-l2", n: 3, lambda: 2, profile: NOISY },
];

pub fn preset(name: &str) -> Option<Preset> {
    let canonical = match name {
        "toy" | "toy-λ2" => "toy-l2",
        "toy-λ1" => "toy-l1",
        "mini" | "mini-λ3" => "mini-l3",
        "noisy" | "noisy-λ1" => "noisy-l1",
        "noisy-λ2" => "noisy-l2",
        other => other,
    };
    PRESETS.iter().copied().find(|p| p.name == canonical)
}

impl Preset {
    pub fn derive(&self) -> Result<SchemeParams> {
        derive_params(self.n, self.lambda, &self.profile)
    }
}
