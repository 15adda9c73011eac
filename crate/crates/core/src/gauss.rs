//! Discrete Gaussians over the integers, rounded-Gaussian noise and
//! perturbation sampling with a prescribed covariance.
//!
//! Widths follow the `exp(-pi x^2 / sigma^2)` convention, so a width-`sigma`
//! Gaussian has variance about `sigma^2 / (2 pi)`.

use std::f64::consts::PI;

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::error::{Error, Result};
use crate::zqpoly::{IntMatrix, SignedPoly};

/// Width of the discrete Gaussian used to round perturbation coordinates.
pub const ROUNDING_WIDTH: f64 = 4.0;

const MAX_REJECTIONS: usize = 10_000;

/// `omega(sqrt(log x))` instantiated as `4 sqrt(ln x)`.
pub fn omega_sqrt_log(x: f64) -> f64 {
    4.0 * x.ln().sqrt()
}

/// `omega(log x)` instantiated as `4 ln x`.
pub fn omega_log(x: f64) -> f64 {
    4.0 * x.ln()
}

/// Deterministic stream seeded with 32 bytes.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha20Rng,
}

impl RandomSource {
    pub fn from_seed(seed: [u8; 32]) -> Self {
        Self { rng: ChaCha20Rng::from_seed(seed) }
    }

    pub fn from_u64(seed: u64) -> Self {
        Self { rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    pub fn from_entropy() -> Self {
        Self::from_seed(rand::rng().random())
    }

    /// Draws a seed for a family of independent substreams.
    pub fn fork_seed(&mut self) -> [u8; 32] {
        let mut seed = [0u8; 32];
        self.rng.fill_bytes(&mut seed);
        seed
    }

    /// Substream `index` of the family rooted at `seed`.
    pub fn substream(seed: [u8; 32], index: u64) -> Self {
        let mut rng = ChaCha20Rng::from_seed(seed);
        rng.set_stream(index);
        Self { rng }
    }

    pub fn fork(&mut self) -> Self {
        Self::from_seed(self.fork_seed())
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussParam {
    pub sigma: f64,
    pub center: f64,
}

impl GaussParam {
    pub fn new(sigma: f64, center: f64) -> Self {
        assert!(sigma > 0.0 && sigma.is_finite(), "sigma must be positive, got {sigma}");
        Self { sigma, center }
    }

    pub fn centered(sigma: f64) -> Self {
        Self::new(sigma, 0.0)
    }
}

/// Width `alpha*q` of the rounded Gaussian noise. Zero gives the all-zero distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParam {
    pub alpha_q: f64,
}

impl NoiseParam {
    pub fn new(alpha_q: f64) -> Self {
        assert!(alpha_q >= 0.0 && alpha_q.is_finite(), "alpha_q must be nonnegative, got {alpha_q}");
        Self { alpha_q }
    }

    pub fn zero() -> Self {
        Self { alpha_q: 0.0 }
    }
}

/// Discrete Gaussian over Z by rejection from a two-sided discrete Laplace
/// proposal around the center.
pub fn sample_z(p: GaussParam, rng: &mut RandomSource) -> i128 {
    let floor = p.center.floor();
    let frac = p.center - floor;
    let base = floor as i128;
    let lambda = (2.0 * PI).sqrt() / p.sigma;
    let w_left = (-lambda * frac).exp();
    let w_right = (-lambda * (1.0 - frac)).exp();
    let scale = PI.sqrt() / p.sigma;
    loop {
        for _ in 0..MAX_REJECTIONS {
            let u: f64 = rng.random::<f64>() * (w_left + w_right);
            let j = (-(1.0 - rng.random::<f64>()).ln() / lambda).floor();
            let (x, dist) =
                if u < w_left { (base - j as i128, frac + j) } else { (base + 1 + j as i128, 1.0 - frac + j) };
            let a = scale * dist - std::f64::consts::FRAC_1_SQRT_2;
            if rng.random::<f64>() < (-a * a).exp() {
                return x;
            }
        }
        *rng = rng.fork();
    }
}

/// Polynomial of `deg` coefficients drawn from the rounded Gaussian.
pub fn sample_noise(p: NoiseParam, deg: usize, rng: &mut RandomSource) -> SignedPoly {
    if p.alpha_q == 0.0 {
        return SignedPoly::zero(deg);
    }
    let normal = Normal::new(0.0, p.alpha_q / (2.0 * PI).sqrt()).expect("finite std dev");
    SignedPoly::new((0..deg).map(|_| normal.sample(rng).round() as i128).collect())
}

/// Offline state for drawing perturbations with covariance
/// `sigma^2 I - s_g^2 M M^T`, where `M = [R; I]`.
#[derive(Debug, Clone)]
pub struct PerturbationSampler {
    factor: DMatrix<f64>,
}

impl PerturbationSampler {
    pub fn new(trap_matrix: &IntMatrix, sigma: f64, s_g: f64) -> Result<Self> {
        let (rows, cols) = (trap_matrix.rows(), trap_matrix.cols());
        let dim = rows + cols;
        let mut m = DMatrix::<f64>::zeros(dim, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = trap_matrix.get(r, c) as f64;
            }
        }
        for c in 0..cols {
            m[(rows + c, c)] = 1.0;
        }
        let mut cov = &m * m.transpose() * (-s_g * s_g);
        let diag = sigma * sigma - ROUNDING_WIDTH * ROUNDING_WIDTH;
        for i in 0..dim {
            cov[(i, i)] += diag;
        }
        let chol = Cholesky::new(cov).ok_or(Error::CovarianceNotPositiveDefinite)?;
        Ok(Self { factor: chol.unpack() })
    }

    pub fn dim(&self) -> usize {
        self.factor.nrows()
    }

    pub fn sample(&self, rng: &mut RandomSource) -> Vec<i128> {
        let dim = self.dim();
        let g = DVector::<f64>::from_iterator(dim, (0..dim).map(|_| StandardNormal.sample(rng)));
        let y = &self.factor * g / (2.0 * PI).sqrt();
        y.iter().map(|&c| sample_z(GaussParam::new(ROUNDING_WIDTH, c), rng)).collect()
    }
}

pub fn sample_perturbation(trap_matrix: &IntMatrix, sigma: f64, s_g: f64, rng: &mut RandomSource) -> Result<Vec<i128>> {
    Ok(PerturbationSampler::new(trap_matrix, sigma, s_g)?.sample(rng))
}
