use super::Params;
use crate::error::{Error, Result};
use crate::gauss::{omega_sqrt_log, sample_z, GaussParam, RandomSource};
use crate::zqpoly::{IntMatrix, Modulus, Poly, PolyFamily};

/// Gadget monomial `2^eta x^(d*zeta)` for `j = zeta*tau + eta + 1`, bound `n+d-1`.
pub fn gadget_poly(j: usize, params: &Params) -> Result<Poly> {
    if j == 0 || j > params.gt() {
        return Err(Error::IndexOutOfRange { index: j, max: params.gt() });
    }
    let (zeta, eta) = ((j - 1) / params.tau(), (j - 1) % params.tau());
    Poly::monomial(params.modulus(), params.n() + params.d() - 1, params.d() * zeta, 1 << eta)
}

pub fn gadget_family(params: &Params) -> PolyFamily {
    PolyFamily((1..=params.gt()).map(|j| gadget_poly(j, params).expect("index in range")).collect())
}

/// `d*gamma x d*gamma*tau` Toeplitz concatenation of the gadget family.
pub fn gadget_matrix(params: &Params) -> IntMatrix {
    let (d, tau) = (params.d(), params.tau());
    let mut g = IntMatrix::zeros(params.dg(), params.dgt());
    for idx in 0..params.gt() {
        let (zeta, eta) = (idx / tau, idx % tau);
        for i in 0..d {
            g.set(d * zeta + i, idx * d + i, 1 << eta);
        }
    }
    g
}

/// `perm[c]` is the gadget column placed at position `c`, so that
/// `G * P = I (x) (1, 2, ..., 2^(tau-1))`.
pub fn gadget_permutation(params: &Params) -> Vec<usize> {
    let (d, tau) = (params.d(), params.tau());
    let mut perm = vec![0; params.dgt()];
    for r in 0..params.dg() {
        let (zeta, i) = (r / d, r % d);
        for eta in 0..tau {
            perm[r * tau + eta] = (zeta * tau + eta) * d + i;
        }
    }
    perm
}

/// Smallest admissible width for [`g_sample`].
pub fn gadget_width(params: &Params) -> f64 {
    omega_sqrt_log(params.dgt() as f64) * 5f64.sqrt()
}

/// Coset sampler for `{z : <(1, 2, ..., 2^(tau-1)), z> = v mod q}` by a
/// randomized nearest-plane walk on the standard basis of the kernel lattice.
#[derive(Debug, Clone)]
pub struct GadgetSampler {
    modulus: Modulus,
    width: f64,
    basis: Vec<Vec<i128>>,
    gso: Vec<Vec<f64>>,
    gso_norm2: Vec<f64>,
}

impl GadgetSampler {
    pub fn new(modulus: Modulus, width: f64) -> Self {
        let tau = modulus.tau();
        let q = modulus.q();
        let mut basis = Vec::with_capacity(tau);
        for i in 0..tau {
            let mut b = vec![0i128; tau];
            if i + 1 < tau {
                b[i] = 2;
                b[i + 1] = -1;
            } else {
                for (e, slot) in b.iter_mut().enumerate() {
                    *slot = ((q >> e) & 1) as i128;
                }
            }
            basis.push(b);
        }
        let mut gso: Vec<Vec<f64>> = Vec::with_capacity(tau);
        let mut gso_norm2 = Vec::with_capacity(tau);
        for b in &basis {
            let mut v: Vec<f64> = b.iter().map(|&x| x as f64).collect();
            for (prev, &n2) in gso.iter().zip(&gso_norm2) {
                let mu = dot(&v, prev) / n2;
                for (x, p) in v.iter_mut().zip(prev) {
                    *x -= mu * p;
                }
            }
            gso_norm2.push(dot(&v, &v));
            gso.push(v);
        }
        Self { modulus, width, basis, gso, gso_norm2 }
    }

    pub fn max_gso_norm(&self) -> f64 {
        self.gso_norm2.iter().cloned().fold(0.0, f64::max).sqrt()
    }

    pub fn sample(&self, v: u64, rng: &mut RandomSource) -> Vec<i128> {
        let tau = self.basis.len();
        let target: Vec<i128> = (0..tau).map(|e| ((v >> e) & 1) as i128).collect();
        let mut center: Vec<f64> = target.iter().map(|&x| x as f64).collect();
        let mut z = target;
        for i in (0..tau).rev() {
            let c = dot(&center, &self.gso[i]) / self.gso_norm2[i];
            let s = self.width / self.gso_norm2[i].sqrt();
            let k = sample_z(GaussParam::new(s, c), rng);
            if k != 0 {
                for ((cz, zz), &b) in center.iter_mut().zip(z.iter_mut()).zip(&self.basis[i]) {
                    *cz -= (k * b) as f64;
                    *zz -= k * b;
                }
            }
        }
        debug_assert_eq!(self.modulus.reduce(z.iter().enumerate().map(|(e, &x)| x << e).sum()), v % self.modulus.q());
        z
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `z` with `G z = v mod q`, sampled blockwise through the gadget permutation.
pub fn g_sample(v: &[u64], s_g: f64, params: &Params, rng: &mut RandomSource) -> Result<Vec<i128>> {
    let sampler = GadgetSampler::new(params.modulus(), s_g);
    g_sample_with(&sampler, v, params, rng)
}

pub(crate) fn g_sample_with(
    sampler: &GadgetSampler,
    v: &[u64],
    params: &Params,
    rng: &mut RandomSource,
) -> Result<Vec<i128>> {
    if v.len() != params.dg() {
        return Err(Error::LengthMismatch { left: v.len(), right: params.dg() });
    }
    let required = gadget_width(params);
    if sampler.width < required {
        return Err(Error::SigmaTooSmall { sigma: sampler.width, required });
    }
    let tau = params.tau();
    let perm = gadget_permutation(params);
    let mut z = vec![0i128; params.dgt()];
    for (r, &vr) in v.iter().enumerate() {
        for (eta, x) in sampler.sample(vr, rng).into_iter().enumerate() {
            z[perm[r * tau + eta]] = x;
        }
    }
    Ok(z)
}
