use crate::error::{Error, Result};
use crate::zqpoly::Modulus;

/// Integer parameters shared by the trapdoor and HIBE layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    n: usize,
    d: usize,
    modulus: Modulus,
    t: usize,
    gamma: usize,
    m: usize,
    beta: u32,
    lambda: usize,
    k: usize,
}

impl Params {
    /// Derives `gamma`, `tau`, `t = (m-1)*gamma*tau` and `beta` from the free parameters.
    pub fn new(n: usize, d: usize, modulus: Modulus, m: usize, lambda: usize, k: usize) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if d == 0 || d > n {
            return bad(format!("need 1 <= d <= n, got d={d}, n={n}"));
        }
        if (n + 2 * d - 2) % d != 0 {
            return bad(format!("d={d} does not divide n+2d-2={}", n + 2 * d - 2));
        }
        if 2 * d + k > n {
            return bad(format!("need 2d+k <= n, got {}", 2 * d + k));
        }
        if m < 2 {
            return bad(format!("need m >= 2, got {m}"));
        }
        if lambda == 0 {
            return bad("need lambda >= 1".into());
        }
        let gamma = (n + 2 * d - 2) / d;
        let t = (m - 1) * gamma * modulus.tau();
        let beta = ((n as f64).log2() / 2.0).ceil() as u32;
        Ok(Self { n, d, modulus, t, gamma, m, beta, lambda, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    pub fn q(&self) -> u64 {
        self.modulus.q()
    }
    pub fn t(&self) -> usize {
        self.t
    }
    pub fn gamma(&self) -> usize {
        self.gamma
    }
    pub fn tau(&self) -> usize {
        self.modulus.tau()
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn beta(&self) -> u32 {
        self.beta
    }
    pub fn lambda(&self) -> usize {
        self.lambda
    }
    pub fn k(&self) -> usize {
        self.k
    }

    /// `d*gamma = n+2d-2`, the bound of preimage targets.
    pub fn dg(&self) -> usize {
        self.d * self.gamma
    }

    pub fn gt(&self) -> usize {
        self.gamma * self.tau()
    }

    pub fn dgt(&self) -> usize {
        self.d * self.gt()
    }

    pub fn t_prime(&self) -> usize {
        self.t + self.gt()
    }

    pub fn family_len(&self, level: usize) -> usize {
        self.t + level * self.gt()
    }

    pub fn family_cols(&self, level: usize) -> usize {
        (2 * self.d - 1) * self.t + level * self.dgt()
    }

    pub fn trapdoor_rows(&self, level: usize) -> usize {
        self.family_cols(level) - self.dgt()
    }

    /// Level of a family with `len` entries.
    pub fn family_level(&self, len: usize) -> Result<usize> {
        if len <= self.t || (len - self.t) % self.gt() != 0 {
            return Err(Error::ProfileMismatch(format!(
                "family length {len} is not t + k*gamma*tau with t={}, gamma*tau={}",
                self.t,
                self.gt()
            )));
        }
        Ok((len - self.t) / self.gt())
    }

    /// Bound of entry `i` in a family with the delegation profile.
    pub fn family_bound(&self, i: usize) -> usize {
        if i < self.t {
            self.n
        } else {
            self.n + self.d - 1
        }
    }

    /// Bound of entry `i` in a preimage.
    pub fn preimage_bound(&self, i: usize) -> usize {
        if i < self.t {
            2 * self.d - 1
        } else {
            self.d
        }
    }
}
