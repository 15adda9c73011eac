use crate::error::{Error, Result};

/// Prime modulus with its bit length `tau`, the smallest value with `q <= 2^tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    q: u64,
    tau: u32,
}

pub const MAX_MODULUS: u64 = 1 << 62;

impl Modulus {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 || q >= MAX_MODULUS || !primal_check::miller_rabin(q) {
            return Err(Error::InvalidModulus(q));
        }
        let tau = 64 - (q - 1).leading_zeros();
        Ok(Self { q, tau: tau.max(1) })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn tau(&self) -> usize {
        self.tau as usize
    }

    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.q as i128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    /// Representative in (-q/2, q/2].
    pub fn center(&self, a: u64) -> i128 {
        if a > self.q / 2 {
            a as i128 - self.q as i128
        } else {
            a as i128
        }
    }
}
