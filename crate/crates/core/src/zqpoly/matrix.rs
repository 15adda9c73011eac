use super::{Modulus, Poly, PolyFamily};
use crate::error::{Error, Result};
use crate::trapdoor::Params;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i128>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i128>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch { left: entries.len(), right: rows * cols });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i128] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i128) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i128] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i128> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn max_abs(&self) -> u128 {
        self.entries.iter().map(|e| e.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn hstack(blocks: &[IntMatrix]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if let Some(b) = blocks.iter().find(|b| b.rows != rows) {
            return Err(Error::ShapeMismatch(format!("hstack rows {} vs {}", b.rows, rows)));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for r in 0..rows {
                out.entries[r * cols + offset..r * cols + offset + b.cols].copy_from_slice(b.row(r));
            }
            offset += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[IntMatrix]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if let Some(b) = blocks.iter().find(|b| b.cols != cols) {
            return Err(Error::ShapeMismatch(format!("vstack cols {} vs {}", b.cols, cols)));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let entries = blocks.iter().flat_map(|b| b.entries.iter().copied()).collect();
        Ok(Self { rows, cols, entries })
    }

    /// Exact product over the integers.
    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        self.check_mul(other)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (c, &b) in other.row(k).iter().enumerate() {
                    out.entries[r * other.cols + c] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Product with entries reduced into [0, q).
    pub fn mul_mod(&self, other: &IntMatrix, modulus: Modulus) -> Result<Self> {
        self.check_mul(other)?;
        let a = self.reduced(modulus);
        let b = other.reduced(modulus);
        let q = modulus.q() as u128;
        let mut acc = vec![0u128; self.rows * other.cols];
        for r in 0..a.rows {
            for (k, &x) in a.row(r).iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let row = &mut acc[r * other.cols..(r + 1) * other.cols];
                for (slot, &y) in row.iter_mut().zip(b.row(k)) {
                    *slot = (*slot + x as u128 * y as u128) % q;
                }
            }
        }
        Ok(Self { rows: self.rows, cols: other.cols, entries: acc.into_iter().map(|v| v as i128).collect() })
    }

    pub fn mul_vec_mod(&self, v: &[i128], modulus: Modulus) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { left: v.len(), right: self.cols });
        }
        let q = modulus.q() as u128;
        let v: Vec<u128> = v.iter().map(|&x| modulus.reduce(x) as u128).collect();
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = 0u128;
                for (&a, &b) in self.row(r).iter().zip(&v) {
                    if a != 0 {
                        acc = (acc + modulus.reduce(a) as u128 * b) % q;
                    }
                }
                acc as u64
            })
            .collect())
    }

    pub fn reduced(&self, modulus: Modulus) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| modulus.reduce(e) as i128).collect(),
        }
    }

    fn check_mul(&self, other: &IntMatrix) -> Result<()> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// `(n+d-1) x d` matrix whose column `i` holds the coefficients of `x^i * u`.
pub fn toeplitz(u: &Poly, n: usize, d: usize) -> Result<IntMatrix> {
    let coeffs: Vec<i128> = u.coeffs().iter().map(|&c| c as i128).collect();
    toeplitz_coeffs(&coeffs, n, d)
}

pub(crate) fn toeplitz_coeffs(u: &[i128], n: usize, d: usize) -> Result<IntMatrix> {
    if u.len() > n {
        return Err(Error::BoundOverflow { bound: u.len(), limit: n });
    }
    let mut m = IntMatrix::zeros(n + d - 1, d);
    for col in 0..d {
        for (e, &c) in u.iter().enumerate() {
            m.set(col + e, col, c);
        }
    }
    Ok(m)
}

/// Concatenated Toeplitz matrix of a family: the first `t` entries use width
/// `2d-1` and bound `n`, the rest width `d` and bound `n+d-1`.
pub fn family_matrix(f: &PolyFamily, params: &Params) -> Result<IntMatrix> {
    let level = params.family_level(f.len())?;
    let (n, d, t) = (params.n(), params.d(), params.t());
    let mut blocks = Vec::with_capacity(f.len());
    for (i, p) in f.polys().iter().enumerate() {
        let (bound, width) = if i < t { (n, 2 * d - 1) } else { (n + d - 1, d) };
        if p.bound() != bound {
            return Err(Error::ProfileMismatch(format!(
                "entry {i} has bound {}, expected {bound}",
                p.bound()
            )));
        }
        blocks.push(toeplitz(p, bound, width)?);
    }
    let out = IntMatrix::hstack(&blocks)?;
    debug_assert_eq!(out.cols(), params.family_cols(level));
    Ok(out)
}
