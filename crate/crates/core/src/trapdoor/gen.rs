use rand::Rng;

use super::gadget::{gadget_matrix, gadget_poly};
use super::Params;
use crate::error::{Error, Result};
use crate::gauss::{omega_sqrt_log, RandomSource};
use crate::zqpoly::{family_matrix, toeplitz_coeffs, IntMatrix, Poly, PolyFamily, ShortFamily, SignedPoly};

/// Short polynomials whose matrix view `R` satisfies `F [R; I] = G`.
///
/// Level 1 holds `gamma*tau` columns of `t` polynomials of bound `d`. Level
/// `k >= 2` holds `d*gamma*tau` columns of `t + (k-1)*gamma*tau` polynomials,
/// the first `t` of bound `2d-1` and the rest of bound `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trapdoor {
    level: usize,
    columns: Vec<ShortFamily>,
}

impl Trapdoor {
    pub fn new(level: usize, columns: Vec<ShortFamily>, params: &Params) -> Result<Self> {
        let (count, len) = match level {
            0 => return Err(Error::ShapeMismatch("trapdoor level must be at least 1".into())),
            1 => (params.gt(), params.t()),
            k => (params.dgt(), params.family_len(k - 1)),
        };
        if columns.len() != count {
            return Err(Error::ShapeMismatch(format!("{} trapdoor columns, expected {count}", columns.len())));
        }
        for col in &columns {
            if col.len() != len {
                return Err(Error::ShapeMismatch(format!("trapdoor column of {} entries, expected {len}", col.len())));
            }
            for (i, p) in col.polys().iter().enumerate() {
                let bound = if level == 1 { params.d() } else { params.preimage_bound(i) };
                if p.bound() != bound {
                    return Err(Error::ShapeMismatch(format!("trapdoor entry {i} has bound {}", p.bound())));
                }
            }
        }
        Ok(Self { level, columns })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn columns(&self) -> &[ShortFamily] {
        &self.columns
    }

    pub fn max_abs(&self) -> u128 {
        self.columns.iter().map(ShortFamily::max_abs).max().unwrap_or(0)
    }

    /// Matrix view: Toeplitz blocks at level 1, plain coefficient columns above.
    pub fn matrix(&self) -> IntMatrix {
        if self.level == 1 {
            let d = self.columns[0].polys()[0].bound();
            let t = self.columns[0].len();
            let mut out = IntMatrix::zeros((2 * d - 1) * t, d * self.columns.len());
            for (j, col) in self.columns.iter().enumerate() {
                for (i, w) in col.polys().iter().enumerate() {
                    let block = toeplitz_coeffs(w.coeffs(), d, d).expect("bound d");
                    for r in 0..2 * d - 1 {
                        for c in 0..d {
                            out.set(i * (2 * d - 1) + r, j * d + c, block.get(r, c));
                        }
                    }
                }
            }
            out
        } else {
            let rows: usize = self.columns[0].polys().iter().map(SignedPoly::bound).sum();
            let mut out = IntMatrix::zeros(rows, self.columns.len());
            for (c, col) in self.columns.iter().enumerate() {
                for (r, &x) in col.polys().iter().flat_map(|p| p.coeffs()).enumerate() {
                    out.set(r, c, x);
                }
            }
            out
        }
    }
}

pub fn trapdoor_matrix(td: &Trapdoor) -> IntMatrix {
    td.matrix()
}

/// Root family `(a_1, ..., a_{t+gamma*tau})` with its level-1 trapdoor.
pub fn trap_gen(params: &Params, rng: &mut RandomSource) -> (PolyFamily, Trapdoor) {
    let q = params.modulus();
    let (n, d, t) = (params.n(), params.d(), params.t());
    let beta = params.beta() as i128;
    let head: Vec<Poly> = (0..t).map(|_| Poly::random(q, n, rng)).collect();
    let mut columns = Vec::with_capacity(params.gt());
    let mut family = head.clone();
    for j in 1..=params.gt() {
        let w: Vec<SignedPoly> =
            (0..t).map(|_| SignedPoly::new((0..d).map(|_| rng.random_range(-beta..=beta)).collect())).collect();
        let mut a = gadget_poly(j, params).expect("index in range");
        for (ai, wi) in head.iter().zip(&w) {
            a = a.sub(&ai.mul(&wi.to_poly(q)).expect("same modulus")).expect("bound n+d-1");
        }
        family.push(a);
        columns.push(ShortFamily(w));
    }
    let td = Trapdoor::new(1, columns, params).expect("level-1 shape");
    (PolyFamily(family), td)
}

/// `F [R; I] = G mod q`, exactly.
pub fn verify_trapdoor(f: &PolyFamily, td: &Trapdoor, params: &Params) -> Result<bool> {
    let level = params.family_level(f.len())?;
    if level != td.level() {
        return Err(Error::ShapeMismatch(format!("family of level {level}, trapdoor of level {}", td.level())));
    }
    let a = family_matrix(f, params)?;
    let r = td.matrix();
    let stacked = IntMatrix::vstack(&[r, IntMatrix::identity(params.dgt())])?;
    Ok(a.mul_mod(&stacked, params.modulus())? == gadget_matrix(params))
}

/// `sqrt(rows * cols) * max |entry|` of the matrix view.
pub fn s1_bound(td: &Trapdoor) -> f64 {
    let m = td.matrix();
    ((m.rows() * m.cols()) as f64).sqrt() * m.max_abs() as f64
}

/// Smallest sampling width admitted for a trapdoor with singular-value bound `s1`.
pub fn min_sigma(s1: f64, params: &Params) -> f64 {
    omega_sqrt_log(params.dg() as f64) * (7.0 * (s1 * s1 + 1.0)).sqrt()
}
