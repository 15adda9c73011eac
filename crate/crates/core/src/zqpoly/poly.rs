use rand::Rng;

use super::Modulus;
use crate::error::{Error, Result};

/// Polynomial over Z_q with a fixed degree bound; high zeros are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    modulus: Modulus,
    coeffs: Vec<u64>,
}

/// Polynomial with signed integer coefficients, used for short elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPoly {
    coeffs: Vec<i128>,
}

impl Poly {
    pub fn zero(modulus: Modulus, bound: usize) -> Self {
        Self { modulus, coeffs: vec![0; bound] }
    }

    /// Builds a polynomial, reducing every coefficient into [0, q).
    pub fn from_coeffs(modulus: Modulus, coeffs: Vec<u64>) -> Self {
        let q = modulus.q();
        let coeffs = coeffs.into_iter().map(|c| c % q).collect();
        Self { modulus, coeffs }
    }

    pub fn from_signed(modulus: Modulus, coeffs: &[i128]) -> Self {
        let coeffs = coeffs.iter().map(|&c| modulus.reduce(c)).collect();
        Self { modulus, coeffs }
    }

    pub fn monomial(modulus: Modulus, bound: usize, degree: usize, value: u64) -> Result<Self> {
        if degree >= bound {
            return Err(Error::BoundOverflow { bound: degree + 1, limit: bound });
        }
        let mut p = Self::zero(modulus, bound);
        p.coeffs[degree] = value % modulus.q();
        Ok(p)
    }

    pub fn random<R: Rng + ?Sized>(modulus: Modulus, bound: usize, rng: &mut R) -> Self {
        let q = modulus.q();
        let coeffs = (0..bound).map(|_| rng.random_range(0..q)).collect();
        Self { modulus, coeffs }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn centered(&self) -> SignedPoly {
        SignedPoly::new(self.coeffs.iter().map(|&c| self.modulus.center(c)).collect())
    }

    /// Same polynomial with a different bound. Fails if a nonzero coefficient would be dropped.
    pub fn resized(&self, bound: usize) -> Result<Self> {
        if self.coeffs.iter().skip(bound).any(|&c| c != 0) {
            return Err(Error::BoundOverflow { bound: self.bound(), limit: bound });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(bound, 0);
        Ok(Self { modulus: self.modulus, coeffs })
    }

    /// `x^shift * self`, with the bound grown by `shift`.
    pub fn shifted(&self, shift: usize) -> Self {
        let mut coeffs = vec![0; shift];
        coeffs.extend_from_slice(&self.coeffs);
        Self { modulus: self.modulus, coeffs }
    }

    pub fn scaled(&self, c: u64) -> Self {
        let m = self.modulus;
        let c = c % m.q();
        Self { modulus: m, coeffs: self.coeffs.iter().map(|&a| m.mul(a, c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |m, a, b| m.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |m, a, b| m.sub(a, b))
    }

    pub fn add_signed(&self, e: &SignedPoly) -> Result<Self> {
        self.add(&e.to_poly(self.modulus))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Modulus, u64, u64) -> u64) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch);
        }
        if self.bound() != other.bound() {
            return Err(Error::BoundMismatch { left: self.bound(), right: other.bound() });
        }
        let m = self.modulus;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(&m, a, b)).collect();
        Ok(Self { modulus: m, coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch);
        }
        if self.bound() == 0 || other.bound() == 0 {
            return Ok(Self::zero(self.modulus, 0));
        }
        let len = self.bound() + other.bound() - 1;
        Ok(Self { modulus: self.modulus, coeffs: self.product_window(other, 0, len) })
    }

    /// Coefficients `start..start+len` of the product, without forming the rest.
    fn product_window(&self, other: &Self, start: usize, len: usize) -> Vec<u64> {
        let m = self.modulus;
        let q = m.q() as u128;
        let (a, b) = (&self.coeffs, &other.coeffs);
        (start..start + len)
            .map(|j| {
                let lo = j.saturating_sub(b.len() - 1);
                let hi = j.min(a.len() - 1);
                let mut acc: u128 = 0;
                for i in lo..=hi {
                    acc += a[i] as u128 * b[j - i] as u128 % q;
                }
                (acc % q) as u64
            })
            .collect()
    }
}

impl SignedPoly {
    pub fn new(coeffs: Vec<i128>) -> Self {
        Self { coeffs }
    }

    pub fn zero(bound: usize) -> Self {
        Self { coeffs: vec![0; bound] }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [i128] {
        &mut self.coeffs
    }

    pub fn max_abs(&self) -> u128 {
        self.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn to_poly(&self, modulus: Modulus) -> Poly {
        Poly::from_signed(modulus, &self.coeffs)
    }

    pub fn resized(&self, bound: usize) -> Result<Self> {
        if self.coeffs.iter().skip(bound).any(|&c| c != 0) {
            return Err(Error::BoundOverflow { bound: self.bound(), limit: bound });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(bound, 0);
        Ok(Self { coeffs })
    }
}

pub fn poly_add(a: &Poly, b: &Poly) -> Result<Poly> {
    a.add(b)
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    a.mul(b)
}

/// Coefficients `k..k+d` of `a*b`. Requires `a.bound() + b.bound() - 1 == 2k + d`.
pub fn middle_product(a: &Poly, b: &Poly, d: usize, k: usize) -> Result<Poly> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch);
    }
    let (da, db) = (a.bound(), b.bound());
    if da == 0 || db == 0 || da + db - 1 != 2 * k + d {
        return Err(Error::DegreeConstraint { da, db, d, k });
    }
    Ok(Poly { modulus: a.modulus, coeffs: a.product_window(b, k, d) })
}

/// Middle product where the offset `k` is implied by the bounds.
pub fn middle_product_auto(a: &Poly, b: &Poly, d: usize) -> Result<Poly> {
    let total = (a.bound() + b.bound()).saturating_sub(1);
    if total < d || (total - d) % 2 != 0 {
        return Err(Error::DegreeConstraint { da: a.bound(), db: b.bound(), d, k: 0 });
    }
    middle_product(a, b, d, (total - d) / 2)
}

/// Ordered sequence of residue polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyFamily(pub Vec<Poly>);

/// Ordered sequence of short signed polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ShortFamily(pub Vec<SignedPoly>);

impl PolyFamily {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn polys(&self) -> &[Poly] {
        &self.0
    }

    pub fn concat(&self, other: &PolyFamily) -> PolyFamily {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        PolyFamily(v)
    }

    /// `sum a_i * r_i`, every term padded to the largest product bound.
    pub fn inner_product(&self, r: &PolyFamily) -> Result<Poly> {
        inner_product(self, r)
    }
}

impl ShortFamily {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn polys(&self) -> &[SignedPoly] {
        &self.0
    }

    pub fn to_residues(&self, modulus: Modulus) -> PolyFamily {
        PolyFamily(self.0.iter().map(|p| p.to_poly(modulus)).collect())
    }

    pub fn max_abs(&self) -> u128 {
        self.0.iter().map(SignedPoly::max_abs).max().unwrap_or(0)
    }
}

pub fn inner_product(a: &PolyFamily, r: &PolyFamily) -> Result<Poly> {
    if a.len() != r.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: r.len() });
    }
    let Some(first) = a.0.first() else {
        return Err(Error::LengthMismatch { left: 0, right: 0 });
    };
    let products = a.0.iter().zip(&r.0).map(|(x, y)| x.mul(y)).collect::<Result<Vec<_>>>()?;
    let bound = products.iter().map(Poly::bound).max().unwrap_or(0);
    let mut acc = Poly::zero(first.modulus, bound);
    for p in products {
        acc = acc.add(&p.resized(bound)?)?;
    }
    Ok(acc)
}
