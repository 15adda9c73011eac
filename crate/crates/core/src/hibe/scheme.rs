use super::schedule::SchemeParams;
use crate::error::{Error, Result};
use crate::gauss::{sample_noise, NoiseParam, RandomSource};
use crate::trapdoor::{sample_trap, trap_gen, PreimageSampler, Trapdoor};
use crate::zqpoly::{middle_product_auto, Poly, PolyFamily, ShortFamily};

/// Bit path `(id_1, ..., id_l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity(Vec<u8>);

impl Identity {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::DepthOutOfRange { depth: 0, max: usize::MAX });
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParams("identity bits must be 0 or 1".into()));
        }
        Ok(Self(bits))
    }

    /// Parses a string of `0`/`1` characters such as `"101"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidParams(format!("identity character {c:?} is not a bit"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn child(&self, bit: u8) -> Result<Self> {
        let mut bits = self.0.clone();
        bits.push(bit);
        Self::new(bits)
    }
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.iter().try_for_each(|b| write!(f, "{b}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MasterPublicKey {
    pub params: SchemeParams,
    pub a_eps: PolyFamily,
    pub u0: Poly,
    /// `h^(i, bit)` stored at index `2(i-1) + bit`.
    pub hlist: Vec<PolyFamily>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterSecretKey {
    pub td: Trapdoor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretKey {
    pub id: Identity,
    pub td: Trapdoor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub ct0: Poly,
    pub cts: Vec<Poly>,
}

/// Binary message polynomial of `k+2` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plaintext(Vec<u8>);

impl Plaintext {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::NonBinaryPlaintext);
        }
        Ok(Self(bits))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }
}

impl MasterPublicKey {
    pub fn h(&self, level: usize, bit: u8) -> &PolyFamily {
        &self.hlist[2 * (level - 1) + bit as usize]
    }

    fn check_depth(&self, depth: usize) -> Result<()> {
        let max = self.params.params.lambda();
        if depth == 0 || depth > max {
            return Err(Error::DepthOutOfRange { depth, max });
        }
        Ok(())
    }

    /// `h^(level, bit)` with every entry widened to bound `n+d-1`.
    fn h_padded(&self, level: usize, bit: u8) -> Result<PolyFamily> {
        let bound = self.params.params.n() + self.params.params.d() - 1;
        Ok(PolyFamily(self.h(level, bit).polys().iter().map(|p| p.resized(bound)).collect::<Result<_>>()?))
    }

    /// Native family of `id`: `a_eps` then `h^(i, id_i)`, unpadded.
    fn native_family(&self, id: &Identity) -> Vec<&Poly> {
        let mut out: Vec<&Poly> = self.a_eps.polys().iter().collect();
        for (i, &b) in id.bits().iter().enumerate() {
            out.extend(self.h(i + 1, b).polys());
        }
        out
    }
}

impl SecretKey {
    pub fn depth(&self) -> usize {
        self.id.depth()
    }
}

pub fn setup(params: &SchemeParams, rng: &mut RandomSource) -> (MasterPublicKey, MasterSecretKey) {
    let p = &params.params;
    let q = p.modulus();
    let (a_eps, td) = trap_gen(p, rng);
    let u0 = Poly::random(q, p.dg(), rng);
    let hlist = (0..2 * p.lambda())
        .map(|_| PolyFamily((0..p.t_prime()).map(|j| Poly::random(q, p.family_bound(j), rng)).collect()))
        .collect();
    (MasterPublicKey { params: params.clone(), a_eps, u0, hlist }, MasterSecretKey { td })
}

/// `(a_eps | h^(1, id_1) | ... | h^(l, id_l))` in the delegation profile.
pub fn build_family(mpk: &MasterPublicKey, id: &Identity) -> Result<PolyFamily> {
    mpk.check_depth(id.depth())?;
    let mut f = mpk.a_eps.clone();
    for (i, &b) in id.bits().iter().enumerate() {
        f = f.concat(&mpk.h_padded(i + 1, b)?);
    }
    Ok(f)
}

pub fn extract(mpk: &MasterPublicKey, msk: &MasterSecretKey, id: &Identity, rng: &mut RandomSource) -> Result<SecretKey> {
    mpk.check_depth(id.depth())?;
    let p = &mpk.params.params;
    let mut h = PolyFamily::default();
    for (i, &b) in id.bits().iter().enumerate() {
        h = h.concat(&mpk.h_padded(i + 1, b)?);
    }
    let sigmas = mpk.params.schedule.sigmas_between(0, id.depth(), p.m());
    let td = sample_trap(&mpk.a_eps, &h, &msk.td, sigmas, p, rng)?;
    Ok(SecretKey { id: id.clone(), td })
}

pub fn derive(mpk: &MasterPublicKey, parent: &SecretKey, bit: u8, rng: &mut RandomSource) -> Result<SecretKey> {
    let depth = parent.depth();
    let id = parent.id.child(bit)?;
    mpk.check_depth(id.depth())?;
    let p = &mpk.params.params;
    let f = build_family(mpk, &parent.id)?;
    let h = mpk.h_padded(depth + 1, bit)?;
    let sigmas = mpk.params.schedule.sigmas_between(depth, depth + 1, p.m());
    let td = sample_trap(&f, &h, &parent.td, sigmas, p, rng)?;
    Ok(SecretKey { id, td })
}

/// Encryption with the scheduled noise for the identity's depth.
pub fn encrypt(mpk: &MasterPublicKey, id: &Identity, mu: &Plaintext, rng: &mut RandomSource) -> Result<Ciphertext> {
    mpk.check_depth(id.depth())?;
    encrypt_with_noise(mpk, id, mu, mpk.params.noise(id.depth()), rng)
}

/// Encryption with an explicit noise width.
pub fn encrypt_with_noise(
    mpk: &MasterPublicKey,
    id: &Identity,
    mu: &Plaintext,
    noise: NoiseParam,
    rng: &mut RandomSource,
) -> Result<Ciphertext> {
    mpk.check_depth(id.depth())?;
    let p = &mpk.params.params;
    let (n, d, k) = (p.n(), p.d(), p.k());
    let q = p.modulus();
    if mu.bits().len() != k + 2 {
        return Err(Error::ShapeMismatch(format!("plaintext of {} bits, expected {}", mu.bits().len(), k + 2)));
    }
    let s = Poly::random(q, n + 2 * d + k - 1, rng);
    let e0 = sample_noise(noise, k + 2, rng);
    let mu_poly = Poly::from_coeffs(q, mu.bits().iter().map(|&b| b as u64).collect());
    let ct0 = middle_product_auto(&mpk.u0, &s, k + 2)?
        .add(&e0.to_poly(q).scaled(2))?
        .add(&mu_poly)?;
    let cts = mpk
        .native_family(id)
        .into_iter()
        .map(|f| {
            let w = if f.bound() == n { 2 * d + k } else { d + k + 1 };
            let e = sample_noise(noise, w, rng);
            middle_product_auto(f, &s, w)?.add(&e.to_poly(q).scaled(2))
        })
        .collect::<Result<_>>()?;
    Ok(Ciphertext { ct0, cts })
}

/// Offline decryption state: the preimage sampler for the key's family at width `psi`.
pub fn decryption_sampler(mpk: &MasterPublicKey, sk: &SecretKey) -> Result<PreimageSampler> {
    let f = build_family(mpk, &sk.id)?;
    PreimageSampler::new(&f, &sk.td, mpk.params.schedule.psi(sk.depth()), &mpk.params.params)
}

pub fn decrypt(mpk: &MasterPublicKey, sk: &SecretKey, ct: &Ciphertext, rng: &mut RandomSource) -> Result<Plaintext> {
    let r = decryption_sampler(mpk, sk)?.sample(&mpk.u0, rng)?;
    decrypt_with_preimage(mpk, &r, ct)
}

/// `(ct0 - sum r_i (.) ct_i)` centered, then reduced mod 2.
pub fn decrypt_with_preimage(mpk: &MasterPublicKey, r: &ShortFamily, ct: &Ciphertext) -> Result<Plaintext> {
    let p = &mpk.params.params;
    let q = p.modulus();
    let k = p.k();
    if ct.cts.len() != r.len() {
        return Err(Error::ShapeMismatch(format!("{} ciphertext entries for a key of {}", ct.cts.len(), r.len())));
    }
    if ct.ct0.bound() != k + 2 {
        return Err(Error::ShapeMismatch(format!("ct0 of bound {}", ct.ct0.bound())));
    }
    let mut acc = ct.ct0.clone();
    for (ri, ci) in r.polys().iter().zip(&ct.cts) {
        if ci.bound() <= k + 1 {
            return Err(Error::ShapeMismatch(format!("ciphertext entry of bound {}", ci.bound())));
        }
        let ri = ri.resized(ci.bound() - k - 1)?.to_poly(q);
        acc = acc.sub(&middle_product_auto(&ri, ci, k + 2)?)?;
    }
    Plaintext::new(acc.centered().coeffs().iter().map(|c| c.rem_euclid(2) as u8).collect())
}
