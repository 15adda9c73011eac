//! Binary file format for parameters, keys and ciphertexts.
//!
//! Every file starts with `MPH1`, a version byte, a kind byte and the nine
//! parameters `(n, d, q, t, gamma, tau, m, lambda, k)` as little-endian u64.
//! Polynomials are a u64 count followed by one u64 per coefficient; signed
//! coefficients use two's complement.

use crate::error::{Error, Result};
use crate::hibe::{Ciphertext, Identity, MasterPublicKey, MasterSecretKey, SchemeParams, SecretKey};
use crate::trapdoor::{Params, Trapdoor};
use crate::zqpoly::{Modulus, Poly, PolyFamily, ShortFamily, SignedPoly};

pub const MAGIC: &[u8; 4] = b"MPH1";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Params = 0,
    Mpk = 1,
    Msk = 2,
    Sk = 3,
    Ct = 4,
}

impl Kind {
    fn from_byte(b: u8) -> Result<Self> {
        Ok(match b {
            0 => Kind::Params,
            1 => Kind::Mpk,
            2 => Kind::Msk,
            3 => Kind::Sk,
            4 => Kind::Ct,
            _ => return Err(fmt_err(format!("unknown kind byte {b}"))),
        })
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Kind::Params => "params",
            Kind::Mpk => "master public key",
            Kind::Msk => "master secret key",
            Kind::Sk => "secret key",
            Kind::Ct => "ciphertext",
        };
        f.write_str(name)
    }
}

/// Identity plus one ciphertext per message block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherFile {
    pub id: Identity,
    pub records: Vec<Ciphertext>,
}

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

struct Writer(Vec<u8>);

impl Writer {
    fn new(kind: Kind, params: &Params) -> Self {
        let mut w = Writer(Vec::new());
        w.0.extend_from_slice(MAGIC);
        w.0.push(VERSION);
        w.0.push(kind as u8);
        let p = params;
        for v in [p.n(), p.d(), p.q() as usize, p.t(), p.gamma(), p.tau(), p.m(), p.lambda(), p.k()] {
            w.u64(v as u64);
        }
        w
    }

    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn poly(&mut self, p: &Poly) {
        self.u64(p.bound() as u64);
        p.coeffs().iter().for_each(|&c| self.u64(c));
    }

    fn signed(&mut self, p: &SignedPoly) -> Result<()> {
        self.u64(p.bound() as u64);
        for &c in p.coeffs() {
            let c = i64::try_from(c).map_err(|_| fmt_err(format!("coefficient {c} exceeds 64 bits")))?;
            self.u64(c as u64);
        }
        Ok(())
    }

    fn family(&mut self, f: &PolyFamily) {
        self.u64(f.len() as u64);
        f.polys().iter().for_each(|p| self.poly(p));
    }

    fn trapdoor(&mut self, td: &Trapdoor) -> Result<()> {
        self.u64(td.level() as u64);
        self.u64(td.columns().len() as u64);
        for col in td.columns() {
            self.u64(col.len() as u64);
            col.polys().iter().try_for_each(|p| self.signed(p))?;
        }
        Ok(())
    }

    fn identity(&mut self, id: &Identity) {
        self.u64(id.depth() as u64);
        self.0.extend_from_slice(id.bits());
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
    params: Params,
}

impl<'a> Reader<'a> {
    fn open(buf: &'a [u8], expected: Kind) -> Result<Self> {
        let (params, kind) = read_header(buf)?;
        if kind != expected {
            return Err(fmt_err(format!("expected a {expected} file, found a {kind} file")));
        }
        Ok(Reader { buf, pos: HEADER_LEN, params })
    }

    fn bytes(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len()).ok_or_else(|| fmt_err("truncated file"))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.bytes(8)?.try_into().expect("8 bytes")))
    }

    fn len(&mut self) -> Result<usize> {
        let n = self.u64()?;
        let remaining = (self.buf.len() - self.pos) as u64;
        if n > remaining {
            return Err(fmt_err(format!("length {n} exceeds remaining {remaining} bytes")));
        }
        Ok(n as usize)
    }

    fn poly(&mut self) -> Result<Poly> {
        let n = self.len()?;
        let q = self.params.q();
        let coeffs = (0..n)
            .map(|_| {
                let c = self.u64()?;
                if c >= q {
                    return Err(fmt_err(format!("coefficient {c} not reduced mod {q}")));
                }
                Ok(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(self.params.modulus(), coeffs))
    }

    fn signed(&mut self) -> Result<SignedPoly> {
        let n = self.len()?;
        Ok(SignedPoly::new((0..n).map(|_| Ok(self.u64()? as i64 as i128)).collect::<Result<_>>()?))
    }

    fn family(&mut self) -> Result<PolyFamily> {
        let n = self.len()?;
        Ok(PolyFamily((0..n).map(|_| self.poly()).collect::<Result<_>>()?))
    }

    fn trapdoor(&mut self) -> Result<Trapdoor> {
        let level = self.u64()? as usize;
        let cols = self.len()?;
        let columns = (0..cols)
            .map(|_| {
                let n = self.len()?;
                Ok(ShortFamily((0..n).map(|_| self.signed()).collect::<Result<_>>()?))
            })
            .collect::<Result<Vec<_>>>()?;
        Trapdoor::new(level, columns, &self.params).map_err(|e| fmt_err(e.to_string()))
    }

    fn identity(&mut self) -> Result<Identity> {
        let n = self.len()?;
        let bits = self.bytes(n)?.to_vec();
        let id = Identity::new(bits).map_err(|e| fmt_err(format!("identity: {e}")))?;
        if id.depth() > self.params.lambda() {
            return Err(fmt_err(format!("identity depth {} exceeds {}", id.depth(), self.params.lambda())));
        }
        Ok(id)
    }

    fn finish(self) -> Result<()> {
        if self.pos != self.buf.len() {
            return Err(fmt_err(format!("{} trailing bytes", self.buf.len() - self.pos)));
        }
        Ok(())
    }
}

const HEADER_LEN: usize = 6 + 9 * 8;

/// Parameters and kind from a file header.
pub fn read_header(buf: &[u8]) -> Result<(Params, Kind)> {
    if buf.len() < HEADER_LEN {
        return Err(fmt_err("truncated header"));
    }
    if &buf[..4] != MAGIC {
        return Err(fmt_err("bad magic"));
    }
    if buf[4] != VERSION {
        return Err(fmt_err(format!("unsupported version {}", buf[4])));
    }
    let kind = Kind::from_byte(buf[5])?;
    let f: Vec<u64> = buf[6..HEADER_LEN].chunks(8).map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
    let small = |v: u64| usize::try_from(v).ok().filter(|&x| x < 1 << 32).ok_or_else(|| fmt_err("parameter out of range"));
    let modulus = Modulus::new(f[2]).map_err(|e| fmt_err(e.to_string()))?;
    let params = Params::new(small(f[0])?, small(f[1])?, modulus, small(f[6])?, small(f[7])?, small(f[8])?)
        .map_err(|e| fmt_err(e.to_string()))?;
    if (params.t(), params.gamma(), params.tau()) != (small(f[3])?, small(f[4])?, small(f[5])?) {
        return Err(fmt_err("inconsistent t, gamma or tau"));
    }
    Ok((params, kind))
}

pub fn encode_params(params: &Params) -> Vec<u8> {
    Writer::new(Kind::Params, params).0
}

pub fn decode_params(buf: &[u8]) -> Result<Params> {
    let r = Reader::open(buf, Kind::Params)?;
    let p = r.params;
    r.finish()?;
    Ok(p)
}

pub fn encode_mpk(mpk: &MasterPublicKey) -> Vec<u8> {
    let mut w = Writer::new(Kind::Mpk, &mpk.params.params);
    w.family(&mpk.a_eps);
    w.poly(&mpk.u0);
    w.u64(mpk.hlist.len() as u64);
    mpk.hlist.iter().for_each(|h| w.family(h));
    w.0
}

pub fn decode_mpk(buf: &[u8]) -> Result<MasterPublicKey> {
    let mut r = Reader::open(buf, Kind::Mpk)?;
    let p = r.params;
    let a_eps = r.family()?;
    let u0 = r.poly()?;
    let count = r.len()?;
    let hlist = (0..count).map(|_| r.family()).collect::<Result<Vec<_>>>()?;
    r.finish()?;
    let profile_ok = |f: &PolyFamily| {
        f.len() == p.t_prime() && f.polys().iter().enumerate().all(|(i, x)| x.bound() == p.family_bound(i))
    };
    if !profile_ok(&a_eps) || u0.bound() != p.dg() || hlist.len() != 2 * p.lambda() || !hlist.iter().all(profile_ok) {
        return Err(fmt_err("master public key does not match its parameters"));
    }
    Ok(MasterPublicKey { params: SchemeParams::from_params(p), a_eps, u0, hlist })
}

pub fn encode_msk(params: &Params, msk: &MasterSecretKey) -> Result<Vec<u8>> {
    let mut w = Writer::new(Kind::Msk, params);
    w.trapdoor(&msk.td)?;
    Ok(w.0)
}

pub fn decode_msk(buf: &[u8]) -> Result<(Params, MasterSecretKey)> {
    let mut r = Reader::open(buf, Kind::Msk)?;
    let td = r.trapdoor()?;
    let p = r.params;
    r.finish()?;
    if td.level() != 1 {
        return Err(fmt_err("master secret key must be a level-1 trapdoor"));
    }
    Ok((p, MasterSecretKey { td }))
}

pub fn encode_sk(params: &Params, sk: &SecretKey) -> Result<Vec<u8>> {
    let mut w = Writer::new(Kind::Sk, params);
    w.identity(&sk.id);
    w.trapdoor(&sk.td)?;
    Ok(w.0)
}

pub fn decode_sk(buf: &[u8]) -> Result<(Params, SecretKey)> {
    let mut r = Reader::open(buf, Kind::Sk)?;
    let id = r.identity()?;
    let td = r.trapdoor()?;
    let p = r.params;
    r.finish()?;
    if td.level() != 1 + id.depth() * p.m() {
        return Err(fmt_err("secret key level does not match its identity"));
    }
    Ok((p, SecretKey { id, td }))
}

pub fn encode_ct(params: &Params, file: &CipherFile) -> Vec<u8> {
    let mut w = Writer::new(Kind::Ct, params);
    w.identity(&file.id);
    w.u64(file.records.len() as u64);
    for ct in &file.records {
        w.poly(&ct.ct0);
        w.family(&PolyFamily(ct.cts.clone()));
    }
    w.0
}

pub fn decode_ct(buf: &[u8]) -> Result<(Params, CipherFile)> {
    let mut r = Reader::open(buf, Kind::Ct)?;
    let id = r.identity()?;
    let count = r.len()?;
    let records = (0..count)
        .map(|_| {
            let ct0 = r.poly()?;
            let cts = r.family()?.0;
            Ok(Ciphertext { ct0, cts })
        })
        .collect::<Result<Vec<_>>>()?;
    let p = r.params;
    r.finish()?;
    Ok((p, CipherFile { id, records }))
}
