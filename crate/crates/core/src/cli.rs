//! Command implementations behind the `mphibe` binary.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::error::Error;
use crate::format::{self, CipherFile, Kind};
use crate::gauss::RandomSource;
use crate::hibe::{self, Identity, MasterPublicKey, Plaintext, SchemeParams};
use crate::trapdoor::verify_trapdoor;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Infeasible(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoFeasibleQ { .. } => CliError::Infeasible(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Up to 64 hex digits, left-padded with zeros to 32 bytes.
pub fn parse_seed(s: &str) -> CliResult<[u8; 32]> {
    let s = s.strip_prefix("0x").unwrap_or(s);
    if s.is_empty() || s.len() > 64 {
        return Err(CliError::Usage(format!("seed must be 1 to 64 hex digits, got {} characters", s.len())));
    }
    let padded = format!("{s:0>64}");
    let bytes = hex::decode(padded).map_err(|e| CliError::Usage(format!("invalid seed: {e}")))?;
    Ok(bytes.try_into().expect("32 bytes"))
}

fn rng_for(seed: Option<[u8; 32]>) -> RandomSource {
    seed.map_or_else(RandomSource::from_entropy, RandomSource::from_seed)
}

fn parse_identity(s: &str) -> CliResult<Identity> {
    Identity::parse(s).map_err(|e| CliError::Usage(format!("malformed identity {s:?}: {e}")))
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load_mpk(path: &Path) -> CliResult<MasterPublicKey> {
    Ok(format::decode_mpk(&read(path)?)?)
}

fn check_same_params(mpk: &MasterPublicKey, p: &crate::trapdoor::Params, what: &str) -> CliResult<()> {
    if &mpk.params.params != p {
        return Err(CliError::Data(format!("{what} was made for different parameters than the public key")));
    }
    Ok(())
}

/// Human-readable parameter and schedule summary.
pub fn describe(sp: &SchemeParams) -> String {
    let p = &sp.params;
    let s = &sp.schedule;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n={} d={} q={} t={} gamma={} tau={} m={} lambda={} k={} beta={}",
        p.n(),
        p.d(),
        p.q(),
        p.t(),
        p.gamma(),
        p.tau(),
        p.m(),
        p.lambda(),
        p.k(),
        p.beta()
    );
    let list = |v: &[f64]| v.iter().map(|x| format!("{x:.4e}")).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "sigma: {}", list(&s.sigmas));
    let _ = writeln!(out, "psi:   {}", list(&s.psi));
    let _ = writeln!(out, "alpha: {}", list(&s.alpha));
    let widths: Vec<f64> = (1..=p.lambda()).map(|l| sp.noise(l).alpha_q).collect();
    let _ = writeln!(out, "alpha*q: {}", list(&widths));
    if widths.iter().any(|&w| w < 1.0) {
        let _ = writeln!(out, "note: noise width below one; this preset exercises the algebra only");
    }
    out
}

fn derive_preset(name: &str) -> CliResult<SchemeParams> {
    let preset = hibe::preset(name).ok_or_else(|| {
        let names: Vec<_> = hibe::PRESETS.iter().map(|p| p.name).collect();
        CliError::Usage(format!("unknown preset {name:?}; known presets: {}", names.join(", ")))
    })?;
    Ok(preset.derive()?)
}

pub fn cmd_params(preset: &str, out: Option<&Path>) -> CliResult<String> {
    let sp = derive_preset(preset)?;
    if let Some(out) = out {
        write(out, &format::encode_params(&sp.params))?;
    }
    Ok(describe(&sp))
}

pub fn cmd_setup(preset: &str, seed: Option<[u8; 32]>, mpk_out: &Path, msk_out: &Path) -> CliResult<String> {
    let sp = derive_preset(preset)?;
    let mut rng = rng_for(seed);
    let (mpk, msk) = hibe::setup(&sp, &mut rng);
    write(mpk_out, &format::encode_mpk(&mpk))?;
    write(msk_out, &format::encode_msk(&sp.params, &msk)?)?;
    Ok(describe(&sp))
}

pub fn cmd_extract(mpk: &Path, msk: &Path, id: &str, out: &Path, seed: Option<[u8; 32]>) -> CliResult<()> {
    let id = parse_identity(id)?;
    let mpk = load_mpk(mpk)?;
    let (p, msk) = format::decode_msk(&read(msk)?)?;
    check_same_params(&mpk, &p, "master secret key")?;
    if id.depth() > p.lambda() {
        return Err(CliError::Usage(format!("identity depth {} exceeds lambda={}", id.depth(), p.lambda())));
    }
    let sk = hibe::extract(&mpk, &msk, &id, &mut rng_for(seed))?;
    write(out, &format::encode_sk(&p, &sk)?)
}

pub fn cmd_derive(mpk: &Path, sk: &Path, bit: u8, out: &Path, seed: Option<[u8; 32]>) -> CliResult<()> {
    if bit > 1 {
        return Err(CliError::Usage(format!("bit must be 0 or 1, got {bit}")));
    }
    let mpk = load_mpk(mpk)?;
    let (p, parent) = format::decode_sk(&read(sk)?)?;
    check_same_params(&mpk, &p, "secret key")?;
    if parent.depth() >= p.lambda() {
        return Err(CliError::Data(format!("key is already at the maximum depth {}", p.lambda())));
    }
    let child = hibe::derive(&mpk, &parent, bit, &mut rng_for(seed))?;
    write(out, &format::encode_sk(&p, &child)?)
}

/// Splits `len || message` into plaintexts of `k+1` data bits and a zero top bit.
/// An empty message gives no plaintexts.
pub fn pack_message(msg: &[u8], k: usize) -> Vec<Plaintext> {
    if msg.is_empty() {
        return Vec::new();
    }
    let mut bytes = (msg.len() as u64).to_le_bytes().to_vec();
    bytes.extend_from_slice(msg);
    let bits: Vec<u8> = bytes.iter().flat_map(|&b| (0..8).map(move |i| (b >> i) & 1)).collect();
    bits.chunks(k + 1)
        .map(|chunk| {
            let mut v = chunk.to_vec();
            v.resize(k + 2, 0);
            Plaintext::new(v).expect("binary")
        })
        .collect()
}

pub fn unpack_message(blocks: &[Plaintext], k: usize) -> CliResult<Vec<u8>> {
    if blocks.is_empty() {
        return Ok(Vec::new());
    }
    let mut bits = Vec::with_capacity(blocks.len() * (k + 1));
    for b in blocks {
        if b.bits().len() != k + 2 || b.bits()[k + 1] != 0 {
            return Err(CliError::Data("decrypted block has a nonzero pad bit".into()));
        }
        bits.extend_from_slice(&b.bits()[..k + 1]);
    }
    let bytes: Vec<u8> =
        bits.chunks_exact(8).map(|c| c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (b << i))).collect();
    if bytes.len() < 8 {
        return Err(CliError::Data("decrypted stream shorter than its length header".into()));
    }
    let len = u64::from_le_bytes(bytes[..8].try_into().expect("8 bytes"));
    let body = &bytes[8..];
    if len > body.len() as u64 || (body.len() as u64 - len) * 8 >= (k + 1) as u64 + 8 {
        return Err(CliError::Data(format!("length header {len} does not match {} decrypted bytes", body.len())));
    }
    Ok(body[..len as usize].to_vec())
}

pub fn cmd_encrypt(mpk: &Path, id: &str, input: &Path, out: &Path, seed: Option<[u8; 32]>) -> CliResult<()> {
    let id = parse_identity(id)?;
    let mpk = load_mpk(mpk)?;
    let p = mpk.params.params;
    if id.depth() > p.lambda() {
        return Err(CliError::Usage(format!("identity depth {} exceeds lambda={}", id.depth(), p.lambda())));
    }
    let msg = read(input)?;
    let mut rng = rng_for(seed);
    let records = pack_message(&msg, p.k())
        .iter()
        .map(|mu| hibe::encrypt(&mpk, &id, mu, &mut rng))
        .collect::<crate::Result<Vec<_>>>()?;
    write(out, &format::encode_ct(&p, &CipherFile { id, records }))
}

pub fn cmd_decrypt(mpk: &Path, sk: &Path, ct: &Path, out: &Path, seed: Option<[u8; 32]>) -> CliResult<()> {
    let mpk = load_mpk(mpk)?;
    let (p, sk) = format::decode_sk(&read(sk)?)?;
    check_same_params(&mpk, &p, "secret key")?;
    let (pc, file) = format::decode_ct(&read(ct)?)?;
    check_same_params(&mpk, &pc, "ciphertext")?;
    if file.id != sk.id {
        return Err(CliError::Data(format!("ciphertext is for identity {}, key is for {}", file.id, sk.id)));
    }
    let mut rng = rng_for(seed);
    let blocks = if file.records.is_empty() {
        Vec::new()
    } else {
        let sampler = hibe::decryption_sampler(&mpk, &sk)?;
        file.records
            .iter()
            .map(|ct| {
                let r = sampler.sample(&mpk.u0, &mut rng)?;
                hibe::decrypt_with_preimage(&mpk, &r, ct)
            })
            .collect::<crate::Result<Vec<_>>>()?
    };
    write(out, &unpack_message(&blocks, p.k())?)
}

/// Checks a master or user secret key against the public key.
pub fn cmd_verify(mpk: &Path, key: &Path) -> CliResult<bool> {
    let mpk = load_mpk(mpk)?;
    let bytes = read(key)?;
    let (_, kind) = format::read_header(&bytes)?;
    match kind {
        Kind::Msk => {
            let (p, msk) = format::decode_msk(&bytes)?;
            check_same_params(&mpk, &p, "master secret key")?;
            Ok(verify_trapdoor(&mpk.a_eps, &msk.td, &p)?)
        }
        Kind::Sk => {
            let (p, sk) = format::decode_sk(&bytes)?;
            check_same_params(&mpk, &p, "secret key")?;
            let f = hibe::build_family(&mpk, &sk.id)?;
            Ok(verify_trapdoor(&f, &sk.td, &p)?)
        }
        other => Err(CliError::Data(format!("cannot verify a {other} file"))),
    }
}
