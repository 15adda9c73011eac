//! Acceptance criteria, one test per criterion. Each prints a PASS/FAIL line;
//! run with `--nocapture` to see them.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, RngCore};

use mphibe::dmplwe::{dmp_sample_with, DegreeVector};
use mphibe::format;
use mphibe::gauss::{sample_z, GaussParam, NoiseParam, RandomSource};
use mphibe::hibe::{
    self, decrypt, decrypt_with_preimage, decryption_sampler, encrypt, encrypt_with_noise, extract, setup, Identity,
    Plaintext,
};
use mphibe::trapdoor::{gen_sample_pre, sample_trap, trap_del, trap_gen, verify_trapdoor, PreimageSampler};
use mphibe::zqpoly::{middle_product_auto, toeplitz, Modulus, Poly, PolyFamily};

fn report(n: u32, name: &str, ok: bool, detail: &str) {
    println!("{} C{n} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn random_bits(len: usize, rng: &mut RandomSource) -> Plaintext {
    Plaintext::new((0..len).map(|_| rng.random_range(0..2u8)).collect()).unwrap()
}

#[test]
fn criterion_01_middle_product_law() {
    let start = Instant::now();
    let q = Modulus::new(257).unwrap();
    let (n, d, k) = (8, 3, 2);
    let mut rng = RandomSource::from_u64(0xc1);
    let mut failures = 0;
    for _ in 0..1000 {
        let r = Poly::random(q, k + 1, &mut rng);
        let a = Poly::random(q, n, &mut rng);
        let s = Poly::random(q, n + d + k - 1, &mut rng);
        let lhs = middle_product_auto(&r, &middle_product_auto(&a, &s, d + k).unwrap(), d).unwrap();
        let rhs = middle_product_auto(&r.mul(&a).unwrap(), &s, d).unwrap();
        failures += (lhs != rhs) as usize;
    }
    let elapsed = start.elapsed();
    let ok = failures == 0 && elapsed < Duration::from_secs(5);
    report(1, "middle-product law", ok, &format!("1000 triples, {failures} mismatches, {elapsed:.2?}"));
}

#[test]
fn criterion_02_toeplitz_product() {
    let start = Instant::now();
    let q = Modulus::new(257).unwrap();
    let (k, n, d) = (5, 4, 3);
    let mut rng = RandomSource::from_u64(0xc2);
    let mut failures = 0;
    for _ in 0..100 {
        let u = Poly::random(q, k, &mut rng);
        let v = Poly::random(q, n, &mut rng);
        let lhs = toeplitz(&u, k, n + d - 1).unwrap().mul_mod(&toeplitz(&v, n, d).unwrap(), q).unwrap();
        let rhs = toeplitz(&u.mul(&v).unwrap(), k + n - 1, d).unwrap();
        failures += (lhs != rhs) as usize;
    }
    let elapsed = start.elapsed();
    let ok = failures == 0 && elapsed < Duration::from_secs(5);
    report(2, "Toeplitz product", ok, &format!("100 pairs, {failures} mismatches, {elapsed:.2?}"));
}

fn toy_l1() -> hibe::SchemeParams {
    hibe::preset("toy-l1").unwrap().derive().unwrap()
}

#[test]
fn criterion_03_trapgen_identity() {
    let sp = toy_l1();
    let p = sp.params;
    assert_eq!((p.n(), p.d(), p.q(), p.tau(), p.gamma(), p.m(), p.t(), p.beta()), (4, 2, 257, 9, 3, 2, 27, 1));
    let mut verified = 0;
    let mut max = 0;
    for seed in 0..20 {
        let (a, td) = trap_gen(&p, &mut RandomSource::from_u64(0xc300 + seed));
        verified += verify_trapdoor(&a, &td, &p).unwrap() as usize;
        max = max.max(td.max_abs());
    }
    let ok = verified == 20 && max <= p.beta() as u128;
    report(3, "TrapGen identity", ok, &format!("{verified}/20 verified, max |coeff| = {max}, beta = {}", p.beta()));
}

#[test]
fn criterion_04_preimage_exactness() {
    let sp = toy_l1();
    let p = sp.params;
    let mut rng = RandomSource::from_u64(0xc4);
    let (a, td) = trap_gen(&p, &mut rng);
    let sigma = sp.schedule.sigmas[0];
    let sampler = PreimageSampler::new(&a, &td, sigma, &p).unwrap();
    let (mut exact, mut coeffs, mut over3, mut over6) = (0, 0usize, 0usize, 0usize);
    for _ in 0..100 {
        let u = Poly::random(p.modulus(), p.dg(), &mut rng);
        let r = sampler.sample(&u, &mut rng).unwrap();
        exact += (a.inner_product(&r.to_residues(p.modulus())).unwrap() == u) as usize;
        for c in r.polys().iter().flat_map(|x| x.coeffs()) {
            coeffs += 1;
            let c = c.unsigned_abs() as f64;
            over3 += (c > 3.0 * sigma) as usize;
            over6 += (c > 6.0 * sigma) as usize;
        }
    }
    let ok = exact == 100 && coeffs >= 10_000 && over6 == 0 && (over3 as f64) < 1e-3 * coeffs as f64;
    report(
        4,
        "preimage exactness",
        ok,
        &format!("{exact}/100 exact, {coeffs} coefficients, {over3} beyond 3 sigma, {over6} beyond 6 sigma"),
    );
}

#[test]
fn criterion_05_delegation_exactness() {
    let sp = toy_l1();
    let p = sp.params;
    let s = &sp.schedule;
    let mut rng = RandomSource::from_u64(0xc5);
    let (a, td) = trap_gen(&p, &mut rng);
    let h: PolyFamily = PolyFamily(
        (0..2 * p.gt()).map(|_| Poly::random(p.modulus(), p.n() + p.d() - 1, &mut rng)).collect(),
    );
    let h1 = PolyFamily(h.polys()[..p.gt()].to_vec());
    let td_del = trap_del(&a, &h1, &td, s.sigmas[0], &p, &mut rng).unwrap();
    let del_ok = verify_trapdoor(&a.concat(&h1), &td_del, &p).unwrap();
    let td2 = sample_trap(&a, &h, &td, &s.sigmas[..2], &p, &mut rng).unwrap();
    let f = a.concat(&h);
    let sample_ok = td2.level() == 3 && verify_trapdoor(&f, &td2, &p).unwrap();
    let sampler = PreimageSampler::new(&f, &td2, s.psi(1), &p).unwrap();
    let mut exact = 0;
    for _ in 0..50 {
        let u = Poly::random(p.modulus(), p.dg(), &mut rng);
        let r = sampler.sample(&u, &mut rng).unwrap();
        exact += (f.inner_product(&r.to_residues(p.modulus())).unwrap() == u) as usize;
    }
    let ok = del_ok && sample_ok && exact == 50;
    report(
        5,
        "delegation exactness",
        ok,
        &format!("TrapDel verifies: {del_ok}, SampleTrap(m'=2) verifies: {sample_ok}, {exact}/50 exact preimages"),
    );
}

#[test]
fn criterion_06_sampler_statistics() {
    let sigma = 20.0;
    let n = 100_000;
    // Variance of the width-20 discrete Gaussian by direct summation over |x| <= 12 sigma.
    let weights: Vec<(f64, f64)> = (-240..=240)
        .map(|x| (x as f64, (-std::f64::consts::PI * (x * x) as f64 / (sigma * sigma)).exp()))
        .collect();
    let z: f64 = weights.iter().map(|w| w.1).sum();
    let oracle: f64 = weights.iter().map(|(x, w)| x * x * w).sum::<f64>() / z;
    assert!((oracle - 63.66).abs() < 0.01);
    let mut rng = RandomSource::from_u64(0xc6);
    let xs: Vec<f64> = (0..n).map(|_| sample_z(GaussParam::centered(sigma), &mut rng) as f64).collect();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
    let ok = mean.abs() <= 3.0 * sigma / (n as f64).sqrt() && (var / oracle - 1.0).abs() <= 0.1;
    report(6, "sampler statistics", ok, &format!("mean {mean:.4}, variance {var:.3} vs oracle {oracle:.3}"));
}

#[test]
fn criterion_07_zero_noise_roundtrip() {
    let sp = hibe::preset("toy-l2").unwrap().derive().unwrap();
    let k = sp.params.k();
    let mut rng = RandomSource::from_u64(0xc7);
    let (mpk, msk) = setup(&sp, &mut rng);
    let mut details = Vec::new();
    let mut ok = true;
    for id in ["1", "01"] {
        let id = Identity::parse(id).unwrap();
        let sk = extract(&mpk, &msk, &id, &mut rng).unwrap();
        let sampler = decryption_sampler(&mpk, &sk).unwrap();
        let mut good = 0;
        for _ in 0..50 {
            let mu = random_bits(k + 2, &mut rng);
            let ct = encrypt_with_noise(&mpk, &id, &mu, NoiseParam::zero(), &mut rng).unwrap();
            let r = sampler.sample(&mpk.u0, &mut rng).unwrap();
            good += (decrypt_with_preimage(&mpk, &r, &ct).unwrap() == mu) as usize;
        }
        ok &= good == 50;
        details.push(format!("depth {}: {good}/50", id.depth()));
    }
    report(7, "zero-noise HIBE roundtrip", ok, &details.join(", "));
}

/// Successes out of 100 noisy roundtrips at `depth`, or why the preset has no parameters.
fn noisy_roundtrips(preset: &str, depth: usize, seed: u64) -> Result<(usize, u64), String> {
    let sp = hibe::preset(preset).unwrap().derive().map_err(|e| e.to_string())?;
    let k = sp.params.k();
    let mut rng = RandomSource::from_u64(seed);
    let (mpk, msk) = setup(&sp, &mut rng);
    let id = Identity::new((0..depth).map(|i| (i % 2) as u8).collect()).unwrap();
    let sk = extract(&mpk, &msk, &id, &mut rng).map_err(|e| e.to_string())?;
    let sampler = decryption_sampler(&mpk, &sk).map_err(|e| e.to_string())?;
    let mut good = 0;
    for _ in 0..100 {
        let mu = random_bits(k + 2, &mut rng);
        let ct = encrypt(&mpk, &id, &mu, &mut rng).unwrap();
        let r = sampler.sample(&mpk.u0, &mut rng).unwrap();
        good += (decrypt_with_preimage(&mpk, &r, &ct).unwrap() == mu) as usize;
    }
    Ok((good, sp.params.q()))
}

#[test]
fn criterion_08_noisy_roundtrip() {
    let start = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    for (preset, depth) in [("noisy-l1", 1), ("noisy-l2", 2)] {
        match noisy_roundtrips(preset, depth, 0xc8 + depth as u64) {
            Ok((good, q)) => {
                ok &= good >= 99;
                details.push(format!("depth {depth}: {good}/100 at q={q}"));
            }
            Err(e) => {
                ok = false;
                details.push(format!("depth {depth}: {e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(600);
    report(8, "noisy HIBE roundtrip", ok, &format!("{}; {elapsed:.2?}", details.join("; ")));
}

#[test]
fn criterion_09_dmplwe_shape() {
    let mut details = Vec::new();
    let mut ok = true;
    for (preset, id) in [("noisy-l1", "1"), ("toy-l2", "10")] {
        let sp = hibe::preset(preset).unwrap().derive().unwrap();
        let p = sp.params;
        let mut rng = RandomSource::from_u64(0xc9);
        let (mpk, _) = setup(&sp, &mut rng);
        let id = Identity::parse(id).unwrap();
        let mu = random_bits(p.k() + 2, &mut rng);
        let seed = rng.fork_seed();
        let ct = encrypt(&mpk, &id, &mu, &mut RandomSource::from_seed(seed)).unwrap();

        let mut replay = RandomSource::from_seed(seed);
        let s = Poly::random(p.modulus(), p.n() + 2 * p.d() + p.k() - 1, &mut replay);
        let mut fs = vec![mpk.u0.clone()];
        fs.extend(mpk.a_eps.polys().iter().cloned());
        for (i, &b) in id.bits().iter().enumerate() {
            fs.extend(mpk.h(i + 1, b).polys().iter().cloned());
        }
        let dv = DegreeVector::for_encryption(&p, id.depth()).unwrap();
        let samples = dmp_sample_with(&fs, &s, &dv, sp.noise(id.depth()), 2, &mut replay).unwrap();
        let mu_poly = Poly::from_coeffs(p.modulus(), mu.bits().iter().map(|&b| b as u64).collect());
        let same0 = samples[0].1.add(&mu_poly).unwrap() == ct.ct0;
        let same_rest = samples.len() == ct.cts.len() + 1 && samples[1..].iter().zip(&ct.cts).all(|(x, c)| &x.1 == c);
        ok &= same0 && same_rest;
        details.push(format!("{preset} depth {}: {} components match: {}", id.depth(), samples.len(), same0 && same_rest));
    }
    report(9, "DMPLWE shape cross-check", ok, &details.join("; "));
}

fn run_cli(args: &[&str], dir: &Path) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_mphibe")).args(args).current_dir(dir).output().unwrap();
    assert!(out.status.success(), "mphibe {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn cli_pipeline(dir: &Path, payload: &[u8]) -> bool {
    std::fs::write(dir.join("msg.bin"), payload).unwrap();
    run_cli(&["setup", "--preset", "mini-l3", "--seed", "a1", "--out", "master"], dir);
    run_cli(&["extract", "--mpk", "master.mpk", "--msk", "master.msk", "--id", "10", "--out", "sk10", "--seed", "a2"], dir);
    run_cli(&["derive", "--mpk", "master.mpk", "--sk", "sk10", "--bit", "1", "--out", "sk101", "--seed", "a3"], dir);
    let verified = run_cli(&["verify", "--mpk", "master.mpk", "--key", "sk101"], dir).trim() == "OK";
    run_cli(&["encrypt", "--mpk", "master.mpk", "--id", "101", "--in", "msg.bin", "--out", "ct", "--seed", "a4"], dir);
    run_cli(&["decrypt", "--mpk", "master.mpk", "--sk", "sk101", "--ct", "ct", "--out", "dec.bin", "--seed", "a5"], dir);
    verified
}

const CLI_FILES: [&str; 6] = ["master.mpk", "master.msk", "sk10", "sk101", "ct", "dec.bin"];

#[test]
fn criterion_10_cli_end_to_end() {
    let mut payload = vec![0u8; 1024];
    RandomSource::from_u64(0xc10).fill_bytes(&mut payload);
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let verified = cli_pipeline(first.path(), &payload);
    cli_pipeline(second.path(), &payload);

    let read = |dir: &Path, f: &str| std::fs::read(dir.join(f)).unwrap();
    let roundtrip = read(first.path(), "dec.bin") == payload;
    let reproducible = CLI_FILES.iter().all(|f| read(first.path(), f) == read(second.path(), f));

    let dir = first.path();
    let mpk = read(dir, "master.mpk");
    let msk = read(dir, "master.msk");
    let sk = read(dir, "sk101");
    let ct = read(dir, "ct");
    let parsed = format::decode_mpk(&mpk).unwrap();
    let p = parsed.params.params;
    let serial = format::encode_mpk(&parsed) == mpk
        && format::encode_msk(&p, &format::decode_msk(&msk).unwrap().1).unwrap() == msk
        && format::encode_sk(&p, &format::decode_sk(&sk).unwrap().1).unwrap() == sk
        && format::encode_ct(&p, &format::decode_ct(&ct).unwrap().1) == ct;

    let ok = verified && roundtrip && reproducible && serial;
    report(
        10,
        "CLI end-to-end",
        ok,
        &format!(
            "derived key verifies: {verified}, 1 KiB roundtrip: {roundtrip}, serialization byte-exact: {serial}, seeded reruns identical: {reproducible}"
        ),
    );
}

#[test]
fn decrypt_api_matches_sampler_path() {
    // `decrypt` samples its own preimage; it must agree with the offline/online path.
    let sp = hibe::preset("toy-l1").unwrap().derive().unwrap();
    let mut rng = RandomSource::from_u64(0xca);
    let (mpk, msk) = setup(&sp, &mut rng);
    let id = Identity::parse("0").unwrap();
    let sk = extract(&mpk, &msk, &id, &mut rng).unwrap();
    let mu = random_bits(sp.params.k() + 2, &mut rng);
    let ct = encrypt(&mpk, &id, &mu, &mut rng).unwrap();
    assert_eq!(decrypt(&mpk, &sk, &ct, &mut rng).unwrap(), mu);
    let f = hibe::build_family(&mpk, &id).unwrap();
    let r = gen_sample_pre(&f, &sk.td, &mpk.u0, sp.schedule.psi(1), &sp.params, &mut rng).unwrap();
    assert_eq!(decrypt_with_preimage(&mpk, &r, &ct).unwrap(), mu);
}
