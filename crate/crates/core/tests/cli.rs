use std::path::Path;
use std::process::{Command, Output};

fn mphibe(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mphibe"))
        .current_dir(dir)
        .env("MPHIBE_THREADS", "2")
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn setup(dir: &Path) {
    let out = mphibe(dir, &["setup", "--preset", "mini-l3", "--seed", "a1", "--out", "m"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

fn extract(dir: &Path, id: &str, out: &str) -> Output {
    mphibe(dir, &["extract", "--mpk", "m.mpk", "--msk", "m.msk", "--id", id, "--out", out, "--seed", "b2"])
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&mphibe(dir.path(), &["bogus"])), 1);
    assert_eq!(code(&mphibe(dir.path(), &["params", "--preset", "nope"])), 1);
    assert_eq!(code(&mphibe(dir.path(), &["setup", "--preset", "mini-l3", "--seed", "xyz", "--out", "m"])), 1);
    assert_eq!(code(&mphibe(dir.path(), &["--help"])), 0);
}

#[test]
fn infeasible_preset_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&mphibe(dir.path(), &["params", "--preset", "noisy-l2"])), 3);
    let out = mphibe(dir.path(), &["params", "--preset", "noisy-l1"]);
    assert_eq!(code(&out), 0);
    assert!(!out.stdout.is_empty());
}

#[test]
fn malformed_identities() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    assert_eq!(code(&extract(dir.path(), "012", "sk")), 1);
    assert_eq!(code(&extract(dir.path(), "", "sk")), 1);
    assert_eq!(code(&extract(dir.path(), "1111", "sk")), 1);
    assert!(!dir.path().join("sk").exists());
}

#[test]
fn verify_master_and_user_keys() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    let out = mphibe(dir.path(), &["verify", "--mpk", "m.mpk", "--key", "m.msk"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "OK");
    assert_eq!(code(&extract(dir.path(), "01", "sk")), 0);
    let out = mphibe(dir.path(), &["verify", "--mpk", "m.mpk", "--key", "sk"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "OK");
}

#[test]
fn derive_past_max_depth_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    assert_eq!(code(&extract(dir.path(), "010", "sk")), 0);
    let out = mphibe(dir.path(), &["derive", "--mpk", "m.mpk", "--sk", "sk", "--bit", "1", "--out", "child"]);
    assert_eq!(code(&out), 2);
    assert!(!dir.path().join("child").exists());
}

#[test]
fn wrong_file_kind_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    std::fs::write(dir.path().join("msg"), b"hi").unwrap();
    let enc = mphibe(dir.path(), &["encrypt", "--mpk", "m.mpk", "--id", "1", "--in", "msg", "--out", "ct"]);
    assert_eq!(code(&enc), 0);
    let out = mphibe(dir.path(), &["decrypt", "--mpk", "m.mpk", "--sk", "ct", "--ct", "ct", "--out", "dec"]);
    assert_eq!(code(&out), 2);
    let out = mphibe(dir.path(), &["verify", "--mpk", "ct", "--key", "m.msk"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sibling_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    std::fs::write(dir.path().join("msg"), b"secret").unwrap();
    assert_eq!(code(&extract(dir.path(), "10", "sk")), 0);
    let enc = mphibe(dir.path(), &["encrypt", "--mpk", "m.mpk", "--id", "11", "--in", "msg", "--out", "ct"]);
    assert_eq!(code(&enc), 0);
    let out = mphibe(dir.path(), &["decrypt", "--mpk", "m.mpk", "--sk", "sk", "--ct", "ct", "--out", "dec"]);
    assert_eq!(code(&out), 2);
    assert!(!dir.path().join("dec").exists());
}

#[test]
fn empty_message_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    std::fs::write(dir.path().join("empty"), b"").unwrap();
    assert_eq!(code(&extract(dir.path(), "0", "sk")), 0);
    let enc = mphibe(dir.path(), &["encrypt", "--mpk", "m.mpk", "--id", "0", "--in", "empty", "--out", "ct"]);
    assert_eq!(code(&enc), 0);
    let ct = std::fs::read(dir.path().join("ct")).unwrap();
    let (_, file) = mphibe::format::decode_ct(&ct).unwrap();
    assert!(file.records.is_empty());
    let out = mphibe(dir.path(), &["decrypt", "--mpk", "m.mpk", "--sk", "sk", "--ct", "ct", "--out", "dec"]);
    assert_eq!(code(&out), 0);
    assert!(std::fs::read(dir.path().join("dec")).unwrap().is_empty());
}

#[test]
fn derived_and_extracted_keys_both_decrypt() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    let msg: Vec<u8> = (0..200u8).collect();
    std::fs::write(dir.path().join("msg"), &msg).unwrap();
    assert_eq!(code(&extract(dir.path(), "1", "sk1")), 0);
    assert_eq!(code(&extract(dir.path(), "10", "sk10")), 0);
    let out = mphibe(dir.path(), &["derive", "--mpk", "m.mpk", "--sk", "sk1", "--bit", "0", "--out", "sk10d"]);
    assert_eq!(code(&out), 0);
    let enc = mphibe(dir.path(), &["encrypt", "--mpk", "m.mpk", "--id", "10", "--in", "msg", "--out", "ct"]);
    assert_eq!(code(&enc), 0);
    for sk in ["sk10", "sk10d"] {
        let out = mphibe(dir.path(), &["decrypt", "--mpk", "m.mpk", "--sk", sk, "--ct", "ct", "--out", "dec"]);
        assert_eq!(code(&out), 0);
        assert_eq!(std::fs::read(dir.path().join("dec")).unwrap(), msg);
    }
}
