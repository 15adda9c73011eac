use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mphibe::cli::{self, CliError, CliResult};

#[derive(Parser)]
#[command(name = "mphibe", version, about = "Hierarchical identity-based encryption from middle-product LWE")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the parameters and Gaussian schedule of a preset.
    Params {
        #[arg(long)]
        preset: String,
        /// Also write a params file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a master key pair, written to <OUT>.mpk and <OUT>.msk.
    Setup {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract a secret key for an identity such as "101".
    Extract {
        #[arg(long)]
        mpk: PathBuf,
        #[arg(long)]
        msk: PathBuf,
        #[arg(long)]
        id: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Derive a child key by appending one bit to a key's identity.
    Derive {
        #[arg(long)]
        mpk: PathBuf,
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        bit: u8,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Encrypt a file to an identity.
    Encrypt {
        #[arg(long)]
        mpk: PathBuf,
        #[arg(long)]
        id: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Decrypt a ciphertext file with a secret key.
    Decrypt {
        #[arg(long)]
        mpk: PathBuf,
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Check a master or user secret key against the public key.
    Verify {
        #[arg(long)]
        mpk: PathBuf,
        #[arg(long)]
        key: PathBuf,
    },
}

fn seed(s: &Option<String>) -> CliResult<Option<[u8; 32]>> {
    s.as_deref().map(cli::parse_seed).transpose()
}

fn with_ext(prefix: &std::path::Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Params { preset, out } => print!("{}", cli::cmd_params(&preset, out.as_deref())?),
        Command::Setup { preset, seed: s, out } => {
            let report = cli::cmd_setup(&preset, seed(&s)?, &with_ext(&out, "mpk"), &with_ext(&out, "msk"))?;
            print!("{report}");
        }
        Command::Extract { mpk, msk, id, out, seed: s } => cli::cmd_extract(&mpk, &msk, &id, &out, seed(&s)?)?,
        Command::Derive { mpk, sk, bit, out, seed: s } => cli::cmd_derive(&mpk, &sk, bit, &out, seed(&s)?)?,
        Command::Encrypt { mpk, id, input, out, seed: s } => cli::cmd_encrypt(&mpk, &id, &input, &out, seed(&s)?)?,
        Command::Decrypt { mpk, sk, ct, out, seed: s } => cli::cmd_decrypt(&mpk, &sk, &ct, &out, seed(&s)?)?,
        Command::Verify { mpk, key } => {
            if cli::cmd_verify(&mpk, &key)? {
                println!("OK");
            } else {
                println!("FAIL");
                return Err(CliError::Data("trapdoor does not verify".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("MPHIBE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(parsed.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
