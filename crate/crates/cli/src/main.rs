//! `itru`: key generation, encryption, decryption, and the frequency
//! attack from the command line.
//!
//! Exit codes: 0 success, 1 usage, 2 malformed input or I/O failure,
//! 3 cryptographic precondition violated, 4 no feasible offset.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use itru::format::{parse_ciphertext, parse_private_key, parse_public_key, write_ciphertext, write_private_key, write_public_key};
use itru::report::{render_distribution, render_machine_report, render_report};
use itru::{
    build_table, decrypt, encrypt, encrypt_random, frequency_distribution, keygen_with, latin_alphabet, load_table,
    recover, save_table, Error, FrequencyTable, Plaintext, SecretOverrides, SeededRng, SystemParams,
};

#[derive(Parser)]
#[command(name = "itru", version, about = "ITRU integer-ring cryptosystem and its frequency attack")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Encrypt a message under a public key.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext with a private key.
    Decrypt(DecryptArgs),
    /// Recover plaintext from a ciphertext alone.
    Attack(AttackArgs),
    /// Print the distribution of ciphertext blocks.
    Freq(FreqArgs),
    /// Build a letter-frequency table from a text file.
    BuildTable(BuildTableArgs),
}

#[derive(Args)]
struct KeygenArgs {
    #[arg(long = "pub", value_name = "PATH")]
    public: PathBuf,
    #[arg(long = "priv", value_name = "PATH")]
    private: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    p: u64,
    #[arg(long, default_value_t = 8)]
    rmax: u64,
    /// Defaults to min(255, p - 1).
    #[arg(long)]
    mmax: Option<u64>,
    /// Fix f instead of sampling it (test hook).
    #[arg(long)]
    f: Option<u64>,
    /// Fix g instead of sampling it (test hook).
    #[arg(long)]
    g: Option<u64>,
}

#[derive(Args)]
struct EncryptArgs {
    #[arg(long = "pub", value_name = "PATH")]
    public: PathBuf,
    /// Message file, read as raw bytes.
    #[arg(long = "in", value_name = "PATH", conflicts_with = "message")]
    input: Option<PathBuf>,
    /// Message given inline.
    message: Option<String>,
    /// Blinding value; drawn from [1, rmax] with --seed when absent.
    #[arg(long)]
    r: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ciphertext destination; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecryptArgs {
    #[arg(long = "priv", value_name = "PATH")]
    private: PathBuf,
    #[arg(long, value_name = "PATH")]
    ct: PathBuf,
    /// Plaintext destination; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AttackArgs {
    #[arg(long, value_name = "PATH")]
    ct: PathBuf,
    /// Frequency table; the bundled English model when absent.
    #[arg(long, value_name = "PATH")]
    model: Option<PathBuf>,
    #[arg(long, default_value_t = 255)]
    mmax: u64,
    /// Tab-separated records instead of the human report.
    #[arg(long)]
    machine: bool,
    /// Also write the chosen plaintext here.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FreqArgs {
    #[arg(long, value_name = "PATH")]
    ct: PathBuf,
}

#[derive(Args)]
struct BuildTableArgs {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Table destination; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, io::Error),
    Itru(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Itru(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) => 2,
            Failure::Itru(e) => match e {
                Error::Malformed { .. } | Error::EmptyCiphertext | Error::BlockOutOfRange { .. } => 2,
                Error::NoFeasibleOffset { .. } => 4,
                _ => 3,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Itru(e) => e.fmt(f),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

/// Reads a text file, tagging parse errors with the file name.
fn read_parsed<T>(path: &Path, parse: impl Fn(&str) -> itru::Result<T>) -> CliResult<T> {
    let bytes = read_bytes(path)?;
    let text = String::from_utf8(bytes).map_err(|_| Error::Malformed {
        line: 0,
        reason: format!("{} is not UTF-8", path.display()),
    })?;
    parse(&text).map_err(|e| match e {
        Error::Malformed { line, reason } => Failure::Itru(Error::Malformed {
            line,
            reason: format!("{}: {reason}", path.display()),
        }),
        other => Failure::Itru(other),
    })
}

fn write_to(path: &Path, contents: &[u8]) -> CliResult {
    fs::write(path, contents).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn emit(out: Option<&Path>, contents: &[u8]) -> CliResult {
    match out {
        Some(path) => write_to(path, contents),
        None => io::stdout()
            .write_all(contents)
            .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e)),
    }
}

fn cmd_keygen(args: &KeygenArgs) -> CliResult {
    let params = SystemParams {
        p: args.p,
        r_max: args.rmax,
        m_max: args.mmax.unwrap_or_else(|| 255.min(args.p.saturating_sub(1))),
    };
    let overrides = SecretOverrides { f: args.f, g: args.g };
    let (pk, sk) = keygen_with(&params, &mut SeededRng::new(args.seed), overrides)?;
    write_to(&args.public, write_public_key(&pk).as_bytes())?;
    write_to(&args.private, write_private_key(&sk).as_bytes())?;
    println!("Large modulus : {}", pk.q);
    println!("Public key : {}", pk.h);
    println!("Private key pair : ({}, {})", sk.f, sk.f_p);
    Ok(())
}

fn cmd_encrypt(args: &EncryptArgs) -> CliResult {
    let pk = read_parsed(&args.public, parse_public_key)?;
    let bytes = match (&args.input, &args.message) {
        (Some(path), _) => read_bytes(path)?,
        (None, Some(msg)) => msg.clone().into_bytes(),
        (None, None) => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Failure::Io(PathBuf::from("<stdin>"), e))?;
            buf
        }
    };
    let msg = Plaintext::from_bytes(&bytes);
    let ct = match args.r {
        Some(r) => encrypt(&pk, r, &msg)?,
        None => encrypt_random(&pk, &msg, &mut SeededRng::new(args.seed))?.0,
    };
    emit(args.out.as_deref(), write_ciphertext(&ct).as_bytes())
}

fn cmd_decrypt(args: &DecryptArgs) -> CliResult {
    let sk = read_parsed(&args.private, parse_private_key)?;
    let ct = read_parsed(&args.ct, parse_ciphertext)?;
    let pt = decrypt(&sk, &ct)?;
    let bytes = pt.to_bytes().ok_or_else(|| Error::InvalidParams("decrypted symbols do not fit in bytes".into()))?;
    emit(args.out.as_deref(), &bytes)
}

fn cmd_attack(args: &AttackArgs) -> CliResult {
    let ct = read_parsed(&args.ct, parse_ciphertext)?;
    let model = match &args.model {
        Some(path) => read_parsed(path, load_table)?,
        None => FrequencyTable::english(),
    };
    let report = recover(&ct, &model, args.mmax)?;
    let text = if args.machine {
        render_machine_report(&report)
    } else {
        render_report(&report)
    };
    emit(None, text.as_bytes())?;
    if let Some(path) = &args.out {
        let chosen = &report.chosen().plaintext;
        let bytes = chosen
            .to_bytes()
            .ok_or_else(|| Error::InvalidParams("chosen plaintext does not fit in bytes".into()))?;
        write_to(path, &bytes)?;
    }
    Ok(())
}

fn cmd_freq(args: &FreqArgs) -> CliResult {
    let ct = read_parsed(&args.ct, parse_ciphertext)?;
    let dist = frequency_distribution(&ct)?;
    emit(None, render_distribution(&dist).as_bytes())
}

fn cmd_build_table(args: &BuildTableArgs) -> CliResult {
    let bytes = read_bytes(&args.input)?;
    let text = String::from_utf8_lossy(&bytes);
    let table = build_table(&text, &latin_alphabet())?;
    emit(args.out.as_deref(), save_table(&table).as_bytes())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Keygen(a) => cmd_keygen(a),
        Command::Encrypt(a) => cmd_encrypt(a),
        Command::Decrypt(a) => cmd_decrypt(a),
        Command::Attack(a) => cmd_attack(a),
        Command::Freq(a) => cmd_freq(a),
        Command::BuildTable(a) => cmd_build_table(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("itru: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
