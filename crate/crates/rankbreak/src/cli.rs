//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rankbreak_core::attacks::{
    attack_decrypt, gpt_break, loidreau_break, overbeck_attack, sa_break, AttackOutcome, AttackTranscript,
};
use rankbreak_core::{
    decrypt, encrypt, ggpt_keygen, gpt_keygen, sa_example_key, sample_rank_vector, Field, GgptVariant, PrivateKey,
};

use crate::encoding::{decode_message, encode_message};
use crate::harness::{experiment_assumptions, experiment_attack_success, trial_rng, LoidreauParams, Scenario};
use crate::io::{
    format_ciphertext, format_private_key, format_public_key, parse_ciphertext, parse_private_key, parse_public_key,
    CiphertextFile,
};

#[derive(Parser, Debug)]
#[command(name = "rankbreak", version, about = "Rank-metric McEliece variants and their structural attacks")]
struct Cli {
    /// RNG seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file, or output directory for `keygen` and `experiment`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// GPT distortion column rank.
    #[arg(long)]
    t: Option<usize>,
    /// GGPT distortion width.
    #[arg(long = "that")]
    t_hat: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write `public.key` and `private.key`.
    Keygen {
        #[arg(long, value_enum)]
        scheme: KeyScheme,
        #[command(flatten)]
        params: ParamArgs,
    },
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Recover the plaintext from a public key and ciphertext only.
    Attack {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// Known `a`; searched when omitted.
        #[arg(long)]
        a: Option<usize>,
        /// Overbeck extension depth; defaults to `n − k − 1`.
        #[arg(long)]
        u: Option<usize>,
    },
    Experiment {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = KeyScheme::GgptLoidreau)]
        scheme: KeyScheme,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum KeyScheme {
    Gpt,
    Ggpt,
    GgptSa,
    GgptLoidreau,
    /// The worked Smart Approach key with random `g` and `x`.
    SaExample,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Overbeck,
    Gpt,
    Sa,
    Loidreau,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Overbeck => "overbeck",
            Method::Gpt => "gpt",
            Method::Sa => "sa",
            Method::Loidreau => "loidreau",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Which {
    Assumptions,
    AttackSuccess,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn execute(cli: Cli) -> anyhow::Result<()> {
    let seed = cli.seed;
    match cli.command {
        Command::Keygen { scheme, params } => keygen(scheme, params, seed, &out_dir(&cli.out)),
        Command::Encrypt { key, input } => {
            let public = parse_public_key(&read(&key)?).context("reading public key")?;
            let data = std::fs::read(&input).with_context(|| format!("reading {}", input.display()))?;
            let field = public.field().clone();
            let mut rng = trial_rng(seed, 0);
            let blocks = encode_message(&field, public.k, &data)?
                .iter()
                .map(|msg| encrypt(&mut rng, &public, msg))
                .collect::<Result<_, _>>()?;
            let ct = CiphertextFile { scheme: public.scheme, blocks };
            write(&out_file(&cli.out, "ciphertext.txt"), format_ciphertext(&ct).as_bytes())
        }
        Command::Decrypt { key, input } => {
            let private = parse_private_key(&read(&key)?).context("reading private key")?;
            let field = private.public.field().clone();
            let ct = parse_ciphertext(&field, &read(&input)?)?;
            let msgs = ct
                .blocks
                .iter()
                .map(|b| decrypt(&private, b))
                .collect::<Result<Vec<_>, _>>()
                .context("decryption failed")?;
            let data = decode_message(&field, &msgs)?;
            write(&out_file(&cli.out, "plaintext.bin"), &data)
        }
        Command::Attack { method, key, input, a, u } => {
            let public = parse_public_key(&read(&key)?).context("reading public key")?;
            let field = public.field().clone();
            let ct = parse_ciphertext(&field, &read(&input)?)?;
            if ct.scheme != public.scheme {
                bail!("ciphertext scheme `{}` does not match key scheme `{}`", ct.scheme, public.scheme);
            }
            let outcome = match method {
                Method::Gpt => gpt_break(&public),
                Method::Sa => sa_break(&public, a),
                Method::Loidreau => loidreau_break(&public, a),
                Method::Overbeck => {
                    let u = u.unwrap_or_else(|| public.n.saturating_sub(public.k + 1).max(1));
                    overbeck_attack(&public, u)
                }
            };
            let transcript = match outcome {
                AttackOutcome::Broken(t) => t,
                AttackOutcome::Failed(reason) => {
                    println!("method={}\noutcome=failed\nreason={reason}", method.name());
                    bail!("attack failed: {reason}");
                }
            };
            print!("{}", describe(&transcript, method, ct.blocks.len()));
            let msgs = ct
                .blocks
                .iter()
                .map(|b| attack_decrypt(&transcript, b))
                .collect::<Result<Vec<_>, _>>()
                .context("attack failed: DecodeFailure")?;
            let data = decode_message(&field, &msgs)?;
            write(&out_file(&cli.out, "plaintext.bin"), &data)
        }
        Command::Experiment { which, trials, scheme, params } => {
            let report = match which {
                Which::Assumptions => experiment_assumptions(loidreau_params(params), trials, seed)?,
                Which::AttackSuccess => experiment_attack_success(scenario(scheme, params)?, trials, seed)?,
            };
            let dir = out_dir(&cli.out);
            report.write_to(&dir).with_context(|| format!("writing report to {}", dir.display()))?;
            print!("{}", report.to_text());
            Ok(())
        }
    }
}

fn describe(t: &AttackTranscript, method: Method, blocks: usize) -> String {
    let mut out = String::new();
    writeln!(out, "method={}", method.name()).unwrap();
    writeln!(out, "outcome=broken").unwrap();
    writeln!(out, "scheme={}", t.scheme).unwrap();
    writeln!(out, "s_used={}", t.s_used).unwrap();
    writeln!(out, "u_dim={}", t.u.rows()).unwrap();
    writeln!(out, "h_rows={}", t.h.rows()).unwrap();
    let cols: Vec<String> = t.columns.iter().map(usize::to_string).collect();
    writeln!(out, "columns={}", cols.join(",")).unwrap();
    writeln!(out, "code_length={}", t.decoder.code.n()).unwrap();
    writeln!(out, "error_capacity={}", t.decoder.error_capacity).unwrap();
    for (k, v) in &t.diagnostics {
        writeln!(out, "diag.{k}={v}").unwrap();
    }
    writeln!(out, "blocks={blocks}").unwrap();
    out
}

fn out_dir(out: &Option<PathBuf>) -> PathBuf {
    out.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn out_file(out: &Option<PathBuf>, default: &str) -> PathBuf {
    out.clone().unwrap_or_else(|| PathBuf::from(default))
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, data: &[u8]) -> anyhow::Result<()> {
    std::fs::write(path, data).with_context(|| format!("writing {}", path.display()))
}

fn loidreau_params(p: ParamArgs) -> LoidreauParams {
    let d = LoidreauParams::PRESET_A3;
    LoidreauParams {
        q: p.q.unwrap_or(d.q),
        m: p.m.unwrap_or(d.m),
        n: p.n.unwrap_or(d.n),
        k: p.k.unwrap_or(d.k),
        a: p.a.unwrap_or(d.a),
        t_hat: p.t_hat.unwrap_or(d.t_hat),
    }
}

fn scenario(scheme: KeyScheme, p: ParamArgs) -> anyhow::Result<Scenario> {
    let (q, m, n, k) = (p.q.unwrap_or(2), p.m.unwrap_or(12), p.n.unwrap_or(12), p.k.unwrap_or(4));
    Ok(match scheme {
        KeyScheme::Gpt => Scenario::Gpt { q, m, n, k, t: p.t.unwrap_or(1) },
        KeyScheme::Ggpt => Scenario::Overbeck { q, m, n, k, t_hat: p.t_hat.unwrap_or(2) },
        KeyScheme::GgptSa => Scenario::SmartApproach { q, m, n, k, t_hat: p.t_hat.unwrap_or(3), a: p.a.unwrap_or(1) },
        KeyScheme::SaExample => Scenario::SaExample,
        KeyScheme::GgptLoidreau => Scenario::Loidreau(loidreau_params(p)),
    })
}

fn keygen(scheme: KeyScheme, p: ParamArgs, seed: u64, dir: &Path) -> anyhow::Result<()> {
    let mut rng = trial_rng(seed, 0);
    let private: PrivateKey = if scheme == KeyScheme::SaExample {
        let field = Field::new(2, 8, None)?;
        let g = sample_rank_vector(&mut rng, &field, 8, 8)?;
        let x = loop {
            let x = field.random(&mut rng);
            if field.to_base(x).is_none() {
                break x;
            }
        };
        sa_example_key(&field, &g, x)?.1
    } else {
        let need = |v: Option<usize>, name: &str| v.with_context(|| format!("--{name} is required"));
        let field = Field::new(p.q.unwrap_or(2), p.m.context("--m is required")?, None)?;
        let (n, k) = (need(p.n, "n")?, need(p.k, "k")?);
        match scheme {
            KeyScheme::Gpt => gpt_keygen(&mut rng, &field, n, k, need(p.t, "t")?)?.1,
            KeyScheme::Ggpt => ggpt_keygen(&mut rng, &field, n, k, need(p.t_hat, "that")?, GgptVariant::Generic)?.1,
            KeyScheme::GgptSa => {
                let variant = GgptVariant::SmartApproach { a: need(p.a, "a")? };
                ggpt_keygen(&mut rng, &field, n, k, need(p.t_hat, "that")?, variant)?.1
            }
            KeyScheme::GgptLoidreau => {
                let variant = GgptVariant::Loidreau { a: need(p.a, "a")? };
                ggpt_keygen(&mut rng, &field, n, k, need(p.t_hat, "that")?, variant)?.1
            }
            KeyScheme::SaExample => unreachable!(),
        }
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write(&dir.join("public.key"), format_public_key(&private.public).as_bytes())?;
    write(&dir.join("private.key"), format_private_key(&private).as_bytes())?;
    println!("wrote {} and {}", dir.join("public.key").display(), dir.join("private.key").display());
    Ok(())
}
