//! Command-line front end.
//!
//! Exit codes: 0 on success or PASS, 1 when a verification fails or a
//! witness turns up where `--expect-none` asserted absence, 2 on usage or
//! parse errors.

use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::carpi::{carpi_params, MorphismTable};
use crate::error::Error;
use crate::kernel::{generate_kernel_avoiding, scan_kernel_repetitions};
use crate::pansiot::gamma;
use crate::verify::{legacy_exhaustive, verify_with, VerifyOptions, VERIFIED_RANGE};
use crate::words::{has_factor_exceeding, max_exponent_factor, BinaryWord, Rational, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dejean",
    version,
    about = "Repetition-threshold verification tools"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search f(A_m^3) for short stabilizing factors.
    Verify(VerifyArgs),
    /// Largest exponent of any factor of a word.
    Exponent(ExponentArgs),
    /// Pansiot coding of a binary word.
    Gamma(GammaArgs),
    /// Image of a letter or word under Carpi's morphism.
    #[command(name = "f-image")]
    FImage(FImageArgs),
    /// List psi-kernel repetitions in a word over A_m.
    #[command(name = "kernel-scan")]
    KernelScan(KernelScanArgs),
    /// Backtracking search for a word avoiding psi-kernel repetitions.
    #[command(name = "kernel-generate")]
    KernelGenerate(KernelGenerateArgs),
    /// Morphism parameters for n.
    Params(ParamsArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, required_unless_present = "all")]
    pub n: Option<usize>,
    /// Run every n in 27..=29.
    #[arg(long, conflicts_with = "n")]
    pub all: bool,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub json: bool,
    /// Scan one triple for every factor length below (n-1)^2 and every k.
    #[arg(long)]
    pub legacy_exhaustive: bool,
    /// Triple used by --legacy-exhaustive.
    #[arg(long, default_value = "111", requires = "legacy_exhaustive")]
    pub triple: String,
    /// Accept n outside 27..=29.
    #[arg(long)]
    pub override_range: bool,
    /// Test each distinct factor once.
    #[arg(long)]
    pub dedup: bool,
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    /// The word, or `-` to read it from standard input.
    pub word: String,
    /// Parse as digits over {1..σ} instead of raw characters.
    #[arg(long)]
    pub alphabet: Option<usize>,
    /// Report the first factor with exponent strictly above this value.
    #[arg(long)]
    pub threshold: Option<String>,
    /// Exit 1 if --threshold finds a factor.
    #[arg(long, requires = "threshold")]
    pub expect_none: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long)]
    pub n: usize,
    pub bits: String,
}

#[derive(Debug, Args)]
pub struct FImageArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, required_unless_present = "word", conflicts_with = "word")]
    pub letter: Option<usize>,
    #[arg(long)]
    pub word: Option<String>,
}

#[derive(Debug, Args)]
pub struct KernelScanArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    pub word: String,
    /// Exit 1 if any repetition is found.
    #[arg(long)]
    pub expect_none: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct KernelGenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub length: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub json: bool,
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(argv, &mut input, &mut out, &mut err)
}

/// Runs the CLI with explicit streams.
pub fn run_with<I, S>(
    argv: I,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(config.command, input, out) {
        Ok(code) => code,
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = std::result::Result<i32, CliError>;

fn read_arg(arg: &str, input: &mut dyn BufRead) -> std::io::Result<String> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    input.read_to_string(&mut buf)?;
    Ok(buf.trim().to_string())
}

fn dispatch(command: Command, input: &mut dyn BufRead, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Verify(args) => verify_cmd(args, out),
        Command::Exponent(args) => exponent_cmd(args, input, out),
        Command::Gamma(args) => {
            let bits = BinaryWord::parse(&read_arg(&args.bits, input)?)?;
            writeln!(out, "{}", gamma(&bits, args.n)?)?;
            Ok(EXIT_OK)
        }
        Command::FImage(args) => {
            let table = MorphismTable::for_degree(args.n)?;
            let image = match (args.letter, args.word) {
                (Some(a), _) => table.image(a)?.clone(),
                (None, Some(w)) => {
                    let w = Word::parse(&read_arg(&w, input)?, 9)?;
                    table.apply(&w)?
                }
                (None, None) => unreachable!("clap requires --letter or --word"),
            };
            writeln!(out, "{image}")?;
            Ok(EXIT_OK)
        }
        Command::KernelScan(args) => {
            let w = Word::parse(&read_arg(&args.word, input)?, args.m.clamp(1, 9))?;
            let found = scan_kernel_repetitions(&w, args.n, args.m)?;
            if args.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&found).expect("witnesses serialize")
                )?;
            } else if found.is_empty() {
                writeln!(out, "none")?;
            } else {
                let joined: Vec<String> = found.iter().map(|k| k.to_string()).collect();
                writeln!(out, "{}", joined.join(" "))?;
            }
            Ok(if args.expect_none && !found.is_empty() {
                EXIT_FAIL
            } else {
                EXIT_OK
            })
        }
        Command::KernelGenerate(args) => {
            match generate_kernel_avoiding(args.m, args.n, args.length, args.seed) {
                Ok(w) => {
                    writeln!(out, "{w}")?;
                    Ok(EXIT_OK)
                }
                Err(Error::SearchExhausted { .. }) => {
                    writeln!(out, "EXHAUSTED")?;
                    Ok(EXIT_FAIL)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Params(args) => {
            let params = carpi_params(args.n)?;
            if args.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&params).expect("params serialize")
                )?;
            } else {
                writeln!(out, "{params}")?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn verify_cmd(args: VerifyArgs, out: &mut dyn Write) -> CliResult {
    let degrees: Vec<usize> = match args.n {
        Some(n) => vec![n],
        None => VERIFIED_RANGE.collect(),
    };
    if args.legacy_exhaustive {
        return legacy_cmd(&degrees, &args, out);
    }
    let options = VerifyOptions {
        parallelism: args.jobs,
        allow_override: args.override_range,
        dedup: args.dedup,
    };
    let reports = degrees
        .iter()
        .map(|&n| verify_with(n, &options))
        .collect::<crate::error::Result<Vec<_>>>()?;
    if args.json {
        let text = if args.all {
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        } else {
            reports[0].to_json()
        };
        writeln!(out, "{text}")?;
    } else {
        for report in &reports {
            writeln!(out, "{report}")?;
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

fn legacy_cmd(degrees: &[usize], args: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let parsed = Word::parse(&args.triple, 9)?;
    let letters: [u8; 3] = parsed
        .letters()
        .try_into()
        .map_err(|_| Error::InvalidCharacter {
            ch: '?',
            index: parsed.len().min(3),
        })?;
    let mut all_clear = true;
    for &n in degrees {
        if !args.override_range && !VERIFIED_RANGE.contains(&n) {
            return Err(Error::OutsideVerifiedRange(n).into());
        }
        let found = legacy_exhaustive(n, letters)?;
        all_clear &= found.is_none();
        let status = if found.is_none() { "PASS" } else { "FAIL" };
        if args.json {
            let value = json!({
                "n": n,
                "triple": args.triple,
                "factor": found,
                "status": status,
            });
            writeln!(out, "{value}")?;
        } else {
            match found {
                None => writeln!(out, "n={n} triple={} legacy: none ({status})", args.triple)?,
                Some(f) => writeln!(
                    out,
                    "n={n} triple={} legacy: start={} length={} k={} ({status})",
                    args.triple, f.start, f.length, f.k
                )?,
            }
        }
    }
    Ok(if all_clear { EXIT_OK } else { EXIT_FAIL })
}

fn exponent_cmd(args: ExponentArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> CliResult {
    let text = read_arg(&args.word, input)?;
    let letters: Vec<u8> = match args.alphabet {
        Some(sigma) => Word::parse(&text, sigma)?.into_letters(),
        None => text.bytes().collect(),
    };
    let Some(threshold) = args.threshold else {
        let (exponent, witness) = max_exponent_factor(&letters)?;
        if args.json {
            writeln!(
                out,
                "{}",
                json!({ "exponent": exponent, "witness": witness })
            )?;
        } else {
            writeln!(out, "{witness}")?;
        }
        return Ok(EXIT_OK);
    };
    let threshold: Rational = threshold.parse()?;
    let found = has_factor_exceeding(&letters, threshold)?;
    if args.json {
        writeln!(
            out,
            "{}",
            json!({ "threshold": threshold, "witness": found })
        )?;
    } else {
        match &found {
            Some(w) => writeln!(out, "{w}")?,
            None => writeln!(out, "none")?,
        }
    }
    Ok(if args.expect_none && found.is_some() {
        EXIT_FAIL
    } else {
        EXIT_OK
    })
}
