//! `palqa` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O, 2 malformed input, 3 invariant
//! violation (including a failed `verify`).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::codec::{self, CircuitKind, EncodeOptions};
use crate::costmodel::{CostModel, Method, SignModel, StateModel};
use crate::error::Error;
use crate::image::{self, GrayImage};
use crate::simulator;

#[derive(Debug, Parser)]
#[command(name = "palqa", version, about = "Block-DCT quantum image codec with LSB swap")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Charge the ones count once per coefficient in the state term.
    #[arg(long, global = true)]
    pub literal_eq6: bool,
    /// Count sign gates for negative coefficients only.
    #[arg(long, global = true)]
    pub sign_negative_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Palqa,
    Zscneqr,
}

fn parse_q(s: &str) -> Result<u32, String> {
    let q: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if !(1..=u16::MAX as u32).contains(&q) {
        return Err(format!("quantization factor must be in 1..=65535, got {q}"));
    }
    Ok(q)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a PGM image and print its gate budget.
    Encode {
        input: PathBuf,
        #[arg(short = 'q', value_parser = parse_q)]
        q: u32,
        #[arg(short = 'o')]
        output: PathBuf,
        /// Also build every block circuit and print the gate tally.
        #[arg(long)]
        circuits: bool,
    },
    /// Reconstruct a PGM image from a payload.
    Decode {
        input: PathBuf,
        #[arg(short = 'o')]
        output: PathBuf,
    },
    /// Rate-distortion sweep as CSV.
    RdSweep {
        input: PathBuf,
        #[arg(short = 'q', value_parser = parse_q, value_delimiter = ',', num_args = 1.., required = true)]
        q: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "jpeg_like,nzneqr,palqa")]
        methods: Vec<Method>,
        /// Output file; standard output when absent.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write one block's state-preparation circuit as text.
    ExportCircuit {
        input: PathBuf,
        #[arg(short = 'q', value_parser = parse_q)]
        q: u32,
        #[arg(long)]
        block: usize,
        #[arg(long, value_enum, default_value = "palqa")]
        kind: KindArg,
        /// Output file; standard output when absent.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Simulate one block's circuits and check them against the quantized block.
    Verify {
        input: PathBuf,
        #[arg(short = 'q', value_parser = parse_q)]
        q: u32,
        #[arg(long)]
        block: usize,
        /// Append a stray X gate to each circuit before simulating.
        #[arg(long)]
        tamper: bool,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Codec(#[from] Error),
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Codec(e) => match e {
                Error::Pgm(_) | Error::Payload(_) | Error::CircuitText { .. } | Error::Dimensions(_) => 2,
                Error::QuantFactor(_) => 1,
                Error::Invalid(_) | Error::Simulator(_) => 3,
            },
            CliError::VerifyFailed => 3,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn load_image(path: &Path) -> Result<GrayImage, CliError> {
    Ok(image::read_pgm(&read(path)?)?)
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io { path: PathBuf::from("<stdout>"), source: e }
}

impl Cli {
    pub fn cost_model(&self) -> CostModel {
        CostModel {
            state: if self.literal_eq6 { StateModel::Literal } else { StateModel::Adopted },
            sign: if self.sign_negative_only { SignModel::NegativeOnly } else { SignModel::PerCoefficient },
        }
    }

    /// Runs the selected command, writing reports to `out` and warnings to `err`.
    pub fn execute(&self, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
        let cost = self.cost_model();
        match &self.command {
            Command::Encode { input, q, output, circuits } => {
                let img = load_image(input)?;
                let a = codec::analyze(&img, *q)?;
                let enc = codec::encode_analysis(&a, &EncodeOptions { cost, build_circuits: *circuits })?;
                write(output, &enc.payload)?;
                if enc.diagnostics.saturated > 0 {
                    writeln!(err, "warning: {} coefficient(s) saturated at magnitude 255", enc.diagnostics.saturated)
                        .map_err(io_err)?;
                }
                let b = enc.budget;
                let mut lines = vec![
                    format!("width={}", img.width()),
                    format!("height={}", img.height()),
                    format!("q={q}"),
                    format!("tc_nz={}", enc.diagnostics.tc_nz),
                    format!("ones={}", enc.diagnostics.ones),
                    format!("saturated={}", enc.diagnostics.saturated),
                    format!("q_ones={}", b.q_ones),
                    format!("b_state={}", b.b_state),
                    format!("b_sign={}", b.b_sign),
                    format!("b_aux={}", b.b_aux),
                    format!("b_gpp={}", b.b_gpp),
                    format!("b_total={}", b.b_total),
                    format!("gpp={}", enc.gpp()),
                    format!("bytes={}", enc.payload.len()),
                    format!("bpp={}", crate::payload::bpp(enc.payload.len(), img.width(), img.height())),
                ];
                if let Some(c) = enc.circuits {
                    lines.push(format!("circuit_gates={}", c.total()));
                    lines.push(format!("circuit_mcx={}", c.mcx));
                    lines.push(format!("circuit_reset={}", c.reset));
                }
                for l in lines {
                    writeln!(out, "{l}").map_err(io_err)?;
                }
            }
            Command::Decode { input, output } => {
                let img = codec::decode(&read(input)?)?;
                write(output, &image::write_pgm(&img))?;
            }
            Command::RdSweep { input, q, methods, csv } => {
                let img = load_image(input)?;
                let points = codec::rd_sweep(&img, q, methods, cost)?;
                if let Some(p) = points.iter().find(|p| p.saturated > 0) {
                    writeln!(err, "warning: {} coefficient(s) saturated at Q={}", p.saturated, p.q).map_err(io_err)?;
                }
                let text = codec::to_csv(&points);
                match csv {
                    Some(path) => write(path, text.as_bytes())?,
                    None => out.write_all(text.as_bytes()).map_err(io_err)?,
                }
            }
            Command::ExportCircuit { input, q, block, kind, output } => {
                let img = load_image(input)?;
                let a = codec::analyze(&img, *q)?;
                if *block >= a.blocks.len() {
                    return Err(CliError::Usage(format!("block {block} out of range (image has {})", a.blocks.len())));
                }
                let kind = match kind {
                    KindArg::Palqa => CircuitKind::Palqa,
                    KindArg::Zscneqr => CircuitKind::Zscneqr,
                };
                let text = codec::block_circuit(&a, *block, kind)?.export_text();
                match output {
                    Some(path) => write(path, text.as_bytes())?,
                    None => out.write_all(text.as_bytes()).map_err(io_err)?,
                }
            }
            Command::Verify { input, q, block, tamper } => {
                let img = load_image(input)?;
                let a = codec::analyze(&img, *q)?;
                if *block >= a.blocks.len() {
                    return Err(CliError::Usage(format!("block {block} out of range (image has {})", a.blocks.len())));
                }
                let report = codec::verify_block(&a, *block, *tamper, simulator::max_qubits_from_env())?;
                out.write_all(report.render().as_bytes()).map_err(io_err)?;
                if !report.passed() {
                    return Err(CliError::VerifyFailed);
                }
            }
        }
        Ok(())
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match cli.execute(out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("palqa").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&[]).0, 1);
        assert_eq!(run_args(&["encode", "x.pgm", "-q", "0", "-o", "y"]).0, 1);
        assert_eq!(run_args(&["rd-sweep", "x.pgm", "-q", "8", "--methods", "bogus"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn missing_input() {
        let (code, _, err) = run_args(&["encode", "/nonexistent/in.pgm", "-q", "8", "-o", "/tmp/x"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: /nonexistent/in.pgm"));
    }

    #[test]
    fn flags_select_models() {
        let cli = Cli::try_parse_from(["palqa", "--literal-eq6", "decode", "a", "-o", "b", "--sign-negative-only"])
            .unwrap();
        assert_eq!(cli.cost_model(), CostModel { state: StateModel::Literal, sign: SignModel::NegativeOnly });
    }

    #[test]
    fn exit_code_mapping() {
        assert_eq!(CliError::Codec(Error::Pgm("x".into())).exit_code(), 2);
        assert_eq!(CliError::Codec(Error::Simulator("x".into())).exit_code(), 3);
        assert_eq!(CliError::VerifyFailed.exit_code(), 3);
    }
}
