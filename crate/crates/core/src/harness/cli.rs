//! The `vtrans` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use super::bench::{self, BenchRecord};
use super::fuzz::{self, FuzzConfig};
use super::io::{self, BomPolicy, DecodeError, Encoding, Text};
use super::stats;
use crate::simd::{self, Backend};
use crate::tables;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DIVERGENCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "vtrans", version, about = "Validating SIMD UTF-8 / UTF-16 transcoder")]
struct Cli {
    /// Vector backend; `native` falls back to emulation when unsupported.
    #[arg(long, global = true, value_enum)]
    backend: Option<Backend>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Time both directions, vector and scalar, on one file.
    Bench {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "utf8")]
        from: Encoding,
        #[arg(long, default_value_t = bench::DEFAULT_REPS)]
        reps: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Time growing prefixes, each for at least 0.2 s, instead.
        #[arg(long)]
        prefix_sweep: bool,
        /// Repeat the vector run and warn if its minimum moves by more than 5%.
        #[arg(long)]
        self_check: bool,
    },
    /// Character length histogram of a UTF-8 file.
    Stats {
        #[arg(long)]
        input: PathBuf,
        /// Print one JSON object instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Convert a file between encodings.
    Transcode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        from: Encoding,
        #[arg(long, value_enum)]
        to: Encoding,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "keep")]
        bom: BomPolicy,
    },
    /// Differential fuzzing of the vector paths against the scalar codec.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        iterations: u64,
        #[arg(long, default_value_t = 512)]
        max_len: usize,
        /// Break one shuffle mask per direction first; the run should fail.
        #[arg(long)]
        mutate: bool,
    },
    /// Inspect the lookup tables.
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
}

#[derive(Subcommand, Debug)]
enum TablesAction {
    /// Print every table as hex, one entry per line.
    Dump,
}

struct Failure(i32, String);

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))
}

fn invalid(e: DecodeError) -> Failure {
    Failure(EXIT_INVALID, e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let backend = match cli.backend {
        Some(b) => simd::force_backend(b),
        None => simd::active_backend(),
    };
    match execute(cli.command, backend, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "vtrans: {msg}");
            code
        }
    }
}

fn execute(command: Command, backend: Backend, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let io_err = |e: std::io::Error| Failure(EXIT_USAGE, format!("write failed: {e}"));
    match command {
        Command::Bench { input, from, reps, format, prefix_sweep, self_check } => {
            if reps == 0 {
                return Err(Failure(EXIT_USAGE, "--reps must be at least 1".into()));
            }
            let bytes = read(&input)?;
            let dataset = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let decoded = io::read_text(&bytes, from).map_err(invalid)?;
            let records = if prefix_sweep {
                let utf8 = match &decoded.text {
                    Text::Utf8(b) => b.clone(),
                    Text::Utf16(u) => crate::codec::scalar_utf16_to_utf8_vec(u).0,
                };
                if let Err(e) = crate::codec::count_codepoints_utf8(&utf8) {
                    return Err(Failure(EXIT_INVALID, format!("invalid {from} at offset {}", e.at)));
                }
                let lengths: Vec<usize> = (0..).map(|k| 64usize << k).take_while(|&n| n < utf8.len()).chain([utf8.len()]).collect();
                bench::prefix_sweep(&dataset, &utf8, &lengths, bench::SWEEP_BUDGET, backend)
            } else {
                let r = match &decoded.text {
                    Text::Utf8(b) => bench::bench_utf8(&dataset, b, reps, backend),
                    Text::Utf16(u) => bench::bench_utf16(&dataset, u, reps, backend),
                };
                r.map_err(|e| Failure(EXIT_INVALID, format!("invalid {from} at offset {}", e.at)))?
            };
            for r in records.iter().filter(|r| r.spread_warning) {
                let _ = writeln!(
                    err,
                    "warning: {} {:?}/{:?} mean is {:.1}% above min",
                    r.dataset,
                    r.direction,
                    r.implementation,
                    100.0 * r.spread()
                );
            }
            if self_check && !prefix_sweep {
                check_repeatability(&dataset, &decoded.text, reps, backend, &records, err);
            }
            match format {
                Format::Json => bench::write_json(&records, &mut *out).map_err(io_err)?,
                Format::Csv => bench::write_csv(&records, &mut *out).map_err(io_err)?,
            }
            Ok(EXIT_OK)
        }
        Command::Stats { input, json } => {
            let bytes = read(&input)?;
            let decoded = io::read_text(&bytes, Encoding::Utf8).map_err(invalid)?;
            let Text::Utf8(body) = decoded.text else { unreachable!() };
            let s = stats::corpus_stats(&body).map_err(|e| Failure(EXIT_INVALID, format!("invalid utf8 at byte offset {}", e.at)))?;
            if json {
                serde_json::to_writer(&mut *out, &s).map_err(|e| io_err(e.into()))?;
                writeln!(out).map_err(io_err)?;
            } else {
                writeln!(out, "chars     {}", s.chars).map_err(io_err)?;
                writeln!(out, "utf16     {:.2} bytes/char", s.avg_bytes_per_char_utf16).map_err(io_err)?;
                writeln!(out, "utf8      {:.2} bytes/char", s.avg_bytes_per_char_utf8).map_err(io_err)?;
                for (i, p) in s.percentages().iter().enumerate() {
                    writeln!(out, "{}-byte    {:.1}%", i + 1, p).map_err(io_err)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Transcode { input, from, to, output, bom } => {
            let bytes = read(&input)?;
            let (converted, warnings) = io::transcode_bytes(&bytes, from, to, bom).map_err(invalid)?;
            for w in warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            std::fs::write(&output, converted)
                .map_err(|e| Failure(EXIT_USAGE, format!("cannot write {}: {e}", output.display())))?;
            Ok(EXIT_OK)
        }
        Command::Fuzz { seed, iterations, max_len, mutate } => {
            let report = fuzz::run(&FuzzConfig { seed, iterations, max_len, mutate, backend });
            serde_json::to_writer_pretty(&mut *out, &report).map_err(|e| io_err(e.into()))?;
            writeln!(out).map_err(io_err)?;
            if report.passed() {
                Ok(EXIT_OK)
            } else {
                let _ = writeln!(err, "vtrans: divergence between vector and scalar paths");
                Ok(EXIT_DIVERGENCE)
            }
        }
        Command::Tables { action: TablesAction::Dump } => {
            out.write_all(tables::tables().dump().as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
    }
}

fn check_repeatability(dataset: &str, text: &Text, reps: usize, backend: Backend, first: &[BenchRecord], err: &mut dyn Write) {
    let again = match text {
        Text::Utf8(b) => bench::bench_utf8(dataset, b, reps, backend),
        Text::Utf16(u) => bench::bench_utf16(dataset, u, reps, backend),
    };
    let Ok(again) = again else { return };
    for (a, b) in first.iter().zip(&again) {
        let base = a.min_ns.max(1) as f64;
        let drift = (b.min_ns as f64 - a.min_ns as f64).abs() / base;
        if drift > 0.05 {
            let _ = writeln!(
                err,
                "warning: {:?}/{:?} minimum moved {:.1}% between runs; machine may be noisy",
                a.direction,
                a.implementation,
                100.0 * drift
            );
        }
    }
}
