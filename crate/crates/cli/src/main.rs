//! `nadpcm`: encode, decode and evaluate speech with the neural ADPCM codec.
//!
//! Exit codes: 0 success, 1 runtime error, 2 usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use nadpcm::codec::{decode, encode_traced, Bitstream, CodecConfig, PredictorMode};
use nadpcm::metrics::{run_experiment, segsnr, write_aggregate_csv, write_rows_csv, FrameSnr};
use nadpcm::par::Exec;
use nadpcm::signal::{encode_wav, load_wav};
use nadpcm::synth::{synthesize, SynthKind, MAX_SECONDS};

#[derive(Parser)]
#[command(name = "nadpcm", version, about = "ADPCM speech codec with backward-adaptive neural prediction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode an 8 kHz 16-bit mono WAV into a bitstream.
    Encode(EncodeArgs),
    /// Decode a bitstream back to WAV. All settings come from its header.
    Decode(DecodeArgs),
    /// Segmental SNR of a decoded WAV against its reference.
    Eval(EvalArgs),
    /// Encode/decode every WAV in a directory over a grid of settings.
    Grid(GridArgs),
    /// Write a deterministic synthetic test signal.
    Synth(SynthArgs),
}

fn parse_mode(s: &str) -> Result<PredictorMode, String> {
    s.parse().map_err(|e: nadpcm::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<SynthKind, String> {
    s.parse().map_err(|e: nadpcm::Error| e.to_string())
}

fn parse_seconds(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v > 0.0 && v <= MAX_SECONDS {
        Ok(v)
    } else {
        Err(format!("must be in (0, {MAX_SECONDS}]"))
    }
}

fn parse_frame_len(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("'{s}' is not a positive integer"))?;
    if v > nadpcm::ORDER && v <= u32::MAX as usize {
        Ok(v)
    } else {
        Err(format!("must exceed the prediction order {}", nadpcm::ORDER))
    }
}

#[derive(Args)]
struct EncodeArgs {
    input: PathBuf,
    output: PathBuf,
    /// Bits per sample.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(2..=5))]
    nq: u8,
    /// mlp, elman, rbf, committee_mean, committee_median or last_sample_baseline.
    #[arg(long, default_value = "committee_median", value_parser = parse_mode)]
    mode: PredictorMode,
    /// LM epochs per frame for the MLP and Elman committees.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u16).range(1..))]
    epochs: u16,
    #[arg(long, default_value_t = 200, value_parser = parse_frame_len)]
    frame_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip the per-frame SNR listing.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct DecodeArgs {
    input: PathBuf,
    output: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    reference: PathBuf,
    decoded: PathBuf,
    #[arg(long, default_value_t = 200, value_parser = parse_frame_len)]
    frame_len: usize,
}

#[derive(Args)]
struct GridArgs {
    corpus_dir: PathBuf,
    /// Per-file results.
    output: PathBuf,
    /// Aggregate table; defaults to `<output stem>_summary.csv`.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5",
          value_parser = clap::value_parser!(u8).range(2..=5))]
    nq_list: Vec<u8>,
    #[arg(long, value_delimiter = ',', default_value = "mlp,committee_median",
          value_parser = parse_mode)]
    mode_list: Vec<PredictorMode>,
    #[arg(long, value_delimiter = ',', default_value = "6",
          value_parser = clap::value_parser!(u16).range(1..))]
    epochs_list: Vec<u16>,
    #[arg(long, default_value_t = 200, value_parser = parse_frame_len)]
    frame_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also keep every cell's bitstream here, as `<file stem>_nq<N>_<mode>_e<epochs>.nadp`.
    #[arg(long)]
    bitstream_dir: Option<PathBuf>,
    /// Run grid cells one at a time.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct SynthArgs {
    output: PathBuf,
    #[arg(long, default_value = "ar", value_parser = parse_kind)]
    kind: SynthKind,
    #[arg(long, default_value = "2", value_parser = parse_seconds)]
    seconds: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Writes through a temporary file in the destination directory, so a
/// failure never leaves a partial output behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn cmd_encode(a: EncodeArgs) -> Result<()> {
    let cfg = CodecConfig {
        nq: a.nq,
        frame_len: a.frame_len,
        mode: a.mode,
        epochs: a.epochs,
        seed: a.seed,
    };
    let x = load_wav(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let coded = encode_traced(&x, &cfg, Exec::default())?;
    write_atomic(&a.output, &coded.bitstream.to_bytes())?;

    let report = segsnr(&x.samples, &coded.reconstruction, cfg.frame_len)?;
    if !a.quiet {
        let total = report.frames.len();
        for (i, f) in report.frames.iter().enumerate() {
            match f {
                FrameSnr::Db(db) => eprintln!("frame {:>5}/{total}  snr {db:7.2} dB", i + 1),
                FrameSnr::ZeroError => eprintln!("frame {:>5}/{total}  exact", i + 1),
                FrameSnr::ZeroSignal => eprintln!("frame {:>5}/{total}  silent", i + 1),
            }
        }
    }
    println!(
        "{}: {} samples, nq={} mode={} epochs={} -> {} bytes; SEGSNR {:.2} dB ({} frames excluded)",
        a.output.display(),
        x.len(),
        cfg.nq,
        cfg.mode,
        cfg.epochs,
        coded.bitstream.to_bytes().len(),
        report.segsnr_db,
        report.frames_excluded()
    );
    Ok(())
}

fn cmd_decode(a: DecodeArgs) -> Result<()> {
    let bytes = fs::read(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let bs = Bitstream::from_bytes(&bytes)?;
    let y = decode(&bs)?;
    write_atomic(&a.output, &encode_wav(&y))?;
    println!(
        "{}: {} samples (nq={} mode={} epochs={})",
        a.output.display(),
        y.len(),
        bs.header.nq,
        bs.header.mode,
        bs.header.epochs
    );
    Ok(())
}

fn cmd_eval(a: EvalArgs) -> Result<()> {
    let x = load_wav(&a.reference)?;
    let y = load_wav(&a.decoded)?;
    let report = segsnr(&x.samples, &y.samples, a.frame_len)?;
    println!(
        "SEGSNR {:.4} dB over {} frames ({} error-free, {} silent excluded)",
        report.segsnr_db,
        report.per_frame_snr_db.len(),
        report.excluded_zero_error,
        report.excluded_zero_signal
    );
    Ok(())
}

fn wav_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .is_some_and(|e| e.eq_ignore_ascii_case("wav"))
        })
        .collect();
    files.sort();
    Ok(files)
}

fn summary_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "grid".into());
    output.with_file_name(format!("{stem}_summary.csv"))
}

fn cmd_grid(a: GridArgs) -> Result<()> {
    let files = wav_files(&a.corpus_dir)?;
    if files.is_empty() {
        bail!("no .wav files in {}", a.corpus_dir.display());
    }
    let mut cfgs = Vec::new();
    for &nq in &a.nq_list {
        for &mode in &a.mode_list {
            for &epochs in &a.epochs_list {
                cfgs.push(CodecConfig {
                    nq,
                    frame_len: a.frame_len,
                    mode,
                    epochs,
                    seed: a.seed,
                });
            }
        }
    }
    let exec = if a.sequential { Exec::Sequential } else { Exec::default() };
    let result = run_experiment(&files, &cfgs, exec)?;

    let mut rows = Vec::new();
    write_rows_csv(&mut rows, &result.rows)?;
    let mut cells = Vec::new();
    write_aggregate_csv(&mut cells, &result.cells)?;
    let summary = a.summary.unwrap_or_else(|| summary_path(&a.output));
    write_atomic(&a.output, &rows)?;
    write_atomic(&summary, &cells)?;
    if let Some(dir) = &a.bitstream_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (r, bytes) in result.rows.iter().zip(&result.bitstreams) {
            let stem = Path::new(&r.file)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| r.file.clone());
            let name = format!("{stem}_nq{}_{}_e{}.nadp", r.nq, r.mode.name(), r.epochs);
            write_atomic(&dir.join(name), bytes)?;
        }
    }

    for c in &result.cells {
        println!(
            "nq={} {:<22} epochs={:<3} mean {:6.2} dB  std {:5.2} dB  ({} files)",
            c.nq,
            c.mode.name(),
            c.epochs,
            c.mean_db,
            c.std_db,
            c.n_files
        );
    }
    if !result.failures.is_empty() {
        for (file, cfg, err) in &result.failures {
            eprintln!("failed: {file} nq={} mode={}: {err}", cfg.nq, cfg.mode);
        }
        bail!("{} of {} runs failed", result.failures.len(), files.len() * cfgs.len());
    }
    Ok(())
}

fn cmd_synth(a: SynthArgs) -> Result<()> {
    let buf = synthesize(a.kind, a.seconds, a.seed)?;
    write_atomic(&a.output, &encode_wav(&buf))?;
    println!("{}: {} {} samples", a.output.display(), buf.len(), a.kind);
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Encode(a) => cmd_encode(a),
        Command::Decode(a) => cmd_decode(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Grid(a) => cmd_grid(a),
        Command::Synth(a) => cmd_synth(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
