use std::io::Write;
use std::path::{Path, PathBuf};

use crate::codec::{decode_traced, encode_traced, CodecConfig, PredictorMode};
use crate::par::Exec;
use crate::signal::load_wav;
use crate::{Error, Result};

use super::segsnr;

#[derive(Debug, Clone, PartialEq)]
pub struct FileRow {
    pub nq: u8,
    pub mode: PredictorMode,
    pub epochs: u16,
    pub file: String,
    pub segsnr_db: f64,
    pub frames_excluded: usize,
}

/// Mean and population standard deviation of SEGSNR over files.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateCell {
    pub nq: u8,
    pub mode: PredictorMode,
    pub epochs: u16,
    pub mean_db: f64,
    pub std_db: f64,
    pub n_files: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentResult {
    pub rows: Vec<FileRow>,
    pub cells: Vec<AggregateCell>,
    /// Serialized bitstream behind each row, index-aligned with `rows`.
    pub bitstreams: Vec<Vec<u8>>,
    pub failures: Vec<(String, CodecConfig, String)>,
}

pub fn population_std(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run_one(path: &Path, cfg: &CodecConfig, exec: Exec) -> Result<(FileRow, Vec<u8>)> {
    let x = load_wav(path)?;
    let coded = encode_traced(&x, cfg, exec)?;
    let (y, _) = decode_traced(&coded.bitstream, exec)?;
    let report = segsnr(&x.samples, &y, cfg.frame_len)?;
    let row = FileRow {
        nq: cfg.nq,
        mode: cfg.mode,
        epochs: cfg.epochs,
        file: file_label(path),
        segsnr_db: report.segsnr_db,
        frames_excluded: report.frames_excluded(),
    };
    Ok((row, coded.bitstream.to_bytes()))
}

/// Groups rows by configuration, in the order the configurations first appear.
pub fn aggregate(rows: &[FileRow], cfgs: &[CodecConfig]) -> Vec<AggregateCell> {
    cfgs.iter()
        .filter_map(|cfg| {
            let values: Vec<f64> = rows
                .iter()
                .filter(|r| r.nq == cfg.nq && r.mode == cfg.mode && r.epochs == cfg.epochs)
                .map(|r| r.segsnr_db)
                .collect();
            if values.is_empty() {
                return None;
            }
            Some(AggregateCell {
                nq: cfg.nq,
                mode: cfg.mode,
                epochs: cfg.epochs,
                mean_db: values.iter().sum::<f64>() / values.len() as f64,
                std_db: population_std(&values),
                n_files: values.len(),
            })
        })
        .collect()
}

/// Encodes and decodes every file under every configuration and scores the
/// decoder output. Grid cells run on `exec`; failures are collected, not
/// fatal.
pub fn run_experiment(corpus: &[PathBuf], cfgs: &[CodecConfig], exec: Exec) -> Result<ExperimentResult> {
    if corpus.is_empty() {
        return Err(Error::InvalidConfig("corpus is empty".into()));
    }
    if cfgs.is_empty() {
        return Err(Error::InvalidConfig("no configurations".into()));
    }
    let jobs: Vec<(&CodecConfig, &PathBuf)> = cfgs
        .iter()
        .flat_map(|c| corpus.iter().map(move |p| (c, p)))
        .collect();
    let outcomes = exec.map(jobs, |(cfg, path)| {
        (cfg.clone(), path, run_one(path, cfg, Exec::Sequential))
    });

    let mut result = ExperimentResult::default();
    for (cfg, path, outcome) in outcomes {
        match outcome {
            Ok((row, bytes)) => {
                result.rows.push(row);
                result.bitstreams.push(bytes);
            }
            Err(e) => {
                log::error!("{} ({} nq={}): {e}", path.display(), cfg.mode, cfg.nq);
                result.failures.push((file_label(path), cfg, e.to_string()));
            }
        }
    }
    result.cells = aggregate(&result.rows, cfgs);
    Ok(result)
}

pub fn write_rows_csv<W: Write>(out: W, rows: &[FileRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["nq", "mode", "epochs", "file", "segsnr_db", "frames_excluded"])?;
    for r in rows {
        w.write_record([
            r.nq.to_string(),
            r.mode.name().to_string(),
            r.epochs.to_string(),
            r.file.clone(),
            format!("{:.6}", r.segsnr_db),
            r.frames_excluded.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `std_db` is the population standard deviation (divides by `n_files`).
pub fn write_aggregate_csv<W: Write>(out: W, cells: &[AggregateCell]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["nq", "mode", "epochs", "mean_db", "std_db", "n_files"])?;
    for c in cells {
        w.write_record([
            c.nq.to_string(),
            c.mode.name().to_string(),
            c.epochs.to_string(),
            format!("{:.6}", c.mean_db),
            format!("{:.6}", c.std_db),
            c.n_files.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
