use crate::signal::frame_signal;
use crate::{Error, Result};

/// SNR of one frame. Frames without error or without signal have no finite
/// SNR and are left out of the segmental mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrameSnr {
    Db(f64),
    /// `e ≡ 0`: SNR is +∞.
    ZeroError,
    /// `x ≡ 0`.
    ZeroSignal,
}

impl FrameSnr {
    pub fn db(self) -> Option<f64> {
        match self {
            FrameSnr::Db(v) => Some(v),
            _ => None,
        }
    }
}

/// `10·log10(Σx² / Σe²)`.
pub fn snr_frame(x: &[f64], e: &[f64]) -> Result<FrameSnr> {
    if x.len() != e.len() {
        return Err(Error::LengthMismatch(x.len(), e.len()));
    }
    let signal: f64 = x.iter().map(|v| v * v).sum();
    let noise: f64 = e.iter().map(|v| v * v).sum();
    Ok(if signal == 0.0 {
        FrameSnr::ZeroSignal
    } else if noise == 0.0 {
        FrameSnr::ZeroError
    } else {
        FrameSnr::Db(10.0 * (signal / noise).log10())
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegSnrReport {
    /// Finite per-frame SNRs, in frame order.
    pub per_frame_snr_db: Vec<f64>,
    /// Mean of `per_frame_snr_db`; `+∞` when every frame is error-free.
    pub segsnr_db: f64,
    pub frames: Vec<FrameSnr>,
    pub excluded_zero_error: usize,
    pub excluded_zero_signal: usize,
}

impl SegSnrReport {
    pub fn frames_excluded(&self) -> usize {
        self.excluded_zero_error + self.excluded_zero_signal
    }
}

/// Mean over frames of the per-frame SNR in dB.
pub fn segsnr(x: &[f64], x_rec: &[f64], frame_len: usize) -> Result<SegSnrReport> {
    if x.len() != x_rec.len() {
        return Err(Error::LengthMismatch(x.len(), x_rec.len()));
    }
    let err: Vec<f64> = x.iter().zip(x_rec).map(|(a, b)| a - b).collect();
    let x_frames = frame_signal(x, frame_len)?;
    let e_frames = frame_signal(&err, frame_len)?;
    let frames = x_frames
        .iter()
        .zip(&e_frames)
        .map(|(xf, ef)| snr_frame(&xf.samples, &ef.samples))
        .collect::<Result<Vec<_>>>()?;

    let per_frame_snr_db: Vec<f64> = frames.iter().filter_map(|f| f.db()).collect();
    let excluded_zero_error = frames.iter().filter(|f| **f == FrameSnr::ZeroError).count();
    let excluded_zero_signal = frames.iter().filter(|f| **f == FrameSnr::ZeroSignal).count();
    if excluded_zero_error + excluded_zero_signal > 0 {
        log::info!(
            "segsnr: excluded {excluded_zero_error} error-free and {excluded_zero_signal} silent frames"
        );
    }
    let segsnr_db = if !per_frame_snr_db.is_empty() {
        per_frame_snr_db.iter().sum::<f64>() / per_frame_snr_db.len() as f64
    } else if excluded_zero_error > 0 {
        f64::INFINITY
    } else {
        return Err(Error::NoScorableFrames);
    };
    Ok(SegSnrReport {
        per_frame_snr_db,
        segsnr_db,
        frames,
        excluded_zero_error,
        excluded_zero_signal,
    })
}
