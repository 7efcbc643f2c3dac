//! Closed-loop ADPCM with backward-adapted neural prediction.
//!
//! Encoder and decoder share one [`CodecState`]. Per sample it predicts
//! from the last `ORDER` reconstructed samples, the encoder quantizes the
//! residual, and both sides add the dequantized residual back to form the
//! reconstruction. When frame `k` is complete, the predictors are retrained
//! on frame `k`'s reconstruction before frame `k+1` is coded. Frame 0 uses the
//! previous reconstructed sample as its prediction.

pub mod bitstream;
mod state;

use std::fmt;
use std::str::FromStr;

pub use bitstream::{Bitstream, Header};
pub use state::{CodecState, Prediction};

use crate::par::Exec;
use crate::predictors::{Family, FusionMode, Ranking};
use crate::quantizer::{MAX_BITS, MIN_BITS};
use crate::signal::SampleBuffer;
use crate::{Error, Result, ORDER, SAMPLE_RATE_HZ};

pub const DEFAULT_FRAME_LEN: usize = 200;
pub const DEFAULT_EPOCHS: u16 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PredictorMode {
    Mlp = 0,
    Elman = 1,
    Rbf = 2,
    CommitteeMean = 3,
    CommitteeMedian = 4,
    LastSample = 5,
}

impl PredictorMode {
    pub const ALL: [PredictorMode; 6] = [
        PredictorMode::Mlp,
        PredictorMode::Elman,
        PredictorMode::Rbf,
        PredictorMode::CommitteeMean,
        PredictorMode::CommitteeMedian,
        PredictorMode::LastSample,
    ];

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            PredictorMode::Mlp => "mlp",
            PredictorMode::Elman => "elman",
            PredictorMode::Rbf => "rbf",
            PredictorMode::CommitteeMean => "committee_mean",
            PredictorMode::CommitteeMedian => "committee_median",
            PredictorMode::LastSample => "last_sample_baseline",
        }
    }

    /// Families that must be trained at each frame boundary.
    pub fn families(self) -> &'static [Family] {
        match self {
            PredictorMode::Mlp => &[Family::Mlp],
            PredictorMode::Elman => &[Family::Elman],
            PredictorMode::Rbf => &[Family::Rbf],
            PredictorMode::CommitteeMean | PredictorMode::CommitteeMedian => &Family::ALL,
            PredictorMode::LastSample => &[],
        }
    }

    pub fn fusion(self) -> Option<FusionMode> {
        match self {
            PredictorMode::CommitteeMean => Some(FusionMode::Mean),
            PredictorMode::CommitteeMedian => Some(FusionMode::Median),
            _ => None,
        }
    }
}

impl fmt::Display for PredictorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PredictorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown predictor mode '{s}'")))
    }
}

/// Everything the decoder needs; all of it travels in the bitstream header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodecConfig {
    pub nq: u8,
    pub frame_len: usize,
    pub mode: PredictorMode,
    pub epochs: u16,
    pub seed: u64,
}

impl CodecConfig {
    pub fn new(nq: u8, mode: PredictorMode) -> Self {
        Self {
            nq,
            frame_len: DEFAULT_FRAME_LEN,
            mode,
            epochs: DEFAULT_EPOCHS,
            seed: 0,
        }
    }

    pub fn with_epochs(mut self, epochs: u16) -> Self {
        self.epochs = epochs;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_frame_len(mut self, frame_len: usize) -> Self {
        self.frame_len = frame_len;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_BITS..=MAX_BITS).contains(&self.nq) {
            return Err(Error::InvalidConfig(format!(
                "nq must be in {MIN_BITS}..={MAX_BITS}, got {}",
                self.nq
            )));
        }
        if self.frame_len <= ORDER || self.frame_len > u32::MAX as usize {
            return Err(Error::InvalidConfig(format!(
                "frame_len must exceed the prediction order {ORDER}, got {}",
                self.frame_len
            )));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidConfig("epochs must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for CodecConfig {
    fn default() -> Self {
        Self::new(5, PredictorMode::CommitteeMedian)
    }
}

/// Encoder result with the encoder's own view of the stream.
#[derive(Debug, Clone)]
pub struct Coded {
    pub bitstream: Bitstream,
    /// Reconstruction, trimmed to the input length. Bit-identical to what the
    /// decoder produces.
    pub reconstruction: Vec<f64>,
    /// Per-sample fusion ranking (fused modes, from frame 1 on), padded
    /// samples included.
    pub rankings: Vec<Option<Ranking>>,
}

pub fn encode(x: &SampleBuffer, cfg: &CodecConfig) -> Result<Bitstream> {
    Ok(encode_traced(x, cfg, Exec::default())?.bitstream)
}

pub fn encode_traced(x: &SampleBuffer, cfg: &CodecConfig, exec: Exec) -> Result<Coded> {
    cfg.validate()?;
    if x.is_empty() {
        return Err(Error::EmptySignal);
    }
    if x.sample_rate_hz != SAMPLE_RATE_HZ {
        return Err(Error::UnsupportedFormat(format!(
            "{} Hz (codec runs at {SAMPLE_RATE_HZ} Hz)",
            x.sample_rate_hz
        )));
    }
    let padded = x.len().div_ceil(cfg.frame_len) * cfg.frame_len;
    let mut state = CodecState::new(cfg.clone(), exec)?;
    let mut writer = bitstream::CodeWriter::default();
    let mut reconstruction = Vec::with_capacity(padded);
    let mut rankings = Vec::with_capacity(padded);

    for n in 0..padded {
        let target = x.samples.get(n).copied().unwrap_or(0.0);
        let prediction = state.predict_next();
        let (code, e_hat) = state.quantizer_mut().quantize(target - prediction.value);
        writer.push(code, cfg.nq);
        reconstruction.push(state.commit(prediction.value, e_hat));
        rankings.push(prediction.ranking);
    }
    reconstruction.truncate(x.len());

    let bitstream = Bitstream {
        header: Header {
            version: bitstream::VERSION,
            nq: cfg.nq,
            mode: cfg.mode,
            epochs: cfg.epochs,
            frame_len: cfg.frame_len as u32,
            sample_count: x.len() as u64,
            seed: cfg.seed,
        },
        payload: writer.finish(),
    };
    Ok(Coded {
        bitstream,
        reconstruction,
        rankings,
    })
}

pub fn decode(bs: &Bitstream) -> Result<SampleBuffer> {
    let (samples, _) = decode_traced(bs, Exec::default())?;
    Ok(SampleBuffer {
        samples,
        sample_rate_hz: SAMPLE_RATE_HZ,
    })
}

/// Decodes, also returning the per-sample fusion rankings.
pub fn decode_traced(bs: &Bitstream, exec: Exec) -> Result<(Vec<f64>, Vec<Option<Ranking>>)> {
    let header = &bs.header;
    if header.version != bitstream::VERSION {
        return Err(Error::VersionMismatch {
            found: header.version,
            expected: bitstream::VERSION,
        });
    }
    let cfg = header.config();
    cfg.validate()?;
    let padded = header.padded_count();
    let needed = header.payload_len();
    if bs.payload.len() < needed {
        return Err(Error::TruncatedPayload {
            needed,
            found: bs.payload.len(),
        });
    }
    let mut state = CodecState::new(cfg, exec)?;
    let mut out = Vec::with_capacity(padded);
    let mut rankings = Vec::with_capacity(padded);
    for code in bs.codes().take(padded) {
        let prediction = state.predict_next();
        let e_hat = state.quantizer_mut().dequantize(code)?;
        out.push(state.commit(prediction.value, e_hat));
        rankings.push(prediction.ranking);
    }
    out.truncate(header.sample_count as usize);
    Ok((out, rankings))
}
