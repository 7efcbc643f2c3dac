//! PCM audio in and out, and framing.

mod frame;
mod wav;

pub use frame::{deframe, frame_count, frame_signal, Frame};
pub use wav::{decode_wav, encode_wav, load_wav, write_wav};

use crate::{Error, Result, SAMPLE_RATE_HZ};

/// Mono signal with amplitudes in [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBuffer {
    pub samples: Vec<f64>,
    pub sample_rate_hz: u32,
}

impl SampleBuffer {
    /// Checks that every sample is finite and within [-1, 1].
    pub fn new(samples: Vec<f64>, sample_rate_hz: u32) -> Result<Self> {
        if let Some((i, s)) = samples
            .iter()
            .enumerate()
            .find(|(_, s)| !(-1.0..=1.0).contains(*s))
        {
            return Err(Error::InvalidConfig(format!(
                "sample {i} = {s} outside [-1, 1]"
            )));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    /// Buffer at the codec rate.
    pub fn at_codec_rate(samples: Vec<f64>) -> Result<Self> {
        Self::new(samples, SAMPLE_RATE_HZ)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_secs(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz as f64
    }
}
