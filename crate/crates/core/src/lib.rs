//! Waveform speech codec built on ADPCM with backward-adaptive nonlinear
//! prediction.
//!
//! The predictor is retrained at every frame boundary from the previously
//! *decoded* frame, so the decoder derives exactly the same coefficients as the
//! encoder and nothing but quantizer codes is transmitted. Three predictor
//! families are available:
//!
//! - a committee of five 10-2-1 multilayer perceptrons trained with
//!   Levenberg-Marquardt and Bayesian regularization,
//! - a committee of five Elman recurrent networks trained the same way,
//! - a radial basis function network grown greedily one neuron at a time,
//!
//! plus mean and median fusion of the three. Quality is measured with the
//! segmental SNR.
//!
//! ```no_run
//! use nadpcm::codec::{decode, encode, CodecConfig, PredictorMode};
//! use nadpcm::metrics::segsnr;
//! use nadpcm::signal::load_wav;
//!
//! let input = load_wav("speech.wav").unwrap();
//! let cfg = CodecConfig::new(4, PredictorMode::CommitteeMedian);
//! let stream = encode(&input, &cfg).unwrap();
//! let output = decode(&stream).unwrap();
//! let report = segsnr(&input.samples, &output.samples, cfg.frame_len).unwrap();
//! println!("SEGSNR {:.2} dB", report.segsnr_db);
//! ```

// Index loops read closer to the math in the numeric kernels.
#![allow(clippy::needless_range_loop)]

pub mod codec;
pub mod error;
pub mod metrics;
pub mod par;
pub mod predictors;
pub mod quantizer;
pub mod rng;
pub mod signal;
pub mod synth;
pub mod training;

pub use error::{Error, Result};

/// Prediction order: every predictor sees the last `ORDER` reconstructed samples.
pub const ORDER: usize = 10;

/// The only sampling rate the codec accepts.
pub const SAMPLE_RATE_HZ: u32 = 8000;
