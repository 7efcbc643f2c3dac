//! Adaptive mid-rise scalar quantizer with Jayant step multipliers.
//!
//! After every sample the step is scaled by a factor chosen by the code
//! magnitude: inner codes shrink it, outer codes expand it. The trajectory of
//! the step is a function of the code sequence alone, which is what lets the
//! decoder follow the encoder without side information.

use crate::{Error, Result};

pub const MIN_BITS: u8 = 2;
pub const MAX_BITS: u8 = 5;

pub const DEFAULT_STEP_INIT: f64 = 0.02;
pub const DEFAULT_STEP_MIN: f64 = 1e-5;
pub const DEFAULT_STEP_MAX: f64 = 0.5;

const MULTIPLIERS_2: [f64; 2] = [0.8, 1.6];
const MULTIPLIERS_3: [f64; 4] = [0.9, 0.9, 1.25, 1.75];
const MULTIPLIERS_4: [f64; 8] = [0.9, 0.9, 0.9, 0.9, 1.2, 1.6, 2.0, 2.4];
const MULTIPLIERS_5: [f64; 16] = [
    0.9, 0.9, 0.9, 0.9, 0.95, 0.95, 0.95, 0.95, 1.2, 1.5, 1.8, 2.1, 2.4, 2.7, 3.0, 3.3,
];

/// Default multiplier table for `nq` bits, indexed by code magnitude.
pub fn default_multipliers(nq: u8) -> Option<&'static [f64]> {
    match nq {
        2 => Some(&MULTIPLIERS_2),
        3 => Some(&MULTIPLIERS_3),
        4 => Some(&MULTIPLIERS_4),
        5 => Some(&MULTIPLIERS_5),
        _ => None,
    }
}

/// One transmitted symbol: a sign and a magnitude below `2^(nq-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantizedCode {
    pub negative: bool,
    pub magnitude: u8,
}

impl QuantizedCode {
    pub fn sign(self) -> f64 {
        if self.negative {
            -1.0
        } else {
            1.0
        }
    }

    /// Sign bit (1 = negative) followed by the magnitude, in the low `nq` bits.
    pub fn to_bits(self, nq: u8) -> u8 {
        ((self.negative as u8) << (nq - 1)) | self.magnitude
    }

    pub fn from_bits(bits: u8, nq: u8) -> Self {
        Self {
            negative: (bits >> (nq - 1)) & 1 == 1,
            magnitude: bits & ((1 << (nq - 1)) - 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JayantQuantizer {
    nq: u8,
    step: f64,
    step_min: f64,
    step_max: f64,
    multipliers: Vec<f64>,
}

impl JayantQuantizer {
    /// Quantizer with the default table and step bounds.
    pub fn new(nq: u8) -> Result<Self> {
        let table = default_multipliers(nq).ok_or_else(|| {
            Error::InvalidConfig(format!("nq must be in {MIN_BITS}..={MAX_BITS}, got {nq}"))
        })?;
        Self::with_params(
            nq,
            table.to_vec(),
            DEFAULT_STEP_INIT,
            DEFAULT_STEP_MIN,
            DEFAULT_STEP_MAX,
        )
    }

    pub fn with_params(
        nq: u8,
        multipliers: Vec<f64>,
        step: f64,
        step_min: f64,
        step_max: f64,
    ) -> Result<Self> {
        if !(MIN_BITS..=MAX_BITS).contains(&nq) {
            return Err(Error::InvalidConfig(format!(
                "nq must be in {MIN_BITS}..={MAX_BITS}, got {nq}"
            )));
        }
        let levels = 1usize << (nq - 1);
        if multipliers.len() != levels {
            return Err(Error::InvalidConfig(format!(
                "{nq}-bit quantizer needs {levels} multipliers, got {}",
                multipliers.len()
            )));
        }
        if multipliers.iter().any(|&m| !(m.is_finite() && m > 0.0)) {
            return Err(Error::InvalidConfig("multipliers must be positive".into()));
        }
        if !multipliers.iter().any(|&m| m < 1.0) || !multipliers.iter().any(|&m| m > 1.0) {
            return Err(Error::InvalidConfig(
                "multipliers must include values below and above 1".into(),
            ));
        }
        if !(step_min > 0.0 && step_min <= step && step <= step_max && step_max.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "step bounds must satisfy 0 < {step_min} <= {step} <= {step_max}"
            )));
        }
        Ok(Self {
            nq,
            step,
            step_min,
            step_max,
            multipliers,
        })
    }

    pub fn nq(&self) -> u8 {
        self.nq
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn step_bounds(&self) -> (f64, f64) {
        (self.step_min, self.step_max)
    }

    pub fn multipliers(&self) -> &[f64] {
        &self.multipliers
    }

    /// Number of magnitude levels per sign, `2^(nq-1)`.
    pub fn levels(&self) -> usize {
        self.multipliers.len()
    }

    fn reconstruct(&self, code: QuantizedCode) -> f64 {
        code.sign() * (code.magnitude as f64 + 0.5) * self.step
    }

    fn adapt(&mut self, magnitude: u8) {
        self.step = (self.step * self.multipliers[magnitude as usize])
            .clamp(self.step_min, self.step_max);
    }

    /// Quantizes residual `e`, returning the code and its reconstruction, and
    /// advances the step.
    pub fn quantize(&mut self, e: f64) -> (QuantizedCode, f64) {
        let top = (self.levels() - 1) as f64;
        // NaN lands on magnitude 0 through the clamp
        let magnitude = (e.abs() / self.step).floor().clamp(0.0, top);
        let magnitude = if magnitude.is_nan() { 0 } else { magnitude as u8 };
        let code = QuantizedCode {
            negative: e < 0.0,
            magnitude,
        };
        let e_hat = self.reconstruct(code);
        self.adapt(magnitude);
        (code, e_hat)
    }

    /// Decoder mirror of [`quantize`](Self::quantize).
    pub fn dequantize(&mut self, code: QuantizedCode) -> Result<f64> {
        if code.magnitude as usize >= self.levels() {
            return Err(Error::CodeOutOfRange {
                magnitude: code.magnitude,
                nq: self.nq,
            });
        }
        let e_hat = self.reconstruct(code);
        self.adapt(code.magnitude);
        Ok(e_hat)
    }
}
