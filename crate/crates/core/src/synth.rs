//! Deterministic synthetic test signals at 8 kHz.
//!
//! - `Ar`: an 8th-order all-pole filter whose four resonances wander like
//!   formants, driven by a Rosenberg glottal pulse train with noisy unvoiced
//!   stretches and a syllabic envelope.
//! - `Tones`: a harmonic complex whose fundamental sweeps 100 to 400 Hz.
//! - `Noise`: white, uniform.
//!
//! All kinds are peak-normalized to 0.9.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::rng::StreamRng;
use crate::signal::SampleBuffer;
use crate::{Error, Result, SAMPLE_RATE_HZ};

pub const PEAK: f64 = 0.9;
pub const MAX_SECONDS: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SynthKind {
    Ar,
    Tones,
    Noise,
}

impl SynthKind {
    pub const ALL: [SynthKind; 3] = [SynthKind::Ar, SynthKind::Tones, SynthKind::Noise];

    pub fn name(self) -> &'static str {
        match self {
            SynthKind::Ar => "ar",
            SynthKind::Tones => "tones",
            SynthKind::Noise => "noise",
        }
    }
}

impl fmt::Display for SynthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SynthKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown signal kind '{s}'")))
    }
}

pub fn synthesize(kind: SynthKind, seconds: f64, seed: u64) -> Result<SampleBuffer> {
    if !(seconds > 0.0 && seconds <= MAX_SECONDS) {
        return Err(Error::InvalidConfig(format!(
            "seconds must be in (0, {MAX_SECONDS}], got {seconds}"
        )));
    }
    let n = ((seconds * SAMPLE_RATE_HZ as f64).round() as usize).max(1);
    let mut rng = StreamRng::from_parts(&[seed, kind as u64]);
    let raw = match kind {
        SynthKind::Ar => formant_ar(n, &mut rng),
        SynthKind::Tones => harmonic_sweep(n, &mut rng),
        SynthKind::Noise => (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect(),
    };
    SampleBuffer::at_codec_rate(peak_normalize(raw))
}

fn peak_normalize(mut x: Vec<f64>) -> Vec<f64> {
    let peak = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak > 0.0 {
        let g = PEAK / peak;
        x.iter_mut().for_each(|v| *v = (*v * g).clamp(-PEAK, PEAK));
    }
    x
}

/// Multiplies out four resonator sections `1 - 2r cos(w) z^-1 + r^2 z^-2`
/// into AR(8) coefficients `a[1..=8]` (with `a[0] = 1`).
fn ar8_coefficients(freqs: &[f64; 4], bandwidths: &[f64; 4]) -> [f64; 9] {
    let fs = SAMPLE_RATE_HZ as f64;
    let mut poly = vec![1.0];
    for (f, bw) in freqs.iter().zip(bandwidths) {
        let r = (-PI * bw / fs).exp();
        let section = [1.0, -2.0 * r * (2.0 * PI * f / fs).cos(), r * r];
        let mut next = vec![0.0; poly.len() + 2];
        for (i, p) in poly.iter().enumerate() {
            for (j, s) in section.iter().enumerate() {
                next[i + j] += p * s;
            }
        }
        poly = next;
    }
    poly.try_into().unwrap()
}

fn formant_ar(n: usize, rng: &mut StreamRng) -> Vec<f64> {
    let fs = SAMPLE_RATE_HZ as f64;
    let base = [500.0, 1500.0, 2500.0, 3300.0];
    let depth = [200.0, 400.0, 300.0, 150.0];
    let rates: [f64; 4] = std::array::from_fn(|_| rng.uniform(1.5, 4.0));
    let phases: [f64; 4] = std::array::from_fn(|_| rng.uniform(0.0, 2.0 * PI));
    let bandwidths = [70.0, 100.0, 140.0, 180.0];
    let syllable_rate = rng.uniform(3.0, 5.0);
    let f0_base = rng.uniform(100.0, 160.0);

    let mut a = [0.0; 9];
    let mut y = vec![0.0; n];
    let mut glottal_phase = 0.0;
    let mut tilt = 0.0;
    for i in 0..n {
        let t = i as f64 / fs;
        if i % 40 == 0 {
            let freqs: [f64; 4] =
                std::array::from_fn(|k| base[k] + depth[k] * (2.0 * PI * rates[k] * t + phases[k]).sin());
            a = ar8_coefficients(&freqs, &bandwidths);
        }
        let syllable = (PI * syllable_rate * t).sin().abs();
        // unvoiced in the troughs between syllables
        let voiced = syllable > 0.3;
        let f0 = f0_base * (1.0 + 0.1 * (2.0 * PI * 0.7 * t).sin());
        let prev_flow = glottal_flow(glottal_phase);
        glottal_phase = (glottal_phase + f0 / fs).fract();
        // flow derivative, so lip radiation is folded into the source
        let pulse = (glottal_flow(glottal_phase) - prev_flow) * fs / f0;
        let excitation = if voiced {
            pulse + 0.02 * rng.normal()
        } else {
            0.1 * rng.normal()
        };
        tilt = 0.5 * tilt + excitation;
        let mut s = syllable * tilt;
        for k in 1..=8 {
            if i >= k {
                s -= a[k] * y[i - k];
            }
        }
        y[i] = s;
    }
    y
}

fn harmonic_sweep(n: usize, rng: &mut StreamRng) -> Vec<f64> {
    let fs = SAMPLE_RATE_HZ as f64;
    let phase0: [f64; 6] = std::array::from_fn(|_| rng.uniform(0.0, 2.0 * PI));
    let duration = n as f64 / fs;
    let mut phase = 0.0;
    (0..n)
        .map(|i| {
            let t = i as f64 / fs;
            let f0 = 100.0 * 4f64.powf(t / duration);
            phase += 2.0 * PI * f0 / fs;
            (1..=6)
                .filter(|&k| k as f64 * f0 < fs / 2.0)
                .map(|k| (k as f64 * phase + phase0[k - 1]).sin() / k as f64)
                .sum()
        })
        .collect()
}

/// Rosenberg glottal flow over one pitch period, `phase` in [0, 1).
fn glottal_flow(phase: f64) -> f64 {
    const OPEN: f64 = 0.4;
    const CLOSE: f64 = 0.16;
    if phase < OPEN {
        0.5 * (1.0 - (PI * phase / OPEN).cos())
    } else if phase < OPEN + CLOSE {
        (PI * (phase - OPEN) / (2.0 * CLOSE)).cos()
    } else {
        0.0
    }
}

/// Normalized autocorrelation at `lag`.
pub fn autocorrelation(x: &[f64], lag: usize) -> f64 {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let var: f64 = x.iter().map(|v| (v - mean) * (v - mean)).sum();
    let cov: f64 = x
        .iter()
        .zip(&x[lag..])
        .map(|(a, b)| (a - mean) * (b - mean))
        .sum();
    cov / var
}
