//! RIFF/WAVE, PCM 16-bit mono 8 kHz only. No resampling or conversion.

use std::fs;
use std::path::Path;

use super::SampleBuffer;
use crate::{Error, Result, SAMPLE_RATE_HZ};

const PCM_FORMAT_TAG: u16 = 1;

pub fn load_wav(path: impl AsRef<Path>) -> Result<SampleBuffer> {
    let bytes = fs::read(path)?;
    decode_wav(&bytes)
}

pub fn write_wav(path: impl AsRef<Path>, buf: &SampleBuffer) -> Result<()> {
    fs::write(path, encode_wav(buf))?;
    Ok(())
}

fn u16_at(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

struct Fmt {
    format_tag: u16,
    channels: u16,
    sample_rate: u32,
    bits_per_sample: u16,
}

pub fn decode_wav(bytes: &[u8]) -> Result<SampleBuffer> {
    if bytes.len() < 12 {
        return Err(Error::CorruptFile("shorter than RIFF header".into()));
    }
    if &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::UnsupportedFormat("not a RIFF/WAVE file".into()));
    }

    let mut fmt: Option<Fmt> = None;
    let mut data: Option<&[u8]> = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32_at(bytes, pos + 4) as usize;
        let body_start = pos + 8;
        let body_end = body_start
            .checked_add(size)
            .filter(|&e| e <= bytes.len())
            .ok_or_else(|| {
                Error::CorruptFile(format!(
                    "chunk '{}' claims {size} bytes, only {} remain",
                    String::from_utf8_lossy(id),
                    bytes.len() - body_start
                ))
            })?;
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => {
                if body.len() < 16 {
                    return Err(Error::CorruptFile("fmt chunk shorter than 16 bytes".into()));
                }
                fmt = Some(Fmt {
                    format_tag: u16_at(body, 0),
                    channels: u16_at(body, 2),
                    sample_rate: u32_at(body, 4),
                    bits_per_sample: u16_at(body, 14),
                });
            }
            b"data" => data = Some(body),
            _ => {}
        }
        // chunks are word aligned
        pos = body_end + (size & 1);
    }

    let fmt = fmt.ok_or_else(|| Error::CorruptFile("missing fmt chunk".into()))?;
    if fmt.format_tag != PCM_FORMAT_TAG {
        return Err(Error::UnsupportedFormat(format!(
            "format tag {} (only PCM is accepted)",
            fmt.format_tag
        )));
    }
    if fmt.channels != 1 {
        return Err(Error::UnsupportedFormat(format!(
            "{} channels (only mono is accepted)",
            fmt.channels
        )));
    }
    if fmt.sample_rate != SAMPLE_RATE_HZ {
        return Err(Error::UnsupportedFormat(format!(
            "{} Hz (only {SAMPLE_RATE_HZ} Hz is accepted)",
            fmt.sample_rate
        )));
    }
    if fmt.bits_per_sample != 16 {
        return Err(Error::UnsupportedFormat(format!(
            "{}-bit samples (only 16-bit is accepted)",
            fmt.bits_per_sample
        )));
    }
    let data = data.ok_or_else(|| Error::CorruptFile("missing data chunk".into()))?;
    if data.len() % 2 != 0 {
        return Err(Error::CorruptFile("data chunk ends mid-sample".into()));
    }

    let samples = data
        .chunks_exact(2)
        .map(|c| i16::from_le_bytes([c[0], c[1]]) as f64 / 32768.0)
        .collect();
    Ok(SampleBuffer {
        samples,
        sample_rate_hz: fmt.sample_rate,
    })
}

fn to_pcm16(s: f64) -> i16 {
    (s * 32768.0).round().clamp(-32768.0, 32767.0) as i16
}

pub fn encode_wav(buf: &SampleBuffer) -> Vec<u8> {
    let data_len = (buf.samples.len() * 2) as u32;
    let mut out = Vec::with_capacity(44 + data_len as usize);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&PCM_FORMAT_TAG.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&buf.sample_rate_hz.to_le_bytes());
    out.extend_from_slice(&(buf.sample_rate_hz * 2).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for &s in &buf.samples {
        out.extend_from_slice(&to_pcm16(s).to_le_bytes());
    }
    out
}
