//! Container: 30-byte little-endian header, then quantizer codes packed
//! MSB-first (sign bit, then magnitude bits), zero-padded to a byte.
//!
//! ```text
//! offset size field
//!      0    4 magic "NADP"
//!      4    2 version
//!      6    1 nq
//!      7    1 predictor mode
//!      8    2 epochs
//!     10    4 frame_len
//!     14    8 sample_count (before padding)
//!     22    8 seed
//!     30    . payload
//! ```

use super::{CodecConfig, PredictorMode};
use crate::quantizer::QuantizedCode;
use crate::{Error, Result};

pub const MAGIC: &[u8; 4] = b"NADP";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub version: u16,
    pub nq: u8,
    pub mode: PredictorMode,
    pub epochs: u16,
    pub frame_len: u32,
    pub sample_count: u64,
    pub seed: u64,
}

impl Header {
    pub fn config(&self) -> CodecConfig {
        CodecConfig {
            nq: self.nq,
            frame_len: self.frame_len as usize,
            mode: self.mode,
            epochs: self.epochs,
            seed: self.seed,
        }
    }

    /// Samples actually coded: `sample_count` rounded up to whole frames.
    pub fn padded_count(&self) -> usize {
        (self.sample_count as usize).div_ceil(self.frame_len as usize) * self.frame_len as usize
    }

    pub fn payload_len(&self) -> usize {
        (self.padded_count() * self.nq as usize).div_ceil(8)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitstream {
    pub header: Header,
    pub payload: Vec<u8>,
}

impl Bitstream {
    pub fn to_bytes(&self) -> Vec<u8> {
        let h = &self.header;
        let mut out = Vec::with_capacity(HEADER_LEN + self.payload.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&h.version.to_le_bytes());
        out.push(h.nq);
        out.push(h.mode as u8);
        out.extend_from_slice(&h.epochs.to_le_bytes());
        out.extend_from_slice(&h.frame_len.to_le_bytes());
        out.extend_from_slice(&h.sample_count.to_le_bytes());
        out.extend_from_slice(&h.seed.to_le_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 4 || &bytes[..4] != MAGIC {
            return Err(Error::BadMagic);
        }
        if bytes.len() < HEADER_LEN {
            return Err(Error::InvalidHeader(format!(
                "header is {HEADER_LEN} bytes, file has {}",
                bytes.len()
            )));
        }
        let version = u16::from_le_bytes([bytes[4], bytes[5]]);
        if version != VERSION {
            return Err(Error::VersionMismatch {
                found: version,
                expected: VERSION,
            });
        }
        let mode = PredictorMode::from_code(bytes[7])
            .ok_or_else(|| Error::InvalidHeader(format!("unknown predictor mode {}", bytes[7])))?;
        let header = Header {
            version,
            nq: bytes[6],
            mode,
            epochs: u16::from_le_bytes([bytes[8], bytes[9]]),
            frame_len: u32::from_le_bytes(bytes[10..14].try_into().unwrap()),
            sample_count: u64::from_le_bytes(bytes[14..22].try_into().unwrap()),
            seed: u64::from_le_bytes(bytes[22..30].try_into().unwrap()),
        };
        header
            .config()
            .validate()
            .map_err(|e| Error::InvalidHeader(e.to_string()))?;
        if header.sample_count == 0 {
            return Err(Error::InvalidHeader("zero samples".into()));
        }
        let payload = &bytes[HEADER_LEN..];
        let needed = header.payload_len();
        if payload.len() < needed {
            return Err(Error::TruncatedPayload {
                needed,
                found: payload.len(),
            });
        }
        if payload.len() > needed {
            return Err(Error::CorruptFile(format!(
                "{} bytes after payload",
                payload.len() - needed
            )));
        }
        Ok(Self {
            header,
            payload: payload.to_vec(),
        })
    }

    /// The `padded_count` transmitted codes; fill bits in the last byte are
    /// not read.
    pub fn codes(&self) -> CodeReader<'_> {
        CodeReader {
            bytes: &self.payload,
            bit: 0,
            nq: self.header.nq,
            remaining: self.header.padded_count(),
        }
    }
}

#[derive(Debug, Default)]
pub struct CodeWriter {
    bytes: Vec<u8>,
    bit: usize,
}

impl CodeWriter {
    pub fn push(&mut self, code: QuantizedCode, nq: u8) {
        let bits = code.to_bits(nq);
        for k in (0..nq).rev() {
            if self.bit.is_multiple_of(8) {
                self.bytes.push(0);
            }
            if (bits >> k) & 1 == 1 {
                *self.bytes.last_mut().unwrap() |= 0x80 >> (self.bit % 8);
            }
            self.bit += 1;
        }
    }

    pub fn finish(self) -> Vec<u8> {
        self.bytes
    }
}

pub struct CodeReader<'a> {
    bytes: &'a [u8],
    bit: usize,
    nq: u8,
    remaining: usize,
}

impl Iterator for CodeReader<'_> {
    type Item = QuantizedCode;

    fn next(&mut self) -> Option<QuantizedCode> {
        if self.remaining == 0 || self.bit + self.nq as usize > self.bytes.len() * 8 {
            return None;
        }
        self.remaining -= 1;
        let mut bits = 0u8;
        for _ in 0..self.nq {
            let b = (self.bytes[self.bit / 8] >> (7 - self.bit % 8)) & 1;
            bits = (bits << 1) | b;
            self.bit += 1;
        }
        Some(QuantizedCode::from_bits(bits, self.nq))
    }
}
