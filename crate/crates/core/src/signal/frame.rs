use crate::{Error, Result};

/// A fixed-length block of the signal. The last frame of a stream may be
/// zero-padded; `padding` counts the appended zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub index: usize,
    pub samples: Vec<f64>,
    pub padding: usize,
}

impl Frame {
    /// Samples that came from the signal, without padding.
    pub fn content(&self) -> &[f64] {
        &self.samples[..self.samples.len() - self.padding]
    }
}

/// Splits `samples` into non-overlapping frames of `frame_len`, zero-padding
/// the last one.
pub fn frame_signal(samples: &[f64], frame_len: usize) -> Result<Vec<Frame>> {
    if frame_len == 0 {
        return Err(Error::InvalidConfig("frame_len must be at least 1".into()));
    }
    if samples.is_empty() {
        return Err(Error::EmptySignal);
    }
    Ok(samples
        .chunks(frame_len)
        .enumerate()
        .map(|(index, chunk)| {
            let padding = frame_len - chunk.len();
            let mut samples = Vec::with_capacity(frame_len);
            samples.extend_from_slice(chunk);
            samples.resize(frame_len, 0.0);
            Frame {
                index,
                samples,
                padding,
            }
        })
        .collect())
}

/// Concatenates frame contents, dropping padding.
pub fn deframe(frames: &[Frame]) -> Vec<f64> {
    frames.iter().flat_map(|f| f.content().iter().copied()).collect()
}

/// Number of frames covering `n` samples.
pub fn frame_count(n: usize, frame_len: usize) -> usize {
    n.div_ceil(frame_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_multiple() {
        let x = vec![0.1; 400];
        let frames = frame_signal(&x, 200).unwrap();
        assert_eq!(frames.len(), 2);
        assert!(frames.iter().all(|f| f.padding == 0));
    }

    #[test]
    fn one_over() {
        let x = vec![0.1; 401];
        let frames = frame_signal(&x, 200).unwrap();
        assert_eq!(frames.len(), 3);
        assert_eq!(frames[2].padding, 199);
        assert_eq!(frames[2].samples.len(), 200);
        assert_eq!(frames[2].samples[0], 0.1);
        assert!(frames[2].samples[1..].iter().all(|&s| s == 0.0));
    }

    #[test]
    fn single_sample() {
        let frames = frame_signal(&[0.5], 200).unwrap();
        assert_eq!(frames.len(), 1);
        assert_eq!(frames[0].padding, 199);
    }

    #[test]
    fn empty_is_error() {
        assert!(matches!(frame_signal(&[], 200), Err(Error::EmptySignal)));
        assert!(frame_signal(&[1.0], 0).is_err());
    }

    proptest! {
        #[test]
        fn deframe_inverts_framing(
            x in prop::collection::vec(-1.0f64..=1.0, 1..600),
            frame_len in 1usize..250,
        ) {
            let frames = frame_signal(&x, frame_len).unwrap();
            prop_assert_eq!(frames.len(), frame_count(x.len(), frame_len));
            let back = deframe(&frames);
            prop_assert_eq!(back.len(), x.len());
            for (a, b) in back.iter().zip(&x) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
