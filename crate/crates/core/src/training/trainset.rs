use crate::predictors::Input;
use crate::{Error, Result, ORDER};

/// Lagged-window regression pairs drawn from one decoded frame.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainSet {
    pub inputs: Vec<Input>,
    pub targets: Vec<f64>,
}

impl TrainSet {
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }
}

/// Row `t` holds `frame[t..t+ORDER]` (oldest first) and targets `frame[t+ORDER]`,
/// giving `frame.len() - ORDER` rows.
pub fn build_trainset(frame: &[f64]) -> Result<TrainSet> {
    if frame.len() <= ORDER {
        return Err(Error::FrameTooShort {
            len: frame.len(),
            order: ORDER,
        });
    }
    let inputs = frame
        .windows(ORDER)
        .take(frame.len() - ORDER)
        .map(|w| w.try_into().unwrap())
        .collect();
    let targets = frame[ORDER..].to_vec();
    Ok(TrainSet { inputs, targets })
}
