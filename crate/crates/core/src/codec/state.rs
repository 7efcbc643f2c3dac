use super::CodecConfig;
use crate::par::Exec;
use crate::predictors::{fuse, Family, PredictorBank, Ranking};
use crate::quantizer::JayantQuantizer;
use crate::training::{build_trainset, train_bank, TrainConfig};
use crate::{Result, ORDER};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub value: f64,
    pub ranking: Option<Ranking>,
}

/// State shared by encoder and decoder. It only ever sees predictions and
/// dequantized residuals, never the original signal.
#[derive(Debug, Clone)]
pub struct CodecState {
    cfg: CodecConfig,
    train_cfg: TrainConfig,
    exec: Exec,
    quantizer: JayantQuantizer,
    /// Last `ORDER` reconstructed samples, oldest first.
    history: [f64; ORDER],
    /// `None` until the first retraining: the last-sample baseline.
    bank: Option<PredictorBank>,
    /// Index of the frame being coded.
    frame_index: usize,
    frame: Vec<f64>,
    pending: Option<Vec<f64>>,
}

impl CodecState {
    pub fn new(cfg: CodecConfig, exec: Exec) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            quantizer: JayantQuantizer::new(cfg.nq)?,
            train_cfg: TrainConfig::with_epochs(cfg.epochs as usize),
            frame: Vec::with_capacity(cfg.frame_len),
            cfg,
            exec,
            history: [0.0; ORDER],
            bank: None,
            frame_index: 0,
            pending: None,
        })
    }

    pub fn quantizer_mut(&mut self) -> &mut JayantQuantizer {
        &mut self.quantizer
    }

    pub fn quantizer(&self) -> &JayantQuantizer {
        &self.quantizer
    }

    pub fn history(&self) -> &[f64; ORDER] {
        &self.history
    }

    pub fn bank(&self) -> Option<&PredictorBank> {
        self.bank.as_ref()
    }

    pub fn frame_index(&self) -> usize {
        self.frame_index
    }

    fn retrain(&mut self, frame: &[f64]) {
        let families = self.cfg.mode.families();
        if families.is_empty() {
            return;
        }
        let ts = match build_trainset(frame) {
            Ok(ts) => ts,
            Err(e) => {
                log::warn!("frame {}: {e}; keeping previous predictors", self.frame_index);
                return;
            }
        };
        let trained = train_bank(
            families,
            &ts,
            &self.train_cfg,
            self.cfg.seed,
            self.frame_index,
            self.exec,
        );
        let bank = self.bank.get_or_insert_with(PredictorBank::default);
        trained.install(bank);
    }

    /// Prediction for the next sample, retraining first if a frame has just
    /// been completed.
    pub fn predict_next(&mut self) -> Prediction {
        if let Some(frame) = self.pending.take() {
            self.retrain(&frame);
        }
        let x = self.history;
        let Some(bank) = self.bank.as_mut() else {
            return Prediction {
                value: x[ORDER - 1],
                ranking: None,
            };
        };
        let (value, ranking) = match self.cfg.mode.fusion() {
            Some(mode) => {
                let outs = Family::ALL.map(|f| bank.predict_family(f, &x));
                let fused = fuse(outs, mode);
                (fused.value, Some(fused.ranking))
            }
            None => {
                let family = self.cfg.mode.families()[0];
                (bank.predict_family(family, &x), None)
            }
        };
        // a NaN prediction would poison the loop; fall back to the last sample
        let value = if value.is_finite() {
            value.clamp(-1.0, 1.0)
        } else {
            x[ORDER - 1]
        };
        Prediction { value, ranking }
    }

    /// Forms the reconstruction `prediction + e_hat`, clamped to [-1, 1], and
    /// shifts it into the history. Returns the reconstructed sample.
    pub fn commit(&mut self, prediction: f64, e_hat: f64) -> f64 {
        let rec = (prediction + e_hat).clamp(-1.0, 1.0);
        self.history.rotate_left(1);
        self.history[ORDER - 1] = rec;
        self.frame.push(rec);
        if self.frame.len() == self.cfg.frame_len {
            let done = std::mem::replace(&mut self.frame, Vec::with_capacity(self.cfg.frame_len));
            self.pending = Some(done);
            self.frame_index += 1;
        }
        rec
    }
}
