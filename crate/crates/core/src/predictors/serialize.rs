// Layout: "NPRB", u16 version, u8 family mask (bit i = Family index i),
// then per present family in order:
//   mlp   : 5 x 25 f64
//   elman : 5 x (29 params + 2 context) f64
//   rbf   : u32 S, f64 spread, f64 bias, f64 lin_b, S x (10 center + 1 weight) f64

use super::{ElmanNet, MlpNet, Parametric, PredictorBank, RbfNet, COMMITTEE_SIZE};
use crate::{Error, Result, ORDER};

const MAGIC: &[u8; 4] = b"NPRB";
const VERSION: u16 = 1;

fn put(out: &mut Vec<u8>, v: f64) {
    out.extend_from_slice(&v.to_le_bytes());
}

pub(super) fn write_bank(bank: &PredictorBank) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    let mask = bank.mlp.is_some() as u8
        | (bank.elman.is_some() as u8) << 1
        | (bank.rbf.is_some() as u8) << 2;
    out.push(mask);
    if let Some(nets) = &bank.mlp {
        for net in nets {
            net.params().into_iter().for_each(|v| put(&mut out, v));
        }
    }
    if let Some(nets) = &bank.elman {
        for net in nets {
            net.params().into_iter().for_each(|v| put(&mut out, v));
            net.context.iter().for_each(|&v| put(&mut out, v));
        }
    }
    if let Some(rbf) = &bank.rbf {
        out.extend_from_slice(&(rbf.centers.len() as u32).to_le_bytes());
        put(&mut out, rbf.spread);
        put(&mut out, rbf.bias);
        put(&mut out, rbf.lin_b);
        for (c, w) in rbf.centers.iter().zip(&rbf.lin_w) {
            c.iter().for_each(|&v| put(&mut out, v));
            put(&mut out, *w);
        }
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        let end = self.pos + n;
        if end > self.bytes.len() {
            return Err(Error::CorruptFile("predictor blob truncated".into()));
        }
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64s(&mut self, n: usize) -> Result<Vec<f64>> {
        (0..n).map(|_| self.f64()).collect()
    }
}

pub(super) fn read_bank(bytes: &[u8]) -> Result<PredictorBank> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(4)? != MAGIC {
        return Err(Error::BadMagic);
    }
    let version = u16::from_le_bytes(r.take(2)?.try_into().unwrap());
    if version != VERSION {
        return Err(Error::VersionMismatch {
            found: version,
            expected: VERSION,
        });
    }
    let mask = r.take(1)?[0];
    let mut bank = PredictorBank::default();
    if mask & 1 != 0 {
        let mut nets = Vec::with_capacity(COMMITTEE_SIZE);
        for _ in 0..COMMITTEE_SIZE {
            let mut net = MlpNet::zeros();
            net.set_params(&r.f64s(MlpNet::N_PARAMS)?);
            nets.push(net);
        }
        bank.mlp = Some(nets.try_into().unwrap());
    }
    if mask & 2 != 0 {
        let mut nets = Vec::with_capacity(COMMITTEE_SIZE);
        for _ in 0..COMMITTEE_SIZE {
            let mut net = ElmanNet::zeros();
            net.set_params(&r.f64s(ElmanNet::N_PARAMS)?);
            for c in net.context.iter_mut() {
                *c = r.f64()?;
            }
            nets.push(net);
        }
        bank.elman = Some(nets.try_into().unwrap());
    }
    if mask & 4 != 0 {
        let s = u32::from_le_bytes(r.take(4)?.try_into().unwrap()) as usize;
        let spread = r.f64()?;
        let bias = r.f64()?;
        let lin_b = r.f64()?;
        let mut rbf = RbfNet {
            centers: Vec::with_capacity(s),
            bias,
            lin_w: Vec::with_capacity(s),
            lin_b,
            spread,
        };
        for _ in 0..s {
            let c = r.f64s(ORDER)?;
            rbf.centers.push(c.try_into().unwrap());
            rbf.lin_w.push(r.f64()?);
        }
        bank.rbf = Some(rbf);
    }
    if r.pos != bytes.len() {
        return Err(Error::CorruptFile("trailing bytes after predictor blob".into()));
    }
    Ok(bank)
}
