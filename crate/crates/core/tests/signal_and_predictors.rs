use nadpcm::predictors::{
    elman_predict, fuse, mlp_predict, rbf_predict, ElmanNet, FusionMode, MlpNet, Parametric,
    RbfNet,
};
use nadpcm::signal::{decode_wav, encode_wav, SampleBuffer};
use nadpcm::ORDER;
use proptest::prelude::*;

proptest! {
    #[test]
    fn wav_round_trip_within_one_lsb(samples in prop::collection::vec(-1.0f64..=1.0, 1..2000)) {
        let buf = SampleBuffer::at_codec_rate(samples).unwrap();
        let back = decode_wav(&encode_wav(&buf)).unwrap();
        prop_assert_eq!(back.len(), buf.len());
        prop_assert_eq!(back.sample_rate_hz, 8000);
        for (a, b) in buf.samples.iter().zip(&back.samples) {
            prop_assert!((a - b).abs() <= 1.0 / 32768.0);
        }
    }

    #[test]
    fn predictors_stay_finite(
        params in prop::collection::vec(-1e6f64..1e6, 29),
        x in prop::array::uniform10(-1e3f64..1e3),
        ctx in prop::array::uniform2(-1.0f64..1.0),
    ) {
        let mut mlp = MlpNet::zeros();
        mlp.set_params(&params[..MlpNet::N_PARAMS]);
        prop_assert!(mlp_predict(&mlp, &x).is_finite());

        let mut elman = ElmanNet::zeros();
        elman.set_params(&params);
        elman.context = ctx;
        let (y, next) = elman_predict(&elman, &x);
        prop_assert!(y.is_finite());
        prop_assert!(next.iter().all(|h| h.abs() <= 1.0));

        let mut rbf = RbfNet::empty(0.22);
        rbf.centers = vec![[0.0; ORDER], x];
        rbf.lin_w = vec![params[0], params[1]];
        rbf.lin_b = params[2];
        prop_assert!(rbf_predict(&rbf, &x).is_finite());
    }

    #[test]
    fn elman_without_recurrence_is_an_mlp(
        params in prop::collection::vec(-2.0f64..2.0, 25),
        x in prop::array::uniform10(-1.0f64..1.0),
        ctx in prop::array::uniform2(-1.0f64..1.0),
    ) {
        let mut mlp = MlpNet::zeros();
        mlp.set_params(&params);
        let mut elman = ElmanNet::zeros();
        elman.w_in = mlp.w1;
        elman.b1 = mlp.b1;
        elman.w2 = mlp.w2;
        elman.b2 = mlp.b2;
        elman.context = ctx;
        prop_assert_eq!(elman_predict(&elman, &x).0.to_bits(), mlp_predict(&mlp, &x).to_bits());
    }

    #[test]
    fn median_fusion_ignores_order(a in -1.0f64..1.0, b in -1.0f64..1.0, c in -1.0f64..1.0) {
        let v = fuse([a, b, c], FusionMode::Median).value;
        for p in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            prop_assert_eq!(fuse(p, FusionMode::Median).value, v);
        }
    }
}
