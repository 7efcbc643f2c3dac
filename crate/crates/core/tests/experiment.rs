use nadpcm::codec::{CodecConfig, PredictorMode};
use nadpcm::metrics::{order_stats, run_experiment, write_aggregate_csv, write_rows_csv};
use nadpcm::par::Exec;
use nadpcm::predictors::{rank, Ranking};
use nadpcm::signal::write_wav;
use nadpcm::synth::{synthesize, SynthKind};
use proptest::prelude::*;

// The seven predictor columns of the comparison tables.
fn table_columns(nq: u8) -> Vec<CodecConfig> {
    use PredictorMode::*;
    [(Mlp, 6), (Mlp, 50), (Elman, 6), (Elman, 50), (Rbf, 6), (CommitteeMean, 6), (CommitteeMedian, 6)]
        .into_iter()
        .map(|(mode, epochs)| CodecConfig::new(nq, mode).with_epochs(epochs))
        .collect()
}

#[test]
fn full_table_grid() {
    let dir = tempfile::tempdir().unwrap();
    let corpus: Vec<_> = SynthKind::ALL
        .into_iter()
        .map(|kind| {
            let path = dir.path().join(format!("{kind}.wav"));
            write_wav(&path, &synthesize(kind, 0.1, 2).unwrap()).unwrap();
            path
        })
        .collect();
    let cfgs: Vec<CodecConfig> = (2..=5).flat_map(table_columns).collect();
    let result = run_experiment(&corpus, &cfgs, Exec::default()).unwrap();
    assert!(result.failures.is_empty(), "{:?}", result.failures);
    assert_eq!(result.cells.len(), 28);
    assert_eq!(result.rows.len(), 84);
    assert_eq!(result.bitstreams.len(), 84);
    assert!(result.cells.iter().all(|c| c.n_files == 3 && c.std_db >= 0.0));

    let mut rows = Vec::new();
    write_rows_csv(&mut rows, &result.rows).unwrap();
    let mut cells = Vec::new();
    write_aggregate_csv(&mut cells, &result.cells).unwrap();
    assert_eq!(String::from_utf8(rows).unwrap().lines().count(), 85);
    assert_eq!(String::from_utf8(cells).unwrap().lines().count(), 29);
}

#[test]
fn failed_files_are_reported_and_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.wav");
    write_wav(&good, &synthesize(SynthKind::Tones, 0.1, 0).unwrap()).unwrap();
    let bad = dir.path().join("bad.wav");
    std::fs::write(&bad, b"not a wav").unwrap();
    let cfgs = [CodecConfig::new(3, PredictorMode::LastSample)];
    let result = run_experiment(&[bad, good], &cfgs, Exec::default()).unwrap();
    assert_eq!(result.rows.len(), 1);
    assert_eq!(result.failures.len(), 1);
    assert_eq!(result.failures[0].0, "bad.wav");
    assert_eq!(result.cells[0].n_files, 1);
}

fn ranking_strategy() -> impl Strategy<Value = Option<Ranking>> {
    prop::option::weighted(0.9, prop::array::uniform3(0u8..4))
        .prop_map(|o| o.map(|v| rank(v.map(f64::from))))
}

proptest! {
    #[test]
    fn rank_counts_sum_to_frame_count(
        records in prop::collection::vec(ranking_strategy(), 0..500),
        frame_len in 1usize..50,
    ) {
        let report = order_stats(&records, frame_len);
        let k = records.chunks(frame_len).filter(|f| f.iter().any(Option::is_some)).count();
        prop_assert_eq!(report.frames, k);
        prop_assert_eq!(report.counts.iter().map(|c| c.min).sum::<usize>(), k);
        prop_assert_eq!(report.counts.iter().map(|c| c.median).sum::<usize>(), k);
        prop_assert_eq!(report.counts.iter().map(|c| c.max).sum::<usize>(), k);
    }
}
