//! Segmental SNR, fusion-rank statistics, and experiment grids.

mod experiment;
mod order_stats;
mod snr;

pub use experiment::{
    aggregate, population_std, run_experiment, write_aggregate_csv, write_rows_csv, AggregateCell,
    ExperimentResult, FileRow,
};
pub use order_stats::{order_stats, OrderStatsReport, RankCounts};
pub use snr::{segsnr, snr_frame, FrameSnr, SegSnrReport};
