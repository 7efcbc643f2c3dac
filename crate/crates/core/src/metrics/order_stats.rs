use crate::predictors::{Family, Ranking};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RankCounts {
    pub min: usize,
    pub median: usize,
    pub max: usize,
}

/// Per family, the number of frames in which it was credited with the
/// minimum, median and maximum output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderStatsReport {
    /// Indexed by [`Family::index`].
    pub counts: [RankCounts; 3],
    /// Frames that contained at least one ranked sample.
    pub frames: usize,
}

impl OrderStatsReport {
    pub fn family(&self, f: Family) -> RankCounts {
        self.counts[f.index()]
    }
}

fn majority(tally: &[usize; 3]) -> usize {
    // first maximum wins, so ties go to the lowest family index
    let mut best = 0;
    for i in 1..3 {
        if tally[i] > tally[best] {
            best = i;
        }
    }
    best
}

/// Per frame, credits each rank to the family holding it most often among
/// the frame's samples (ties to the lowest family index). Samples without a
/// ranking are ignored; frames without any are not counted.
pub fn order_stats(rankings: &[Option<Ranking>], frame_len: usize) -> OrderStatsReport {
    let mut report = OrderStatsReport::default();
    for frame in rankings.chunks(frame_len.max(1)) {
        let mut tallies = [[0usize; 3]; 3];
        let mut any = false;
        for r in frame.iter().flatten() {
            any = true;
            for (rank, fam) in r.as_array().into_iter().enumerate() {
                tallies[rank][fam.index()] += 1;
            }
        }
        if !any {
            continue;
        }
        report.frames += 1;
        report.counts[majority(&tallies[0])].min += 1;
        report.counts[majority(&tallies[1])].median += 1;
        report.counts[majority(&tallies[2])].max += 1;
    }
    report
}
