//! Combining the three family outputs, and the rank bookkeeping used to see
//! which family tends to sit low, in the middle, or high.

/// Predictor families in their fixed order; the index breaks ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Mlp = 0,
    Elman = 1,
    Rbf = 2,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Mlp, Family::Elman, Family::Rbf];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Mlp => "mlp",
            Family::Elman => "elman",
            Family::Rbf => "rbf",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FusionMode {
    Mean,
    Median,
}

/// Which family produced the smallest, middle and largest output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ranking {
    pub min: Family,
    pub median: Family,
    pub max: Family,
}

impl Ranking {
    pub fn as_array(self) -> [Family; 3] {
        [self.min, self.median, self.max]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fused {
    pub value: f64,
    pub ranking: Ranking,
}

/// Ranks three outputs (indexed by [`Family`]). Among outputs equal to the
/// median value, the lowest family index is credited as median; the other
/// two are ordered by value, then by index.
pub fn rank(outputs: [f64; 3]) -> Ranking {
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| outputs[a].total_cmp(&outputs[b]).then(a.cmp(&b)));
    let median_value = outputs[order[1]];
    let median = (0..3).find(|&i| outputs[i] == median_value).unwrap();
    let mut rest = [0usize; 2];
    let mut n = 0;
    for &i in &order {
        if i != median {
            rest[n] = i;
            n += 1;
        }
    }
    Ranking {
        min: Family::ALL[rest[0]],
        median: Family::ALL[median],
        max: Family::ALL[rest[1]],
    }
}

/// Mean or median of the three family outputs, plus the ranking.
pub fn fuse(outputs: [f64; 3], mode: FusionMode) -> Fused {
    let mut sorted = outputs;
    sorted.sort_by(f64::total_cmp);
    let value = match mode {
        // summed in sorted order so the mean is permutation invariant
        FusionMode::Mean => (sorted[0] + sorted[1] + sorted[2]) / 3.0,
        FusionMode::Median => sorted[1],
    };
    Fused {
        value,
        ranking: rank(outputs),
    }
}

/// Arithmetic mean of committee member outputs, independent of member order.
pub fn committee_average(outputs: &[f64]) -> f64 {
    let mut sorted = outputs.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.iter().sum::<f64>() / sorted.len() as f64
}
