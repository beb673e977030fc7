//! Monte-Carlo parameter sweeps.
//!
//! Each trial draws a fresh member set `S` and query set `T` of random 64-bit
//! elements, builds a yes-no filter over them and counts the residual false
//! positives `|E|`. Trial `i` of every swept value uses the same random
//! stream, so neighbouring points of a sweep share their random draws.

mod stats;
mod sweep;

pub use stats::Summary;
pub use sweep::{
    sweep, BaselineHashes, PointStats, SweepConfig, SweepPoint, SweepResult, SweepVar,
};

use std::collections::HashSet;

use rand::Rng;

use crate::error::Result;
use crate::rng;
use crate::yesno::{ElementSketch, QueryOutcome, Sketcher, YesNoFilter, YesNoParams};

/// Counts from one simulated build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    /// `|E|`: elements of `T` the yes-no filter answers positive.
    pub yes_no_fp: usize,
    /// `|F|`: elements of `T` the yes-filter alone answers positive.
    pub yes_filter_fp: usize,
    /// Members answered negative.
    pub false_negatives: usize,
}

/// Draws `n` member and `t` query elements, all distinct.
pub fn draw_sets(n: usize, t: usize, trial_seed: u64) -> (Vec<u64>, Vec<u64>) {
    let mut seen = HashSet::with_capacity(n + t);
    let mut draw = |stream: u64, count: usize| {
        let mut rng = rng::stream(trial_seed, &[stream]);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let e: u64 = rng.gen();
            if seen.insert(e) {
                out.push(e);
            }
        }
        out
    };
    let s = draw(1, n);
    let t = draw(2, t);
    (s, t)
}

/// One build and query pass; see [`TrialOutcome`].
pub fn run_trial_detailed(
    params: &YesNoParams,
    n: usize,
    t: usize,
    trial_seed: u64,
) -> Result<TrialOutcome> {
    let (s, t) = draw_sets(n, t, trial_seed);
    let sketcher = Sketcher::new(params, rng::derive_seed(trial_seed, &[3]))?;
    let s_sk: Vec<ElementSketch> = s.iter().map(|e| sketcher.sketch(e)).collect();
    let t_sk: Vec<ElementSketch> = t.iter().map(|e| sketcher.sketch(e)).collect();
    let (filter, report) = YesNoFilter::build_from_sketches(params, &sketcher, &s_sk, &t_sk)?;
    let yes_no_fp = t_sk
        .iter()
        .filter(|sk| filter.query_sketch(sk) == QueryOutcome::Positive)
        .count();
    let false_negatives = s_sk
        .iter()
        .filter(|sk| filter.query_sketch(sk) != QueryOutcome::Positive)
        .count();
    Ok(TrialOutcome {
        yes_no_fp,
        yes_filter_fp: report.f_count,
        false_negatives,
    })
}

/// `|E|` for one simulated build.
pub fn run_trial(params: &YesNoParams, n: usize, t: usize, trial_seed: u64) -> Result<usize> {
    run_trial_detailed(params, n, t, trial_seed).map(|o| o.yes_no_fp)
}
