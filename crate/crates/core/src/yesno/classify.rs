use crate::bitcore::Element;

use super::{QueryOutcome, YesNoFilter};

/// Partition of `S ∪ T` by query outcome. Entries are indices into the `S`
/// or `T` slice passed to [`classify`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Classification {
    /// Members answered positive (indices into `S`).
    pub true_positives: Vec<usize>,
    /// Members answered negative (indices into `S`).
    pub false_negatives: Vec<usize>,
    /// Non-members rejected by the yes-filter (indices into `T`).
    pub yes_stage_negatives: Vec<usize>,
    /// Yes-filter false positives rejected by a no-filter (indices into `T`).
    pub no_stage_rejections: Vec<usize>,
    /// Non-members answered positive: the residual set `E` (indices into `T`).
    pub residual_false_positives: Vec<usize>,
}

impl Classification {
    /// `|E|`
    pub fn fp_count(&self) -> usize {
        self.residual_false_positives.len()
    }

    /// Yes-filter false positives, `|F|`, as observed by querying.
    pub fn yes_filter_fp_count(&self) -> usize {
        self.no_stage_rejections.len() + self.residual_false_positives.len()
    }
}

pub fn classify<E: Element>(filter: &YesNoFilter, s: &[E], t: &[E]) -> Classification {
    let mut out = Classification::default();
    for (i, e) in s.iter().enumerate() {
        if filter.contains(e) {
            out.true_positives.push(i);
        } else {
            out.false_negatives.push(i);
        }
    }
    for (i, e) in t.iter().enumerate() {
        match filter.query(e) {
            QueryOutcome::NegativeYesStage => out.yes_stage_negatives.push(i),
            QueryOutcome::NegativeNoStage => out.no_stage_rejections.push(i),
            QueryOutcome::Positive => out.residual_false_positives.push(i),
        }
    }
    out
}
