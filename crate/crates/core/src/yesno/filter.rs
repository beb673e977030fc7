use std::collections::HashSet;

use crate::bitcore::{BitVector, Element};
use crate::error::{Error, Result};

use super::{ElementSketch, Sketcher, YesNoParams};

/// Result of a membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryOutcome {
    Positive,
    /// The yes-part has a bit outside the yes-filter.
    NegativeYesStage,
    /// Passed the yes stage but the no-part is covered by a no-filter.
    NegativeNoStage,
}

impl QueryOutcome {
    pub fn is_positive(self) -> bool {
        self == QueryOutcome::Positive
    }
}

/// What happened to one yes-filter false positive during construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// OR-ed into no-filter `j`.
    Stored(usize),
    /// Its no-part was already covered by no-filter `j`; nothing changed.
    AlreadyCovered(usize),
    /// Every no-filter would have produced a false negative.
    Unmitigated,
}

impl Placement {
    pub fn is_mitigated(self) -> bool {
        !matches!(self, Placement::Unmitigated)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FalsePositive {
    /// Index into `T`.
    pub t_index: usize,
    pub placement: Placement,
}

/// Cardinalities of the sets involved in a build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    /// `|S|`
    pub n: usize,
    /// `|T|`
    pub t: usize,
    /// `|F|`, the yes-filter false positives found in `T`.
    pub f_count: usize,
    /// `|R|`, false positives the no-filters now reject.
    pub r_count: usize,
    /// `|F| - |R|`
    pub unmitigated: usize,
    /// Elements of `R` attributed to each no-filter.
    pub per_no_filter_load: Vec<usize>,
    /// Every element of `F`, in `T` order.
    pub false_positives: Vec<FalsePositive>,
}

/// A built yes-no filter: `p`-bit yes-filter and `r` no-filters of `q` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YesNoFilter {
    params: YesNoParams,
    sketcher: Sketcher,
    yes_filter: BitVector,
    no_filters: Vec<BitVector>,
}

fn distinct_keys<E: Element>(items: &[E], set: &'static str) -> Result<HashSet<u64>> {
    let mut keys = HashSet::with_capacity(items.len());
    for e in items {
        let key = e.element_key();
        if !keys.insert(key) {
            return Err(Error::Duplicate { key, set });
        }
    }
    Ok(keys)
}

impl YesNoFilter {
    /// Builds the filter for members `s` against the query set `t`.
    ///
    /// `s` and `t` must be disjoint sets.
    pub fn build<E: Element>(
        params: &YesNoParams,
        sketcher: &Sketcher,
        s: &[E],
        t: &[E],
    ) -> Result<(YesNoFilter, ConstructionReport)> {
        params.validate()?;
        sketcher.check(params)?;
        let s_keys = distinct_keys(s, "S")?;
        let t_keys = distinct_keys(t, "T")?;
        if let Some(&key) = t_keys.iter().find(|k| s_keys.contains(k)) {
            return Err(Error::Overlap { key });
        }
        let s_sketches: Vec<ElementSketch> = s.iter().map(|e| sketcher.sketch(e)).collect();
        let t_sketches: Vec<ElementSketch> = t.iter().map(|e| sketcher.sketch(e)).collect();
        YesNoFilter::build_from_sketches(params, sketcher, &s_sketches, &t_sketches)
    }

    /// Construction over pre-computed sketches. The caller guarantees that
    /// the sketches come from `sketcher` and that `S` and `T` are disjoint.
    pub fn build_from_sketches(
        params: &YesNoParams,
        sketcher: &Sketcher,
        s: &[ElementSketch],
        t: &[ElementSketch],
    ) -> Result<(YesNoFilter, ConstructionReport)> {
        params.validate()?;
        sketcher.check(params)?;

        let mut yes_filter = BitVector::new(params.p());
        for e in s {
            yes_filter.or_assign(&e.yes_part)?;
        }
        let mut no_filters = vec![BitVector::new(params.q()); params.r()];
        let member_no_parts: Vec<&BitVector> = s.iter().map(|e| &e.no_part).collect();

        let mut load = vec![0; params.r()];
        let mut false_positives = Vec::new();
        for (t_index, f) in t.iter().enumerate() {
            if !f.yes_part.is_subset_of(&yes_filter)? {
                continue;
            }
            let placement = place_first_fit(
                &mut no_filters,
                &f.no_part,
                &member_no_parts,
                params.allow_false_negatives(),
            );
            match placement {
                Placement::Stored(j) | Placement::AlreadyCovered(j) => load[j] += 1,
                Placement::Unmitigated => {}
            }
            false_positives.push(FalsePositive { t_index, placement });
        }

        let f_count = false_positives.len();
        let r_count = false_positives
            .iter()
            .filter(|fp| fp.placement.is_mitigated())
            .count();
        let report = ConstructionReport {
            n: s.len(),
            t: t.len(),
            f_count,
            r_count,
            unmitigated: f_count - r_count,
            per_no_filter_load: load,
            false_positives,
        };
        let filter = YesNoFilter {
            params: *params,
            sketcher: sketcher.clone(),
            yes_filter,
            no_filters,
        };
        Ok((filter, report))
    }

    pub fn params(&self) -> &YesNoParams {
        &self.params
    }

    pub fn sketcher(&self) -> &Sketcher {
        &self.sketcher
    }

    pub fn yes_filter(&self) -> &BitVector {
        &self.yes_filter
    }

    pub fn no_filters(&self) -> &[BitVector] {
        &self.no_filters
    }

    pub fn query<E: Element + ?Sized>(&self, element: &E) -> QueryOutcome {
        self.query_sketch(&self.sketcher.sketch(element))
    }

    pub fn query_sketch(&self, sketch: &ElementSketch) -> QueryOutcome {
        if !sketch.yes_part.subset_unchecked(&self.yes_filter) {
            return QueryOutcome::NegativeYesStage;
        }
        if self
            .no_filters
            .iter()
            .any(|v| sketch.no_part.subset_unchecked(v))
        {
            return QueryOutcome::NegativeNoStage;
        }
        QueryOutcome::Positive
    }

    pub fn contains<E: Element + ?Sized>(&self, element: &E) -> bool {
        self.query(element).is_positive()
    }

    /// The flat `m`-bit layout: yes-filter, then no-filters `0..r`.
    pub fn to_bits(&self) -> BitVector {
        BitVector::from_bools(
            self.yes_filter
                .iter()
                .chain(self.no_filters.iter().flat_map(|v| v.iter())),
        )
    }

    pub fn to_bit_string(&self) -> String {
        self.to_bits().to_bit_string()
    }

    /// Inverse of [`YesNoFilter::to_bits`].
    pub fn from_bits(params: &YesNoParams, sketcher: &Sketcher, bits: &BitVector) -> Result<Self> {
        params.validate()?;
        sketcher.check(params)?;
        if bits.len() != params.m() {
            return Err(Error::BitLength {
                expected: params.m(),
                got: bits.len(),
            });
        }
        let slice = |start: usize, len: usize| {
            BitVector::from_bools((start..start + len).map(|i| bits.get(i)))
        };
        let p = params.p();
        let q = params.q();
        Ok(YesNoFilter {
            params: *params,
            sketcher: sketcher.clone(),
            yes_filter: slice(0, p),
            no_filters: (0..params.r()).map(|j| slice(p + j * q, q)).collect(),
        })
    }

    pub fn from_bit_string(params: &YesNoParams, sketcher: &Sketcher, s: &str) -> Result<Self> {
        YesNoFilter::from_bits(params, sketcher, &BitVector::from_bit_string(s)?)
    }
}

/// Greedy first-fit placement of one false positive's no-part.
///
/// A no-part already covered by some no-filter is recorded against the first
/// such filter without changing any bits. Otherwise each no-filter `j` is
/// tried in order with `v' = no_filters[j] | candidate`; `v'` is committed
/// unless it would cover the no-part of a member.
pub fn place_first_fit(
    no_filters: &mut [BitVector],
    candidate: &BitVector,
    member_no_parts: &[&BitVector],
    allow_false_negatives: bool,
) -> Placement {
    if let Some(j) = no_filters
        .iter()
        .position(|v| candidate.subset_unchecked(v))
    {
        return Placement::AlreadyCovered(j);
    }
    for (j, v) in no_filters.iter_mut().enumerate() {
        let mut merged = v.clone();
        merged.or_assign_unchecked(candidate);
        let safe =
            allow_false_negatives || !member_no_parts.iter().any(|e| e.subset_unchecked(&merged));
        if safe {
            *v = merged;
            return Placement::Stored(j);
        }
    }
    Placement::Unmitigated
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitVector {
        BitVector::from_bit_string(s).unwrap()
    }

    #[test]
    fn first_fit_skips_filters_that_would_cover_a_member() {
        let member = bits("1100");
        let mut filters = vec![bits("1000"), bits("0000")];
        // OR into filter 0 would give 1100 and cover the member
        let placed = place_first_fit(&mut filters, &bits("0100"), &[&member], false);
        assert_eq!(placed, Placement::Stored(1));
        assert_eq!(filters, vec![bits("1000"), bits("0100")]);
    }

    #[test]
    fn first_fit_reports_unmitigated_when_every_filter_fails() {
        let member = bits("0100");
        let mut filters = vec![bits("0000"), bits("0000")];
        let placed = place_first_fit(&mut filters, &bits("0100"), &[&member], false);
        assert_eq!(placed, Placement::Unmitigated);
        assert!(filters.iter().all(|v| v.is_all_zero()));
    }

    #[test]
    fn allowing_false_negatives_takes_first_filter() {
        let member = bits("0100");
        let mut filters = vec![bits("0000"), bits("0000")];
        let placed = place_first_fit(&mut filters, &bits("0100"), &[&member], true);
        assert_eq!(placed, Placement::Stored(0));
    }

    #[test]
    fn covered_candidate_changes_nothing() {
        let mut filters = vec![bits("0011"), bits("1110")];
        let before = filters.clone();
        let placed = place_first_fit(&mut filters, &bits("0110"), &[], false);
        assert_eq!(placed, Placement::AlreadyCovered(1));
        assert_eq!(filters, before);
    }

    #[test]
    fn no_filters_means_unmitigated() {
        let mut filters: Vec<BitVector> = Vec::new();
        assert_eq!(
            place_first_fit(&mut filters, &BitVector::new(0), &[], false),
            Placement::Unmitigated
        );
    }
}
