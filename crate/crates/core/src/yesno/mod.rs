//! The yes-no Bloom filter.
//!
//! Construction takes the member set `S` and the set `T` of non-members that
//! will be queried. Members go into the yes-filter exactly as in a classic
//! Bloom filter. Every element of `T` that the yes-filter accepts is a known
//! false positive; its no-part is OR-ed into the first no-filter that can take
//! it without covering the no-part of any member, so no member is ever
//! rejected (unless false negatives are explicitly allowed).

mod classify;
mod filter;
mod params;
mod sketch;

pub use classify::{classify, Classification};
pub use filter::{
    place_first_fit, ConstructionReport, FalsePositive, Placement, QueryOutcome, YesNoFilter,
};
pub use params::YesNoParams;
pub use sketch::{ElementSketch, Sketcher};
