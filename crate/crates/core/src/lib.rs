//! Yes-no Bloom filters.
//!
//! A yes-no Bloom filter splits `m` bits into a `p`-bit *yes-filter* holding
//! the members of a set `S` and `r` *no-filters* of `q` bits each that record
//! known false positives of the yes-filter drawn from a query set `T`. A
//! query first runs the ordinary Bloom subset test against the yes-filter and
//! then rejects the element if its no-part is covered by any no-filter.
//!
//! Modules:
//!
//! * [`bitcore`]: bit vectors, hash families and the classic Bloom filter.
//! * [`yesno`]: element sketches, construction with greedy no-filter
//!   assignment, queries and classification.
//! * [`analysis`]: closed-form false-positive probabilities.
//! * [`simulate`]: Monte-Carlo parameter sweeps with analytic baselines.
//! * [`topology`]: path-encoding experiments on network topologies.

pub mod analysis;
pub mod bitcore;
pub mod error;
pub mod rng;
pub mod simulate;
pub mod topology;
pub mod yesno;

pub use bitcore::{BitVector, BloomFilter, Element, HashFamily, HashMode};
pub use error::{Error, Result};
pub use yesno::{
    Classification, ConstructionReport, ElementSketch, QueryOutcome, Sketcher, YesNoFilter,
    YesNoParams,
};
