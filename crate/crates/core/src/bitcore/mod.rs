//! Bit vectors, hash families and the classic Bloom filter.
//!
//! Membership is a subset test: an element is reported present when every
//! 1-bit of its own vector is also a 1-bit of the filter.

mod bitvec;
mod bloom;
mod hash;

pub use bitvec::{is_subset, BitVector};
pub use bloom::BloomFilter;
pub use hash::{Element, HashFamily, HashMode, Positions};
