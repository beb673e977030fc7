use super::{BitVector, Element, HashFamily};
use crate::error::{Error, Result};

/// Classic Bloom filter of `m` bits and `k` hash functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BloomFilter {
    vector: BitVector,
    hash: HashFamily,
    inserted: usize,
}

impl BloomFilter {
    /// `m`-bit filter with `k` randomly allocated positions per element.
    pub fn new(m: usize, k: usize, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("Bloom filter needs m >= 1".into()));
        }
        BloomFilter::with_hash(HashFamily::random(k, m, seed)?)
    }

    pub fn with_hash(hash: HashFamily) -> Result<Self> {
        if hash.range() == 0 {
            return Err(Error::InvalidParams("Bloom filter needs m >= 1".into()));
        }
        Ok(BloomFilter {
            vector: BitVector::new(hash.range()),
            hash,
            inserted: 0,
        })
    }

    pub fn vector(&self) -> &BitVector {
        &self.vector
    }

    pub fn hash(&self) -> &HashFamily {
        &self.hash
    }

    pub fn len(&self) -> usize {
        self.vector.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inserted == 0
    }

    pub fn inserted_count(&self) -> usize {
        self.inserted
    }

    /// The element's own `m`-bit filter.
    pub fn element_vector<E: Element + ?Sized>(&self, element: &E) -> BitVector {
        BitVector::from_positions(self.vector.len(), &self.hash.positions(element))
    }

    pub fn insert<E: Element + ?Sized>(&mut self, element: &E) {
        for p in self.hash.positions(element) {
            self.vector.set(p);
        }
        self.inserted += 1;
    }

    pub fn contains<E: Element + ?Sized>(&self, element: &E) -> bool {
        self.hash
            .positions(element)
            .into_iter()
            .all(|p| self.vector.get(p))
    }

    /// Bitwise OR of two filters sharing length and hash family.
    pub fn union(&self, other: &BloomFilter) -> Result<BloomFilter> {
        if self.hash != other.hash {
            return Err(Error::Incompatible(
                "Bloom filters use different hash families".into(),
            ));
        }
        Ok(BloomFilter {
            vector: self.vector.or(&other.vector)?,
            hash: self.hash.clone(),
            inserted: self.inserted + other.inserted,
        })
    }
}

impl<E: Element> Extend<E> for BloomFilter {
    fn extend<I: IntoIterator<Item = E>>(&mut self, iter: I) {
        for e in iter {
            self.insert(&e);
        }
    }
}
