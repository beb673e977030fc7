use rand::Rng;
use sha2::{Digest, Sha256};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rng;

/// Bit positions produced for one element.
pub type Positions = SmallVec<[usize; 8]>;

/// Anything that can be placed in a filter.
///
/// The key is the element's identity as far as hashing is concerned; two
/// values with the same key are indistinguishable to every filter.
pub trait Element {
    fn element_key(&self) -> u64;
}

macro_rules! int_element {
    ($($t:ty),*) => {$(
        impl Element for $t {
            #[inline]
            fn element_key(&self) -> u64 {
                *self as u64
            }
        }
    )*};
}

int_element!(u8, u16, u32, u64, usize);

impl Element for [u8] {
    fn element_key(&self) -> u64 {
        let digest = Sha256::digest(self);
        u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
    }
}

impl Element for str {
    fn element_key(&self) -> u64 {
        self.as_bytes().element_key()
    }
}

impl Element for String {
    fn element_key(&self) -> u64 {
        self.as_bytes().element_key()
    }
}

impl Element for Vec<u8> {
    fn element_key(&self) -> u64 {
        self.as_slice().element_key()
    }
}

impl<T: Element + ?Sized> Element for &T {
    fn element_key(&self) -> u64 {
        (**self).element_key()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HashMode {
    /// Independent uniform draws from a generator keyed by (seed, element).
    #[default]
    RandomAllocation,
    /// Kirsch-Mitzenmacher `g_i = h1 + i*h2 mod range` over a SHA-256 digest.
    DoubleHashing,
}

/// `count` hash functions with outputs in `[0, range)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HashFamily {
    count: usize,
    range: usize,
    mode: HashMode,
    seed: u64,
    distinct: bool,
}

impl HashFamily {
    pub fn new(count: usize, range: usize, mode: HashMode, seed: u64) -> Result<Self> {
        if count > 0 && range == 0 {
            return Err(Error::InvalidParams(format!(
                "{count} hash functions need a non-empty range"
            )));
        }
        Ok(HashFamily {
            count,
            range,
            mode,
            seed,
            distinct: false,
        })
    }

    /// Random allocation with the default with-replacement draws.
    pub fn random(count: usize, range: usize, seed: u64) -> Result<Self> {
        HashFamily::new(count, range, HashMode::RandomAllocation, seed)
    }

    /// Draw an element's positions without replacement, so an element
    /// always sets exactly `count` bits. Only meaningful for random allocation.
    pub fn without_replacement(mut self) -> Result<Self> {
        if self.count > self.range {
            return Err(Error::InvalidParams(format!(
                "cannot draw {} distinct positions from {}",
                self.count, self.range
            )));
        }
        self.distinct = true;
        Ok(self)
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn mode(&self) -> HashMode {
        self.mode
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_distinct(&self) -> bool {
        self.distinct
    }

    pub fn positions<E: Element + ?Sized>(&self, element: &E) -> Positions {
        self.positions_for_key(element.element_key())
    }

    pub fn positions_for_key(&self, key: u64) -> Positions {
        let mut out = Positions::new();
        if self.count == 0 {
            return out;
        }
        match self.mode {
            HashMode::RandomAllocation => {
                let mut rng = rng::stream(self.seed, &[key]);
                let range = self.range as u64;
                while out.len() < self.count {
                    let p = rng.gen_range(0..range) as usize;
                    if self.distinct && out.contains(&p) {
                        continue;
                    }
                    out.push(p);
                }
            }
            HashMode::DoubleHashing => {
                let mut hasher = Sha256::new();
                hasher.update(self.seed.to_le_bytes());
                hasher.update(key.to_le_bytes());
                let digest = hasher.finalize();
                let h1 = u64::from_le_bytes(digest[..8].try_into().unwrap());
                let h2 = u64::from_le_bytes(digest[8..16].try_into().unwrap());
                let range = self.range as u64;
                let mut i = 0u64;
                while out.len() < self.count {
                    let p = (h1.wrapping_add(i.wrapping_mul(h2)) % range) as usize;
                    i += 1;
                    if self.distinct && out.contains(&p) {
                        // degenerate strides cycle; fall back to a linear probe
                        if i > 4 * self.range as u64 {
                            let free = (0..self.range).find(|q| !out.contains(q)).unwrap();
                            out.push(free);
                        }
                        continue;
                    }
                    out.push(p);
                }
            }
        }
        out
    }
}
