use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Fixed-length Boolean array.
///
/// Filters up to 256 bits live inline without a heap allocation, which is
/// the common size for in-packet encodings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: SmallVec<[u64; 4]>,
}

impl BitVector {
    /// All-zero vector of `len` bits.
    pub fn new(len: usize) -> Self {
        let n = len.div_ceil(WORD);
        BitVector {
            len,
            words: smallvec::smallvec![0; n],
        }
    }

    /// Vector of `len` bits with the given positions set.
    ///
    /// Panics if a position is out of range.
    pub fn from_positions(len: usize, positions: &[usize]) -> Self {
        let mut v = BitVector::new(len);
        for &p in positions {
            v.set(p);
        }
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BitVector::new(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_all_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the 1-bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    fn check_len(&self, other: &BitVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::Incompatible(format!(
                "bit vectors of length {} and {}",
                self.len, other.len
            )));
        }
        Ok(())
    }

    /// True iff every 1-bit of `self` is a 1-bit of `other`.
    pub fn is_subset_of(&self, other: &BitVector) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.subset_unchecked(other))
    }

    /// Subset test for vectors already known to share a length.
    #[inline]
    pub(crate) fn subset_unchecked(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn and(&self, other: &BitVector) -> Result<BitVector> {
        self.check_len(other)?;
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        Ok(out)
    }

    pub fn or(&self, other: &BitVector) -> Result<BitVector> {
        let mut out = self.clone();
        out.or_assign(other)?;
        Ok(out)
    }

    pub fn or_assign(&mut self, other: &BitVector) -> Result<()> {
        self.check_len(other)?;
        self.or_assign_unchecked(other);
        Ok(())
    }

    #[inline]
    pub(crate) fn or_assign_unchecked(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    /// `'0'`/`'1'` string, bit 0 first.
    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Result<BitVector> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::BitChar(other)),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(BitVector::from_bools(bits))
    }
}

/// True iff `(a AND b) == a`.
pub fn is_subset(a: &BitVector, b: &BitVector) -> Result<bool> {
    a.is_subset_of(b)
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bit_string())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(s: &str) -> BitVector {
        BitVector::from_bit_string(s).unwrap()
    }

    #[test]
    fn zero_vector_is_subset_of_anything() {
        assert!(bits("0000").is_subset_of(&bits("0000")).unwrap());
        assert!(bits("0000").is_subset_of(&bits("1011")).unwrap());
    }

    #[test]
    fn subset_fails_on_uncovered_bit() {
        assert!(!is_subset(&bits("1010"), &bits("1000")).unwrap());
        assert!(is_subset(&bits("1000"), &bits("1010")).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let err = is_subset(&bits("10"), &bits("100")).unwrap_err();
        assert!(matches!(err, Error::Incompatible(_)));
        assert!(bits("1").or(&bits("11")).is_err());
    }

    #[test]
    fn bit_string_rejects_garbage() {
        assert_eq!(BitVector::from_bit_string("01x"), Err(Error::BitChar('x')));
    }

    #[test]
    fn crosses_word_boundaries() {
        let v = BitVector::from_positions(200, &[0, 63, 64, 127, 199]);
        assert_eq!(v.count_ones(), 5);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 127, 199]);
        assert_eq!(BitVector::from_bit_string(&v.to_bit_string()).unwrap(), v);
    }

    fn vec_pair() -> impl Strategy<Value = (Vec<bool>, Vec<bool>)> {
        (1usize..300).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
    }

    proptest! {
        #[test]
        fn subset_matches_conjunction((a, b) in vec_pair()) {
            let (a, b) = (BitVector::from_bools(a), BitVector::from_bools(b));
            prop_assert_eq!(a.is_subset_of(&b).unwrap(), a.and(&b).unwrap() == a);
        }

        #[test]
        fn union_is_monotone((a, b) in vec_pair()) {
            let (a, b) = (BitVector::from_bools(a), BitVector::from_bools(b));
            let u = a.or(&b).unwrap();
            prop_assert!(a.is_subset_of(&u).unwrap());
            prop_assert!(b.is_subset_of(&u).unwrap());
            prop_assert!(u.count_ones() <= u.len());
        }

        #[test]
        fn bit_string_round_trip(a in proptest::collection::vec(any::<bool>(), 0..300)) {
            let v = BitVector::from_bools(a);
            prop_assert_eq!(BitVector::from_bit_string(&v.to_bit_string()).unwrap(), v);
        }
    }
}
