use std::cmp::Ordering;
use std::fmt;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2), bit-packed into 64-bit words.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits at positions
/// `>= len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from its entries, index 0 first.
    #[must_use]
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` from packed words; stray high bits are masked off.
    #[must_use]
    pub fn from_words(len: usize, words: &[u64]) -> Self {
        let mut v = Self::zeros(len);
        let count = v.words.len().min(words.len());
        v.words[..count].copy_from_slice(&words[..count]);
        v.mask_tail();
        v
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// # Panics
    /// Panics if `i >= len`.
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// # Panics
    /// Panics if `i >= len`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Addition over GF(2).
    ///
    /// # Panics
    /// Panics if lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor_assign: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2): parity of the AND.
    ///
    /// # Panics
    /// Panics if lengths differ.
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot: length mismatch");
        parity_of_and(&self.words, &other.words)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Renders as a `0`/`1` string, index 0 first.
    #[must_use]
    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

pub(crate) fn parity_of_and(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones())
        & 1
        == 1
}

/// Orders by length, then by the packed value read as a binary number with
/// bit `i` weighted `2^i`.
impl Ord for Gf2Vector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Gf2Vector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({})", self.to_bit_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_value_order() {
        let a = Gf2Vector::from_bits(&[true, false, false]);
        let b = Gf2Vector::from_bits(&[false, true, false]);
        let c = Gf2Vector::from_bits(&[true, true, false]);
        assert!(a < b && b < c);
    }

    #[test]
    fn order_spans_words() {
        let mut low = Gf2Vector::zeros(70);
        low.set(63, true);
        let mut high = Gf2Vector::zeros(70);
        high.set(64, true);
        assert!(low < high);
    }

    #[test]
    fn from_words_masks_tail() {
        let v = Gf2Vector::from_words(3, &[0xff]);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.to_bit_string(), "111");
    }

    #[test]
    fn dot_is_parity() {
        let a = Gf2Vector::from_bits(&[true, true, true]);
        let b = Gf2Vector::from_bits(&[true, true, false]);
        assert!(!a.dot(&b));
        assert!(a.dot(&a));
    }
}
